#pragma once

// Greedy Tietze simplification.
//
// Moves, repeated until nothing applies or the budget is spent:
//   * replace each relator by the least cyclic rotation of itself or its
//     inverse, dropping empty relators and duplicates;
//   * eliminate a generator g occurring exactly once in some relator
//     g*w (after rotation and possibly inversion), substituting w^-1 for g
//     everywhere. Among all candidates the one giving the smallest total
//     relator length is taken, and only if that total does not exceed the
//     current one.
// Each dropped relator and each eliminated generator costs one step.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "pdef/presentation.hpp"
#include "pdef/word.hpp"

namespace pdef {

  struct SimplifyResult {
    Presentation presentation;
    std::size_t  steps            = 0;
    bool         budget_exhausted = false;
  };

  namespace detail {

    inline int letter_key(Letter x) noexcept {
      return 2 * static_cast<int>(generator_of(x)) + (x < 0 ? 1 : 0);
    }

    inline bool key_less(std::vector<Letter> const& a,
                         std::vector<Letter> const& b) {
      return std::lexicographical_compare(
          a.begin(), a.end(), b.begin(), b.end(), [](Letter x, Letter y) {
            return letter_key(x) < letter_key(y);
          });
    }

    // Least rotation of a cyclically reduced word or its inverse.
    inline Word canonical_cyclic_form(Word const& core) {
      std::vector<Letter> best;
      for (Word const& w : {core, core.inverse()}) {
        auto              letters = w.letters();
        std::size_t const n       = letters.size();
        for (std::size_t s = 0; s < n; ++s) {
          std::vector<Letter> rot;
          rot.reserve(n);
          for (std::size_t i = 0; i < n; ++i) {
            rot.push_back(letters[(s + i) % n]);
          }
          if (best.empty() || key_less(rot, best)) {
            best = std::move(rot);
          }
        }
      }
      return Word(best);
    }

    inline std::size_t total_length(std::vector<Word> const& rels) {
      std::size_t t = 0;
      for (auto const& r : rels) {
        t += r.size();
      }
      return t;
    }

    // Returns the number of relators dropped.
    inline std::size_t normalize_relators(std::vector<Word>& rels) {
      std::vector<Word> out;
      std::set<Word>    seen;
      for (auto const& r : rels) {
        Word core = cyclic_reduce(r).core;
        if (core.empty()) {
          continue;
        }
        Word canon = canonical_cyclic_form(core);
        if (seen.insert(canon).second) {
          out.push_back(std::move(canon));
        }
      }
      std::size_t dropped = rels.size() - out.size();
      rels                = std::move(out);
      return dropped;
    }

    // Replace generator g by `replacement`, then close the gap in the
    // numbering left by g.
    inline Word substitute(Word const& w, std::size_t g, Word const& replacement) {
      Word inv = replacement.inverse();
      Word out;
      for (Letter x : w) {
        std::size_t h = generator_of(x);
        if (h == g) {
          out = std::move(out) * (x > 0 ? replacement : inv);
        } else {
          Letter y = static_cast<Letter>(h > g ? h - 1 : h);
          out.push_back(x > 0 ? y : -y);
        }
      }
      return out;
    }

    struct Elimination {
      std::size_t relator;
      std::size_t generator;
      Word        replacement;  // already renumbered
      std::size_t cost;
    };

    inline std::optional<Elimination>
    best_elimination(std::vector<Word> const& rels) {
      std::size_t const          current = total_length(rels);
      std::optional<Elimination> best;
      for (std::size_t i = 0; i < rels.size(); ++i) {
        auto const& r = rels[i].letters();
        std::size_t max_gen = rels[i].max_generator();
        std::vector<std::size_t> count(max_gen + 1, 0);
        for (Letter x : r) {
          ++count[generator_of(x)];
        }
        for (std::size_t g = 1; g <= max_gen; ++g) {
          if (count[g] != 1) {
            continue;
          }
          std::size_t k = 0;
          while (generator_of(r[k]) != g) {
            ++k;
          }
          // r rotated to start at k is x*w with x = g^{+-1}.
          Word w;
          for (std::size_t j = 1; j < r.size(); ++j) {
            w.push_back(r[(k + j) % r.size()]);
          }
          Word value = r[k] > 0 ? w.inverse() : w;
          // renumber the value itself; it does not contain g
          value = substitute(value, g, Word());
          std::size_t cost = 0;
          for (std::size_t j = 0; j < rels.size() && cost <= current; ++j) {
            if (j != i) {
              cost += cyclic_reduce(substitute(rels[j], g, value)).core.size();
            }
          }
          if (cost <= current && (!best || cost < best->cost)) {
            best = Elimination{i, g, std::move(value), cost};
          }
        }
      }
      return best;
    }

  }  // namespace detail

  inline SimplifyResult tietze_simplify(Presentation P, std::size_t budget) {
    SimplifyResult result;
    auto&          rels = P.relators;
    while (true) {
      std::size_t dropped = detail::normalize_relators(rels);
      result.steps += dropped;
      if (result.steps >= budget) {
        result.steps = budget;
        result.budget_exhausted
            = !rels.empty() && detail::best_elimination(rels).has_value();
        break;
      }
      auto elim = detail::best_elimination(rels);
      if (!elim) {
        break;
      }
      std::vector<Word> next;
      next.reserve(rels.size() - 1);
      for (std::size_t j = 0; j < rels.size(); ++j) {
        if (j != elim->relator) {
          next.push_back(detail::substitute(rels[j], elim->generator,
                                            elim->replacement));
        }
      }
      rels = std::move(next);
      P.generator_names.erase(P.generator_names.begin()
                              + static_cast<std::ptrdiff_t>(elim->generator - 1));
      ++result.steps;
    }
    result.presentation = std::move(P);
    return result;
  }

}  // namespace pdef
