#pragma once

// Coset tables: the action of generators on right cosets of a subgroup.
//
// Cosets are numbered 1..N with coset 1 the subgroup itself; 0 marks an
// undefined entry. Row c holds 2n entries laid out as
//   c.g1, c.g1^-1, c.g2, c.g2^-1, ..., c.gn, c.gn^-1.

#include <cstddef>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "pdef/error.hpp"
#include "pdef/presentation.hpp"
#include "pdef/word.hpp"

namespace pdef {

  using Coset = int;

  constexpr std::size_t column_of(Letter x) noexcept {
    return 2 * (generator_of(x) - 1) + (x < 0 ? 1 : 0);
  }

  constexpr Letter letter_of_column(std::size_t col) noexcept {
    Letter g = static_cast<Letter>(col / 2 + 1);
    return col % 2 == 0 ? g : -g;
  }

  struct CosetTable {
    std::size_t                     n_generators = 0;
    std::vector<std::vector<Coset>> rows;
    bool                            complete = false;
    std::vector<Word>               subgroup_words;

    std::size_t index() const noexcept {
      return rows.size();
    }

    Coset at(Coset c, Letter x) const {
      return rows[static_cast<std::size_t>(c - 1)][column_of(x)];
    }

    friend bool operator==(CosetTable const&, CosetTable const&) = default;
  };

  // Row-major concatenation of all entries; used for canonical ordering.
  inline std::vector<Coset> flatten(CosetTable const& T) {
    std::vector<Coset> out;
    out.reserve(T.rows.size() * 2 * T.n_generators);
    for (auto const& row : T.rows) {
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  }

  namespace detail {
    inline void require_complete(CosetTable const& T) {
      if (!T.complete) {
        throw IncompleteTable();
      }
    }
  }  // namespace detail

  inline Coset trace(CosetTable const& T, Coset start, Word const& w) {
    detail::require_complete(T);
    Coset c = start;
    for (Letter x : w) {
      c = T.at(c, x);
    }
    return c;
  }

  // Images of 1..N under each generator; perm[g][c-1] = c.g.
  inline std::vector<std::vector<Coset>>
  permutation_action(CosetTable const& T) {
    detail::require_complete(T);
    std::vector<std::vector<Coset>> perms(T.n_generators);
    for (std::size_t g = 0; g < T.n_generators; ++g) {
      for (auto const& row : T.rows) {
        perms[g].push_back(row[2 * g]);
      }
    }
    return perms;
  }

  // Length of the orbit of coset 1 under <w>.
  inline std::size_t orbit_length(CosetTable const& T, Word const& w) {
    detail::require_complete(T);
    std::size_t len = 1;
    for (Coset c = trace(T, 1, w); c != 1; c = trace(T, c, w)) {
      ++len;
    }
    return len;
  }

  // True iff w^k is outside the subgroup for 0 < k < r and w^r is inside,
  // i.e. the orbit of coset 1 under w has length exactly r.
  inline bool power_survives(CosetTable const& T, Word const& w, std::size_t r) {
    return orbit_length(T, w) == r;
  }

  // The subgroup's defining words act trivially on every coset.
  inline bool is_normal(CosetTable const& T) {
    detail::require_complete(T);
    for (Coset c = 1; c <= static_cast<Coset>(T.index()); ++c) {
      for (auto const& s : T.subgroup_words) {
        if (trace(T, c, s) != c) {
          return false;
        }
      }
    }
    return true;
  }

  // Spanning tree of the coset graph: parent[c-1] = (coset, letter) with
  // coset.letter = c; coset 1 has no parent.
  struct SchreierTree {
    std::vector<std::optional<std::pair<Coset, Letter>>> parent;
  };

  // Breadth-first tree, scanning columns in table order.
  inline SchreierTree bfs_tree(CosetTable const& T) {
    detail::require_complete(T);
    SchreierTree tree;
    tree.parent.assign(T.index(), std::nullopt);
    std::vector<bool> seen(T.index(), false);
    std::queue<Coset> queue;
    seen[0] = true;
    queue.push(1);
    while (!queue.empty()) {
      Coset c = queue.front();
      queue.pop();
      for (std::size_t col = 0; col < 2 * T.n_generators; ++col) {
        Coset d = T.rows[static_cast<std::size_t>(c - 1)][col];
        if (!seen[static_cast<std::size_t>(d - 1)]) {
          seen[static_cast<std::size_t>(d - 1)] = true;
          tree.parent[static_cast<std::size_t>(d - 1)]
              = std::make_pair(c, letter_of_column(col));
          queue.push(d);
        }
      }
    }
    return tree;
  }

  // Coset representatives read off a spanning tree; entry c-1 maps 1 to c.
  inline std::vector<Word> transversal(SchreierTree const& tree) {
    std::size_t const              N = tree.parent.size();
    std::vector<std::optional<Word>> reps(N);
    reps[0] = Word();
    // parents may be listed after children for arbitrary trees
    for (std::size_t done = 1; done < N;) {
      std::size_t before = done;
      for (std::size_t c = 1; c < N; ++c) {
        if (!reps[c] && tree.parent[c]) {
          auto [p, x] = *tree.parent[c];
          if (reps[static_cast<std::size_t>(p - 1)]) {
            Word w = *reps[static_cast<std::size_t>(p - 1)];
            w.push_back(x);
            reps[c] = std::move(w);
            ++done;
          }
        }
      }
      if (done == before) {
        throw Error("Schreier tree does not span the coset graph");
      }
    }
    std::vector<Word> out;
    for (auto& r : reps) {
      out.push_back(std::move(*r));
    }
    return out;
  }

  inline bool is_tree_edge(SchreierTree const& tree, Coset c, Letter x, Coset d) {
    auto const& pd = tree.parent[static_cast<std::size_t>(d - 1)];
    auto const& pc = tree.parent[static_cast<std::size_t>(c - 1)];
    return (pd && pd->first == c && pd->second == x)
           || (pc && pc->first == d && pc->second == -x);
  }

  // Generators u_c g u_{c.g}^-1 of the stabilizer of coset 1, one for each
  // positive-letter edge outside the tree. Ordered by (coset, generator).
  inline std::vector<Word> stabilizer_generators(CosetTable const&   T,
                                                 SchreierTree const& tree) {
    auto              reps = transversal(tree);
    std::vector<Word> gens;
    for (Coset c = 1; c <= static_cast<Coset>(T.index()); ++c) {
      for (std::size_t g = 1; g <= T.n_generators; ++g) {
        Letter x = static_cast<Letter>(g);
        Coset  d = T.at(c, x);
        if (!is_tree_edge(tree, c, x, d)) {
          gens.push_back(reps[static_cast<std::size_t>(c - 1)] * Word::letter(x)
                         * reps[static_cast<std::size_t>(d - 1)].inverse());
        }
      }
    }
    return gens;
  }

  inline std::vector<Word> stabilizer_generators(CosetTable const& T) {
    return stabilizer_generators(T, bfs_tree(T));
  }

  // Checks every structural invariant of a complete coset table for P:
  // dimensions, inverse consistency, each column a permutation, every
  // relator closing at every coset, every subgroup word fixing coset 1,
  // and transitivity. Returns a description of the first failure.
  inline std::optional<std::string> find_table_defect(Presentation const& P,
                                                      CosetTable const&   T) {
    std::size_t const n = P.num_generators();
    std::size_t const N = T.rows.size();
    if (T.n_generators != n) {
      return "table has " + std::to_string(T.n_generators)
             + " generators, presentation has " + std::to_string(n);
    }
    if (N == 0) {
      return std::string("table has no cosets");
    }
    if (!T.complete) {
      return std::string("table is not marked complete");
    }
    for (std::size_t c = 0; c < N; ++c) {
      if (T.rows[c].size() != 2 * n) {
        return "row " + std::to_string(c + 1) + " has wrong width";
      }
      for (std::size_t col = 0; col < 2 * n; ++col) {
        Coset d = T.rows[c][col];
        if (d < 1 || static_cast<std::size_t>(d) > N) {
          return "entry out of range at row " + std::to_string(c + 1);
        }
        if (T.rows[static_cast<std::size_t>(d - 1)][col ^ 1U]
            != static_cast<Coset>(c + 1)) {
          return "inverse entries disagree at row " + std::to_string(c + 1);
        }
      }
    }
    for (std::size_t col = 0; col < 2 * n; ++col) {
      std::vector<bool> hit(N, false);
      for (std::size_t c = 0; c < N; ++c) {
        auto d = static_cast<std::size_t>(T.rows[c][col] - 1);
        if (hit[d]) {
          return "column " + std::to_string(col) + " is not a permutation";
        }
        hit[d] = true;
      }
    }
    for (auto const& r : P.relators) {
      for (Coset c = 1; c <= static_cast<Coset>(N); ++c) {
        if (trace(T, c, r) != c) {
          return "relator does not close at coset " + std::to_string(c);
        }
      }
    }
    for (auto const& s : T.subgroup_words) {
      if (s.max_generator() > n || trace(T, 1, s) != 1) {
        return std::string("subgroup word does not fix coset 1");
      }
    }
    std::vector<bool> seen(N, false);
    std::vector<Coset> stack{1};
    seen[0]            = true;
    std::size_t count  = 1;
    while (!stack.empty()) {
      Coset c = stack.back();
      stack.pop_back();
      for (Coset d : T.rows[static_cast<std::size_t>(c - 1)]) {
        if (!seen[static_cast<std::size_t>(d - 1)]) {
          seen[static_cast<std::size_t>(d - 1)] = true;
          ++count;
          stack.push_back(d);
        }
      }
    }
    if (count != N) {
      return std::string("action is not transitive");
    }
    return std::nullopt;
  }

  // Renumbers cosets in breadth-first discovery order from coset 1,
  // scanning columns in table order. Tables in this form are canonical: two
  // complete tables define the same subgroup iff they are equal.
  inline CosetTable standardize(CosetTable const& T) {
    detail::require_complete(T);
    std::size_t const  N = T.index();
    std::vector<Coset> new_of(N + 1, 0), old_of;
    old_of.reserve(N);
    new_of[1] = 1;
    old_of.push_back(1);
    for (std::size_t i = 0; i < old_of.size(); ++i) {
      for (Coset d : T.rows[static_cast<std::size_t>(old_of[i] - 1)]) {
        if (new_of[static_cast<std::size_t>(d)] == 0) {
          old_of.push_back(d);
          new_of[static_cast<std::size_t>(d)] = static_cast<Coset>(old_of.size());
        }
      }
    }
    CosetTable out;
    out.n_generators   = T.n_generators;
    out.complete       = true;
    out.subgroup_words = T.subgroup_words;
    for (Coset old : old_of) {
      std::vector<Coset> row;
      for (Coset d : T.rows[static_cast<std::size_t>(old - 1)]) {
        row.push_back(new_of[static_cast<std::size_t>(d)]);
      }
      out.rows.push_back(std::move(row));
    }
    return out;
  }

  inline bool is_standard(CosetTable const& T) {
    return standardize(T).rows == T.rows;
  }

  // "cosets N gens n" followed by one line of 2n entries per coset.
  inline std::string dump_table(CosetTable const& T) {
    std::ostringstream os;
    os << "cosets " << T.index() << " gens " << T.n_generators << '\n';
    for (auto const& row : T.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i == 0 ? "" : " ") << row[i];
      }
      os << '\n';
    }
    return os.str();
  }

}  // namespace pdef
