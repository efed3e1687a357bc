#pragma once

// Subgroups of index at most n, by backtracking over partial coset tables.
//
// Entries are decided in row-major order; a decision either points at an
// existing coset or opens the next unused one. Each decision is followed
// by relator scans that deduce forced entries or reject the branch. New
// cosets are always introduced at the first open entry, so every complete
// table found is already in standard form, and distinct leaves of the
// search tree are distinct subgroups.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "pdef/coset_table.hpp"
#include "pdef/presentation.hpp"
#include "pdef/word.hpp"

namespace pdef {

  struct SubgroupRecord {
    CosetTable        table;
    std::size_t       index  = 0;
    bool              normal = false;
    std::vector<Word> schreier_generators;
  };

  inline bool canonical_less(SubgroupRecord const& a, SubgroupRecord const& b) {
    if (a.index != b.index) {
      return a.index < b.index;
    }
    return flatten(a.table) < flatten(b.table);
  }

  // Builds the record for a complete standard table: the subgroup words are
  // the stabilizer generators read off the breadth-first Schreier tree.
  inline SubgroupRecord make_subgroup_record(CosetTable table) {
    SubgroupRecord rec;
    table.subgroup_words    = stabilizer_generators(table);
    rec.schreier_generators = table.subgroup_words;
    rec.index               = table.index();
    rec.normal              = is_normal(table);
    rec.table               = std::move(table);
    return rec;
  }

  namespace detail {

    class LowIndexSearch {
     public:
      LowIndexSearch(Presentation const& P, std::size_t max_index)
          : ncols_(2 * P.num_generators()), max_index_(max_index) {
        rotations_.resize(ncols_);
        for (auto const& r : P.relators) {
          Word core = cyclic_reduce(r).core;
          if (core.empty()) {
            continue;
          }
          for (Word const& w : {core, core.inverse()}) {
            std::vector<std::size_t> cols;
            for (Letter x : w) {
              cols.push_back(column_of(x));
            }
            for (std::size_t s = 0; s < cols.size(); ++s) {
              std::vector<std::size_t> rot;
              for (std::size_t i = 0; i < cols.size(); ++i) {
                rot.push_back(cols[(s + i) % cols.size()]);
              }
              rotations_[rot.front()].push_back(std::move(rot));
            }
          }
        }
      }

      std::vector<CosetTable> run() {
        State s;
        s.table.assign(max_index_ * ncols_, -1);
        s.n = 1;
        search(s);
        return std::move(found_);
      }

     private:
      struct State {
        std::vector<int> table;
        std::size_t      n = 0;
      };

      int& at(State& s, int c, std::size_t x) const {
        return s.table[static_cast<std::size_t>(c) * ncols_ + x];
      }

      // Sets c.x = d (and d.x^-1 = c) and closes under relator scans.
      // Returns false on contradiction.
      bool assign(State& s, int c, std::size_t x, int d) const {
        if (at(s, c, x) >= 0 || at(s, d, x ^ 1) >= 0) {
          return false;
        }
        std::vector<std::pair<int, std::size_t>> queue{{c, x}};
        at(s, c, x)     = d;
        at(s, d, x ^ 1) = c;
        while (!queue.empty()) {
          auto [e, y] = queue.back();
          queue.pop_back();
          int f = at(s, e, y);
          for (auto [start, col] : {std::pair{e, y}, std::pair{f, y ^ 1}}) {
            for (auto const& rot : rotations_[col]) {
              if (!scan(s, start, rot, queue)) {
                return false;
              }
            }
          }
        }
        return true;
      }

      bool scan(State&                                    s,
                int                                       c,
                std::vector<std::size_t> const&           w,
                std::vector<std::pair<int, std::size_t>>& queue) const {
        std::size_t i = 0, j = w.size();
        int         f = c, b = c;
        while (i < j && at(s, f, w[i]) >= 0) {
          f = at(s, f, w[i++]);
        }
        if (i == j) {
          return f == b;
        }
        while (j > i && at(s, b, w[j - 1] ^ 1) >= 0) {
          b = at(s, b, w[--j] ^ 1);
        }
        if (i == j) {
          return f == b;
        }
        if (j == i + 1) {
          if (at(s, f, w[i]) >= 0 || at(s, b, w[i] ^ 1) >= 0) {
            return false;
          }
          at(s, f, w[i])     = b;
          at(s, b, w[i] ^ 1) = f;
          queue.emplace_back(f, w[i]);
        }
        return true;
      }

      void search(State const& s) {
        std::size_t slot = 0, limit = s.n * ncols_;
        while (slot < limit && s.table[slot] >= 0) {
          ++slot;
        }
        if (slot == limit) {
          record(s);
          return;
        }
        int         c = static_cast<int>(slot / ncols_);
        std::size_t x = slot % ncols_;
        for (std::size_t d = 0; d <= s.n && d < max_index_; ++d) {
          State next = s;
          if (d == s.n) {
            ++next.n;
          }
          if (assign(next, c, x, static_cast<int>(d))) {
            search(next);
          }
        }
      }

      void record(State const& s) {
        CosetTable T;
        T.n_generators = ncols_ / 2;
        T.complete     = true;
        for (std::size_t c = 0; c < s.n; ++c) {
          std::vector<Coset> row;
          for (std::size_t x = 0; x < ncols_; ++x) {
            row.push_back(s.table[c * ncols_ + x] + 1);
          }
          T.rows.push_back(std::move(row));
        }
        found_.push_back(std::move(T));
      }

      std::size_t                                        ncols_;
      std::size_t                                        max_index_;
      std::vector<std::vector<std::vector<std::size_t>>> rotations_;
      std::vector<CosetTable>                            found_;
    };

  }  // namespace detail

  // Every subgroup of index <= max_index (one record per subgroup, not per
  // conjugacy class), sorted by index and then by flattened table.
  inline std::vector<SubgroupRecord> low_index_subgroups(Presentation const& P,
                                                         std::size_t max_index) {
    std::vector<SubgroupRecord> out;
    if (max_index == 0) {
      return out;
    }
    if (P.num_generators() == 0) {
      CosetTable T;
      T.complete = true;
      T.rows.emplace_back();
      out.push_back(make_subgroup_record(std::move(T)));
      return out;
    }
    for (auto& T : detail::LowIndexSearch(P, max_index).run()) {
      out.push_back(make_subgroup_record(std::move(T)));
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
  }

  inline std::vector<SubgroupRecord> low_index_normal(Presentation const& P,
                                                      std::size_t max_index) {
    auto all = low_index_subgroups(P, max_index);
    std::vector<SubgroupRecord> out;
    for (auto& rec : all) {
      if (rec.normal) {
        out.push_back(std::move(rec));
      }
    }
    return out;
  }

}  // namespace pdef
