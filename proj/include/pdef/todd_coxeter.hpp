#pragma once

// HLT coset enumeration with deduction processing, lookahead on overflow
// and union-find coincidence handling.
//
// Coset 0 is the subgroup internally; tables are returned 1-based and in
// standard (breadth-first) order.

#include <cstddef>
#include <numeric>
#include <utility>
#include <variant>
#include <vector>

#include "pdef/coset_table.hpp"
#include "pdef/presentation.hpp"
#include "pdef/word.hpp"

namespace pdef {

  inline constexpr std::size_t default_max_cosets = 100000;

  // The enumeration needed more than max_cosets simultaneous cosets. The
  // index is unknown or larger than the bound; this says nothing about
  // finiteness.
  struct Exhausted {
    std::size_t max_cosets;
  };

  using EnumerationResult = std::variant<CosetTable, Exhausted>;

  namespace detail {

    class HltEnumerator {
     public:
      HltEnumerator(Presentation const&      P,
                    std::vector<Word> const& subgroup_words,
                    std::size_t              max_cosets)
          : ncols_(2 * P.num_generators()),
            max_cosets_(max_cosets),
            subgroup_(subgroup_words) {
        for (auto const& r : P.relators) {
          Word core = cyclic_reduce(r).core;
          if (!core.empty()) {
            relators_.push_back(columns(core));
          }
        }
        for (auto const& s : subgroup_words) {
          reduce(s.letters(), P.num_generators());  // validates the alphabet
          if (!s.empty()) {
            subgroup_cols_.push_back(columns(s));
          }
        }
        // every rotation of every relator and its inverse, by first column
        rotations_.resize(ncols_);
        for (auto const& r : P.relators) {
          Word core = cyclic_reduce(r).core;
          if (core.empty()) {
            continue;
          }
          for (Word const& w : {core, core.inverse()}) {
            auto cols = columns(w);
            for (std::size_t s = 0; s < cols.size(); ++s) {
              std::vector<std::size_t> rot;
              for (std::size_t i = 0; i < cols.size(); ++i) {
                rot.push_back(cols[(s + i) % cols.size()]);
              }
              rotations_[rot.front()].push_back(std::move(rot));
            }
          }
        }
        new_row();
      }

      EnumerationResult run() {
        if (ncols_ == 0) {
          return finish();
        }
        for (auto const& s : subgroup_cols_) {
          while (!scan_and_fill(0, s)) {
            if (!make_room()) {
              return Exhausted{max_cosets_};
            }
          }
          process_deductions();
        }
        do {
          for (int c = 0; c < num_rows(); ++c) {
            if (!live(c)) {
              continue;
            }
            if (!close_row(c)) {
              return Exhausted{max_cosets_};
            }
            process_deductions();
          }
        } while (!all_defined());
        return finish();
      }

     private:
      // Scans every relator at c, then defines the row's missing entries.
      // After a compaction `c` is remapped; if it died the row is done.
      bool close_row(int& c) {
        std::size_t r = 0, x = 0;
        while (live(c) && r < relators_.size()) {
          if (scan_and_fill(c, relators_[r])) {
            ++r;
          } else if (!make_room(&c)) {
            return false;
          } else if (c < 0) {
            c = -1;
            return true;
          }
        }
        while (live(c) && x < ncols_) {
          if (entry(c, x) >= 0 || define(c, x)) {
            ++x;
          } else if (!make_room(&c)) {
            return false;
          } else if (c < 0) {
            c = -1;
            return true;
          }
        }
        return true;
      }

      bool all_defined() {
        for (int c = 0; c < num_rows(); ++c) {
          if (!live(c)) {
            continue;
          }
          for (std::size_t x = 0; x < ncols_; ++x) {
            if (entry(c, x) < 0) {
              return false;
            }
          }
        }
        return true;
      }

      std::vector<std::size_t> columns(Word const& w) const {
        std::vector<std::size_t> cols;
        for (Letter x : w) {
          cols.push_back(column_of(x));
        }
        return cols;
      }

      int num_rows() const noexcept {
        return static_cast<int>(forward_.size());
      }
      bool live(int c) const noexcept {
        return forward_[static_cast<std::size_t>(c)] == c;
      }
      int& entry(int c, std::size_t x) {
        return table_[static_cast<std::size_t>(c) * ncols_ + x];
      }

      void new_row() {
        table_.resize(table_.size() + ncols_, -1);
        forward_.push_back(num_rows());
        ++n_live_;
      }

      bool define(int c, std::size_t x) {
        if (static_cast<std::size_t>(num_rows()) >= max_cosets_) {
          return false;
        }
        int d = num_rows();
        new_row();
        entry(c, x)     = d;
        entry(d, x ^ 1) = c;
        deductions_.emplace_back(c, x);
        return true;
      }

      void deduce(int c, std::size_t x, int d) {
        entry(c, x)     = d;
        entry(d, x ^ 1) = c;
        if (deductions_.size() < 4 * max_cosets_) {
          deductions_.emplace_back(c, x);
        }
      }

      // Scan w from coset c, defining new cosets as needed. Returns false
      // only when a definition failed for lack of room.
      bool scan_and_fill(int c, std::vector<std::size_t> const& w) {
        std::size_t i = 0, j = w.size();
        int         f = c, b = c;
        while (true) {
          while (i < j && entry(f, w[i]) >= 0) {
            f = entry(f, w[i++]);
          }
          if (i == j) {
            if (f != b) {
              coincidence(f, b);
            }
            return true;
          }
          while (j > i && entry(b, w[j - 1] ^ 1) >= 0) {
            b = entry(b, w[--j] ^ 1);
          }
          if (i == j) {
            coincidence(f, b);
            return true;
          }
          if (j == i + 1) {
            deduce(f, w[i], b);
            return true;
          }
          if (!define(f, w[i])) {
            return false;
          }
        }
      }

      // Scan without defining; records deductions and coincidences.
      void scan(int c, std::vector<std::size_t> const& w) {
        std::size_t i = 0, j = w.size();
        int         f = c, b = c;
        while (i < j && entry(f, w[i]) >= 0) {
          f = entry(f, w[i++]);
        }
        if (i == j) {
          if (f != b) {
            coincidence(f, b);
          }
          return;
        }
        while (j > i && entry(b, w[j - 1] ^ 1) >= 0) {
          b = entry(b, w[--j] ^ 1);
        }
        if (i == j) {
          coincidence(f, b);
        } else if (j == i + 1) {
          deduce(f, w[i], b);
        }
      }

      void process_deductions() {
        while (!deductions_.empty()) {
          auto [c, x] = deductions_.back();
          deductions_.pop_back();
          if (!live(c)) {
            continue;
          }
          for (auto const& rot : rotations_[x]) {
            if (!live(c)) {
              break;
            }
            scan(c, rot);
          }
          int d = entry(c, x);
          if (d < 0 || !live(d)) {
            continue;
          }
          for (auto const& rot : rotations_[x ^ 1]) {
            if (!live(d)) {
              break;
            }
            scan(d, rot);
          }
        }
      }

      int rep(int c) {
        int r = c;
        while (forward_[static_cast<std::size_t>(r)] != r) {
          r = forward_[static_cast<std::size_t>(r)];
        }
        while (forward_[static_cast<std::size_t>(c)] != r) {
          int next = forward_[static_cast<std::size_t>(c)];
          forward_[static_cast<std::size_t>(c)] = r;
          c = next;
        }
        return r;
      }

      void merge(int a, int b, std::vector<int>& queue) {
        a = rep(a);
        b = rep(b);
        if (a == b) {
          return;
        }
        if (a > b) {
          std::swap(a, b);
        }
        forward_[static_cast<std::size_t>(b)] = a;
        --n_live_;
        queue.push_back(b);
      }

      void coincidence(int a, int b) {
        std::vector<int> queue;
        merge(a, b, queue);
        for (std::size_t q = 0; q < queue.size(); ++q) {
          int e = queue[q];
          for (std::size_t x = 0; x < ncols_; ++x) {
            int f = entry(e, x);
            if (f < 0) {
              continue;
            }
            entry(f, x ^ 1) = -1;
            int e1 = rep(e), f1 = rep(f);
            if (entry(e1, x) >= 0) {
              merge(f1, entry(e1, x), queue);
            } else if (entry(f1, x ^ 1) >= 0) {
              merge(e1, entry(f1, x ^ 1), queue);
            } else {
              entry(e1, x)     = f1;
              entry(f1, x ^ 1) = e1;
              deductions_.emplace_back(e1, x);
            }
          }
        }
      }

      // Frees rows by lookahead and compaction. `cursor`, when given, is
      // the HLT position; it is remapped, or set to -1 when the row it
      // pointed at died (the caller then restarts the scan).
      bool make_room(int* cursor = nullptr) {
        if (n_live_ == static_cast<std::size_t>(num_rows())) {
          for (int c = 0; c < num_rows(); ++c) {
            for (auto const& r : relators_) {
              if (!live(c)) {
                break;
              }
              scan(c, r);
            }
            process_deductions();
          }
        }
        if (n_live_ == static_cast<std::size_t>(num_rows())) {
          return false;
        }
        compact(cursor);
        return true;
      }

      void compact(int* cursor) {
        std::vector<int> new_of(forward_.size(), -1);
        int              next = 0;
        for (int c = 0; c < num_rows(); ++c) {
          if (live(c)) {
            new_of[static_cast<std::size_t>(c)] = next++;
          }
        }
        std::vector<int> table(static_cast<std::size_t>(next) * ncols_, -1);
        for (int c = 0; c < num_rows(); ++c) {
          int nc = new_of[static_cast<std::size_t>(c)];
          if (nc < 0) {
            continue;
          }
          for (std::size_t x = 0; x < ncols_; ++x) {
            int d = entry(c, x);
            table[static_cast<std::size_t>(nc) * ncols_ + x]
                = d < 0 ? -1 : new_of[static_cast<std::size_t>(d)];
          }
        }
        if (cursor != nullptr) {
          *cursor = new_of[static_cast<std::size_t>(*cursor)];
        }
        std::vector<std::pair<int, std::size_t>> deductions;
        for (auto [c, x] : deductions_) {
          if (live(c)) {
            deductions.emplace_back(new_of[static_cast<std::size_t>(c)], x);
          }
        }
        deductions_ = std::move(deductions);
        table_      = std::move(table);
        forward_.resize(static_cast<std::size_t>(next));
        std::iota(forward_.begin(), forward_.end(), 0);
        n_live_ = static_cast<std::size_t>(next);
      }

      EnumerationResult finish() {
        compact(nullptr);
        CosetTable T;
        T.n_generators   = ncols_ / 2;
        T.complete       = true;
        T.subgroup_words = subgroup_;
        for (int c = 0; c < num_rows(); ++c) {
          std::vector<Coset> row;
          for (std::size_t x = 0; x < ncols_; ++x) {
            if (entry(c, x) < 0) {
              T.complete = false;
            }
            row.push_back(entry(c, x) + 1);
          }
          T.rows.push_back(std::move(row));
        }
        return T.complete ? standardize(T) : T;
      }

      std::size_t                                      ncols_;
      std::size_t                                      max_cosets_;
      std::vector<Word>                                subgroup_;
      std::vector<std::vector<std::size_t>>            relators_;
      std::vector<std::vector<std::size_t>>            subgroup_cols_;
      std::vector<std::vector<std::vector<std::size_t>>> rotations_;
      std::vector<int>                                 table_;
      std::vector<int>                                 forward_;
      std::size_t                                      n_live_ = 0;
      std::vector<std::pair<int, std::size_t>>         deductions_;
    };

  }  // namespace detail

  inline EnumerationResult todd_coxeter(Presentation const&      P,
                                        std::vector<Word> const& subgroup_words,
                                        std::size_t max_cosets = default_max_cosets) {
    if (max_cosets == 0) {
      throw Error("max_cosets must be at least 1");
    }
    return detail::HltEnumerator(P, subgroup_words, max_cosets).run();
  }

}  // namespace pdef
