#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pdef/error.hpp"
#include "pdef/numeric.hpp"

namespace pdef {

  class IntegerMatrix {
   public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

    IntegerMatrix(std::initializer_list<std::initializer_list<long long>> init)
        : rows_(init.size()), cols_(init.size() == 0 ? 0 : init.begin()->size()) {
      for (auto const& row : init) {
        if (row.size() != cols_) {
          throw Error("ragged matrix initializer");
        }
        for (long long v : row) {
          data_.emplace_back(v);
        }
      }
    }

    static IntegerMatrix identity(std::size_t n) {
      IntegerMatrix I(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        I(i, i) = 1;
      }
      return I;
    }

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }

    Integer& operator()(std::size_t i, std::size_t j) {
      return data_[i * cols_ + j];
    }
    Integer const& operator()(std::size_t i, std::size_t j) const {
      return data_[i * cols_ + j];
    }

    friend IntegerMatrix operator*(IntegerMatrix const& a, IntegerMatrix const& b) {
      if (a.cols_ != b.rows_) {
        throw Error("matrix dimensions do not match");
      }
      IntegerMatrix c(a.rows_, b.cols_);
      for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
          if (a(i, k) == 0) {
            continue;
          }
          for (std::size_t j = 0; j < b.cols_; ++j) {
            c(i, j) += a(i, k) * b(k, j);
          }
        }
      }
      return c;
    }

    friend bool operator==(IntegerMatrix const&, IntegerMatrix const&) = default;

   private:
    std::size_t          rows_ = 0;
    std::size_t          cols_ = 0;
    std::vector<Integer> data_;
  };

  struct SmithForm {
    // d_1 | d_2 | ... | d_k, k = min(rows, cols), zeros last.
    std::vector<Integer> invariant_factors;
    // Present when requested: U * M * V == diag(invariant_factors), with U
    // and V unimodular.
    std::optional<IntegerMatrix> U;
    std::optional<IntegerMatrix> V;
  };

  namespace detail {

    class SmithReducer {
     public:
      SmithReducer(IntegerMatrix M, bool track)
          : M_(std::move(M)),
            track_(track),
            U_(IntegerMatrix::identity(M_.rows())),
            V_(IntegerMatrix::identity(M_.cols())) {}

      SmithForm run() {
        std::size_t const k = std::min(M_.rows(), M_.cols());
        for (std::size_t t = 0; t < k; ++t) {
          if (!move_smallest_to(t)) {
            break;
          }
          while (!settle_pivot(t)) {
          }
          if (M_(t, t) < 0) {
            negate_row(t);
          }
        }
        SmithForm out;
        for (std::size_t t = 0; t < k; ++t) {
          out.invariant_factors.push_back(M_(t, t));
        }
        if (track_) {
          out.U = std::move(U_);
          out.V = std::move(V_);
        }
        return out;
      }

     private:
      // Smallest nonzero |entry| in the block [t.., t..] moved to (t, t).
      bool move_smallest_to(std::size_t t) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < M_.rows(); ++i) {
          for (std::size_t j = t; j < M_.cols(); ++j) {
            if (M_(i, j) != 0
                && (!best || abs(M_(i, j)) < abs(M_(best->first, best->second)))) {
              best = std::make_pair(i, j);
            }
          }
        }
        if (!best) {
          return false;
        }
        swap_rows(t, best->first);
        swap_cols(t, best->second);
        return true;
      }

      // One round of clearing row and column t; true once (t, t) is the
      // only nonzero entry in both and divides the remaining block.
      bool settle_pivot(std::size_t t) {
        Integer const p = M_(t, t);
        bool          clean = true;
        for (std::size_t i = t + 1; i < M_.rows(); ++i) {
          if (M_(i, t) != 0) {
            Integer q = M_(i, t) / p;
            if (q != 0) {
              add_row(i, t, -q);
            }
            clean = clean && M_(i, t) == 0;
          }
        }
        for (std::size_t j = t + 1; j < M_.cols(); ++j) {
          if (M_(t, j) != 0) {
            Integer q = M_(t, j) / p;
            if (q != 0) {
              add_col(j, t, -q);
            }
            clean = clean && M_(t, j) == 0;
          }
        }
        if (!clean) {
          move_smallest_in_cross(t);
          return false;
        }
        for (std::size_t i = t + 1; i < M_.rows(); ++i) {
          for (std::size_t j = t + 1; j < M_.cols(); ++j) {
            if (M_(i, j) % p != 0) {
              add_row(t, i, Integer(1));
              return false;
            }
          }
        }
        return true;
      }

      // Remainders left in row/column t are smaller than the pivot; bring
      // the smallest one to (t, t).
      void move_smallest_in_cross(std::size_t t) {
        std::size_t bi = t, bj = t;
        Integer     best = abs(M_(t, t));
        for (std::size_t i = t + 1; i < M_.rows(); ++i) {
          if (M_(i, t) != 0 && abs(M_(i, t)) < best) {
            best = abs(M_(i, t));
            bi   = i;
            bj   = t;
          }
        }
        for (std::size_t j = t + 1; j < M_.cols(); ++j) {
          if (M_(t, j) != 0 && abs(M_(t, j)) < best) {
            best = abs(M_(t, j));
            bi   = t;
            bj   = j;
          }
        }
        swap_rows(t, bi);
        swap_cols(t, bj);
      }

      void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) {
          return;
        }
        for (std::size_t j = 0; j < M_.cols(); ++j) {
          std::swap(M_(a, j), M_(b, j));
        }
        if (track_) {
          for (std::size_t j = 0; j < U_.cols(); ++j) {
            std::swap(U_(a, j), U_(b, j));
          }
        }
      }

      void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) {
          return;
        }
        for (std::size_t i = 0; i < M_.rows(); ++i) {
          std::swap(M_(i, a), M_(i, b));
        }
        if (track_) {
          for (std::size_t i = 0; i < V_.rows(); ++i) {
            std::swap(V_(i, a), V_(i, b));
          }
        }
      }

      // row[dst] += q * row[src]
      void add_row(std::size_t dst, std::size_t src, Integer const& q) {
        for (std::size_t j = 0; j < M_.cols(); ++j) {
          M_(dst, j) += q * M_(src, j);
        }
        if (track_) {
          for (std::size_t j = 0; j < U_.cols(); ++j) {
            U_(dst, j) += q * U_(src, j);
          }
        }
      }

      // col[dst] += q * col[src]
      void add_col(std::size_t dst, std::size_t src, Integer const& q) {
        for (std::size_t i = 0; i < M_.rows(); ++i) {
          M_(i, dst) += q * M_(i, src);
        }
        if (track_) {
          for (std::size_t i = 0; i < V_.rows(); ++i) {
            V_(i, dst) += q * V_(i, src);
          }
        }
      }

      void negate_row(std::size_t t) {
        for (std::size_t j = 0; j < M_.cols(); ++j) {
          M_(t, j) = -M_(t, j);
        }
        if (track_) {
          for (std::size_t j = 0; j < U_.cols(); ++j) {
            U_(t, j) = -U_(t, j);
          }
        }
      }

      IntegerMatrix M_;
      bool          track_;
      IntegerMatrix U_;
      IntegerMatrix V_;
    };

  }  // namespace detail

  inline SmithForm smith_normal_form(IntegerMatrix M, bool with_transforms = false) {
    return detail::SmithReducer(std::move(M), with_transforms).run();
  }

}  // namespace pdef
