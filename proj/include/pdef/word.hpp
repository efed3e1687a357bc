#pragma once

// Free-group words over a finite alphabet.
//
// A letter is a nonzero int: +g is the g-th generator (1-based), -g its
// inverse. A Word is always freely reduced; every constructor path goes
// through free reduction.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdef/error.hpp"

namespace pdef {

  using Letter = int;

  constexpr std::size_t generator_of(Letter x) noexcept {
    return static_cast<std::size_t>(x < 0 ? -x : x);
  }

  class Word {
   public:
    Word() = default;

    // Freely reduces `raw`. Letters must be nonzero; no alphabet check.
    explicit Word(std::span<Letter const> raw) {
      letters_.reserve(raw.size());
      for (Letter x : raw) {
        push_back(x);
      }
    }

    Word(std::initializer_list<Letter> raw)
        : Word(std::span<Letter const>(raw.begin(), raw.size())) {}

    static Word letter(Letter x) {
      return Word({x});
    }

    std::span<Letter const> letters() const noexcept {
      return letters_;
    }
    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    Letter operator[](std::size_t i) const noexcept {
      return letters_[i];
    }
    auto begin() const noexcept {
      return letters_.begin();
    }
    auto end() const noexcept {
      return letters_.end();
    }
    Letter front() const noexcept {
      return letters_.front();
    }
    Letter back() const noexcept {
      return letters_.back();
    }

    // Appends a letter with free cancellation.
    void push_back(Letter x) {
      if (x == 0) {
        throw Error("letter 0 is not a generator");
      }
      if (!letters_.empty() && letters_.back() == -x) {
        letters_.pop_back();
      } else {
        letters_.push_back(x);
      }
    }

    Word inverse() const {
      Word result;
      result.letters_.reserve(size());
      for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
        result.letters_.push_back(-*it);
      }
      return result;
    }

    // Largest generator index occurring, 0 for the empty word.
    std::size_t max_generator() const noexcept {
      std::size_t m = 0;
      for (Letter x : letters_) {
        m = std::max(m, generator_of(x));
      }
      return m;
    }

    friend Word operator*(Word lhs, Word const& rhs) {
      for (Letter x : rhs.letters_) {
        lhs.push_back(x);
      }
      return lhs;
    }

    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const& a, Word const& b) {
      return a.letters_ <=> b.letters_;
    }

   private:
    std::vector<Letter> letters_;
  };

  // Free reduction with an alphabet check: every letter must name one of
  // the generators 1..alphabet_size.
  inline Word reduce(std::span<Letter const> raw, std::size_t alphabet_size) {
    for (Letter x : raw) {
      if (x == 0 || generator_of(x) > alphabet_size) {
        throw UnknownGenerator("generator index " + std::to_string(x)
                               + " outside alphabet of size "
                               + std::to_string(alphabet_size));
      }
    }
    return Word(raw);
  }

  inline Word word_power(Word const& w, long long n) {
    Word base = n < 0 ? w.inverse() : w;
    Word result;
    for (long long i = 0, m = n < 0 ? -n : n; i < m; ++i) {
      result = std::move(result) * base;
    }
    return result;
  }

  struct CyclicReduction {
    Word conjugator;
    Word core;
  };

  // w = conjugator * core * conjugator^-1 with core cyclically reduced.
  inline CyclicReduction cyclic_reduce(Word const& w) {
    auto        letters = w.letters();
    std::size_t i = 0, j = letters.size();
    while (j - i >= 2 && letters[i] == -letters[j - 1]) {
      ++i;
      --j;
    }
    return {Word(letters.subspan(0, i)), Word(letters.subspan(i, j - i))};
  }

  inline bool is_cyclically_reduced(Word const& w) {
    return w.size() < 2 || w.front() != -w.back();
  }

  struct RootDecomposition {
    // root^exponent == w. For the empty word the root is empty and the
    // exponent is the unbounded marker 0.
    Word        root;
    std::size_t exponent = 0;
    // conjugator * cyclic_root^exponent * conjugator^-1 == w, with
    // cyclic_root cyclically reduced and root = conjugator * cyclic_root *
    // conjugator^-1.
    Word conjugator;
    Word cyclic_root;

    bool is_unbounded() const noexcept {
      return exponent == 0;
    }
  };

  // Maximal root of w in the free group. A word of length n with period d
  // has d | n, so only divisors of the cyclic core length are tried.
  inline RootDecomposition primitive_root(Word const& w) {
    auto [conjugator, core] = cyclic_reduce(w);
    if (core.empty()) {
      return {};
    }
    auto const  c = core.letters();
    std::size_t n = c.size();
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = d; i < n && periodic; ++i) {
        periodic = c[i] == c[i - d];
      }
      if (periodic) {
        Word cyclic_root(c.subspan(0, d));
        Word root = conjugator * cyclic_root * conjugator.inverse();
        return {std::move(root), n / d, std::move(conjugator),
                std::move(cyclic_root)};
      }
    }
    return {};  // unreachable: d = n is always a period
  }

  inline bool is_prime(long long p) noexcept {
    if (p < 2) {
      return false;
    }
    for (long long d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        return false;
      }
    }
    return true;
  }

  // p-adic valuation; n must be nonzero.
  inline unsigned p_adic_valuation(std::uint64_t n, std::uint64_t p) {
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    return k;
  }

  // Extended natural number; std::nullopt is infinity.
  using Valuation = std::optional<unsigned>;

  // Largest k such that w is a p^k-th power in the free group.
  inline Valuation nu_p(Word const& w, long long p) {
    if (!is_prime(p)) {
      throw NotPrime(p);
    }
    auto rd = primitive_root(w);
    if (rd.is_unbounded()) {
      return std::nullopt;
    }
    return p_adic_valuation(rd.exponent, static_cast<std::uint64_t>(p));
  }

}  // namespace pdef
