#pragma once

#include <cctype>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pdef/error.hpp"
#include "pdef/numeric.hpp"
#include "pdef/word.hpp"

namespace pdef {

  inline bool is_identifier(std::string const& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
      return false;
    }
    for (char c : name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
        return false;
      }
    }
    return true;
  }

  // <generator_names | relators>. Relators are stored freely reduced and
  // only use generators 1..generator_names.size().
  struct Presentation {
    std::vector<std::string> generator_names;
    std::vector<Word>        relators;

    std::size_t num_generators() const noexcept {
      return generator_names.size();
    }
    std::size_t num_relators() const noexcept {
      return relators.size();
    }

    // Index (1-based) of a generator name, 0 when absent.
    std::size_t generator_index(std::string const& name) const {
      for (std::size_t i = 0; i < generator_names.size(); ++i) {
        if (generator_names[i] == name) {
          return i + 1;
        }
      }
      return 0;
    }

    friend bool operator==(Presentation const&, Presentation const&)
        = default;
  };

  // Generators named x1..xn.
  inline Presentation make_presentation(std::size_t       n,
                                        std::vector<Word> relators) {
    Presentation P;
    for (std::size_t i = 1; i <= n; ++i) {
      P.generator_names.push_back("x" + std::to_string(i));
    }
    P.relators = std::move(relators);
    return P;
  }

  inline void validate(Presentation const& P) {
    for (std::size_t i = 0; i < P.generator_names.size(); ++i) {
      if (!is_identifier(P.generator_names[i])) {
        throw Error("invalid generator name \"" + P.generator_names[i]
                    + "\"");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (P.generator_names[i] == P.generator_names[j]) {
          throw Error("duplicate generator \"" + P.generator_names[i]
                      + "\"");
        }
      }
    }
    for (auto const& r : P.relators) {
      if (r.max_generator() > P.num_generators()) {
        throw UnknownGenerator("relator uses a generator outside the "
                               "presentation");
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Deficiency
  ////////////////////////////////////////////////////////////////////////

  struct RelatorValuation {
    std::size_t relator;  // 0-based index into Presentation::relators
    Valuation   nu;
    Rational    contribution;  // p^-nu, 0 when nu is infinite
  };

  // def_p of one presentation (not the supremum over all presentations of
  // the group).
  struct DeficiencyReport {
    long long                     p = 0;
    Rational                      value;
    std::vector<RelatorValuation> per_relator;
  };

  inline DeficiencyReport p_deficiency(Presentation const& P, long long p) {
    if (!is_prime(p)) {
      throw NotPrime(p);
    }
    DeficiencyReport report;
    report.p     = p;
    report.value = Rational(P.num_generators());
    for (std::size_t i = 0; i < P.relators.size(); ++i) {
      Valuation nu = nu_p(P.relators[i], p);
      Rational  contribution(0);
      if (nu) {
        contribution = Rational(1, boost::multiprecision::pow(Integer(p), *nu));
      }
      report.value -= contribution;
      report.per_relator.push_back({i, nu, contribution});
    }
    return report;
  }

  inline long long deficiency_count(Presentation const& P) noexcept {
    return static_cast<long long>(P.num_generators())
           - static_cast<long long>(P.num_relators());
  }

  inline Presentation quotient_by_words(Presentation             P,
                                        std::vector<Word> const& extra) {
    for (auto const& w : extra) {
      P.relators.push_back(reduce(w.letters(), P.num_generators()));
    }
    return P;
  }

  ////////////////////////////////////////////////////////////////////////
  // Canonical printer
  ////////////////////////////////////////////////////////////////////////

  // Letters joined by '*', runs of one letter collapsed to name^k. The
  // empty word prints as 1.
  inline std::string to_string(Word const&                     w,
                               std::vector<std::string> const& names) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    auto        letters = w.letters();
    for (std::size_t i = 0; i < letters.size();) {
      std::size_t j = i;
      while (j < letters.size() && letters[j] == letters[i]) {
        ++j;
      }
      long long run = static_cast<long long>(j - i);
      if (letters[i] < 0) {
        run = -run;
      }
      if (!out.empty()) {
        out += '*';
      }
      out += names.at(generator_of(letters[i]) - 1);
      if (run != 1) {
        out += '^' + std::to_string(run);
      }
      i = j;
    }
    return out;
  }

  inline std::string to_string(Presentation const& P) {
    std::string out = "gens:";
    for (std::size_t i = 0; i < P.generator_names.size(); ++i) {
      out += (i == 0 ? " " : ", ") + P.generator_names[i];
    }
    out += '\n';
    for (auto const& r : P.relators) {
      out += "rel: " + to_string(r, P.generator_names) + '\n';
    }
    return out;
  }

  inline std::ostream& operator<<(std::ostream& os, Presentation const& P) {
    return os << to_string(P);
  }

}  // namespace pdef
