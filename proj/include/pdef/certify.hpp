#pragma once

// Certificate-producing procedures and the independent verifier.
//
// Every procedure returns a Certificate whose `verified` flag is the result
// of re-checking its payload with find_certificate_defect. Inconclusive
// certificates record the attempted kind and its parameters; verifying one
// re-runs the attempt and demands the identical outcome.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pdef/abelianization.hpp"
#include "pdef/certificate.hpp"
#include "pdef/coset_table.hpp"
#include "pdef/low_index.hpp"
#include "pdef/parser.hpp"
#include "pdef/presentation.hpp"
#include "pdef/rewriting.hpp"
#include "pdef/tietze.hpp"
#include "pdef/todd_coxeter.hpp"
#include "pdef/word.hpp"

namespace pdef {

  inline constexpr std::size_t default_tietze_budget = 10000;

  std::optional<std::string> find_certificate_defect(Certificate const& c);

  inline bool verify(Certificate const& c) {
    return !find_certificate_defect(c).has_value();
  }

  namespace detail {

    std::optional<std::string> content_defect(Certificate const& c);

    inline Certificate seal(Certificate c) {
      c.verified = !content_defect(c).has_value();
      return c;
    }

    inline Certificate inconclusive(CertificateKind    attempted,
                                    nlohmann::json     parameters,
                                    std::string const& reason) {
      Certificate c;
      c.kind                    = CertificateKind::Inconclusive;
      parameters["attempted"]   = to_string(attempted);
      parameters["reason"]      = reason;
      c.parameters              = std::move(parameters);
      return c;
    }

    inline Integer ceil(Rational const& q) {
      Integer num = boost::multiprecision::numerator(q);
      Integer den = boost::multiprecision::denominator(q);
      Integer fl  = num / den;
      if (num % den != 0 && num > 0) {
        fl += 1;
      }
      return fl;
    }

    inline bool is_power_of(std::size_t n, long long p) {
      while (n > 1 && n % static_cast<std::size_t>(p) == 0) {
        n /= static_cast<std::size_t>(p);
      }
      return n == 1;
    }

    inline std::vector<Conclusion> deficiency_conclusions(long long p) {
      auto ps = std::to_string(p);
      return {{"presentation has " + ps + "-deficiency > 1, so the group is "
                   + ps + "-large",
               "Thm 1.2"},
              {"the group is large", "Thm 1.2"},
              {"the group is not torsion", "Cor 2.1"},
              {"the group does not have property (T)", "Cor 2.2"}};
    }

    inline std::vector<Conclusion> allcock_conclusions(Integer const& k,
                                                       std::size_t    measured) {
      std::vector<Conclusion> out{
          {"rank of H^ab >= " + k.str(), "Thm 1.1"},
          {"measured rank of H^ab is " + std::to_string(measured), "witness"}};
      if (k >= 1) {
        out.push_back({"H surjects onto Z", "Thm 1.1"});
        out.push_back({"the group does not have property (T)", "Cor 2.2"});
      }
      return out;
    }

    inline std::vector<Conclusion> z_surjection_conclusions(std::size_t index) {
      return {{"normal subgroup H of index " + std::to_string(index)
                   + " surjects onto Z",
               "Thm 1.3"},
              {"the group is not torsion", "Cor 2.1"},
              {"the group does not have property (T)", "Cor 2.2"}};
    }

    inline std::vector<Conclusion> free_quotient_conclusions(std::size_t rank) {
      return {{"the group has a free quotient of rank " + std::to_string(rank),
               "witness"},
              {"the group is large", "witness"}};
    }

    inline std::vector<Conclusion> p_large_conclusions(long long   p,
                                                       std::size_t index,
                                                       std::size_t rank) {
      auto ps = std::to_string(p);
      return {{"normal subgroup of index " + std::to_string(index)
                   + " has a free quotient of rank " + std::to_string(rank)
                   + ", so the group is " + ps + "-large",
               "witness"},
              {"the group is large", "witness"},
              {"the group is not torsion", "witness"}};
    }

    inline std::vector<Conclusion> power_quotient_conclusions(std::size_t r,
                                                              std::size_t k,
                                                              std::size_t q,
                                                              long long   p) {
      return {{"F_" + std::to_string(r) + "/<<g_1^" + std::to_string(q)
                   + ", ..., g_" + std::to_string(k) + "^" + std::to_string(q)
                   + ">> is " + std::to_string(p) + "-large",
               "Cor 2.5"},
              {"the quotient is large", "Cor 2.5"}};
    }

    inline std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n,
                                                               std::size_t max_size) {
      std::vector<std::vector<std::size_t>> out;
      for (std::size_t s = 0; s <= std::min(n, max_size); ++s) {
        std::vector<std::size_t> comb(s);
        for (std::size_t i = 0; i < s; ++i) {
          comb[i] = i;
        }
        while (true) {
          out.push_back(comb);
          std::size_t i = s;
          while (i > 0 && comb[i - 1] == n - s + i - 1) {
            --i;
          }
          if (i == 0) {
            break;
          }
          ++comb[i - 1];
          for (std::size_t j = i; j < s; ++j) {
            comb[j] = comb[j - 1] + 1;
          }
        }
      }
      return out;
    }

    inline bool is_free_presentation(Presentation const& Q) {
      return Q.num_generators() >= 2 && Q.num_relators() == 0;
    }

  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Procedures
  ////////////////////////////////////////////////////////////////////////

  namespace detail::unsealed {

  inline Certificate certify_p_large_by_deficiency(Presentation const& P, long long p) {
    auto        report = p_deficiency(P, p);
    Certificate c;
    if (report.value > 1) {
      c.kind        = CertificateKind::PLargeByDeficiency;
      c.parameters  = {{"p", p}};
      c.conclusions = deficiency_conclusions(p);
    } else {
      c = inconclusive(CertificateKind::PLargeByDeficiency,
                               {{"p", p}},
                               "p-deficiency of this presentation is not greater than 1");
    }
    c.presentation  = to_string(P);
    c.witness.bound = report.value;
    return c;
  }

  // Lower bound 1 + N(n - 1 - sum_j 1/r_j) on the rank of H^ab for a normal
  // subgroup H of index N, where relator j is u_j^{r_j} with r_j maximal and
  // no u_j^k with 0 < k < r_j lies in H. Empty relators are skipped.
  inline Certificate allcock_rank_bound(Presentation const& P, SubgroupRecord const& rec) {
    if (!rec.table.complete) {
      throw IncompleteTable();
    }
    if (!rec.normal) {
      throw Error("Allcock's bound needs a normal subgroup");
    }
    std::size_t const N = rec.index;
    std::size_t const n = P.num_generators();
    nlohmann::json    exponents = nlohmann::json::array();
    Rational          sum(0);
    std::optional<std::size_t> failing;
    for (std::size_t j = 0; j < P.relators.size(); ++j) {
      if (P.relators[j].empty()) {
        continue;
      }
      auto rd = primitive_root(P.relators[j]);
      exponents.push_back(rd.exponent);
      sum += Rational(1, rd.exponent);
      if (!failing && !power_survives(rec.table, rd.root, rd.exponent)) {
        failing = j;
      }
    }
    nlohmann::json params = {{"relator_exponents", exponents},
                             {"bound_formula", "1 + N*(n - 1 - sum_j 1/r_j)"}};
    Certificate    c;
    if (failing) {
      c = inconclusive(CertificateKind::AllcockBound,
                               params,
                               "hypothesis fails for relator "
                                   + std::to_string(*failing + 1)
                                   + ": a proper power of its root lies in H");
    } else {
      c.kind       = CertificateKind::AllcockBound;
      c.parameters = params;
      c.witness.bound
          = Rational(1) + Rational(N) * (Rational(n) - 1 - sum);
      auto measured                = abelian_invariants(reidemeister_schreier(P, rec.table));
      c.conclusions                = allcock_conclusions(ceil(*c.witness.bound),
                                                  measured.free_rank);
      c.witness.abelian_invariants = std::move(measured);
    }
    c.presentation  = to_string(P);
    c.witness.index = N;
    c.witness.table = rec.table.rows;
    return c;
  }

  // Enumerates the subgroup generated by `subgroup_words` first. Exceeding
  // max_cosets gives an Inconclusive "bound exceeded" record.
  inline Certificate allcock_rank_bound(Presentation const&      P,
                                        std::vector<Word> const& subgroup_words,
                                        std::size_t              max_cosets) {
    auto result = todd_coxeter(P, subgroup_words, max_cosets);
    if (std::holds_alternative<Exhausted>(result)) {
      nlohmann::json gens = nlohmann::json::array();
      for (auto const& w : subgroup_words) {
        gens.push_back(to_string(w, P.generator_names));
      }
      auto c = inconclusive(CertificateKind::AllcockBound,
                                    {{"subgroup_gens", gens}, {"max_cosets", max_cosets}},
                                    "bound exceeded");
      c.presentation = to_string(P);
      return c;
    }
    auto rec = make_subgroup_record(std::get<CosetTable>(std::move(result)));
    return allcock_rank_bound(P, rec);
  }

  inline Certificate find_z_surjection(Presentation const& P,
                                       std::size_t         max_index,
                                       std::size_t         tietze_budget = default_tietze_budget) {
    nlohmann::json params = {{"max_index", max_index}, {"tietze_budget", tietze_budget}};
    std::string    examined;
    for (auto const& rec : low_index_normal(P, max_index)) {
      auto H   = subgroup_presentation(P, rec, tietze_budget);
      auto inv = abelian_invariants(H.presentation);
      examined += (examined.empty() ? "" : ", ") + std::to_string(rec.index);
      if (inv.free_rank >= 1) {
        Certificate c;
        c.kind                       = CertificateKind::ZSurjectionWitness;
        c.presentation               = to_string(P);
        c.parameters                 = params;
        c.witness.index              = rec.index;
        c.witness.table              = rec.table.rows;
        c.witness.abelian_invariants = inv;
        c.conclusions                = z_surjection_conclusions(rec.index);
        return c;
      }
    }
    auto c = inconclusive(
        CertificateKind::ZSurjectionWitness,
        params,
        "no normal subgroup of index <= " + std::to_string(max_index)
            + " has infinite abelianization (examined indices: "
            + (examined.empty() ? std::string("none") : examined) + ")");
    c.presentation = to_string(P);
    return c;
  }

  // Searches kill sets S of generators, smallest first and lexicographic
  // within a size, with |S| <= min(kill_budget, generators - 2), for which
  // H/<<S>> simplifies to a free presentation on >= 2 generators.
  inline Certificate certify_free_quotient(Presentation const& H,
                                           std::size_t         kill_budget,
                                           std::size_t tietze_budget = default_tietze_budget) {
    nlohmann::json params = {{"kill_budget", kill_budget}, {"tietze_budget", tietze_budget}};
    std::size_t const n   = H.num_generators();
    if (n >= 2) {
      for (auto const& subset : subsets_up_to(n, std::min(kill_budget, n - 2))) {
        std::vector<Word>        kill;
        std::vector<std::string> names;
        for (std::size_t g : subset) {
          kill.push_back(Word::letter(static_cast<Letter>(g + 1)));
          names.push_back(H.generator_names[g]);
        }
        auto Q = tietze_simplify(quotient_by_words(H, kill), tietze_budget).presentation;
        if (is_free_presentation(Q)) {
          Certificate c;
          c.kind                       = CertificateKind::FreeQuotientWitness;
          c.presentation               = to_string(H);
          c.parameters                 = params;
          c.witness.kill_set           = std::move(names);
          c.witness.abelian_invariants = AbelianInvariants{Q.num_generators(), {}};
          c.conclusions = free_quotient_conclusions(Q.num_generators());
          return c;
        }
      }
    }
    auto c         = inconclusive(CertificateKind::FreeQuotientWitness,
                                  params,
                                  "no kill set within budget gives a free quotient of rank >= 2");
    c.presentation = to_string(H);
    return c;
  }

  // A normal subgroup of p-power index with a non-abelian free quotient.
  inline Certificate certify_p_large_witness(Presentation const& P,
                                             long long           p,
                                             std::size_t         max_index,
                                             std::size_t         kill_budget,
                                             std::size_t tietze_budget = default_tietze_budget) {
    if (!is_prime(p)) {
      throw NotPrime(p);
    }
    nlohmann::json params = {{"p", p},
                             {"max_index", max_index},
                             {"kill_budget", kill_budget},
                             {"tietze_budget", tietze_budget}};
    for (auto const& rec : low_index_normal(P, max_index)) {
      if (!is_power_of(rec.index, p)) {
        continue;
      }
      auto H  = subgroup_presentation(P, rec, tietze_budget);
      auto fq = certify_free_quotient(H.presentation, kill_budget, tietze_budget);
      if (fq.kind == CertificateKind::FreeQuotientWitness) {
        std::size_t rank = fq.witness.abelian_invariants->free_rank;
        Certificate c;
        c.kind                       = CertificateKind::PLargeWitness;
        c.presentation               = to_string(P);
        c.parameters                 = params;
        c.witness.index              = rec.index;
        c.witness.table              = rec.table.rows;
        c.witness.kill_set           = fq.witness.kill_set;
        c.witness.abelian_invariants = AbelianInvariants{rank, {}};
        c.conclusions                = p_large_conclusions(p, rec.index, rank);
        return c;
      }
    }
    auto c = inconclusive(
        CertificateKind::PLargeWitness,
        params,
        "no normal subgroup of " + std::to_string(p)
            + "-power index within the bounds has a free quotient found by the kill-set search");
    c.presentation = to_string(P);
    return c;
  }

  // F_r/<<g_1^q, ..., g_k^q>> has p-deficiency at least r - k/p^l with p^l
  // the largest power of p dividing q; it is p-large once that exceeds 1.
  // The first prime of q (ascending) meeting p^l > k/(r-1) is reported.
  inline Certificate power_quotient_largeness(std::size_t r, std::size_t k, std::size_t q) {
    if (q == 0) {
      throw Error("exponent q must be positive");
    }
    if (r < 2) {
      throw Error("rank r must be at least 2");
    }
    nlohmann::json params = {{"rank", r}, {"count", k}, {"exponent", q}};
    std::size_t    rest   = q;
    for (std::size_t p = 2; rest > 1; ++p) {
      if (rest % p != 0) {
        continue;
      }
      Integer pl = 1;
      while (rest % p == 0) {
        rest /= p;
        pl *= p;
      }
      if (Rational(pl) > Rational(k, r - 1)) {
        Certificate c;
        c.kind          = CertificateKind::PowerQuotientLarge;
        params["p"]     = p;
        c.parameters    = params;
        c.witness.bound = Rational(r) - Rational(Integer(k), pl);
        c.conclusions   = power_quotient_conclusions(r, k, q, static_cast<long long>(p));
        return c;
      }
    }
    return inconclusive(
        CertificateKind::PowerQuotientLarge,
        params,
        "no prime power p^l exactly dividing q exceeds k/(r-1)");
  }

  }  // namespace detail::unsealed

  inline Certificate certify_p_large_by_deficiency(Presentation const& P, long long p) {
    return detail::seal(detail::unsealed::certify_p_large_by_deficiency(P, p));
  }

  inline Certificate allcock_rank_bound(Presentation const& P, SubgroupRecord const& rec) {
    return detail::seal(detail::unsealed::allcock_rank_bound(P, rec));
  }

  inline Certificate allcock_rank_bound(Presentation const&      P,
                                        std::vector<Word> const& subgroup_words,
                                        std::size_t              max_cosets) {
    return detail::seal(detail::unsealed::allcock_rank_bound(P, subgroup_words, max_cosets));
  }

  inline Certificate find_z_surjection(Presentation const& P,
                                       std::size_t         max_index,
                                       std::size_t         tietze_budget = default_tietze_budget) {
    return detail::seal(detail::unsealed::find_z_surjection(P, max_index, tietze_budget));
  }

  inline Certificate certify_free_quotient(Presentation const& H,
                                           std::size_t         kill_budget,
                                           std::size_t tietze_budget = default_tietze_budget) {
    return detail::seal(detail::unsealed::certify_free_quotient(H, kill_budget, tietze_budget));
  }

  inline Certificate certify_p_large_witness(Presentation const& P,
                                             long long           p,
                                             std::size_t         max_index,
                                             std::size_t         kill_budget,
                                             std::size_t tietze_budget = default_tietze_budget) {
    return detail::seal(detail::unsealed::certify_p_large_witness(
        P, p, max_index, kill_budget, tietze_budget));
  }

  inline Certificate power_quotient_largeness(std::size_t r, std::size_t k, std::size_t q) {
    return detail::seal(detail::unsealed::power_quotient_largeness(r, k, q));
  }

  ////////////////////////////////////////////////////////////////////////
  // Verification
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    using Defect = std::optional<std::string>;

    inline void check(bool ok, std::string const& what) {
      if (!ok) {
        throw Error(what);
      }
    }

    inline void require_parameters(Certificate const& c, std::set<std::string> const& keys) {
      require_keys(c.parameters, keys, keys, "parameters");
    }

    inline void require_witness(Certificate const& c,
                                bool               index,
                                bool               table,
                                bool               kill_set,
                                bool               invariants,
                                bool               bound) {
      auto const& w = c.witness;
      check(w.index.has_value() == index, "witness index presence");
      check(w.table.has_value() == table, "witness table presence");
      check(w.kill_set.has_value() == kill_set, "witness kill_set presence");
      check(w.abelian_invariants.has_value() == invariants,
            "witness abelian_invariants presence");
      check(w.bound.has_value() == bound, "witness bound presence");
    }

    inline Presentation read_presentation(Certificate const& c) {
      check(c.presentation.has_value(), "missing presentation");
      auto P = parse_presentation(*c.presentation);
      check(to_string(P) == *c.presentation, "presentation is not in canonical form");
      return P;
    }

    template <typename T>
    T param(Certificate const& c, char const* key) {
      return get_as<T>(c.parameters.at(key), std::string("parameter ") + key);
    }

    inline std::size_t count_param(Certificate const& c, char const* key) {
      return get_count(c.parameters.at(key), std::string("parameter ") + key);
    }

    // The witness table as a validated record of a subgroup of P.
    inline SubgroupRecord read_subgroup(Presentation const& P, Certificate const& c) {
      CosetTable T;
      T.n_generators = P.num_generators();
      T.complete     = true;
      T.rows         = *c.witness.table;
      T.subgroup_words.clear();
      // structure first, then stabilizer generators
      if (auto defect = find_table_defect(P, T)) {
        throw Error("invalid coset table: " + *defect);
      }
      check(is_standard(T), "coset table is not in standard form");
      check(*c.witness.index == T.index(), "index does not match the table");
      return make_subgroup_record(std::move(T));
    }

    inline Certificate without_flag(Certificate c) {
      c.verified = false;
      return c;
    }

    inline Certificate rerun(Certificate const& c) {
      auto attempted = certificate_kind_from_string(param<std::string>(c, "attempted"));
      switch (attempted) {
        case CertificateKind::PLargeByDeficiency:
          return unsealed::certify_p_large_by_deficiency(read_presentation(c), param<long long>(c, "p"));
        case CertificateKind::AllcockBound: {
          auto P = read_presentation(c);
          if (c.parameters.contains("subgroup_gens")) {
            std::vector<Word> gens;
            for (auto const& s : param<std::vector<std::string>>(c, "subgroup_gens")) {
              gens.push_back(parse_word(s, P.generator_names));
            }
            return unsealed::allcock_rank_bound(P, gens, count_param(c, "max_cosets"));
          }
          check(c.witness.table && c.witness.index, "missing subgroup table");
          auto rec = read_subgroup(P, c);
          check(rec.normal, "subgroup is not normal");
          return unsealed::allcock_rank_bound(P, rec);
        }
        case CertificateKind::ZSurjectionWitness:
          return unsealed::find_z_surjection(read_presentation(c),
                                   count_param(c, "max_index"),
                                   count_param(c, "tietze_budget"));
        case CertificateKind::FreeQuotientWitness:
          return unsealed::certify_free_quotient(read_presentation(c),
                                       count_param(c, "kill_budget"),
                                       count_param(c, "tietze_budget"));
        case CertificateKind::PLargeWitness:
          return unsealed::certify_p_large_witness(read_presentation(c),
                                         param<long long>(c, "p"),
                                         count_param(c, "max_index"),
                                         count_param(c, "kill_budget"),
                                         count_param(c, "tietze_budget"));
        case CertificateKind::PowerQuotientLarge:
          return unsealed::power_quotient_largeness(count_param(c, "rank"),
                                          count_param(c, "count"),
                                          count_param(c, "exponent"));
        case CertificateKind::Inconclusive:
          break;
      }
      throw Error("Inconclusive cannot be the attempted kind");
    }

    inline void check_deficiency(Certificate const& c) {
      require_parameters(c, {"p"});
      require_witness(c, false, false, false, false, true);
      auto P      = read_presentation(c);
      auto p      = param<long long>(c, "p");
      auto report = p_deficiency(P, p);
      check(report.value == *c.witness.bound, "recorded p-deficiency is wrong");
      check(report.value > 1, "p-deficiency is not greater than 1");
      check(c.conclusions == deficiency_conclusions(p), "conclusions do not match");
    }

    inline void check_allcock(Certificate const& c) {
      require_parameters(c, {"relator_exponents", "bound_formula"});
      require_witness(c, true, true, false, true, true);
      auto P   = read_presentation(c);
      auto rec = read_subgroup(P, c);
      check(rec.normal, "subgroup is not normal");
      check(param<std::string>(c, "bound_formula") == "1 + N*(n - 1 - sum_j 1/r_j)",
            "unexpected bound formula");
      std::vector<std::size_t> exponents;
      Rational                 sum(0);
      for (auto const& r : P.relators) {
        if (r.empty()) {
          continue;
        }
        auto rd = primitive_root(r);
        check(orbit_length(rec.table, rd.root) == rd.exponent,
              "hypothesis fails: a proper power of a relator root lies in H");
        exponents.push_back(rd.exponent);
        sum += Rational(1, rd.exponent);
      }
      check(param<std::vector<std::size_t>>(c, "relator_exponents") == exponents,
            "relator exponents do not match");
      Rational bound = Rational(1)
                       + Rational(rec.index) * (Rational(P.num_generators()) - 1 - sum);
      check(bound == *c.witness.bound, "recorded bound is wrong");
      auto measured = abelian_invariants(reidemeister_schreier(P, rec.table));
      check(measured == *c.witness.abelian_invariants, "measured invariants are wrong");
      check(Integer(measured.free_rank) >= ceil(bound), "measured rank is below the bound");
      check(c.conclusions == allcock_conclusions(ceil(bound), measured.free_rank),
            "conclusions do not match");
    }

    inline void check_z_surjection(Certificate const& c) {
      require_parameters(c, {"max_index", "tietze_budget"});
      require_witness(c, true, true, false, true, false);
      auto P   = read_presentation(c);
      auto rec = read_subgroup(P, c);
      check(rec.normal, "subgroup is not normal");
      check(rec.index <= count_param(c, "max_index"), "index exceeds max_index");
      auto inv = abelian_invariants(reidemeister_schreier(P, rec.table));
      check(inv == *c.witness.abelian_invariants, "abelian invariants are wrong");
      check(inv.free_rank >= 1, "subgroup does not surject onto Z");
      check(c.conclusions == z_surjection_conclusions(rec.index), "conclusions do not match");
    }

    // H/<<S>> must simplify to a free presentation of the recorded rank.
    inline std::size_t check_kill_set(Presentation const&             H,
                                      std::vector<std::string> const& kill_set,
                                      std::size_t                     kill_budget,
                                      std::size_t                     tietze_budget) {
      check(kill_set.size() <= kill_budget, "kill set exceeds the budget");
      std::vector<Word> kill;
      for (auto const& name : kill_set) {
        auto g = H.generator_index(name);
        check(g != 0, "kill set names an unknown generator \"" + name + "\"");
        auto w = Word::letter(static_cast<Letter>(g));
        check(std::find(kill.begin(), kill.end(), w) == kill.end(), "kill set repeats a generator");
        kill.push_back(w);
      }
      auto quotient = quotient_by_words(H, kill);
      auto Q        = tietze_simplify(quotient, tietze_budget).presentation;
      check(is_free_presentation(Q), "quotient does not simplify to a free group of rank >= 2");
      // necessary condition, independent of the simplifier
      check(abelian_invariants(quotient) == AbelianInvariants{Q.num_generators(), {}},
            "quotient abelianization is not free abelian of the claimed rank");
      return Q.num_generators();
    }

    inline void check_free_quotient(Certificate const& c) {
      require_parameters(c, {"kill_budget", "tietze_budget"});
      require_witness(c, false, false, true, true, false);
      auto        H    = read_presentation(c);
      std::size_t rank = check_kill_set(H,
                                        *c.witness.kill_set,
                                        count_param(c, "kill_budget"),
                                        count_param(c, "tietze_budget"));
      check(*c.witness.abelian_invariants == AbelianInvariants{rank, {}},
            "recorded rank is wrong");
      check(c.conclusions == free_quotient_conclusions(rank), "conclusions do not match");
    }

    inline void check_p_large_witness(Certificate const& c) {
      require_parameters(c, {"p", "max_index", "kill_budget", "tietze_budget"});
      require_witness(c, true, true, true, true, false);
      auto P = read_presentation(c);
      auto p = param<long long>(c, "p");
      check(is_prime(p), "p is not prime");
      auto rec = read_subgroup(P, c);
      check(rec.normal, "subgroup is not normal");
      check(is_power_of(rec.index, p), "index is not a power of p");
      check(rec.index <= count_param(c, "max_index"), "index exceeds max_index");
      auto        budget = count_param(c, "tietze_budget");
      auto        H      = subgroup_presentation(P, rec, budget).presentation;
      std::size_t rank
          = check_kill_set(H, *c.witness.kill_set, count_param(c, "kill_budget"), budget);
      check(*c.witness.abelian_invariants == AbelianInvariants{rank, {}},
            "recorded rank is wrong");
      check(c.conclusions == p_large_conclusions(p, rec.index, rank), "conclusions do not match");
    }

    inline void check_power_quotient(Certificate const& c) {
      require_parameters(c, {"rank", "count", "exponent", "p"});
      require_witness(c, false, false, false, false, true);
      check(!c.presentation.has_value(), "unexpected presentation");
      auto r = count_param(c, "rank");
      auto k = count_param(c, "count");
      auto q = count_param(c, "exponent");
      auto p = param<long long>(c, "p");
      check(r >= 2 && q >= 1, "parameters out of range");
      check(is_prime(p) && q % static_cast<std::size_t>(p) == 0, "p is not a prime factor of q");
      Integer     pl = 1;
      std::size_t m  = q;
      while (m % static_cast<std::size_t>(p) == 0) {
        m /= static_cast<std::size_t>(p);
        pl *= p;
      }
      check(Rational(pl) * Rational(r - 1) > Rational(k), "criterion p^l > k/(r-1) fails");
      check(*c.witness.bound == Rational(r) - Rational(Integer(k), pl), "recorded bound is wrong");
      check(*c.witness.bound > 1, "deficiency bound is not greater than 1");
      check(c.conclusions == power_quotient_conclusions(r, k, q, p), "conclusions do not match");
    }

    inline void check_inconclusive(Certificate const& c) {
      check(c.conclusions.empty(), "inconclusive certificates claim nothing");
      check(without_flag(rerun(c)) == without_flag(c),
            "re-running the attempt gives a different outcome");
    }

    inline Defect content_defect(Certificate const& c) {
      try {
        switch (c.kind) {
          case CertificateKind::PLargeByDeficiency:
            check_deficiency(c);
            break;
          case CertificateKind::AllcockBound:
            check_allcock(c);
            break;
          case CertificateKind::ZSurjectionWitness:
            check_z_surjection(c);
            break;
          case CertificateKind::FreeQuotientWitness:
            check_free_quotient(c);
            break;
          case CertificateKind::PLargeWitness:
            check_p_large_witness(c);
            break;
          case CertificateKind::PowerQuotientLarge:
            check_power_quotient(c);
            break;
          case CertificateKind::Inconclusive:
            check_inconclusive(c);
            break;
        }
      } catch (std::exception const& e) {
        return std::string(e.what());
      }
      return std::nullopt;
    }

  }  // namespace detail

  // Recomputes every claim from the payload. nullopt means the certificate
  // holds, including its own `verified` flag.
  inline std::optional<std::string> find_certificate_defect(Certificate const& c) {
    if (auto defect = detail::content_defect(c)) {
      return defect;
    }
    if (!c.verified) {
      return std::string("certificate is marked unverified but checks out");
    }
    return std::nullopt;
  }

}  // namespace pdef
