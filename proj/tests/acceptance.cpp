// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when everything passes).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace pdef;
using namespace pdef_test;

namespace {

  // Wall-clock limits in seconds, one per criterion.
  constexpr double limit_deficiency    = 1.0;
  constexpr double limit_low_index     = 10.0;
  constexpr double limit_pipeline      = 60.0;
  constexpr double limit_z_surjection  = 1.0;
  constexpr double limit_allcock       = 120.0;
  constexpr double limit_coset_enum    = 5.0;
  constexpr double limit_rewriting     = 30.0;
  constexpr double limit_smith         = 30.0;
  constexpr double limit_power_quotient = 10.0;
  constexpr double limit_verify        = 30.0;

  constexpr std::size_t mutation_count = 100;

  // Failures collected by a criterion; empty means PASS.
  class Checker {
   public:
    void expect(bool ok, std::string const& what) {
      if (!ok && failures_.size() < 5) {
        failures_.push_back(what);
      }
      failed_ = failed_ || !ok;
    }
    bool failed() const {
      return failed_;
    }
    std::vector<std::string> const& failures() const {
      return failures_;
    }
    void note(std::string text) {
      notes_.push_back(std::move(text));
    }
    std::vector<std::string> const& notes() const {
      return notes_;
    }

   private:
    bool                     failed_ = false;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
  };

  // Certificates issued by the criteria, re-checked by criterion 10.
  std::vector<Certificate> issued;

  Certificate keep(Certificate c) {
    issued.push_back(c);
    return c;
  }

  std::map<std::size_t, std::size_t> counts_by_index(std::vector<SubgroupRecord> const& recs) {
    std::map<std::size_t, std::size_t> out;
    for (auto const& r : recs) {
      ++out[r.index];
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////

  void deficiency_values(Checker& ck) {
    auto d2 = p_deficiency(presentation_Dinf(), 2).value;
    auto d3 = p_deficiency(presentation_P(), 3).value;
    ck.expect(d2 == Rational(1), "def_2(Dinf) = " + to_string(d2));
    ck.expect(d3 == Rational(1), "def_3(P) = " + to_string(d3));
    keep(certify_p_large_by_deficiency(presentation_P(), 3));
    keep(certify_p_large_by_deficiency(pres("gens: x, y\nrel: x^2\n"), 2));
  }

  void low_index_count(Checker& ck) {
    auto recs = low_index_normal(presentation_P(), 3);
    ck.expect(recs.size() == 14, "records: " + std::to_string(recs.size()));
    auto by = counts_by_index(recs);
    ck.expect(by[1] == 1 && by[2] == 0 && by[3] == 13, "index distribution");
    // 13 = (3^3 - 1)/2 hyperplanes of (Z/3)^3
    ck.expect(abelian_invariants(presentation_P())
                  == AbelianInvariants{0, {Integer(3), Integer(3), Integer(3)}},
              "P^ab is (Z/3)^3");
  }

  void pipeline(Checker& ck) {
    auto P     = presentation_P();
    bool found = false;
    for (auto const& rec : low_index_normal(P, 3)) {
      if (rec.index != 3) {
        continue;
      }
      auto H = subgroup_presentation(P, rec, default_tietze_budget).presentation;
      if (abelian_invariants(H) != AbelianInvariants{4, {}}) {
        continue;
      }
      found  = true;
      auto c = keep(certify_free_quotient(H, 2));
      ck.expect(c.kind == CertificateKind::FreeQuotientWitness, "free quotient not found");
      if (c.kind == CertificateKind::FreeQuotientWitness) {
        ck.expect(c.witness.kill_set->size() == 2, "kill set size");
        ck.expect(c.witness.abelian_invariants->free_rank == 2, "free quotient rank");
      }
      break;
    }
    ck.expect(found, "no index-3 normal subgroup with invariants Z^4");
    auto w = keep(certify_p_large_witness(P, 3, 3, 3));
    ck.expect(w.kind == CertificateKind::PLargeWitness, "P is not certified 3-large");
    ck.expect(w.verified, "3-large witness does not verify");
  }

  void z_surjection(Checker& ck) {
    auto Dinf = presentation_Dinf();
    auto c    = keep(find_z_surjection(Dinf, 2));
    ck.expect(c.kind == CertificateKind::ZSurjectionWitness, "no witness");
    if (c.kind != CertificateKind::ZSurjectionWitness) {
      return;
    }
    ck.expect(*c.witness.index == 2, "index");
    ck.expect(c.witness.abelian_invariants->free_rank == 1, "free rank");
    auto rec = make_subgroup_record(CosetTable{2, *c.witness.table, true, {}});
    auto H   = subgroup_presentation(Dinf, rec, default_tietze_budget).presentation;
    ck.expect(H.num_generators() == 1 && H.num_relators() == 0,
              "simplified subgroup presentation: " + to_string(H));
  }

  ////////////////////////////////////////////////////////////////////////
  // Allcock

  // Root of length 1..3 that is primitive, for building torsion relators.
  Word random_primitive(std::mt19937& rng, std::size_t n, std::size_t max_len) {
    while (true) {
      Word w = cyclic_reduce(random_word(rng, n, 1 + rng() % max_len)).core;
      if (!w.empty() && primitive_root(w).exponent == 1) {
        return w;
      }
    }
  }

  // True when every nonempty relator's maximal exponent is a power of p,
  // so that sum_j 1/r_j equals sum_j p^-nu_p(r_j).
  bool exponents_are_powers_of(Presentation const& P, long long p) {
    for (auto const& r : P.relators) {
      if (r.empty()) {
        continue;
      }
      std::size_t e = primitive_root(r).exponent;
      while (e % static_cast<std::size_t>(p) == 0) {
        e /= static_cast<std::size_t>(p);
      }
      if (e != 1) {
        return false;
      }
    }
    return true;
  }

  void allcock(Checker& ck) {
    {
      auto Dinf = presentation_Dinf();
      auto T    = std::get<CosetTable>(todd_coxeter(Dinf, {Word{1, 2}}));
      auto c    = keep(allcock_rank_bound(Dinf, make_subgroup_record(T)));
      ck.expect(c.kind == CertificateKind::AllcockBound && *c.witness.bound == Rational(1)
                    && c.witness.abelian_invariants->free_rank == 1,
                "Dinf/<x1x2>: bound 1, rank 1");
    }
    {
      auto P = pres("gens: x, y\nrel: x^3\n");
      auto c = keep(allcock_rank_bound(P, {Word{2}, Word{1, 2, -1}, Word{1, 1, 2, -1, -1}},
                                       default_max_cosets));
      ck.expect(c.kind == CertificateKind::AllcockBound && *c.witness.bound == Rational(3)
                    && c.witness.abelian_invariants->free_rank == 3,
                "<x,y|x^3> kernel: bound 3, rank 3");
    }

    struct Case {
      std::string  name;
      Presentation P;
      std::size_t  max_index;
    };
    std::vector<Case> cases{
        {"Dinf", presentation_Dinf(), 6},
        {"Z3*Z", pres("gens: x, y\nrel: x^3\n"), 6},
        {"S3", presentation_S3(), 6},
        {"A4", pres("gens: a, b\nrel: a^2\nrel: b^3\nrel: (a*b)^3\n"), 6},
        {"T238", pres("gens: a, b\nrel: a^2\nrel: b^3\nrel: (a*b)^8\n"), 6},
        {"Z2*Z4", pres("gens: a, b\nrel: a^2\nrel: b^4\n"), 6},
        {"P", presentation_P(), 6},
    };
    std::mt19937 rng(2718);
    std::uniform_int_distribution<int> exps(2, 6);
    for (int i = 0; i < 30; ++i) {
      Presentation Q = make_presentation(2, {});
      std::size_t  m = 1 + rng() % 3;
      for (std::size_t j = 0; j < m; ++j) {
        Q.relators.push_back(word_power(random_primitive(rng, 2, 3), exps(rng)));
      }
      cases.push_back({"random-" + std::to_string(i), Q, 6});
    }
    // random presentations of p-deficiency exactly one with pure p-power
    // exponents: two squares on two generators, three cubes on two
    for (int i = 0; i < 10; ++i) {
      cases.push_back({"def2-" + std::to_string(i),
                       make_presentation(2, {word_power(random_primitive(rng, 2, 3), 2),
                                             word_power(random_primitive(rng, 2, 3), 2)}),
                       6});
      cases.push_back({"def3-" + std::to_string(i),
                       make_presentation(2, {word_power(random_primitive(rng, 2, 2), 3),
                                             word_power(random_primitive(rng, 2, 2), 3),
                                             word_power(random_primitive(rng, 2, 2), 3)}),
                       6});
    }

    std::size_t checked = 0, specialized = 0;
    for (auto const& cs : cases) {
      std::vector<long long> def_one_primes;
      for (long long p : {2, 3, 5}) {
        if (p_deficiency(cs.P, p).value == 1 && exponents_are_powers_of(cs.P, p)) {
          def_one_primes.push_back(p);
        }
      }
      for (auto const& rec : low_index_normal(cs.P, cs.max_index)) {
        auto c = allcock_rank_bound(cs.P, rec);
        if (c.kind != CertificateKind::AllcockBound) {
          continue;  // hypothesis fails for this subgroup
        }
        ++checked;
        auto bound    = *c.witness.bound;
        auto measured = c.witness.abelian_invariants->free_rank;
        ck.expect(Rational(measured) >= bound,
                  cs.name + " index " + std::to_string(rec.index) + ": measured "
                      + std::to_string(measured) + " < bound " + to_string(bound));
        if (!def_one_primes.empty()) {
          ++specialized;
          ck.expect(bound == 1, cs.name + ": def_p = 1 but bound " + to_string(bound));
        }
        if (issued.size() < 64) {
          keep(c);
        }
      }
    }
    ck.note(std::to_string(cases.size()) + " presentations, " + std::to_string(checked)
            + " subgroups checked, " + std::to_string(specialized) + " with def_p = 1");
    ck.expect(checked > 50, "too few subgroups passed the hypothesis: " + std::to_string(checked));
    ck.expect(specialized > 10, "too few def_p = 1 instances: " + std::to_string(specialized));
  }

  ////////////////////////////////////////////////////////////////////////

  void coset_enumeration(Checker& ck) {
    struct Case {
      std::string       name;
      Presentation      P;
      std::vector<Perm> perms;  // permutation representation satisfying P
      std::size_t       expected;
    };
    // Q8 acting on itself by right multiplication: units 1,i,j,k,-1,-i,-j,-k
    Perm qi{1, 4, 3, 6, 5, 0, 7, 2};
    Perm qj{2, 7, 4, 1, 6, 3, 0, 5};
    std::vector<Case> cases{
        {"<a,b|a^2,b^2,(ab)^3>", presentation_S3(), {{1, 0, 2}, {0, 2, 1}}, 6},
        {"<a|a^3>", pres("gens: a\nrel: a^3\n"), {{1, 2, 0}}, 3},
        {"<a,b|a^4,a^2b^-2,b^-1aba>", presentation_Q8(), {qi, qj}, 8},
    };
    for (auto const& cs : cases) {
      ck.expect(satisfies(cs.perms, cs.P.relators), cs.name + ": oracle permutations invalid");
      std::size_t oracle = group_order(cs.perms, cs.perms[0].size());
      auto        result = todd_coxeter(cs.P, {});
      if (!std::holds_alternative<CosetTable>(result)) {
        ck.expect(false, cs.name + ": enumeration exhausted");
        continue;
      }
      auto const& T = std::get<CosetTable>(result);
      ck.expect(T.index() == cs.expected, cs.name + ": " + std::to_string(T.index()) + " cosets");
      ck.expect(oracle == cs.expected, cs.name + ": oracle order " + std::to_string(oracle));
      ck.expect(!find_table_defect(cs.P, T), cs.name + ": invalid table");
    }
  }

  ////////////////////////////////////////////////////////////////////////

  void rewriting(Checker& ck) {
    std::mt19937 rng(1729);
    std::size_t  subgroups = 0;
    for (auto const& [name, P] : corpus()) {
      std::size_t n = P.num_generators(), m = P.num_relators();
      std::size_t max = n >= 3 ? 3 : 6;
      for (auto const& rec : low_index_subgroups(P, max)) {
        ++subgroups;
        auto H = reidemeister_schreier(P, rec.table);
        ck.expect(H.num_generators() == rec.index * (n - 1) + 1,
                  name + ": generator count at index " + std::to_string(rec.index));
        ck.expect(H.num_relators() == rec.index * m,
                  name + ": relator count at index " + std::to_string(rec.index));
        if (rec.index > 1 && subgroups % 4 == 0) {
          auto H2 = reidemeister_schreier(P, rec.table, random_tree(rec.table, rng));
          ck.expect(abelian_invariants(H2) == abelian_invariants(H),
                    name + ": invariants depend on the transversal");
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////

  void smith(Checker& ck) {
    std::mt19937                       rng(314159);
    std::uniform_int_distribution<int> e(-5, 5);
    for (int trial = 0; trial < 500; ++trial) {
      IntegerMatrix M(4, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
          M(i, j) = e(rng);
        }
      }
      auto        snf = smith_normal_form(M, true);
      auto const& d   = snf.invariant_factors;
      for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        ck.expect(d[i] >= 0 && (d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0),
                  "divisibility chain");
      }
      IntegerMatrix D(4, 4);
      for (std::size_t i = 0; i < 4; ++i) {
        D(i, i) = d[i];
      }
      ck.expect(*snf.U * M * *snf.V == D, "U*M*V != D");
      ck.expect(abs(cofactor_det(*snf.U)) == 1 && abs(cofactor_det(*snf.V)) == 1,
                "transforms not unimodular");
      Integer det = cofactor_det(M);
      if (det != 0) {
        Integer prod = 1;
        for (auto const& x : d) {
          prod *= x;
        }
        ck.expect(prod == abs(det), "product of invariant factors != |det|");
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////

  void power_quotient(Checker& ck) {
    auto a = keep(power_quotient_largeness(2, 3, 8));
    ck.expect(a.kind == CertificateKind::PowerQuotientLarge && a.parameters["p"] == 2,
              "(2,3,8) not large via p=2");
    auto b = keep(power_quotient_largeness(2, 2, 2));
    ck.expect(b.kind == CertificateKind::Inconclusive, "(2,2,2) not inconclusive");

    std::mt19937 rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
      std::size_t r = 2 + rng() % 2;
      std::size_t k = rng() % 6;
      std::size_t q = 1 + rng() % 16;
      Presentation Q = make_presentation(r, {});
      for (std::size_t i = 0; i < k; ++i) {
        Q.relators.push_back(word_power(random_primitive(rng, r, 4), static_cast<long long>(q)));
      }
      auto c     = power_quotient_largeness(r, k, q);
      bool fired = false;
      for (long long p = 2; p <= static_cast<long long>(q); ++p) {
        if (!is_prime(p) || q % static_cast<std::size_t>(p) != 0) {
          continue;
        }
        Integer pl = 1;
        for (std::size_t t = q; t % static_cast<std::size_t>(p) == 0; t /= static_cast<std::size_t>(p)) {
          pl *= p;
        }
        bool criterion = Rational(pl) > Rational(k, r - 1);
        bool direct    = p_deficiency(Q, p).value > 1;
        ck.expect(criterion == direct, "criterion disagrees with def_p for r=" + std::to_string(r)
                                           + " k=" + std::to_string(k) + " q=" + std::to_string(q)
                                           + " p=" + std::to_string(p));
        fired = fired || criterion;
        if (c.kind == CertificateKind::PowerQuotientLarge && c.parameters["p"] == p) {
          ck.expect(direct, "reported prime does not have def_p > 1");
        }
      }
      ck.expect(fired == (c.kind == CertificateKind::PowerQuotientLarge),
                "certificate kind disagrees with the criterion");
      if (trial % 30 == 0) {
        keep(c);
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Verification and mutation fuzzing

  using nlohmann::json;

  // Each mutation edits the JSON in place and returns false when it does
  // not apply to this certificate.
  std::vector<std::function<bool(json&)>> mutations() {
    return {
        [](json& j) {
          if (!j.contains("witness") || !j["witness"].contains("bound")) {
            return false;
          }
          auto b = rational_from_string(j["witness"]["bound"].get<std::string>());
          j["witness"]["bound"] = to_string(b + Rational(1, 2));
          return true;
        },
        [](json& j) {
          if (!j.contains("witness") || !j["witness"].contains("abelian_invariants")) {
            return false;
          }
          j["witness"]["abelian_invariants"]["rank"] = j["witness"]["abelian_invariants"]["rank"].get<std::size_t>() + 1;
          return true;
        },
        [](json& j) {
          if (!j.contains("witness") || !j["witness"].contains("index")) {
            return false;
          }
          j["witness"]["index"] = j["witness"]["index"].get<std::size_t>() + 1;
          return true;
        },
        [](json& j) {
          if (!j.contains("witness") || !j["witness"].contains("table")) {
            return false;
          }
          auto& t = j["witness"]["table"];
          if (t.empty() || t[0].empty()) {
            return false;
          }
          int v   = t[0][0].get<int>();
          t[0][0] = v % static_cast<int>(t.size()) + 1 == v ? v + 1 : v % static_cast<int>(t.size()) + 1;
          return true;
        },
        [](json& j) {
          if (!j.contains("witness") || !j["witness"].contains("kill_set")) {
            return false;
          }
          j["witness"]["kill_set"].push_back("bogus_generator");
          return true;
        },
        [](json& j) {
          j["kind"] = j["kind"] == "AllcockBound" ? "ZSurjectionWitness" : "AllcockBound";
          return true;
        },
        [](json& j) {
          j["unexpected"] = true;
          return true;
        },
        [](json& j) {
          if (!j.contains("presentation")) {
            j["presentation"] = "gens: a\n";
            return true;
          }
          auto text = j["presentation"].get<std::string>();
          auto eol  = text.find('\n');
          j["presentation"] = text.substr(0, eol) + ", zz_extra" + text.substr(eol);
          return true;
        },
        [](json& j) {
          if (j["conclusions"].empty()) {
            j["conclusions"].push_back({{"claim", "the group is large"}, {"by", "witness"}});
          } else {
            j["conclusions"][0]["by"] = j["conclusions"][0]["by"] == "Thm 1.1" ? "Thm 1.2" : "Thm 1.1";
          }
          return true;
        },
        [](json& j) {
          j["parameters"]["extra"] = 1;
          return true;
        },
        [](json& j) {
          j["verified"] = false;
          return true;
        },
        [](json& j) {
          if (!j["parameters"].contains("reason")) {
            return false;
          }
          j["parameters"]["reason"] = "edited";
          return true;
        },
    };
  }

  bool rejected(json const& j) {
    try {
      return !verify(certificate_from_json(j));
    } catch (std::exception const&) {
      return true;
    }
  }

  void verification(Checker& ck) {
    ck.expect(issued.size() >= 10, "too few certificates issued: " + std::to_string(issued.size()));
    std::vector<json> texts;
    for (auto const& c : issued) {
      auto text = to_json_string(c);
      bool ok   = false;
      try {
        auto back = certificate_from_json_string(text);
        ok        = back == c && verify(back);
      } catch (std::exception const& e) {
        ck.expect(false, std::string("re-read failed: ") + e.what());
      }
      ck.expect(ok, "issued certificate fails verify: " + to_string(c.kind));
      texts.push_back(json::parse(text));
    }
    auto const  muts     = mutations();
    std::size_t applied  = 0;
    std::size_t rejects  = 0;
    for (std::size_t i = 0; applied < mutation_count && i < 100 * mutation_count; ++i) {
      json j = texts[i % texts.size()];
      auto const& mutate = muts[(i / texts.size() + i) % muts.size()];
      if (!mutate(j) || j == texts[i % texts.size()]) {
        continue;
      }
      ++applied;
      if (rejected(j)) {
        ++rejects;
      } else {
        ck.expect(false, "mutation accepted: " + j.dump());
      }
    }
    ck.note(std::to_string(issued.size()) + " certificates re-verified, "
            + std::to_string(rejects) + "/" + std::to_string(applied) + " mutations rejected");
    ck.expect(applied == mutation_count, "only " + std::to_string(applied) + " mutations applied");
    ck.expect(rejects == applied, std::to_string(applied - rejects) + " mutations accepted");
  }

  ////////////////////////////////////////////////////////////////////////

  struct Criterion {
    int                           number;
    std::string                   title;
    double                        limit;
    std::function<void(Checker&)> run;
  };

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "def_2(Dinf) = 1 and def_3(P) = 1 exactly", limit_deficiency, deficiency_values},
      {2, "P has 14 normal subgroups of index <= 3", limit_low_index, low_index_count},
      {3, "index-3 subgroup with Z^4 has a rank-2 free quotient", limit_pipeline, pipeline},
      {4, "Dinf surjection witness at index 2", limit_z_surjection, z_surjection},
      {5, "Allcock bound below measured rank; def_p = 1 gives 1", limit_allcock, allcock},
      {6, "coset enumeration matches permutation oracles", limit_coset_enum, coset_enumeration},
      {7, "Reidemeister-Schreier counts and transversal independence", limit_rewriting, rewriting},
      {8, "Smith normal form against cofactor determinants", limit_smith, smith},
      {9, "power-quotient criterion agrees with def_p", limit_power_quotient, power_quotient},
      {10, "issued certificates verify; mutations rejected", limit_verify, verification},
  };
  int failed = 0;
  for (auto const& c : criteria) {
    Checker ck;
    auto    start = std::chrono::steady_clock::now();
    try {
      c.run(ck);
    } catch (std::exception const& e) {
      ck.expect(false, std::string("exception: ") + e.what());
    }
    double secs
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ck.expect(secs < c.limit, "time limit exceeded");
    bool pass = !ck.failed();
    std::printf("criterion %2d: %s  %7.3fs / %.0fs  %s\n", c.number, pass ? "PASS" : "FAIL", secs,
                c.limit, c.title.c_str());
    for (auto const& n : ck.notes()) {
      std::printf("    %s\n", n.c_str());
    }
    for (auto const& f : ck.failures()) {
      std::printf("    %s\n", f.c_str());
    }
    std::fflush(stdout);
    failed += pass ? 0 : 1;
  }
  return failed;
}
