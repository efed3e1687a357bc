#pragma once

// Certificates and their JSON form.
//
//   {"kind": string,
//    "presentation": canonical presentation text,
//    "parameters": {...},
//    "witness": {"index": int, "table": [[int]], "kill_set": [string],
//                "abelian_invariants": {"rank": int, "torsion": [int]},
//                "bound": "rational string"},
//    "conclusions": [{"claim": string, "by": string}],
//    "verified": bool}
//
// Which fields are present depends on the kind. Unknown fields are
// rejected when reading.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdef/abelianization.hpp"
#include "pdef/coset_table.hpp"
#include "pdef/error.hpp"
#include "pdef/numeric.hpp"

namespace pdef {

  enum class CertificateKind {
    PLargeByDeficiency,
    AllcockBound,
    ZSurjectionWitness,
    FreeQuotientWitness,
    PLargeWitness,
    PowerQuotientLarge,
    Inconclusive
  };

  inline std::string to_string(CertificateKind kind) {
    switch (kind) {
      case CertificateKind::PLargeByDeficiency:
        return "PLargeByDeficiency";
      case CertificateKind::AllcockBound:
        return "AllcockBound";
      case CertificateKind::ZSurjectionWitness:
        return "ZSurjectionWitness";
      case CertificateKind::FreeQuotientWitness:
        return "FreeQuotientWitness";
      case CertificateKind::PLargeWitness:
        return "PLargeWitness";
      case CertificateKind::PowerQuotientLarge:
        return "PowerQuotientLarge";
      case CertificateKind::Inconclusive:
        return "Inconclusive";
    }
    return "";
  }

  inline CertificateKind certificate_kind_from_string(std::string const& s) {
    for (auto k : {CertificateKind::PLargeByDeficiency,
                   CertificateKind::AllcockBound,
                   CertificateKind::ZSurjectionWitness,
                   CertificateKind::FreeQuotientWitness,
                   CertificateKind::PLargeWitness,
                   CertificateKind::PowerQuotientLarge,
                   CertificateKind::Inconclusive}) {
      if (to_string(k) == s) {
        return k;
      }
    }
    throw Error("unknown certificate kind \"" + s + "\"");
  }

  // `by` names the cited result ("Thm 1.1", "Thm 1.2", "Thm 1.3",
  // "Cor 2.1", "Cor 2.2", "Cor 2.5") or "witness" when the claim follows
  // directly from the witness data.
  struct Conclusion {
    std::string claim;
    std::string by;

    friend bool operator==(Conclusion const&, Conclusion const&) = default;
  };

  struct Witness {
    std::optional<std::size_t>                     index;
    std::optional<std::vector<std::vector<Coset>>> table;
    std::optional<std::vector<std::string>>        kill_set;
    std::optional<AbelianInvariants>               abelian_invariants;
    std::optional<Rational>                        bound;

    bool empty() const noexcept {
      return !index && !table && !kill_set && !abelian_invariants && !bound;
    }

    friend bool operator==(Witness const&, Witness const&) = default;
  };

  struct Certificate {
    CertificateKind            kind = CertificateKind::Inconclusive;
    std::optional<std::string> presentation;
    nlohmann::json             parameters = nlohmann::json::object();
    Witness                    witness;
    std::vector<Conclusion>    conclusions;
    bool                       verified = false;

    friend bool operator==(Certificate const&, Certificate const&) = default;
  };

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json to_json(Certificate const& c) {
    using nlohmann::json;
    json j = json::object();
    j["kind"] = to_string(c.kind);
    if (c.presentation) {
      j["presentation"] = *c.presentation;
    }
    j["parameters"] = c.parameters;
    if (!c.witness.empty()) {
      json w = json::object();
      if (c.witness.index) {
        w["index"] = *c.witness.index;
      }
      if (c.witness.table) {
        w["table"] = *c.witness.table;
      }
      if (c.witness.kill_set) {
        w["kill_set"] = *c.witness.kill_set;
      }
      if (c.witness.abelian_invariants) {
        json torsion = json::array();
        for (auto const& d : c.witness.abelian_invariants->torsion) {
          torsion.push_back(d.convert_to<long long>());
        }
        w["abelian_invariants"]
            = {{"rank", c.witness.abelian_invariants->free_rank},
               {"torsion", torsion}};
      }
      if (c.witness.bound) {
        w["bound"] = to_string(*c.witness.bound);
      }
      j["witness"] = w;
    }
    json conclusions = json::array();
    for (auto const& k : c.conclusions) {
      conclusions.push_back({{"claim", k.claim}, {"by", k.by}});
    }
    j["conclusions"] = conclusions;
    j["verified"]    = c.verified;
    return j;
  }

  namespace detail {

    inline void require_keys(nlohmann::json const&        j,
                             std::set<std::string> const& allowed,
                             std::set<std::string> const& required,
                             std::string const&           where) {
      if (!j.is_object()) {
        throw Error(where + " must be an object");
      }
      for (auto const& [key, value] : j.items()) {
        if (allowed.count(key) == 0) {
          throw Error("unknown field \"" + key + "\" in " + where);
        }
      }
      for (auto const& key : required) {
        if (!j.contains(key)) {
          throw Error("missing field \"" + key + "\" in " + where);
        }
      }
    }

    template <typename T>
    T get_as(nlohmann::json const& j, std::string const& where) {
      try {
        return j.get<T>();
      } catch (nlohmann::json::exception const&) {
        throw Error("malformed " + where);
      }
    }

    inline std::size_t get_count(nlohmann::json const& j, std::string const& where) {
      if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw Error("malformed " + where);
      }
      return j.get<std::size_t>();
    }

  }  // namespace detail

  inline Certificate certificate_from_json(nlohmann::json const& j) {
    using detail::get_as;
    using detail::get_count;
    detail::require_keys(j,
                         {"kind", "presentation", "parameters", "witness",
                          "conclusions", "verified"},
                         {"kind", "parameters", "conclusions", "verified"},
                         "certificate");
    Certificate c;
    c.kind = certificate_kind_from_string(get_as<std::string>(j["kind"], "kind"));
    if (j.contains("presentation")) {
      c.presentation = get_as<std::string>(j["presentation"], "presentation");
    }
    if (!j["parameters"].is_object()) {
      throw Error("parameters must be an object");
    }
    c.parameters = j["parameters"];
    if (j.contains("witness")) {
      auto const& w = j["witness"];
      detail::require_keys(
          w, {"index", "table", "kill_set", "abelian_invariants", "bound"}, {}, "witness");
      if (w.contains("index")) {
        c.witness.index = get_count(w["index"], "witness index");
      }
      if (w.contains("table")) {
        c.witness.table = get_as<std::vector<std::vector<Coset>>>(w["table"], "table");
      }
      if (w.contains("kill_set")) {
        c.witness.kill_set = get_as<std::vector<std::string>>(w["kill_set"], "kill_set");
      }
      if (w.contains("abelian_invariants")) {
        auto const& a = w["abelian_invariants"];
        detail::require_keys(a, {"rank", "torsion"}, {"rank", "torsion"},
                             "abelian_invariants");
        AbelianInvariants inv;
        inv.free_rank = get_count(a["rank"], "rank");
        for (long long d : get_as<std::vector<long long>>(a["torsion"], "torsion")) {
          inv.torsion.emplace_back(d);
        }
        c.witness.abelian_invariants = std::move(inv);
      }
      if (w.contains("bound")) {
        try {
          c.witness.bound = rational_from_string(get_as<std::string>(w["bound"], "bound"));
        } catch (std::runtime_error const&) {
          throw Error("malformed bound");
        }
      }
      if (c.witness.empty()) {
        throw Error("empty witness");
      }
    }
    if (!j["conclusions"].is_array()) {
      throw Error("conclusions must be an array");
    }
    for (auto const& k : j["conclusions"]) {
      detail::require_keys(k, {"claim", "by"}, {"claim", "by"}, "conclusion");
      c.conclusions.push_back(
          {get_as<std::string>(k["claim"], "claim"), get_as<std::string>(k["by"], "by")});
    }
    if (!j["verified"].is_boolean()) {
      throw Error("verified must be a boolean");
    }
    c.verified = j["verified"].get<bool>();
    return c;
  }

  inline std::string to_json_string(Certificate const& c) {
    return to_json(c).dump(2);
  }

  inline Certificate certificate_from_json_string(std::string const& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw Error(std::string("invalid JSON: ") + e.what());
    }
    return certificate_from_json(j);
  }

}  // namespace pdef
