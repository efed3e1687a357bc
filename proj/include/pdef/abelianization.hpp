#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pdef/presentation.hpp"
#include "pdef/smith.hpp"

namespace pdef {

  // G^ab = Z^free_rank x Z/torsion[0] x ..., torsion[i] | torsion[i+1].
  struct AbelianInvariants {
    std::size_t          free_rank = 0;
    std::vector<Integer> torsion;

    friend bool operator==(AbelianInvariants const&, AbelianInvariants const&)
        = default;
  };

  // Row per relator, column per generator: exponent sums.
  inline IntegerMatrix relator_matrix(Presentation const& P) {
    IntegerMatrix M(P.num_relators(), P.num_generators());
    for (std::size_t i = 0; i < P.num_relators(); ++i) {
      for (Letter x : P.relators[i]) {
        M(i, generator_of(x) - 1) += x > 0 ? 1 : -1;
      }
    }
    return M;
  }

  inline AbelianInvariants abelian_invariants(Presentation const& P) {
    AbelianInvariants inv;
    std::size_t       rank = 0;
    for (auto const& d : smith_normal_form(relator_matrix(P)).invariant_factors) {
      if (d != 0) {
        ++rank;
        if (d != 1) {
          inv.torsion.push_back(d);
        }
      }
    }
    inv.free_rank = P.num_generators() - rank;
    return inv;
  }

  inline bool surjects_onto_Z(Presentation const& P) {
    return abelian_invariants(P).free_rank >= 1;
  }

  // "Z^r x Z/d1 x ...", or "1" for the trivial group.
  inline std::string to_string(AbelianInvariants const& inv) {
    std::string out;
    if (inv.free_rank > 0) {
      out = "Z^" + std::to_string(inv.free_rank);
    }
    for (auto const& d : inv.torsion) {
      out += (out.empty() ? "Z/" : " x Z/") + d.str();
    }
    return out.empty() ? "1" : out;
  }

}  // namespace pdef
