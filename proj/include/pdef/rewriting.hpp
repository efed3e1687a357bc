#pragma once

// Reidemeister-Schreier rewriting.
//
// For a complete coset table of H in G = <X | R> and a spanning tree with
// transversal u_1 = 1, ..., u_N, the Schreier generators are
// s(c, g) = u_c g u_{c.g}^-1 for c in 1..N and g in X. Those on tree edges
// are trivial and are dropped, leaving N(|X|-1)+1 generators. The
// relators are u_c r u_c^-1 rewritten in the s(c, g), for every coset c
// and relator r, giving N|R| relators.

#include <cstddef>
#include <string>
#include <vector>

#include "pdef/coset_table.hpp"
#include "pdef/low_index.hpp"
#include "pdef/presentation.hpp"
#include "pdef/tietze.hpp"
#include "pdef/word.hpp"

namespace pdef {

  inline std::vector<Word> schreier_transversal(CosetTable const& T) {
    return transversal(bfs_tree(T));
  }

  inline Presentation reidemeister_schreier(Presentation const& P,
                                            CosetTable const&   T,
                                            SchreierTree const& tree) {
    if (!T.complete) {
      throw IncompleteTable();
    }
    std::size_t const n = P.num_generators();
    std::size_t const N = T.index();
    // numbering of the nontrivial s(c, g); 0 marks a tree edge
    std::vector<Letter> symbol(N * n + 1, 0);
    Presentation        H;
    for (Coset c = 1; c <= static_cast<Coset>(N); ++c) {
      for (std::size_t g = 1; g <= n; ++g) {
        Letter x = static_cast<Letter>(g);
        if (!is_tree_edge(tree, c, x, T.at(c, x))) {
          H.generator_names.push_back(P.generator_names[g - 1] + "_"
                                      + std::to_string(c));
          symbol[static_cast<std::size_t>(c - 1) * n + g]
              = static_cast<Letter>(H.generator_names.size());
        }
      }
    }
    auto s = [&](Coset c, std::size_t g) {
      return symbol[static_cast<std::size_t>(c - 1) * n + g];
    };
    for (Coset c = 1; c <= static_cast<Coset>(N); ++c) {
      for (auto const& r : P.relators) {
        Word  w;
        Coset d = c;
        for (Letter x : r) {
          std::size_t g = generator_of(x);
          if (x > 0) {
            if (Letter y = s(d, g); y != 0) {
              w.push_back(y);
            }
            d = T.at(d, x);
          } else {
            d = T.at(d, x);
            if (Letter y = s(d, g); y != 0) {
              w.push_back(-y);
            }
          }
        }
        H.relators.push_back(std::move(w));
      }
    }
    return H;
  }

  inline Presentation reidemeister_schreier(Presentation const& P,
                                            CosetTable const&   T) {
    return reidemeister_schreier(P, T, bfs_tree(T));
  }

  // Rewritten then simplified presentation of the record's subgroup.
  inline SimplifyResult subgroup_presentation(Presentation const&   P,
                                              SubgroupRecord const& rec,
                                              std::size_t           budget) {
    return tietze_simplify(reidemeister_schreier(P, rec.table), budget);
  }

}  // namespace pdef
