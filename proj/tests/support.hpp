#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// deliberately avoid the library's algorithms: they work with explicit
// permutations and exhaustive enumeration.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdef/pdef.hpp"

namespace pdef_test {

  using namespace pdef;

  inline Presentation pres(std::string const& text) {
    return parse_presentation(text);
  }

  inline Presentation presentation_P() {
    return pres("gens: x, y, z\nrel: x^3\nrel: y^3\nrel: z^3\n"
                "rel: (x*y)^3\nrel: (x*z)^3\nrel: (y*z)^3\n");
  }

  inline Presentation presentation_Dinf() {
    return pres("gens: x1, x2\nrel: x1^2\nrel: x2^2\n");
  }

  inline Presentation presentation_S3() {
    return pres("gens: a, b\nrel: a^2\nrel: b^2\nrel: (a*b)^3\n");
  }

  inline Presentation presentation_Q8() {
    return pres("gens: a, b\nrel: a^4\nrel: a^2*b^-2\nrel: b^-1*a*b*a\n");
  }

  // Two commutators and one long relator; killing c and d leaves F_2.
  inline Presentation presentation_C() {
    return pres("gens: a, b, c, d\nrel: [c^-1,a^-1]\nrel: [d^-1,b^-1]\n"
                "rel: a*d*c^-1*a^-1*b*c*d^-1*b^-1\n");
  }

  struct Named {
    std::string  name;
    Presentation P;
  };

  // Small presentations used by the corpus-wide property tests.
  inline std::vector<Named> corpus() {
    return {
        {"Z", pres("gens: t\n")},
        {"F2", pres("gens: a, b\n")},
        {"Z6", pres("gens: a\nrel: a^6\n")},
        {"Z2xZ2", pres("gens: a, b\nrel: a^2\nrel: b^2\nrel: [a,b]\n")},
        {"Dinf", presentation_Dinf()},
        {"S3", presentation_S3()},
        {"Q8", presentation_Q8()},
        {"A4", pres("gens: a, b\nrel: a^2\nrel: b^3\nrel: (a*b)^3\n")},
        {"Z3*Z", pres("gens: x, y\nrel: x^3\n")},
        {"Z2", pres("gens: a, b\nrel: [a,b]\n")},
        {"BS12", pres("gens: a, t\nrel: t*a*t^-1*a^-2\n")},
        {"trefoil", pres("gens: a, b\nrel: a^2*b^-3\n")},
        {"T238", pres("gens: a, b\nrel: a^2\nrel: b^3\nrel: (a*b)^8\n")},
        {"P", presentation_P()},
    };
  }

  ////////////////////////////////////////////////////////////////////////
  // Random words
  ////////////////////////////////////////////////////////////////////////

  // Unreduced sequence of letters over generators 1..n.
  inline std::vector<Letter> random_letters(std::mt19937& rng, std::size_t n, std::size_t len) {
    std::uniform_int_distribution<int> gen(1, static_cast<int>(n));
    std::bernoulli_distribution        sign(0.5);
    std::vector<Letter>                out;
    for (std::size_t i = 0; i < len; ++i) {
      int g = gen(rng);
      out.push_back(sign(rng) ? g : -g);
    }
    return out;
  }

  inline Word random_word(std::mt19937& rng, std::size_t n, std::size_t len) {
    auto letters = random_letters(rng, n, len);
    return Word(std::span<Letter const>(letters));
  }

  ////////////////////////////////////////////////////////////////////////
  // Permutation oracles (points 0..k-1)
  ////////////////////////////////////////////////////////////////////////

  using Perm = std::vector<int>;

  inline Perm perm_inverse(Perm const& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    }
    return q;
  }

  // Image of `point` under the word, acting on the right.
  inline int act(std::vector<Perm> const& gens, int point, Word const& w) {
    for (Letter x : w) {
      Perm const& g = gens[generator_of(x) - 1];
      if (x > 0) {
        point = g[static_cast<std::size_t>(point)];
      } else {
        point = static_cast<int>(std::find(g.begin(), g.end(), point) - g.begin());
      }
    }
    return point;
  }

  // Coset action as 0-based permutations.
  inline std::vector<Perm> zero_based_action(CosetTable const& T) {
    std::vector<Perm> out;
    for (auto const& images : permutation_action(T)) {
      Perm p;
      for (Coset c : images) {
        p.push_back(c - 1);
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  inline bool satisfies(std::vector<Perm> const& gens, std::vector<Word> const& rels) {
    std::size_t k = gens.empty() ? 1 : gens[0].size();
    for (auto const& r : rels) {
      for (std::size_t i = 0; i < k; ++i) {
        if (act(gens, static_cast<int>(i), r) != static_cast<int>(i)) {
          return false;
        }
      }
    }
    return true;
  }

  inline bool transitive(std::vector<Perm> const& gens, std::size_t k) {
    std::vector<bool> seen(k, false);
    std::queue<int>   q;
    seen[0] = true;
    q.push(0);
    std::size_t count = 1;
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (auto const& g : gens) {
        for (int j : {g[static_cast<std::size_t>(i)],
                      static_cast<int>(std::find(g.begin(), g.end(), i) - g.begin())}) {
          if (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            ++count;
            q.push(j);
          }
        }
      }
    }
    return count == k;
  }

  // Order of the group generated by permutations, by closing under
  // right multiplication.
  inline std::size_t group_order(std::vector<Perm> const& gens, std::size_t k) {
    Perm id(k);
    std::iota(id.begin(), id.end(), 0);
    std::set<Perm>   seen{id};
    std::queue<Perm> q;
    q.push(id);
    while (!q.empty()) {
      Perm p = q.front();
      q.pop();
      for (auto const& g : gens) {
        Perm r(k);
        for (std::size_t i = 0; i < k; ++i) {
          r[i] = g[static_cast<std::size_t>(p[i])];
        }
        if (seen.insert(r).second) {
          q.push(r);
        }
      }
    }
    return seen.size();
  }

  inline std::vector<Perm> all_perms(std::size_t k) {
    Perm p(k);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }

  // Calls f(gens) for every assignment of n generators to permutations
  // of k points.
  template <typename F>
  void for_each_assignment(std::size_t n, std::size_t k, F&& f) {
    auto const               perms = all_perms(k);
    std::vector<std::size_t> idx(n, 0);
    std::vector<Perm>        gens(n);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) {
        gens[i] = perms[idx[i]];
      }
      f(gens);
      std::size_t i = 0;
      while (i < n && ++idx[i] == perms.size()) {
        idx[i] = 0;
        ++i;
      }
      if (i == n) {
        return;
      }
    }
  }

  // Coset table (1-based, columns g1, g1^-1, ...) of the stabilizer of
  // point 0, points renumbered in breadth-first order.
  inline std::vector<std::vector<Coset>> stabilizer_table(std::vector<Perm> const& gens,
                                                          std::size_t              k) {
    std::size_t const n = gens.size();
    std::vector<Perm> cols;
    for (auto const& g : gens) {
      cols.push_back(g);
      cols.push_back(perm_inverse(g));
    }
    std::vector<int> number(k, -1);
    std::vector<int> order;
    number[0] = 0;
    order.push_back(0);
    for (std::size_t at = 0; at < order.size(); ++at) {
      for (auto const& c : cols) {
        int j = c[static_cast<std::size_t>(order[at])];
        if (number[static_cast<std::size_t>(j)] < 0) {
          number[static_cast<std::size_t>(j)] = static_cast<int>(order.size());
          order.push_back(j);
        }
      }
    }
    std::vector<std::vector<Coset>> rows(order.size(), std::vector<Coset>(2 * n));
    for (std::size_t r = 0; r < order.size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        rows[r][c] = number[static_cast<std::size_t>(cols[c][static_cast<std::size_t>(order[r])])] + 1;
      }
    }
    return rows;
  }

  // Every subgroup of index exactly k, as its standardized table, found by
  // exhausting homomorphisms to S_k.
  inline std::set<std::vector<std::vector<Coset>>> subgroups_by_homs(Presentation const& P,
                                                                     std::size_t         k) {
    std::set<std::vector<std::vector<Coset>>> out;
    if (P.num_generators() == 0) {
      if (k == 1) {
        out.insert({std::vector<Coset>{}});
      }
      return out;
    }
    for_each_assignment(P.num_generators(), k, [&](std::vector<Perm> const& gens) {
      if (transitive(gens, k) && satisfies(gens, P.relators)) {
        out.insert(stabilizer_table(gens, k));
      }
    });
    return out;
  }

  // Spanning tree grown from coset 1 by repeatedly attaching a random
  // unvisited neighbour of the visited set.
  inline SchreierTree random_tree(CosetTable const& T, std::mt19937& rng) {
    SchreierTree tree;
    tree.parent.assign(T.index(), std::nullopt);
    std::vector<bool> seen(T.index(), false);
    seen[0] = true;
    for (std::size_t added = 1; added < T.index(); ++added) {
      std::vector<std::pair<Coset, Letter>> frontier;
      for (Coset c = 1; c <= static_cast<Coset>(T.index()); ++c) {
        if (!seen[static_cast<std::size_t>(c - 1)]) {
          continue;
        }
        for (std::size_t col = 0; col < 2 * T.n_generators; ++col) {
          Letter x = letter_of_column(col);
          if (!seen[static_cast<std::size_t>(T.at(c, x) - 1)]) {
            frontier.emplace_back(c, x);
          }
        }
      }
      auto [c, x] = frontier[rng() % frontier.size()];
      Coset d     = T.at(c, x);
      seen[static_cast<std::size_t>(d - 1)]        = true;
      tree.parent[static_cast<std::size_t>(d - 1)] = std::make_pair(c, x);
    }
    return tree;
  }

  ////////////////////////////////////////////////////////////////////////
  // Exact determinant by cofactor expansion
  ////////////////////////////////////////////////////////////////////////

  inline Integer cofactor_det(std::vector<std::vector<Integer>> const& m) {
    std::size_t n = m.size();
    if (n == 0) {
      return 1;
    }
    if (n == 1) {
      return m[0][0];
    }
    Integer det = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (m[0][j] == 0) {
        continue;
      }
      std::vector<std::vector<Integer>> minor;
      for (std::size_t i = 1; i < n; ++i) {
        std::vector<Integer> row;
        for (std::size_t c = 0; c < n; ++c) {
          if (c != j) {
            row.push_back(m[i][c]);
          }
        }
        minor.push_back(std::move(row));
      }
      Integer term = m[0][j] * cofactor_det(minor);
      det += (j % 2 == 0) ? term : Integer(-term);
    }
    return det;
  }

  inline Integer cofactor_det(IntegerMatrix const& M) {
    std::vector<std::vector<Integer>> m(M.rows(), std::vector<Integer>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        m[i][j] = M(i, j);
      }
    }
    return cofactor_det(m);
  }

}  // namespace pdef_test
