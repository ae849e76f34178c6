#pragma once
#include <random>
#include <vector>

#include "omegapaste/diagram.hpp"
#include "omegapaste/scheme.hpp"

// Seeded random generators for schemes and nested scheme cells, used by the
// self-test suites and the unit tests.

namespace omegapaste::gen {

using Rng = std::mt19937_64;

// Random bracket tree with node levels <= depth_cap.
inline Nested rand_tree(Rng& rng, int depth_cap, int width_cap) {
  Nested t;
  if (depth_cap == 0) return t;
  std::uniform_int_distribution<int> w(0, width_cap);
  int n = w(rng);
  for (int i = 0; i < n; ++i) t.kids.push_back(rand_tree(rng, depth_cap - 1, width_cap));
  return t;
}

inline Scheme rand_scheme(Rng& rng, int dim_cap = 3, int width_cap = 3) {
  return from_nested(rand_tree(rng, dim_cap, width_cap));
}

// A random scheme of dimension d whose m-boundary is b, grown by attaching
// forests at the level-m nodes of b's tree.
inline Scheme rand_extension(Rng& rng, const Scheme& b, int m, int d) {
  Nested t = to_nested(b);
  auto grow = [&](auto&& self, Nested& node, int lvl) -> void {
    if (lvl == m) {
      node.kids = rand_tree(rng, d - m, 2).kids;
      return;
    }
    for (auto& kid : node.kids) self(self, kid, lvl + 1);
  };
  grow(grow, t, 0);
  return from_nested(t);
}

struct T2Cell {
  SchemeCell outer;
  std::vector<SchemeCell> inners;
};

// Random cell of T^2 1: outer shape plus one inner shape per column, with
// matching intermediate boundaries.
inline T2Cell rand_t2(Rng& rng, int dim_cap = 3, int width_cap = 3) {
  Scheme ko = rand_scheme(rng, dim_cap, width_cap);
  int n = ko.max_level();
  T2Cell out;
  out.outer = at_dim(ko, n);
  for (int i = 0; i <= ko.rank(); ++i) {
    if (i == 0) {
      out.inners.push_back(at_dim(from_nested(rand_tree(rng, ko.tops[0], 2)), ko.tops[0]));
    } else {
      int m = ko.bots[i - 1];
      Scheme b = scheme_boundary(out.inners[i - 1], m).table;
      out.inners.push_back(at_dim(rand_extension(rng, b, m, ko.tops[i]), ko.tops[i]));
    }
  }
  return out;
}

inline Dia<SchUniv> t2_as_dia(const T2Cell& t) {
  Dia<SchUniv> o;
  o.dim = t.outer.dim;
  o.tops = t.inners;
  for (int i = 1; i <= t.outer.rank(); ++i)
    o.bots.push_back(scheme_boundary(t.inners[i], t.outer.table.bots[i - 1]));
  return o;
}

// Random decoration of a fixed outer shape: one inner shape per column of k.
inline std::vector<SchemeCell> rand_decoration(Rng& rng, const SchemeCell& k) {
  std::vector<SchemeCell> inners;
  for (int i = 0; i <= k.rank(); ++i) {
    if (i == 0) {
      inners.push_back(at_dim(from_nested(rand_tree(rng, k.table.tops[0], 2)), k.table.tops[0]));
    } else {
      int m = k.table.bots[i - 1];
      Scheme b = scheme_boundary(inners[i - 1], m).table;
      inners.push_back(at_dim(rand_extension(rng, b, m, k.table.tops[i]), k.table.tops[i]));
    }
  }
  return inners;
}

}  // namespace omegapaste::gen
