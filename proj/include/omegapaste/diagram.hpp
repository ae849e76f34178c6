#pragma once
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "omegapaste/error.hpp"
#include "omegapaste/scheme.hpp"

// Generic pasting diagrams over a cell universe U, shared by every carrier
// (schemes themselves, globular sets, L1 terms, marked free carriers).
//
// A universe provides:
//   using Cell = ...;
//   int dim(const Cell&) const;
//   Cell src(const Cell&) const;          // one step down, dim >= 1
//   Cell tgt(const Cell&) const;
//   bool eq(const Cell&, const Cell&) const;
//   std::string show(const Cell&) const;
// and optionally Cell fuse(const Cell&, const Cell&) for tagged carriers.

namespace omegapaste {

enum class Side { Src, Tgt };

template <class U>
struct Dia {
  using Cell = typename U::Cell;
  int dim = 0;
  std::vector<Cell> tops;
  std::vector<Cell> bots;

  int rank() const { return static_cast<int>(bots.size()); }
};

template <class U>
concept HasFuse = requires(const U& u, const typename U::Cell& c) {
  { u.fuse(c, c) } -> std::convertible_to<typename U::Cell>;
};

template <class U>
typename U::Cell fuse_cells(const U& u, const typename U::Cell& a, const typename U::Cell& b) {
  if constexpr (HasFuse<U>) {
    return u.fuse(a, b);
  } else {
    check(u.eq(a, b), Err::Internal, "fused cells differ: " + u.show(a) + " vs " + u.show(b));
    return a;
  }
}

template <class U>
typename U::Cell iter_bnd(const U& u, typename U::Cell c, int m, Side side) {
  check(m >= 0 && m <= u.dim(c), Err::DimensionOutOfRange, "boundary level out of range");
  while (u.dim(c) > m) c = side == Side::Src ? u.src(c) : u.tgt(c);
  return c;
}

template <class U>
SchemeCell shape_of(const U& u, const Dia<U>& d) {
  std::vector<int> tops, bots;
  tops.reserve(d.tops.size());
  bots.reserve(d.bots.size());
  for (const auto& c : d.tops) tops.push_back(u.dim(c));
  for (const auto& c : d.bots) bots.push_back(u.dim(c));
  return at_dim(validate_scheme(std::move(tops), std::move(bots)), d.dim);
}

template <class U>
bool dia_eq(const U& u, const Dia<U>& a, const Dia<U>& b) {
  if (a.dim != b.dim || a.tops.size() != b.tops.size() || a.bots.size() != b.bots.size())
    return false;
  for (size_t i = 0; i < a.tops.size(); ++i)
    if (!u.eq(a.tops[i], b.tops[i])) return false;
  for (size_t i = 0; i < a.bots.size(); ++i)
    if (!u.eq(a.bots[i], b.bots[i])) return false;
  return true;
}

template <class U>
std::string show_dia(const U& u, const Dia<U>& d) {
  std::string s = "[";
  for (size_t i = 0; i < d.tops.size(); ++i) {
    if (i) s += ", ";
    s += u.show(d.tops[i]);
  }
  if (!d.bots.empty()) {
    s += " / ";
    for (size_t i = 0; i < d.bots.size(); ++i) {
      if (i) s += ", ";
      s += u.show(d.bots[i]);
    }
  }
  return s + "]@" + std::to_string(d.dim);
}

// Checks the shape laws and t(u_{i-1}) = b_i = s(u_i).
template <class U>
void validate_dia(const U& u, const Dia<U>& d) {
  shape_of(u, d);  // scheme laws + dims <= d.dim
  for (int i = 1; i <= d.rank(); ++i) {
    const auto& b = d.bots[i - 1];
    int m = u.dim(b);
    check(u.eq(iter_bnd(u, d.tops[i - 1], m, Side::Tgt), b), Err::BoundaryMismatch,
          "t_" + std::to_string(m) + "(" + u.show(d.tops[i - 1]) + ") != " + u.show(b));
    check(u.eq(iter_bnd(u, d.tops[i], m, Side::Src), b), Err::BoundaryMismatch,
          "s_" + std::to_string(m) + "(" + u.show(d.tops[i]) + ") != " + u.show(b));
  }
}

template <class U>
Dia<U> eta_dia(const U& u, const typename U::Cell& c) {
  return Dia<U>{u.dim(c), {c}, {}};
}

template <class U, class V, class F>
Dia<V> map_dia(const F& f, const Dia<U>& d) {
  Dia<V> out;
  out.dim = d.dim;
  out.tops.reserve(d.tops.size());
  out.bots.reserve(d.bots.size());
  for (const auto& c : d.tops) out.tops.push_back(f(c));
  for (const auto& c : d.bots) out.bots.push_back(f(c));
  return out;
}

// s_m / t_m of a diagram: per m-transversal component (i,j), replace the
// segment by the single column s_m(u_i) resp. t_m(u_j).
template <class U>
Dia<U> dia_boundary(const U& u, const Dia<U>& d, int m, Side side) {
  check(m >= 0 && m < d.dim, Err::DimensionOutOfRange,
        "boundary level " + std::to_string(m) + " not below dim " + std::to_string(d.dim));
  SchemeCell k = shape_of(u, d);
  auto comps = transversal_components(k.table, m);
  Dia<U> out;
  out.dim = m;
  size_t ci = 0;
  int r = d.rank();
  for (int i = 0; i <= r; ++i) {
    if (ci < comps.size() && comps[ci].first == i) {
      auto [a, b] = comps[ci++];
      out.tops.push_back(side == Side::Src ? iter_bnd(u, d.tops[a], m, Side::Src)
                                           : iter_bnd(u, d.tops[b], m, Side::Tgt));
      i = b;
    } else {
      out.tops.push_back(d.tops[i]);
    }
    if (i < r) out.bots.push_back(d.bots[i]);
  }
  return out;
}

namespace detail {
// Alternation of tissue columns and m-transversal components, one unit per
// column of the m-boundary.
struct SlotUnit {
  int lo, hi;
  bool comp;
};
std::vector<SlotUnit> slot_units(const Scheme& k, int m);
}  // namespace detail

// Binary composition u *_m v of two n-cells of TX with t_m(u) = s_m(v),
// by slot merge: walk the shared m-boundary; at each column of it, stack
// u's m-component (if any) over v's (if any), joined by the boundary cell.
template <class U>
Dia<U> dia_compose(const U& u, const Dia<U>& a, const Dia<U>& b, int m) {
  check(a.dim == b.dim, Err::DimMismatch, "composed cells must have equal dimension");
  check(m >= 0 && m < a.dim, Err::DimensionOutOfRange, "composition level out of range");
  Dia<U> wa = dia_boundary(u, a, m, Side::Tgt);
  Dia<U> wb = dia_boundary(u, b, m, Side::Src);
  check(dia_eq(u, wa, wb), Err::BoundaryMismatch,
        "t_" + std::to_string(m) + " of left is " + show_dia(u, wa) + " but s_" +
            std::to_string(m) + " of right is " + show_dia(u, wb));

  SchemeCell ka = shape_of(u, a), kb = shape_of(u, b);
  auto ua = detail::slot_units(ka.table, m);
  auto ub = detail::slot_units(kb.table, m);
  check(ua.size() == ub.size() && ua.size() == wa.tops.size(), Err::Internal,
        "slot merge misaligned");

  Dia<U> out;
  out.dim = a.dim;
  for (size_t s = 0; s < ua.size(); ++s) {
    if (s > 0) out.bots.push_back(fuse_cells(u, a.bots[ua[s].lo - 1], b.bots[ub[s].lo - 1]));
    const detail::SlotUnit &xa = ua[s], &xb = ub[s];
    if (!xa.comp && !xb.comp) {
      out.tops.push_back(fuse_cells(u, a.tops[xa.lo], b.tops[xb.lo]));
      continue;
    }
    if (xa.comp) {
      for (int i = xa.lo; i <= xa.hi; ++i) {
        if (i > xa.lo) out.bots.push_back(a.bots[i - 1]);
        out.tops.push_back(a.tops[i]);
      }
    }
    if (xa.comp && xb.comp) out.bots.push_back(wa.tops[s]);
    if (xb.comp) {
      for (int i = xb.lo; i <= xb.hi; ++i) {
        if (i > xb.lo) out.bots.push_back(b.bots[i - 1]);
        out.tops.push_back(b.tops[i]);
      }
    }
  }
  return out;
}

// Universe of diagrams over U; the cells of TX as a carrier in its own right.
template <class U>
struct DiaUniv {
  const U* base;
  using Cell = Dia<U>;
  int dim(const Cell& c) const { return c.dim; }
  Cell src(const Cell& c) const { return dia_boundary(*base, c, c.dim - 1, Side::Src); }
  Cell tgt(const Cell& c) const { return dia_boundary(*base, c, c.dim - 1, Side::Tgt); }
  bool eq(const Cell& a, const Cell& b) const { return dia_eq(*base, a, b); }
  std::string show(const Cell& c) const { return show_dia(*base, c); }
};

// mu^T: flatten a diagram of diagrams into a single diagram. Columns are
// merged pairwise along the outer bottoms in non-increasing level order
// (left to right among equal levels), each merge a slot merge.
template <class U>
Dia<U> dia_mu(const U& u, const Dia<DiaUniv<U>>& outer) {
  DiaUniv<U> du{&u};
  validate_dia(du, outer);
  for (const auto& inner : outer.tops) validate_dia(u, inner);

  std::vector<Dia<U>> blocks = outer.tops;
  for (auto& blk : blocks) blk.dim = outer.dim;  // view every block at the outer dimension
  std::vector<int> levels;
  for (const auto& b : outer.bots) levels.push_back(b.dim);

  while (!levels.empty()) {
    size_t best = 0;
    for (size_t i = 1; i < levels.size(); ++i)
      if (levels[i] > levels[best]) best = i;
    blocks[best] = dia_compose(u, blocks[best], blocks[best + 1], levels[best]);
    blocks.erase(blocks.begin() + best + 1);
    levels.erase(levels.begin() + best);
  }
  return blocks[0];
}

// --- schemes as diagrams -----------------------------------------------

// The trivial carrier: a cell is just its level.
struct LevelUniv {
  using Cell = int;
  int dim(int c) const { return c; }
  int src(int c) const { return c - 1; }
  int tgt(int c) const { return c - 1; }
  bool eq(int a, int b) const { return a == b; }
  std::string show(int c) const { return std::to_string(c); }
};

inline Dia<LevelUniv> sch_to_dia(const SchemeCell& c) {
  return Dia<LevelUniv>{c.dim, c.table.tops, c.table.bots};
}
inline SchemeCell dia_to_sch(const Dia<LevelUniv>& d) {
  return at_dim(validate_scheme(d.tops, d.bots), d.dim);
}

// Universe whose cells are scheme cells; diagrams over it are cells of T^2 1.
struct SchUniv {
  using Cell = SchemeCell;
  int dim(const Cell& c) const { return c.dim; }
  Cell src(const Cell& c) const { return scheme_boundary(c, c.dim - 1); }
  Cell tgt(const Cell& c) const { return scheme_boundary(c, c.dim - 1); }
  bool eq(const Cell& a, const Cell& b) const { return a == b; }
  std::string show(const Cell& c) const { return omegapaste::show(c); }
};

SchemeCell sch_compose(const SchemeCell& a, const SchemeCell& b, int m);
SchemeCell sch_mu(const Dia<SchUniv>& outer);

// --- unsplicing ------------------------------------------------------------
//
// dia_mu merges columns in a deterministic order; replaying that order on
// shapes gives a plan that can be inverted, splitting a spliced diagram back
// into its inner factors. Needed to flatten nested substitutions.

struct MergeStep {
  size_t index;  // merge of blocks[index], blocks[index+1]
  int level;
  SchemeCell left, right;  // factor shapes at the merged dimension
};

// Simulates dia_mu on shapes. inners[i].dim must equal the outer tops.
std::vector<MergeStep> plan_mu(const SchemeCell& outer, const std::vector<SchemeCell>& inners,
                               SchemeCell* result = nullptr);

// Inverse of one slot merge: split `whole` = left *_m right, where the factor
// shapes are known. Tissue columns shared by both factors are duplicated;
// tissue swallowed by a one-sided component is recovered as a boundary.
template <class U>
std::pair<Dia<U>, Dia<U>> dia_unmerge(const U& u, const SchemeCell& kl, const SchemeCell& kr,
                                      int m, const Dia<U>& whole) {
  auto ua = detail::slot_units(kl.table, m);
  auto ub = detail::slot_units(kr.table, m);
  check(ua.size() == ub.size(), Err::Internal, "unmerge misaligned");
  Dia<U> left, right;
  left.dim = right.dim = whole.dim;
  size_t pos = 0, bpos = 0;
  auto take_top = [&]() -> const typename U::Cell& { return whole.tops[pos++]; };
  auto take_bot = [&]() -> const typename U::Cell& { return whole.bots[bpos++]; };
  for (size_t s = 0; s < ua.size(); ++s) {
    if (s > 0) {
      const auto& w = take_bot();
      left.bots.push_back(w);
      right.bots.push_back(w);
    }
    const auto &xa = ua[s], &xb = ub[s];
    if (!xa.comp && !xb.comp) {
      const auto& c = take_top();
      left.tops.push_back(c);
      right.tops.push_back(c);
      continue;
    }
    size_t seg_first = pos;
    if (xa.comp) {
      for (int i = xa.lo; i <= xa.hi; ++i) {
        if (i > xa.lo) left.bots.push_back(take_bot());
        left.tops.push_back(take_top());
      }
    }
    size_t seg_last = pos - 1;
    if (xa.comp && xb.comp) take_bot();  // the joining m-cell
    size_t rseg_first = pos;
    if (xb.comp) {
      for (int i = xb.lo; i <= xb.hi; ++i) {
        if (i > xb.lo) right.bots.push_back(take_bot());
        right.tops.push_back(take_top());
      }
    }
    if (xa.comp && !xb.comp)
      right.tops.push_back(iter_bnd(u, whole.tops[seg_last], m, Side::Tgt));
    if (!xa.comp && xb.comp)
      left.tops.push_back(iter_bnd(u, whole.tops[rseg_first], m, Side::Src));
  }
  check(pos == whole.tops.size() && bpos == whole.bots.size(), Err::Internal,
        "unmerge did not consume the whole diagram");
  return {std::move(left), std::move(right)};
}

// Splits a spliced diagram back into one factor per outer column. The result
// diagrams carry the inner dimensions; adjacent factors share boundary cells.
template <class U>
std::vector<Dia<U>> dia_unsplice(const U& u, const SchemeCell& outer,
                                 const std::vector<SchemeCell>& inners, const Dia<U>& whole) {
  SchemeCell expect{};
  auto steps = plan_mu(outer, inners, &expect);
  check(shape_of(u, whole) == expect, Err::ShapeMismatch,
        "diagram shape " + show(shape_of(u, whole)) + " does not match splice " + show(expect));
  std::vector<Dia<U>> blocks{whole};
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    auto [l, r] = dia_unmerge(u, it->left, it->right, it->level, blocks[it->index]);
    blocks[it->index] = std::move(l);
    blocks.insert(blocks.begin() + static_cast<long>(it->index) + 1, std::move(r));
  }
  check(blocks.size() == inners.size(), Err::Internal, "unsplice block count");
  for (size_t i = 0; i < blocks.size(); ++i) {
    blocks[i].dim = inners[i].dim;
    check(shape_of(u, blocks[i]) == inners[i], Err::Internal, "unspliced factor shape");
  }
  return blocks;
}

}  // namespace omegapaste
