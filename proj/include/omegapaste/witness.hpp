#pragma once
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omegapaste/instr.hpp"
#include "omegapaste/weak.hpp"

// The invertibility engine: depth-bounded coinductive witnesses, the
// S-inverse construction, and the synthesis procedure of the main theorem.
//
// The engine is generic over an algebra A providing
//   typename A::Univ (a cell universe), typename A::Cell
//   Univ  univ() const
//   Cell  eval(const Instr&, const Dia<Univ>&) const
//   LCx   decomp(const Cell&) const           (a section of eval)
//   AtomInverse atom_inverse(const Cell&) const
// Free marked carriers implement it below; a strict model lives in the tests.

namespace omegapaste {

template <class A>
struct LCx {
  Instr phi;
  Dia<typename A::Univ> dia;
};

template <class A>
struct InvTriple {
  typename A::Cell inverse, p, q;
};

template <class A>
struct AtomInverse {
  std::optional<InvTriple<A>> triple;
  bool depth_limited = false;  // an atom would exist at a larger depth budget
};

// Depth-bounded coinductive witness: the inverse plus the p/q cells, with
// optional sub-witnesses for p and q.
template <class A>
struct Witness {
  using Cell = typename A::Cell;
  Cell subject, inverse, p, q;
  std::shared_ptr<Witness> sub_p, sub_q;

  int depth() const {
    if (!sub_p || !sub_q) return 0;
    return 1 + std::min(sub_p->depth(), sub_q->depth());
  }
};

struct SynthStats {
  struct Event {
    int depth;        // remaining witness depth
    int norm;         // ||ar(phi)||^(n)
    bool is_synth;    // synthesize entry (vs half-chain entry)
    int parent;       // index of the enclosing event, -1 at the root
  };
  std::vector<Event> events;
  std::vector<int> stack;
};

template <class A>
struct WitnessStore {
  const A* alg = nullptr;
  std::vector<Witness<A>> roots;

  std::optional<InvTriple<A>> lookup(const typename A::Cell& u) const {
    auto scan = [&](auto&& self, const Witness<A>& w) -> std::optional<InvTriple<A>> {
      if (alg->univ().eq(w.subject, u)) return InvTriple<A>{w.inverse, w.p, w.q};
      if (w.sub_p)
        if (auto r = self(self, *w.sub_p)) return r;
      if (w.sub_q)
        if (auto r = self(self, *w.sub_q)) return r;
      return std::nullopt;
    };
    for (const auto& w : roots)
      if (auto r = scan(scan, w)) return r;
    return std::nullopt;
  }
};

struct WitnessReport {
  bool ok = true;
  std::string diag;
};

// --- generic cell helpers ------------------------------------------------------

template <class A>
typename A::Cell g_id(const A& alg, const typename A::Cell& x) {
  auto u = alg.univ();
  int n = u.dim(x) + 1;
  Dia<typename A::Univ> d = eta_dia(u, x);
  d.dim = n;
  return alg.eval(sp(at_dim({n - 1}, {}, n)), d);
}

template <class A>
typename A::Cell g_comp(const A& alg, const typename A::Cell& a, const typename A::Cell& b) {
  auto u = alg.univ();
  int n = u.dim(a);
  check(n == u.dim(b) && n >= 1, Err::DimMismatch, "composition needs equal dimensions >= 1");
  typename A::Cell mid = u.tgt(a);
  check(u.eq(mid, u.src(b)), Err::BoundaryMismatch, "cells are not composable");
  Dia<typename A::Univ> d;
  d.dim = n;
  d.tops = {a, b};
  d.bots = {mid};
  return alg.eval(sp(two_chain(n)), d);
}

template <class A>
bool g_is_id(const A& alg, const typename A::Cell& c) {
  auto u = alg.univ();
  if (u.dim(c) == 0) return false;
  return u.eq(c, g_id(alg, u.src(c)));
}

template <class A>
Dia<typename A::Univ> g_delta(const A& alg, const Dia<typename A::Univ>& d, int i,
                              DeltaVariant v) {
  auto u = alg.univ();
  SchemeCell k = shape_of(u, d);
  const int n = d.dim, r = d.rank();
  check(i >= 0 && i <= r && k.table.tops[i] == n, Err::NotFullDimensional,
        "delta needs a full-dimensional column");
  if (v == DeltaVariant::Plus)
    check(i == r || k.table.bots[i] < n - 1, Err::PreconditionViolated, "delta_plus");
  if (v == DeltaVariant::Minus)
    check(i == 0 || k.table.bots[i - 1] < n - 1, Err::PreconditionViolated, "delta_minus");
  if (v == DeltaVariant::Exact)
    check(g_is_id(alg, d.tops[i]), Err::NotIdentityAtSlot, "column is not an identity");
  Dia<typename A::Univ> out = d;
  bool left = i > 0 && k.table.bots[i - 1] == n - 1;
  bool right = i < r && k.table.bots[i] == n - 1;
  if ((v == DeltaVariant::Exact && left) || (v == DeltaVariant::Plus && left)) {
    out.tops.erase(out.tops.begin() + i);
    out.bots.erase(out.bots.begin() + (i - 1));
  } else if ((v == DeltaVariant::Exact && right) || (v == DeltaVariant::Minus && right)) {
    out.tops.erase(out.tops.begin() + i);
    out.bots.erase(out.bots.begin() + i);
  } else {
    out.tops[i] = v == DeltaVariant::Minus ? u.tgt(d.tops[i]) : u.src(d.tops[i]);
  }
  validate_dia(u, out);
  return out;
}

// --- validation ------------------------------------------------------------------

template <class A>
WitnessReport validate_witness(const A& alg, const Witness<A>& w, int depth) {
  auto u = alg.univ();
  WitnessReport rep;
  auto expect = [&](bool cond, const std::string& what) {
    if (!cond && rep.ok) {
      rep.ok = false;
      rep.diag = what;
    }
  };
  try {
    int n = u.dim(w.subject);
    expect(n >= 1, "subject must have dimension >= 1");
    expect(u.dim(w.inverse) == n, "inverse dimension mismatch");
    expect(u.eq(u.src(w.inverse), u.tgt(w.subject)), "src(v) != tgt(u)");
    expect(u.eq(u.tgt(w.inverse), u.src(w.subject)), "tgt(v) != src(u)");
    expect(u.dim(w.p) == n + 1 && u.dim(w.q) == n + 1, "p and q must live one dimension up");
    expect(u.eq(u.src(w.p), g_comp(alg, w.subject, w.inverse)), "src(p) != u * v");
    expect(u.eq(u.tgt(w.p), g_id(alg, u.src(w.subject))), "tgt(p) != id(src u)");
    expect(u.eq(u.src(w.q), g_comp(alg, w.inverse, w.subject)), "src(q) != v * u");
    expect(u.eq(u.tgt(w.q), g_id(alg, u.tgt(w.subject))), "tgt(q) != id(tgt u)");
    if (depth >= 1) {
      expect(w.sub_p && w.sub_q, "missing sub-witnesses at depth " + std::to_string(depth));
      if (w.sub_p) {
        expect(u.eq(w.sub_p->subject, w.p), "sub_p does not witness p");
        auto r = validate_witness(alg, *w.sub_p, depth - 1);
        expect(r.ok, "sub_p: " + r.diag);
      }
      if (w.sub_q) {
        expect(u.eq(w.sub_q->subject, w.q), "sub_q does not witness q");
        auto r = validate_witness(alg, *w.sub_q, depth - 1);
        expect(r.ok, "sub_q: " + r.diag);
      }
    }
  } catch (const OmegaError& e) {
    expect(false, std::string("typing computation failed: ") + e.what());
  }
  return rep;
}

// --- membership in Phi(S) -----------------------------------------------------------

template <class A>
typename A::Cell detail_half_cells(const A& alg, const LCx<A>& c, const LCx<A>& cinv);

template <class A>
AtomInverse<A> admits_s_inverse(const A& alg, const typename A::Cell& u,
                                const WitnessStore<A>& store) {
  if (auto t = store.lookup(u)) return {t, false};
  AtomInverse<A> atom = alg.atom_inverse(u);
  if (atom.triple || atom.depth_limited) return atom;
  // degenerate-arity composites are always invertible
  LCx<A> c = alg.decomp(u);
  if (is_degenerate(arity(c.phi))) {
    LCx<A> cinv{kappa(instr_boundary(c.phi, Side::Tgt), instr_boundary(c.phi, Side::Src),
                      arity(c.phi)),
                c.dia};
    auto p = detail_half_cells(alg, c, cinv);
    auto q = detail_half_cells(alg, cinv, c);
    return {InvTriple<A>{alg.eval(cinv.phi, cinv.dia), p, q}, false};
  }
  return {std::nullopt, false};
}

// The coherence cell eval(c) * eval(cinv) -> id(src) for degenerate pairs.
template <class A>
typename A::Cell detail_half_cells(const A& alg, const LCx<A>& c, const LCx<A>& cinv) {
  auto u = alg.univ();
  const int n = c.phi.dim();
  check(dia_eq(u, c.dia, cinv.dia), Err::Internal, "degenerate pair must share the diagram");
  Dia<InstrUniv> two;
  two.dim = n;
  two.tops = {c.phi, cinv.phi};
  two.bots = {instr_boundary(c.phi, Side::Tgt)};
  Instr comp_instr = mu_instr(sp(two_chain(n)), two);
  Dia<InstrUniv> one;
  one.dim = n;
  one.tops = {instr_boundary(c.phi, Side::Src)};
  Instr id_instr = mu_instr(sp(at_dim({n - 1}, {}, n)), one);
  check(instr_parallel(comp_instr, id_instr), Err::Internal,
        "degenerate half: instructions not parallel");
  SchemeCell k = arity(c.phi);
  Dia<typename A::Univ> lifted = c.dia;
  lifted.dim = n + 1;
  return alg.eval(coherence_instr(comp_instr, id_instr, SchemeCell{k.table, n}), lifted);
}

}  // namespace omegapaste

#include "omegapaste/witness_synth.hpp"
