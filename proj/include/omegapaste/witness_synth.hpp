#pragma once
// Included at the end of witness.hpp; the synthesis half of the engine.

namespace omegapaste {

namespace detail {
struct StatGuard {
  SynthStats* s;
  StatGuard(SynthStats* stats, int depth, int norm, bool is_synth) : s(stats) {
    if (!s) return;
    int parent = s->stack.empty() ? -1 : s->stack.back();
    s->events.push_back({depth, norm, is_synth, parent});
    s->stack.push_back(static_cast<int>(s->events.size()) - 1);
  }
  ~StatGuard() {
    if (s) s->stack.pop_back();
  }
};
}  // namespace detail

template <class A>
using AsgList = std::vector<std::pair<typename A::Cell, InvTriple<A>>>;

template <class A>
std::optional<InvTriple<A>> asg_lookup(const A& alg, const AsgList<A>& asg,
                                       const typename A::Cell& c) {
  for (const auto& [cell, t] : asg)
    if (alg.univ().eq(cell, c)) return t;
  return std::nullopt;
}

template <class A>
AsgList<A> asg_swapped(const AsgList<A>& asg) {
  AsgList<A> out;
  for (const auto& [cell, t] : asg)
    out.push_back({t.inverse, InvTriple<A>{cell, t.q, t.p}});
  return out;
}

// Linear composite of (n+1)-cells along dimension n.
template <class A>
LCx<A> g_chain(const A& alg, const std::vector<typename A::Cell>& cells) {
  auto u = alg.univ();
  check(!cells.empty(), Err::Internal, "empty chain");
  int n1 = u.dim(cells[0]);
  Dia<typename A::Univ> d;
  d.dim = n1;
  d.tops = cells;
  for (size_t i = 0; i + 1 < cells.size(); ++i) d.bots.push_back(u.tgt(cells[i]));
  validate_dia(u, d);
  return LCx<A>{sp(linear_chain(static_cast<int>(cells.size()), n1)), std::move(d)};
}

// The S-inverse instruction: the kappa contraction with swapped boundaries
// over the reversal of every (n-1)-transversal component, entries replaced
// by their assigned inverses.
template <class A>
std::pair<LCx<A>, AsgList<A>> inverse_instruction(
    const A& alg, const LCx<A>& c,
    const std::function<std::optional<InvTriple<A>>(const typename A::Cell&)>& assign) {
  auto u = alg.univ();
  const int n = c.phi.dim();
  check(n >= 1, Err::DimZero, "inverse instruction needs dimension >= 1");
  SchemeCell k = arity(c.phi);
  Instr phi_inv = kappa(instr_boundary(c.phi, Side::Tgt), instr_boundary(c.phi, Side::Src), k);
  Dia<typename A::Univ> dinv = c.dia;
  AsgList<A> asg;
  for (auto [i, j] : transversal_components(SchemeCell{k.table, n}, n - 1)) {
    for (int l = i; l <= j; ++l) {
      const auto& cell = c.dia.tops[l];
      if (!asg_lookup(alg, asg, cell)) {
        auto t = assign(cell);
        check(t.has_value(), Err::MissingInverseAssignment,
              "no inverse assignment for the full-dimensional label " + u.show(cell));
        asg.push_back({cell, *t});
      }
      dinv.tops[j - (l - i)] = asg_lookup(alg, asg, cell)->inverse;
    }
    for (int l = i + 1; l <= j; ++l) dinv.bots[i + j - l] = c.dia.bots[l - 1];
  }
  validate_dia(u, dinv);
  return {LCx<A>{std::move(phi_inv), std::move(dinv)}, std::move(asg)};
}

// Generic unit-law cell: xi(phi,u) -> xi(delta^i phi, delta^i u).
template <class A>
LCx<A> g_unit_law(const A& alg, const LCx<A>& c, int i) {
  auto u = alg.univ();
  const int n = c.phi.dim();
  SchemeCell k = arity(c.phi);
  check(i >= 0 && i <= k.rank() && k.table.tops[i] == n, Err::NotFullDimensional,
        "unit law needs a full-dimensional column");
  check(g_is_id(alg, c.dia.tops[i]), Err::NotIdentityAtSlot,
        "unit law column must hold an identity");
  Dia<InstrUniv> chi = unit_diagram(k);
  chi.tops[i] = sp(at_dim({n - 1}, {}, n));
  Instr merged = mu_instr(c.phi, chi);
  Instr dphi = delta_instr(c.phi, i);
  check(instr_parallel(merged, dphi), Err::Internal, "unit law: instructions not parallel");
  Dia<typename A::Univ> du = g_delta(alg, c.dia, i, DeltaVariant::Exact);
  Dia<typename A::Univ> lifted = du;
  lifted.dim = n + 1;
  return LCx<A>{coherence_instr(merged, dphi, delta_scheme(k, i)), std::move(lifted)};
}

template <class A>
Witness<A> synthesize_witness(const A& alg, const LCx<A>& c, const WitnessStore<A>& store,
                              int depth, SynthStats* stats = nullptr);

// The half construction: the (n+1)-cell  eval(c) *_{n-1} eval(cinv) ->
// id(src eval(c)),
// together with a witness for it at depth wd (absent when wd < 0).
template <class A>
struct Half {
  typename A::Cell h;
  LCx<A> lc;
  std::shared_ptr<Witness<A>> wit;
};

template <class A>
Half<A> synth_half(const A& alg, const LCx<A>& c, const LCx<A>& cinv, const AsgList<A>& asg,
                   const WitnessStore<A>& store, int wd, SynthStats* stats) {
  auto u = alg.univ();
  const int n = c.phi.dim();
  SchemeCell k = arity(c.phi);
  const int N = fdl_norm(k);
  detail::StatGuard guard(stats, wd, N, false);

  if (N == 0) {
    LCx<A> hlc;
    {
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
      Dia<typename A::Univ> lifted = c.dia;
      lifted.dim = n + 1;
      hlc = LCx<A>{coherence_instr(comp_instr, id_instr, SchemeCell{k.table, n}),
                   std::move(lifted)};
    }
    Half<A> out{alg.eval(hlc.phi, hlc.dia), hlc, nullptr};
    if (wd >= 0)
      out.wit = std::make_shared<Witness<A>>(synthesize_witness(alg, hlc, store, wd, stats));
    return out;
  }

  // inductive step: cancel the last pair of the leftmost component
  auto comps = transversal_components(SchemeCell{k.table, n}, n - 1);
  auto [ci, cj] = comps.front();
  const auto& u_j = c.dia.tops[cj];
  const auto& v_j = cinv.dia.tops[ci];
  auto trip = asg_lookup(alg, asg, u_j);
  check(trip.has_value(), Err::MissingInverseAssignment, "no triple for " + u.show(u_j));

  Dia<typename A::Univ> ucomp = dia_compose(u, c.dia, cinv.dia, n - 1);
  SchemeCell k2 = shape_of(u, ucomp);
  SchemeCell kp = delta_scheme(k2, cj);  // k'
  Instr sphi = instr_boundary(c.phi, Side::Src);
  Instr phi_p = kappa(sphi, sphi, kp);  // phi'

  // u*: merge the cancelled pair into a single binary composite
  Dia<typename A::Univ> ustar = ucomp;
  ustar.tops[cj] = g_comp(alg, u_j, v_j);
  ustar.tops.erase(ustar.tops.begin() + cj + 1);
  ustar.bots.erase(ustar.bots.begin() + cj);
  check(shape_of(u, ustar) == kp, Err::Internal, "u* shape mismatch");

  // w1: rebracketing coherence
  Dia<InstrUniv> chi = unit_diagram(kp);
  chi.tops[cj] = sp(two_chain(n));
  Instr phi_split = mu_instr(phi_p, chi);
  Dia<InstrUniv> two;
  two.dim = n;
  two.tops = {c.phi, cinv.phi};
  two.bots = {instr_boundary(c.phi, Side::Tgt)};
  Instr phi_comp = mu_instr(sp(two_chain(n)), two);
  check(instr_parallel(phi_comp, phi_split), Err::Internal, "w1: instructions not parallel");
  Dia<typename A::Univ> ucomp_lift = ucomp;
  ucomp_lift.dim = n + 1;
  LCx<A> w1{coherence_instr(phi_comp, phi_split, SchemeCell{k2.table, n}), ucomp_lift};

  // w2: whisker the p-cell of the cancelled pair
  Scheme kpp_table = kp.table;
  kpp_table.tops[cj] = n + 1;
  SchemeCell kpp = at_dim(kpp_table, n + 1);  // k''
  Instr phi_pp = kappa(phi_p, phi_p, kpp);
  Dia<typename A::Univ> up = ustar;
  up.tops[cj] = trip->p;
  up.dim = n + 1;
  LCx<A> w2{phi_pp, up};
  validate_dia(u, w2.dia);

  // w3: unit law at the cancelled column
  Dia<typename A::Univ> uid = ustar;
  uid.tops[cj] = g_id(alg, u.src(u_j));
  LCx<A> cid{phi_p, uid};
  LCx<A> w3 = g_unit_law(alg, cid, cj);

  // w4: coherence to the delta-composite
  Instr dphi = delta_instr(c.phi, cj);
  Instr dphi_inv = delta_instr(cinv.phi, ci);
  Dia<typename A::Univ> du_plus = g_delta(alg, c.dia, cj, DeltaVariant::Plus);
  Dia<typename A::Univ> du_minus = g_delta(alg, cinv.dia, ci, DeltaVariant::Minus);
  Dia<typename A::Univ> duid = g_delta(alg, uid, cj, DeltaVariant::Exact);
  check(dia_eq(u, duid, dia_compose(u, du_plus, du_minus, n - 1)), Err::Internal,
        "delta accounting failed");
  Dia<InstrUniv> two2;
  two2.dim = n;
  two2.tops = {dphi, dphi_inv};
  two2.bots = {instr_boundary(dphi, Side::Tgt)};
  Instr phi_next = mu_instr(sp(two_chain(n)), two2);
  Instr dphi_p = delta_instr(phi_p, cj);
  check(instr_parallel(dphi_p, phi_next), Err::Internal, "w4: instructions not parallel");
  Dia<typename A::Univ> duid_lift = duid;
  duid_lift.dim = n + 1;
  LCx<A> w4{coherence_instr(dphi_p, phi_next, shape_of(u, duid)), duid_lift};

  // w5: recursion on the shortened pasting
  Half<A> rec = synth_half(alg, LCx<A>{dphi, du_plus}, LCx<A>{dphi_inv, du_minus}, asg, store,
                           wd, stats);

  std::vector<typename A::Cell> cells{alg.eval(w1.phi, w1.dia), alg.eval(w2.phi, w2.dia),
                                      alg.eval(w3.phi, w3.dia), alg.eval(w4.phi, w4.dia),
                                      rec.h};
  LCx<A> chain = g_chain(alg, cells);
  Half<A> out{alg.eval(chain.phi, chain.dia), chain, nullptr};
  if (wd >= 0) {
    WitnessStore<A> store2 = store;
    store2.roots.push_back(synthesize_witness(alg, w2, store, wd, stats));
    check(rec.wit != nullptr, Err::Internal, "recursive half carries no witness");
    store2.roots.push_back(*rec.wit);
    out.wit = std::make_shared<Witness<A>>(synthesize_witness(alg, chain, store2, wd, stats));
  }
  return out;
}

// Main synthesis: a witness for xi(c) at the requested depth, given that
// every full-dimensional label admits an S-inverse.
template <class A>
Witness<A> synthesize_witness(const A& alg, const LCx<A>& c, const WitnessStore<A>& store,
                              int depth, SynthStats* stats) {
  auto u = alg.univ();
  const int n = c.phi.dim();
  check(n >= 1, Err::DimZero, "cells of dimension 0 are not invertible");
  check(depth >= 0, Err::DepthExhausted, "negative witness depth");
  detail::StatGuard guard(stats, depth, fdl_norm(arity(c.phi)), true);

  auto assign = [&](const typename A::Cell& cell) -> std::optional<InvTriple<A>> {
    AtomInverse<A> a = admits_s_inverse(alg, cell, store);
    if (!a.triple && a.depth_limited)
      fail(Err::DepthExhausted, "formal inverse data for " + u.show(cell) +
                                    " exceeds the carrier depth budget");
    return a.triple;
  };
  auto [cinv, asg] = inverse_instruction<A>(alg, c, assign);
  Half<A> ph = synth_half(alg, c, cinv, asg, store, depth - 1, stats);
  Half<A> qh = synth_half(alg, cinv, c, asg_swapped<A>(asg), store, depth - 1, stats);
  Witness<A> w;
  w.subject = alg.eval(c.phi, c.dia);
  w.inverse = alg.eval(cinv.phi, cinv.dia);
  w.p = ph.h;
  w.q = qh.h;
  w.sub_p = ph.wit;
  w.sub_q = qh.wit;
  return w;
}

template <class A>
Witness<A> witness_degenerate(const A& alg, const LCx<A>& c, const WitnessStore<A>& store,
                              int depth, SynthStats* stats = nullptr) {
  check(is_degenerate(arity(c.phi)), Err::PreconditionViolated,
        "witness_degenerate needs a degenerate arity");
  return synthesize_witness(alg, c, store, depth, stats);
}

// --- equivalence relation and friends ------------------------------------------

template <class A>
Witness<A> equiv_sym(const Witness<A>& w) {
  Witness<A> out;
  out.subject = w.inverse;
  out.inverse = w.subject;
  out.p = w.q;
  out.q = w.p;
  out.sub_p = w.sub_q;
  out.sub_q = w.sub_p;
  return out;
}

template <class A>
Witness<A> equiv_trans(const A& alg, const Witness<A>& w1, const Witness<A>& w2, int depth) {
  auto u = alg.univ();
  check(u.eq(u.tgt(w1.subject), u.src(w2.subject)), Err::BoundaryMismatch,
        "witnessed cells are not composable");
  int n = u.dim(w1.subject);
  Dia<typename A::Univ> d;
  d.dim = n;
  d.tops = {w1.subject, w2.subject};
  d.bots = {u.tgt(w1.subject)};
  WitnessStore<A> store{&alg, {w1, w2}};
  return synthesize_witness(alg, LCx<A>{sp(two_chain(n)), std::move(d)}, store, depth);
}

// The invertible cell v -> v' between two inverses of the same cell, built
// from the corollary's chain, with its witness.
template <class A>
std::pair<typename A::Cell, Witness<A>> unique_inverse_path(const A& alg,
                                                            const typename A::Cell& subject,
                                                            const Witness<A>& wv,
                                                            const Witness<A>& wvp, int depth) {
  auto uv = alg.univ();
  check(uv.eq(wv.subject, subject) && uv.eq(wvp.subject, subject), Err::NotInversesOfSameCell,
        "both witnesses must invert the given cell");
  check(wv.sub_p && wvp.sub_p && wv.sub_q && wvp.sub_q, Err::DepthExhausted,
        "unique_inverse_path needs witnesses of depth >= 1");
  const typename A::Cell& cell_u = subject;
  const typename A::Cell v = wv.inverse, vp = wvp.inverse;
  int n = uv.dim(v);
  typename A::Cell x = uv.src(cell_u);
  typename A::Cell y = uv.tgt(cell_u);

  // v ~ v * id(x)
  typename A::Cell idx = g_id(alg, x);
  typename A::Cell vid = g_comp(alg, v, idx);
  LCx<A> dv = alg.decomp(v);
  LCx<A> dvid = alg.decomp(vid);
  check(shape_of(uv, dv.dia) == arity(dvid.phi), Err::Internal, "c1 shapes disagree");
  Dia<typename A::Univ> dv_lift = dv.dia;
  dv_lift.dim = n + 1;
  LCx<A> c1{coherence_instr(dv.phi, dvid.phi, arity(dv.phi)), dv_lift};

  // v * id(x) -> v * (u * v') by the inverse of p'
  typename A::Cell pinv = wvp.sub_p->inverse;
  Dia<typename A::Univ> d2;
  d2.dim = n + 1;
  d2.tops = {v, pinv};
  d2.bots = {uv.tgt(v)};
  LCx<A> c2{sp(at_dim({n, n + 1}, {n - 1}, n + 1)), d2};

  // rebracket
  typename A::Cell uvp = g_comp(alg, cell_u, vp);
  typename A::Cell left = g_comp(alg, v, uvp);
  typename A::Cell right = g_comp(alg, g_comp(alg, v, cell_u), vp);
  LCx<A> dl = alg.decomp(left), dr = alg.decomp(right);
  check(shape_of(uv, dl.dia) == arity(dr.phi), Err::Internal, "c3 shapes disagree");
  Dia<typename A::Univ> dl_lift = dl.dia;
  dl_lift.dim = n + 1;
  LCx<A> c3{coherence_instr(dl.phi, dr.phi, arity(dl.phi)), dl_lift};

  // whisker q: (v*u)*v' -> id(y)*v'
  Dia<typename A::Univ> d4;
  d4.dim = n + 1;
  d4.tops = {wv.q, vp};
  d4.bots = {uv.src(vp)};
  LCx<A> c4{sp(at_dim({n + 1, n}, {n - 1}, n + 1)), d4};

  // unit law on the left identity, then collapse the trivial contraction
  typename A::Cell idy = g_id(alg, y);
  Dia<typename A::Univ> did;
  did.dim = n;
  did.tops = {idy, vp};
  did.bots = {y};
  LCx<A> cid{sp(two_chain(n)), did};
  LCx<A> c5 = g_unit_law(alg, cid, 0);
  typename A::Cell after5 = alg.eval(instr_boundary(c5.phi, Side::Tgt),
                                     dia_boundary(uv, c5.dia, n, Side::Tgt));
  LCx<A> dafter = alg.decomp(after5);
  LCx<A> dvp = alg.decomp(vp);
  check(shape_of(uv, dafter.dia) == arity(dvp.phi), Err::Internal, "c6 shapes disagree");
  Dia<typename A::Univ> dafter_lift = dafter.dia;
  dafter_lift.dim = n + 1;
  LCx<A> c6{coherence_instr(dafter.phi, dvp.phi, arity(dafter.phi)), dafter_lift};

  std::vector<typename A::Cell> cells{alg.eval(c1.phi, c1.dia), alg.eval(c2.phi, c2.dia),
                                      alg.eval(c3.phi, c3.dia), alg.eval(c4.phi, c4.dia),
                                      alg.eval(c5.phi, c5.dia), alg.eval(c6.phi, c6.dia)};
  LCx<A> chain = g_chain(alg, cells);
  typename A::Cell path = alg.eval(chain.phi, chain.dia);
  WitnessStore<A> store{&alg, {wv, wvp, equiv_sym(*wvp.sub_p)}};
  Witness<A> wit = synthesize_witness(alg, chain, store, depth);
  return {path, wit};
}

// Transport of invertibility along an invertible cell u -> v.
template <class A>
Witness<A> transport_invertibility(const A& alg, const Witness<A>& uw, const Witness<A>& connw,
                                   int depth) {
  auto uv = alg.univ();
  typename A::Cell cu = uw.subject;
  check(uv.eq(uv.src(connw.subject), cu), Err::NotParallel,
        "connecting cell must start at the witnessed cell");
  typename A::Cell cv = uv.tgt(connw.subject);
  check(uv.eq(uv.src(cu), uv.src(cv)) && uv.eq(uv.tgt(cu), uv.tgt(cv)), Err::NotParallel,
        "transport needs parallel cells");
  int n = uv.dim(cu);
  typename A::Cell w = uw.inverse;

  Dia<typename A::Univ> da;
  da.dim = n + 1;
  da.tops = {connw.inverse, w};
  da.bots = {uv.src(w)};
  LCx<A> ca{sp(at_dim({n + 1, n}, {n - 1}, n + 1)), da};
  typename A::Cell ca_cell = alg.eval(ca.phi, ca.dia);
  LCx<A> pchain = g_chain(alg, {ca_cell, uw.p});
  typename A::Cell pv = alg.eval(pchain.phi, pchain.dia);

  Dia<typename A::Univ> db;
  db.dim = n + 1;
  db.tops = {w, connw.inverse};
  db.bots = {uv.tgt(w)};
  LCx<A> cb{sp(at_dim({n, n + 1}, {n - 1}, n + 1)), db};
  typename A::Cell cb_cell = alg.eval(cb.phi, cb.dia);
  LCx<A> qchain = g_chain(alg, {cb_cell, uw.q});
  typename A::Cell qv = alg.eval(qchain.phi, qchain.dia);

  Witness<A> out;
  out.subject = cv;
  out.inverse = w;
  out.p = pv;
  out.q = qv;
  if (depth >= 1) {
    WitnessStore<A> store{&alg, {uw, connw, equiv_sym(connw)}};
    out.sub_p = std::make_shared<Witness<A>>(synthesize_witness(alg, pchain, store, depth - 1));
    out.sub_q = std::make_shared<Witness<A>>(synthesize_witness(alg, qchain, store, depth - 1));
  }
  return out;
}

// Image of a witness under a strict functor given as a cell map.
template <class B, class A, class F>
Witness<B> push_witness(const F& f, const Witness<A>& w) {
  Witness<B> out;
  out.subject = f(w.subject);
  out.inverse = f(w.inverse);
  out.p = f(w.p);
  out.q = f(w.q);
  if (w.sub_p) out.sub_p = std::make_shared<Witness<B>>(push_witness<B, A, F>(f, *w.sub_p));
  if (w.sub_q) out.sub_q = std::make_shared<Witness<B>>(push_witness<B, A, F>(f, *w.sub_q));
  return out;
}

// --- the free-algebra instance ---------------------------------------------------

struct FreeAlg {
  const MarkedCarrier* car = nullptr;
  using Univ = MarkUniv;
  using Cell = MCell;

  Univ univ() const { return MarkUniv{car}; }
  Cell eval(const Instr& phi, const Dia<Univ>& dia) const { return xi_free(*car, phi, dia); }
  LCx<FreeAlg> decomp(const Cell& c) const {
    LCell lc = decompose(*car, c);
    return LCx<FreeAlg>{lc.phi, lc.dia};
  }
  AtomInverse<FreeAlg> atom_inverse(const Cell& u) const {
    switch (u.kind()) {
      case MCell::Kind::Gen: {
        if (u.dim() < 1 || !car->marks.count({u.dim(), u.name()})) return {};
        if (car->depth < 1) return {std::nullopt, true};
        return {InvTriple<FreeAlg>{m_inv(*car, u), m_p(*car, u), m_q(*car, u)}, false};
      }
      case MCell::Kind::Inv: {
        // the inverse of inv(x) is x, witnessed by the q/p cells of x
        if (u.level() > car->depth) return {std::nullopt, true};
        return {InvTriple<FreeAlg>{u.of(), m_q(*car, u.of()), m_p(*car, u.of())}, false};
      }
      case MCell::Kind::P:
      case MCell::Kind::Q: {
        if (u.level() + 1 > car->depth) return {std::nullopt, true};
        return {InvTriple<FreeAlg>{m_inv(*car, u), m_p(*car, u), m_q(*car, u)}, false};
      }
      case MCell::Kind::Comp:
        return {};
    }
    return {};
  }
};

using FreeWitness = Witness<FreeAlg>;
using FreeStore = WitnessStore<FreeAlg>;

// --- the core ----------------------------------------------------------------------

int size_of(const MCell& c);

struct CoreOptions {
  int invert_above = 0;  // (infinity, n): require invertibility above this dimension
  int depth = 2;
  int size_bound = 24;
  int max_dim = 3;
  size_t max_cells = 20000;  // overridden by OMEGAPASTE_MAX_CELLS
};

// Enumerates the closure of the atoms under identities and binary
// composition up to the size bound, and keeps the hereditarily invertible
// part (above the (infinity,n) threshold).
std::vector<MCell> enumerate_cells(const MarkedCarrier& car, const CoreOptions& opt);
std::vector<MCell> core_filter(const MarkedCarrier& car, const CoreOptions& opt);
bool hereditarily_invertible(const MarkedCarrier& car, const MCell& c, int invert_above,
                             int depth);

}  // namespace omegapaste
