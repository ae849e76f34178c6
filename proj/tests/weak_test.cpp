#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omegapaste/gen.hpp"
#include "omegapaste/oracle.hpp"
#include "omegapaste/weak.hpp"

using namespace omegapaste;

namespace {

// Carrier for the paper's delta example: f,g,h: a->b with al: f->g, be: g->h,
// then i: b->c and j,k: c->d with ga: j->k.
MarkedCarrier delta_carrier() {
  GlobularSet g;
  g.max_dim = 2;
  g.cells = {{"a", "b", "c", "d"}, {"f", "g", "h", "i", "j", "k"}, {"al", "be", "ga"}};
  g.src = {{},
           {{"f", "a"}, {"g", "a"}, {"h", "a"}, {"i", "b"}, {"j", "c"}, {"k", "c"}},
           {{"al", "f"}, {"be", "g"}, {"ga", "j"}}};
  g.tgt = {{},
           {{"f", "b"}, {"g", "b"}, {"h", "b"}, {"i", "c"}, {"j", "d"}, {"k", "d"}},
           {{"al", "g"}, {"be", "h"}, {"ga", "k"}}};
  return free_carrier(validate_globular_set(std::move(g)));
}

// Tautological marked carrier over the realisation of a scheme.
struct TautCarrier {
  MarkedCarrier car;
  Dia<MarkUniv> taut;
};

TautCarrier taut_over(const SchemeCell& k, int mark_depth = 0) {
  Realisation r = realisation(k);
  std::vector<GCell> marks;
  if (mark_depth > 0)
    for (int d = 1; d <= r.glob.max_dim; ++d)
      for (const auto& n : r.glob.cells[d]) marks.push_back({d, n});
  TautCarrier out{extend_with_marks(r.glob, marks, mark_depth), {}};
  MarkUniv mu{&out.car};
  out.taut.dim = k.dim;
  for (const auto& c : r.tops) out.taut.tops.push_back(m_gen(out.car, c));
  for (const auto& c : r.bots) out.taut.bots.push_back(m_gen(out.car, c));
  validate_dia(mu, out.taut);
  return out;
}

}  // namespace

TEST_CASE("lcell validation and boundaries") {
  auto tc = taut_over(at_dim({2, 1, 2, 2}, {0, 0, 1}, 2));
  const auto& car = tc.car;
  MarkUniv mu{&car};
  LCell c = validate_lcell(car, sp(at_dim({2, 1, 2, 2}, {0, 0, 1}, 2)), tc.taut);
  LCell s1 = lcell_boundary(car, c, Side::Src);
  CHECK(instr_equal(s1.phi, sp(at_dim({1, 1, 1}, {0, 0}, 1))));
  CHECK(dia_eq(mu, s1.dia, dia_boundary(mu, tc.taut, 1, Side::Src)));
  // eta-cell boundary
  MCell x = tc.taut.tops[0];
  LCell ec = decompose(car, x);
  LCell es = lcell_boundary(car, ec, Side::Src);
  CHECK(instr_equal(es.phi, make_unit(1)));
  CHECK_THROWS_WITH_AS((void)validate_lcell(car, sp(globe(2)), tc.taut),
                       doctest::Contains("ArityShapeMismatch"), OmegaError);
}

TEST_CASE("xi unit law and flattening") {
  auto tc = taut_over(at_dim({1, 1}, {0}, 1));
  const auto& car = tc.car;
  MarkUniv mu{&car};
  MCell f = tc.taut.tops[0], g = tc.taut.tops[1];
  // xi . eta = id
  CHECK(m_eq(xi_free(car, decompose(car, f)), f));
  // composite of composites flattens
  MCell fg = compose_cells(car, f, g);
  CHECK(fg.kind() == MCell::Kind::Comp);
  MCell idfg = identity_cell(car, fg);
  CHECK(idfg.kind() == MCell::Kind::Comp);
  for (const auto& e : idfg.dia().tops) CHECK(e.is_atom());
  // s(id) = t(id) = the cell
  CHECK(m_eq(m_src(car, idfg), fg));
  CHECK(m_eq(m_tgt(car, idfg), fg));
}

TEST_CASE("algebra law xi . L xi = xi . mu on two-level nests") {
  gen::Rng rng(91);
  for (int trial = 0; trial < 60; ++trial) {
    gen::T2Cell t = gen::rand_t2(rng, 3);
    SchemeCell whole{};
    (void)plan_mu(t.outer, t.inners, &whole);
    auto tc = taut_over(whole);
    const auto& car = tc.car;
    MarkUniv mu{&car};
    auto parts = dia_unsplice(mu, t.outer, t.inners, tc.taut);
    // route 1: evaluate each part, then the outer instruction
    Dia<MarkUniv> evald;
    evald.dim = t.outer.dim;
    for (size_t i = 0; i < parts.size(); ++i)
      evald.tops.push_back(xi_free(car, sp(t.inners[i]), parts[i]));
    for (int i = 1; i <= t.outer.rank(); ++i)
      evald.bots.push_back(
          iter_bnd(mu, evald.tops[i], t.outer.table.bots[i - 1], Side::Src));
    MCell route1 = xi_free(car, sp(t.outer), evald);
    // route 2: mu first
    Dia<InstrUniv> chi;
    chi.dim = t.outer.dim;
    for (const auto& k : t.inners) chi.tops.push_back(sp(k));
    for (int i = 1; i <= t.outer.rank(); ++i)
      chi.bots.push_back(
          iter_bnd(InstrUniv{}, chi.tops[i], t.outer.table.bots[i - 1], Side::Src));
    Dia<DiaUniv<MarkUniv>> innerd;
    innerd.dim = t.outer.dim;
    innerd.tops = parts;
    for (int i = 1; i <= t.outer.rank(); ++i)
      innerd.bots.push_back(
          dia_boundary(mu, parts[i], t.outer.table.bots[i - 1], Side::Src));
    MCell route2 = xi_free(car, mu_instr(sp(t.outer), chi), dia_mu(mu, innerd));
    CHECK(m_eq(route1, route2));
  }
}

TEST_CASE("source and target formulas for id and comp") {
  auto tc = taut_over(at_dim({1, 1}, {0}, 1));
  const auto& car = tc.car;
  MCell f = tc.taut.tops[0], g = tc.taut.tops[1];
  MCell a = m_src(car, f);
  MCell idf = identity_cell(car, a);
  CHECK(m_eq(m_src(car, idf), a));
  CHECK(m_eq(m_tgt(car, idf), a));
  MCell fg = compose_cells(car, f, g);
  CHECK(m_eq(m_src(car, fg), m_src(car, f)));
  CHECK(m_eq(m_tgt(car, fg), m_tgt(car, g)));
  // id then compose
  MCell idaf = compose_cells(car, idf, f);
  CHECK(m_eq(m_src(car, idaf), a));
  CHECK_THROWS_WITH_AS((void)compose_cells(car, g, f), doctest::Contains("BoundaryMismatch"),
                       OmegaError);
}

TEST_CASE("paste") {
  auto tc = taut_over(at_dim({2, 1, 2, 2}, {0, 0, 1}, 2));
  const auto& car = tc.car;
  MarkUniv mu{&car};
  MCell whole = paste(car, at_dim({2, 1, 2, 2}, {0, 0, 1}, 2), tc.taut);
  CHECK(whole.dim() == 2);
  MCell s = m_src(car, whole);
  MCell expect = paste(car, at_dim({1, 1, 1}, {0, 0}, 1), dia_boundary(mu, tc.taut, 1, Side::Src));
  CHECK(m_eq(s, expect));
  // paste of a single column is the cell itself
  CHECK(m_eq(paste(car, globe(2), eta_dia(mu, tc.taut.tops[0])), tc.taut.tops[0]));
  // paste([1,1/0], [f,g/b]) = compose_cells(f,g)
  auto tc2 = taut_over(at_dim({1, 1}, {0}, 1));
  MCell f = tc2.taut.tops[0], g = tc2.taut.tops[1];
  CHECK(m_eq(paste(tc2.car, at_dim({1, 1}, {0}, 1), tc2.taut), compose_cells(tc2.car, f, g)));
  CHECK_THROWS_AS((void)paste(car, globe(2), tc.taut), OmegaError);
}

TEST_CASE("paste naturality under relabeling") {
  gen::Rng rng(97);
  for (int trial = 0; trial < 30; ++trial) {
    Scheme k = gen::rand_scheme(rng);
    auto tc = taut_over(at_dim(k, k.max_level()));
    // relabel through an isomorphism (rename every cell with a prefix)
    GlobularSet renamed = tc.car.base;
    for (int d = 0; d <= renamed.max_dim; ++d) {
      for (auto& n : renamed.cells[d]) n = "r_" + n;
      if (d >= 1) {
        std::map<std::string, std::string> s2, t2;
        for (auto& [n, v] : renamed.src[d]) s2["r_" + n] = "r_" + v;
        for (auto& [n, v] : renamed.tgt[d]) t2["r_" + n] = "r_" + v;
        renamed.src[d] = s2;
        renamed.tgt[d] = t2;
      }
    }
    MarkedCarrier car2 = free_carrier(validate_globular_set(std::move(renamed)));
    auto rename = [&](auto&& self, const MCell& c) -> MCell {
      switch (c.kind()) {
        case MCell::Kind::Gen:
          return m_gen(car2, {c.dim(), "r_" + c.name()});
        case MCell::Kind::Inv:
          return m_inv(car2, self(self, c.of()));
        case MCell::Kind::P:
          return m_p(car2, self(self, c.of()));
        case MCell::Kind::Q:
          return m_q(car2, self(self, c.of()));
        case MCell::Kind::Comp: {
          Dia<MarkUniv> d;
          d.dim = c.dia().dim;
          for (const auto& e : c.dia().tops) d.tops.push_back(self(self, e));
          for (const auto& e : c.dia().bots) d.bots.push_back(self(self, e));
          return xi_free(car2, c.instr(), d);
        }
      }
      fail(Err::Internal, "bad kind");
    };
    SchemeCell kc = at_dim(k, k.max_level());
    MCell lhs = rename(rename, paste(tc.car, kc, tc.taut));
    Dia<MarkUniv> mapped;
    mapped.dim = tc.taut.dim;
    for (const auto& e : tc.taut.tops) mapped.tops.push_back(rename(rename, e));
    for (const auto& e : tc.taut.bots) mapped.bots.push_back(rename(rename, e));
    MCell rhs = paste(car2, kc, mapped);
    CHECK(m_eq(lhs, rhs));
  }
}

TEST_CASE("coherence cells") {
  auto tc = taut_over(at_dim({1, 1, 1}, {0, 0}, 1));
  const auto& car = tc.car;
  MarkUniv mu{&car};
  // the two bracketings of a triple composite
  MCell f = tc.taut.tops[0], g = tc.taut.tops[1], h = tc.taut.tops[2];
  MCell left = compose_cells(car, compose_cells(car, f, g), h);
  MCell right = compose_cells(car, f, compose_cells(car, g, h));
  CHECK_FALSE(m_eq(left, right));
  CHECK(left.kind() == MCell::Kind::Comp);
  CHECK(instr_equal(instr_boundary(left.instr(), Side::Src),
                    instr_boundary(right.instr(), Side::Src)));
  LCell coh = coherence_cell(car, left.instr(), right.instr(), tc.taut);
  CHECK(is_degenerate(arity(coh.phi)));
  CHECK(m_eq(xi_free(car, lcell_boundary(car, coh, Side::Src)), left));
  CHECK(m_eq(xi_free(car, lcell_boundary(car, coh, Side::Tgt)), right));
  // equal instructions give equal endpoints
  LCell triv = coherence_cell(car, left.instr(), left.instr(), tc.taut);
  CHECK(m_eq(xi_free(car, lcell_boundary(car, triv, Side::Src)),
             xi_free(car, lcell_boundary(car, triv, Side::Tgt))));
}

TEST_CASE("delta diagram golden") {
  auto car = delta_carrier();
  MarkUniv mu{&car};
  auto g1 = [&](const std::string& n) { return m_gen(car, {1, n}); };
  auto g2 = [&](const std::string& n) { return m_gen(car, {2, n}); };
  auto g0 = [&](const std::string& n) { return m_gen(car, {0, n}); };
  MCell idg = identity_cell(car, g1("g"));
  Dia<MarkUniv> u;
  u.dim = 2;
  u.tops = {g2("al"), idg, g2("be"), g1("i"), g2("ga")};
  u.bots = {g1("g"), g1("g"), g0("b"), g0("c")};
  validate_dia(mu, u);

  auto d1 = delta_diagram(car, u, 1, DeltaVariant::Exact);
  Dia<MarkUniv> d1_want{2, {g2("al"), g2("be"), g1("i"), g2("ga")}, {g1("g"), g0("b"), g0("c")}};
  CHECK(dia_eq(mu, d1, d1_want));

  auto d2p = delta_diagram(car, u, 2, DeltaVariant::Plus);
  Dia<MarkUniv> d2_want{2, {g2("al"), idg, g1("i"), g2("ga")}, {g1("g"), g0("b"), g0("c")}};
  CHECK(dia_eq(mu, d2p, d2_want));

  auto d4m = delta_diagram(car, u, 4, DeltaVariant::Minus);
  Dia<MarkUniv> d4_want{2, {g2("al"), idg, g2("be"), g1("i"), g1("k")},
                        {g1("g"), g1("g"), g0("b"), g0("c")}};
  CHECK(dia_eq(mu, d4m, d4_want));

  CHECK_THROWS_WITH_AS((void)delta_diagram(car, u, 0, DeltaVariant::Exact),
                       doctest::Contains("NotIdentityAtSlot"), OmegaError);
  CHECK_THROWS_WITH_AS((void)delta_diagram(car, u, 3, DeltaVariant::Exact),
                       doctest::Contains("NotFullDimensional"), OmegaError);
  CHECK_THROWS_WITH_AS((void)delta_diagram(car, u, 1, DeltaVariant::Plus),
                       doctest::Contains("PreconditionViolated"), OmegaError);
}

TEST_CASE("unit law cell") {
  auto tc = taut_over(at_dim({1, 1}, {0}, 1));
  const auto& car = tc.car;
  MarkUniv mu{&car};
  MCell f = tc.taut.tops[0];
  MCell b = m_tgt(car, f);
  MCell idb = identity_cell(car, b);
  // u = [f, id(b) / b]: the unit-law cell runs from f * id(b) to f
  Dia<MarkUniv> u;
  u.dim = 1;
  u.tops = {f, idb};
  u.bots = {b};
  LCell c = validate_lcell(car, sp(at_dim({1, 1}, {0}, 1)), u);
  LCell w = unit_law_cell(car, c, 1);
  CHECK(m_eq(xi_free(car, lcell_boundary(car, w, Side::Src)), compose_cells(car, f, idb)));
  // target: xi(delta phi, delta u), the cell f under the contracted instruction
  MCell tgt = xi_free(car, lcell_boundary(car, w, Side::Tgt));
  MCell want = xi_free(car, delta_instr(c.phi, 1),
                       delta_diagram(car, u, 1, DeltaVariant::Exact));
  CHECK(m_eq(tgt, want));
  CHECK(m_eq(m_src(car, tgt), m_src(car, f)));
  CHECK(m_eq(m_tgt(car, tgt), m_tgt(car, f)));
  CHECK(is_degenerate(arity(w.phi)));
  CHECK_THROWS_WITH_AS((void)unit_law_cell(car, c, 0), doctest::Contains("NotIdentityAtSlot"),
                       OmegaError);
}

TEST_CASE("hom category shifts") {
  auto tc = taut_over(at_dim({2, 2}, {1}, 2));
  const auto& car = tc.car;
  MCell al = tc.taut.tops[0], be = tc.taut.tops[1];
  MCell f = m_src(car, al);
  MCell a = m_src(car, f), b = m_tgt(car, f);
  HomView h = hom_cat(car, a, b);
  // id in X(a,b) on the 0-cell f equals id_2(f) in X
  CHECK(m_eq(hom_identity(h, f), identity_cell(car, f)));
  // comp in X(a,b) equals composition one dimension up
  CHECK(m_eq(hom_compose(h, al, be), compose_cells(car, al, be)));
  // paste in the hom equals the suspended paste
  MarkUniv mu{&car};
  Dia<MarkUniv> d = tc.taut;
  CHECK(m_eq(hom_paste(h, at_dim({1, 1}, {0}, 1), d),
             paste(car, at_dim({2, 2}, {1}, 2), tc.taut)));
}

TEST_CASE("marked carriers and formal atoms") {
  GlobularSet g;
  g.max_dim = 1;
  g.cells = {{"a", "b"}, {"f"}};
  g.src = {{}, {{"f", "a"}}};
  g.tgt = {{}, {{"f", "b"}}};
  g = validate_globular_set(std::move(g));
  CHECK_THROWS_WITH_AS((void)extend_with_marks(g, {GCell{0, "a"}}, 1),
                       doctest::Contains("MarkDimZero"), OmegaError);
  MarkedCarrier car = extend_with_marks(g, {GCell{1, "f"}}, 2);
  MCell f = m_gen(car, {1, "f"});
  MCell vf = m_inv(car, f);
  CHECK(m_eq(m_src(car, vf), m_tgt(car, f)));
  CHECK(m_eq(m_tgt(car, vf), m_src(car, f)));
  MCell pf = m_p(car, f);
  CHECK(pf.dim() == 2);
  CHECK(m_eq(m_src(car, pf), compose_cells(car, f, vf)));
  CHECK(m_eq(m_tgt(car, pf), identity_cell(car, m_src(car, f))));
  MCell qf = m_q(car, f);
  CHECK(m_eq(m_src(car, qf), compose_cells(car, vf, f)));
  CHECK(m_eq(m_tgt(car, qf), identity_cell(car, m_tgt(car, f))));
  // depth-2 atoms have matching types
  MCell ppf = m_p(car, pf);
  CHECK(ppf.level() == 2);
  CHECK(m_eq(m_src(car, ppf), compose_cells(car, pf, m_inv(car, pf))));
  CHECK(mentions(ppf, {1, "f"}));
  CHECK_FALSE(mentions(identity_cell(car, m_src(car, f)), {1, "f"}));
}

TEST_CASE("lift along ar") {
  auto tc = taut_over(at_dim({2, 2}, {1}, 2));
  const auto& car = tc.car;
  MarkUniv mu{&car};
  LCell s = lcell_boundary(car, validate_lcell(car, sp(at_dim({2, 2}, {1}, 2)), tc.taut),
                           Side::Src);
  LCell t = lcell_boundary(car, validate_lcell(car, sp(at_dim({2, 2}, {1}, 2)), tc.taut),
                           Side::Tgt);
  LCell lifted = lift_along_ar(car, s, t, tc.taut);
  CHECK(arity(lifted.phi) == at_dim({2, 2}, {1}, 2));
  CHECK(lcell_eq(lcell_boundary(car, lifted, Side::Src), s));
  CHECK(lcell_eq(lcell_boundary(car, lifted, Side::Tgt), t));
  // failure: wrong arity on the boundary data
  auto tc2 = taut_over(at_dim({1, 1}, {0}, 1));
  LCell bad = decompose(tc2.car, tc2.taut.tops[0]);
  CHECK_THROWS_WITH_AS((void)lift_along_ar(car, bad, bad, tc.taut),
                       doctest::Contains("SquareDoesNotCommute"), OmegaError);
}
