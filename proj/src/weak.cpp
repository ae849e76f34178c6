#include "omegapaste/weak.hpp"

#include <mutex>

namespace omegapaste {

struct MCellNode {
  MCell::Kind kind;
  int dim = 0;
  int level = 0;
  size_t hash = 0;
  std::string name;     // Gen
  MCell of;             // Inv / P / Q
  Instr phi;            // Comp
  Dia<MarkUniv> dia;    // Comp

  mutable std::once_flag src_once, tgt_once;
  mutable MCell src_cache, tgt_cache;
};

namespace {
size_t mix(size_t h, size_t v) { return h * 1000003u ^ (v + 0x9e3779b9u + (h << 6)); }
}

MCell::Kind MCell::kind() const { return node_->kind; }
int MCell::dim() const { return node_->dim; }
size_t MCell::hash() const { return node_->hash; }
int MCell::level() const { return node_->level; }
const std::string& MCell::name() const { return node_->name; }
const MCell& MCell::of() const { return node_->of; }
const Instr& MCell::instr() const { return node_->phi; }
const Dia<MarkUniv>& MCell::dia() const { return node_->dia; }

int MarkUniv::dim(const Cell& c) const { return c.dim(); }
MCell MarkUniv::src(const Cell& c) const { return m_src(*car, c); }
MCell MarkUniv::tgt(const Cell& c) const { return m_tgt(*car, c); }
bool MarkUniv::eq(const Cell& a, const Cell& b) const { return m_eq(a, b); }
std::string MarkUniv::show(const Cell& c) const { return omegapaste::show(c); }

MarkedCarrier extend_with_marks(GlobularSet g, const std::vector<GCell>& marks, int depth) {
  MarkedCarrier car;
  car.base = std::move(g);
  car.depth = depth;
  for (const auto& m : marks) {
    check(m.dim >= 1, Err::MarkDimZero, "cannot mark the 0-cell " + m.name);
    check(car.base.has_cell(m.dim, m.name), Err::DanglingBoundary,
          "marked cell " + m.name + " is not in the carrier");
    car.marks.insert({m.dim, m.name});
  }
  return car;
}

MCell m_gen(const MarkedCarrier& car, const GCell& g) {
  check(car.base.has_cell(g.dim, g.name), Err::DanglingBoundary,
        "generator " + g.name + " is not in the carrier");
  auto node = std::make_shared<MCellNode>();
  node->kind = MCell::Kind::Gen;
  node->dim = g.dim;
  node->name = g.name;
  node->hash = mix(11, std::hash<std::string>{}(g.name) + static_cast<size_t>(g.dim));
  return MCell(std::move(node));
}

static std::shared_ptr<MCellNode> formal_node(MCell::Kind k, const MCell& u, size_t salt) {
  check(!u.empty() && u.dim() >= 1, Err::MarkDimZero, "formal data needs dimension >= 1");
  auto node = std::make_shared<MCellNode>();
  node->kind = k;
  node->dim = k == MCell::Kind::Inv ? u.dim() : u.dim() + 1;
  node->level = u.level() + 1;
  node->of = u;
  node->hash = mix(salt, u.hash());
  return node;
}

MCell m_inv(const MarkedCarrier& car, const MCell& u) {
  (void)car;
  return MCell(formal_node(MCell::Kind::Inv, u, 13));
}
MCell m_p(const MarkedCarrier& car, const MCell& u) {
  (void)car;
  return MCell(formal_node(MCell::Kind::P, u, 17));
}
MCell m_q(const MarkedCarrier& car, const MCell& u) {
  (void)car;
  return MCell(formal_node(MCell::Kind::Q, u, 19));
}

MCell m_comp_raw(const MarkedCarrier& car, Instr phi, Dia<MarkUniv> dia) {
  check(!phi.is_unit(), Err::Internal, "unit composite must unwrap");
  MarkUniv mu{&car};
  check(arity(phi) == shape_of(mu, dia), Err::ArityShapeMismatch,
        "instruction arity " + show(arity(phi)) + " does not match the diagram shape " +
            show(shape_of(mu, dia)));
  validate_dia(mu, dia);
  auto node = std::make_shared<MCellNode>();
  node->kind = MCell::Kind::Comp;
  node->dim = phi.dim();
  size_t h = mix(23, phi.hash());
  for (const auto& e : dia.tops) h = mix(h, e.hash());
  for (const auto& e : dia.bots) h = mix(h, e.hash() + 5);
  node->hash = h;
  node->phi = std::move(phi);
  node->dia = std::move(dia);
  return MCell(std::move(node));
}

bool m_eq(const MCell& a, const MCell& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.dim() != b.dim()) return false;
  switch (a.kind()) {
    case MCell::Kind::Gen:
      return a.name() == b.name();
    case MCell::Kind::Inv:
    case MCell::Kind::P:
    case MCell::Kind::Q:
      return m_eq(a.of(), b.of());
    case MCell::Kind::Comp: {
      if (!instr_equal(a.instr(), b.instr())) return false;
      const auto &da = a.dia(), &db = b.dia();
      if (da.dim != db.dim || da.tops.size() != db.tops.size() ||
          da.bots.size() != db.bots.size())
        return false;
      for (size_t i = 0; i < da.tops.size(); ++i)
        if (!m_eq(da.tops[i], db.tops[i])) return false;
      for (size_t i = 0; i < da.bots.size(); ++i)
        if (!m_eq(da.bots[i], db.bots[i])) return false;
      return true;
    }
  }
  return false;
}

std::string show(const MCell& c) {
  if (c.empty()) return "<empty>";
  switch (c.kind()) {
    case MCell::Kind::Gen:
      return c.name();
    case MCell::Kind::Inv:
      return "(inv " + show(c.of()) + ")";
    case MCell::Kind::P:
      return "(p " + show(c.of()) + ")";
    case MCell::Kind::Q:
      return "(q " + show(c.of()) + ")";
    case MCell::Kind::Comp: {
      MarkUniv mu{nullptr};  // show does not need boundaries
      return "(cell " + show(c.instr()) + " " + show_dia(mu, c.dia()) + ")";
    }
  }
  return "?";
}

bool mentions(const MCell& c, const GCell& g) {
  switch (c.kind()) {
    case MCell::Kind::Gen:
      return c.dim() == g.dim && c.name() == g.name;
    case MCell::Kind::Inv:
    case MCell::Kind::P:
    case MCell::Kind::Q:
      return mentions(c.of(), g);
    case MCell::Kind::Comp: {
      for (const auto& e : c.dia().tops)
        if (mentions(e, g)) return true;
      for (const auto& e : c.dia().bots)
        if (mentions(e, g)) return true;
      return false;
    }
  }
  return false;
}

MCell m_bnd_cached(const MarkedCarrier& car, const MCell& c, Side side);

MCell m_src(const MarkedCarrier& car, const MCell& c) { return m_bnd_cached(car, c, Side::Src); }

MCell m_tgt(const MarkedCarrier& car, const MCell& c) { return m_bnd_cached(car, c, Side::Tgt); }

// --- LX ------------------------------------------------------------------------

LCell validate_lcell(const MarkedCarrier& car, Instr phi, Dia<MarkUniv> dia) {
  MarkUniv mu{&car};
  check(arity(phi) == shape_of(mu, dia), Err::ArityShapeMismatch,
        "arity " + show(arity(phi)) + " vs diagram shape " + show(shape_of(mu, dia)));
  validate_dia(mu, dia);
  return LCell{std::move(phi), std::move(dia)};
}

LCell lcell_boundary(const MarkedCarrier& car, const LCell& c, Side side) {
  MarkUniv mu{&car};
  int m = c.phi.dim() - 1;
  return LCell{instr_boundary(c.phi, side), dia_boundary(mu, c.dia, m, side)};
}

bool lcell_eq(const LCell& a, const LCell& b) {
  MarkUniv mu{nullptr};
  return instr_equal(a.phi, b.phi) && dia_eq(mu, a.dia, b.dia);
}

std::string show(const MarkedCarrier& car, const LCell& c) {
  MarkUniv mu{&car};
  return "(cell " + show(c.phi) + " " + show_dia(mu, c.dia) + ")";
}

LCell decompose(const MarkedCarrier& car, const MCell& c) {
  MarkUniv mu{&car};
  if (c.kind() == MCell::Kind::Comp) return LCell{c.instr(), c.dia()};
  return LCell{make_unit(c.dim()), eta_dia(mu, c)};
}

// Expansion modes for one entry of a diagram during evaluation.
//   Eta:   keep the entry as is (lift by eta^L)
//   Full:  expose the entry's own instruction and diagram
//   Split: expose only the head of a substitution-instructed entry, turning
//          its arguments into one nested cell per head column
enum class Expand { Eta, Full, Split };

// The entry's cell of LX for the chosen mode. Split recovers a coarser
// presentation from the instruction structure: the stored diagram is
// unspliced along the argument arities.
static LCell entry_lift(const MarkedCarrier& car, const MCell& e, Expand mode) {
  MarkUniv mu{&car};
  if (mode == Expand::Eta || e.kind() != MCell::Kind::Comp)
    return LCell{make_unit(e.dim()), eta_dia(mu, e)};
  if (mode == Expand::Full) return LCell{e.instr(), e.dia()};
  check(e.instr().kind() == Instr::Kind::Subst, Err::Internal, "split needs a substitution");
  const Instr& h = e.instr().head();
  const auto& args = e.instr().args();
  std::vector<SchemeCell> inner_shapes;
  for (const auto& a : args.tops) inner_shapes.push_back(arity(a));
  auto parts = dia_unsplice(mu, arity(h), inner_shapes, e.dia());
  Dia<MarkUniv> d;
  d.dim = args.dim;
  for (size_t i = 0; i < parts.size(); ++i)
    d.tops.push_back(xi_free(car, args.tops[i], parts[i]));
  for (int i = 0; i < args.rank(); ++i)
    d.bots.push_back(iter_bnd(mu, d.tops[i + 1], args.bots[i].dim(), Side::Src));
  return LCell{h, std::move(d)};
}

// One mu^L step: expand the selected composite entries, eta-lifting the
// others, with the intermediate cells taken as boundaries of the lifted
// columns. Throws when the lift is not a valid cell of L^2 X, i.e. when the
// chosen presentations do not chain.
static std::pair<Instr, Dia<MarkUniv>> expand_step(const MarkedCarrier& car, const Instr& phi,
                                                   const Dia<MarkUniv>& dia,
                                                   const std::vector<Expand>& sel) {
  MarkUniv mu{&car};
  InstrUniv iu;
  Dia<InstrUniv> chi;
  chi.dim = dia.dim;
  Dia<DiaUniv<MarkUniv>> inner;
  inner.dim = dia.dim;
  for (size_t i = 0; i < dia.tops.size(); ++i) {
    LCell lift = entry_lift(car, dia.tops[i], sel[i]);
    chi.tops.push_back(std::move(lift.phi));
    inner.tops.push_back(std::move(lift.dia));
  }
  for (int i = 0; i < dia.rank(); ++i) {
    int m = dia.bots[i].dim();
    chi.bots.push_back(iter_bnd(iu, chi.tops[i + 1], m, Side::Src));
    inner.bots.push_back(dia_boundary(mu, inner.tops[i + 1], m, Side::Src));
  }
  return {mu_instr(phi, chi), dia_mu(mu, inner)};
}

MCell xi_free(const MarkedCarrier& car, const Instr& phi, const Dia<MarkUniv>& dia) {
  check(phi.dim() <= car.dim_budget, Err::DimensionOutOfRange, "dimension budget exceeded");
  Instr cur_phi = phi;
  Dia<MarkUniv> cur = dia;
  // Expand composite entries to a fixpoint. Full expansion of everything is
  // preferred; otherwise entries are expanded one at a time, left to right,
  // trying the finer presentation before the head split. Entries whose
  // presentations do not chain with their neighbours stay nested.
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<size_t> comps;
    for (size_t i = 0; i < cur.tops.size(); ++i)
      if (cur.tops[i].kind() == MCell::Kind::Comp) comps.push_back(i);
    if (comps.empty()) break;
    std::vector<std::vector<Expand>> plans;
    plans.emplace_back(cur.tops.size(), Expand::Full);
    if (comps.size() > 1)
      for (size_t i : comps) {
        std::vector<Expand> one(cur.tops.size(), Expand::Eta);
        one[i] = Expand::Full;
        plans.push_back(std::move(one));
      }
    for (size_t i : comps)
      if (cur.tops[i].instr().kind() == Instr::Kind::Subst) {
        std::vector<Expand> one(cur.tops.size(), Expand::Eta);
        one[i] = Expand::Split;
        plans.push_back(std::move(one));
      }
    for (const auto& plan : plans) {
      try {
        auto [nphi, ndia] = expand_step(car, cur_phi, cur, plan);
        cur_phi = std::move(nphi);
        cur = std::move(ndia);
        progress = true;
        break;
      } catch (const OmegaError&) {
      }
    }
  }
  Instr n = normalize(cur_phi);
  if (n.is_unit()) return cur.tops[0];
  return m_comp_raw(car, std::move(n), cur);
}

MCell xi_free(const MarkedCarrier& car, const LCell& c) { return xi_free(car, c.phi, c.dia); }

// --- boundaries -----------------------------------------------------------------

static MCell bnd_uncached(const MarkedCarrier& car, const MCell& c, Side side) {
  switch (c.kind()) {
    case MCell::Kind::Gen:
      return m_gen(car, GCell{c.dim() - 1, side == Side::Src
                                               ? car.base.src1(c.dim(), c.name())
                                               : car.base.tgt1(c.dim(), c.name())});
    case MCell::Kind::Inv:
      return m_bnd_cached(car, c.of(), side == Side::Src ? Side::Tgt : Side::Src);
    case MCell::Kind::P: {
      const MCell& u = c.of();
      if (side == Side::Src) return compose_cells(car, u, m_inv(car, u));
      return identity_cell(car, m_src(car, u));
    }
    case MCell::Kind::Q: {
      const MCell& u = c.of();
      if (side == Side::Src) return compose_cells(car, m_inv(car, u), u);
      return identity_cell(car, m_tgt(car, u));
    }
    case MCell::Kind::Comp: {
      MarkUniv mu{&car};
      return xi_free(car, instr_boundary(c.instr(), side),
                     dia_boundary(mu, c.dia(), c.dim() - 1, side));
    }
  }
  fail(Err::Internal, "bad cell kind");
}

MCell m_bnd_cached(const MarkedCarrier& car, const MCell& c, Side side) {
  check(!c.empty() && c.dim() >= 1, Err::DimZero, "boundary of a 0-cell");
  const MCellNode* node = &*c.node_;
  auto& once = side == Side::Src ? node->src_once : node->tgt_once;
  auto& cache = side == Side::Src ? node->src_cache : node->tgt_cache;
  std::call_once(once, [&] { cache = bnd_uncached(car, c, side); });
  return cache;
}

// --- operations -------------------------------------------------------------------

MCell identity_cell(const MarkedCarrier& car, const MCell& x) {
  MarkUniv mu{&car};
  int n = x.dim() + 1;
  Dia<MarkUniv> d = eta_dia(mu, x);
  d.dim = n;
  return xi_free(car, sp(at_dim({x.dim()}, {}, n)), d);
}

MCell compose_cells(const MarkedCarrier& car, const MCell& u, const MCell& v) {
  check(u.dim() == v.dim() && u.dim() >= 1, Err::DimMismatch,
        "composition needs two n-cells, n >= 1");
  MCell mid = m_tgt(car, u);
  check(m_eq(mid, m_src(car, v)), Err::BoundaryMismatch,
        "t(" + show(u) + ") != s(" + show(v) + ")");
  int n = u.dim();
  Dia<MarkUniv> d;
  d.dim = n;
  d.tops = {u, v};
  d.bots = {mid};
  return xi_free(car, sp(two_chain(n)), d);
}

MCell paste(const MarkedCarrier& car, const SchemeCell& k, const Dia<MarkUniv>& d) {
  MarkUniv mu{&car};
  check(shape_of(mu, d) == k, Err::ShapeMismatch,
        "diagram of shape " + show(shape_of(mu, d)) + ", wanted " + show(k));
  return xi_free(car, sp(k), d);
}

bool is_identity_cell(const MarkedCarrier& car, const MCell& c) {
  if (c.dim() == 0) return false;
  return m_eq(c, identity_cell(car, m_src(car, c)));
}

LCell coherence_cell(const MarkedCarrier& car, const Instr& a, const Instr& b,
                     const Dia<MarkUniv>& d) {
  MarkUniv mu{&car};
  SchemeCell k = shape_of(mu, d);
  check(arity(a) == k && arity(b) == k, Err::ShapeMismatch,
        "coherence instructions must have the diagram's shape as arity");
  Dia<MarkUniv> lifted = d;
  lifted.dim = k.dim + 1;
  return validate_lcell(car, coherence_instr(a, b, k), std::move(lifted));
}

Dia<MarkUniv> delta_diagram(const MarkedCarrier& car, const Dia<MarkUniv>& d, int i,
                            DeltaVariant v) {
  MarkUniv mu{&car};
  SchemeCell k = shape_of(mu, d);
  const int n = d.dim, r = d.rank();
  check(i >= 0 && i <= r, Err::DimensionOutOfRange, "column index out of range");
  check(k.table.tops[i] == n, Err::NotFullDimensional, "column is not full-dimensional");
  if (v == DeltaVariant::Plus)
    check(i == r || k.table.bots[i] < n - 1, Err::PreconditionViolated,
          "delta_plus needs i = r or b_{i+1} < n-1");
  if (v == DeltaVariant::Minus)
    check(i == 0 || k.table.bots[i - 1] < n - 1, Err::PreconditionViolated,
          "delta_minus needs i = 0 or b_i < n-1");
  if (v == DeltaVariant::Exact)
    check(is_identity_cell(car, d.tops[i]), Err::NotIdentityAtSlot,
          "column " + std::to_string(i) + " is not an identity cell");

  Dia<MarkUniv> out = d;
  auto remove_left = [&] {  // remove u_i and the bottom before it
    out.tops.erase(out.tops.begin() + i);
    out.bots.erase(out.bots.begin() + (i - 1));
  };
  auto remove_right = [&] {  // remove u_i and the bottom after it
    out.tops.erase(out.tops.begin() + i);
    out.bots.erase(out.bots.begin() + i);
  };
  switch (v) {
    case DeltaVariant::Exact:
      if (i > 0 && k.table.bots[i - 1] == n - 1)
        remove_left();
      else if (i < r && k.table.bots[i] == n - 1)
        remove_right();
      else
        out.tops[i] = m_src(car, d.tops[i]);  // = x for an identity cell
      break;
    case DeltaVariant::Plus:
      if (i > 0 && k.table.bots[i - 1] == n - 1)
        remove_left();
      else
        out.tops[i] = m_src(car, d.tops[i]);
      break;
    case DeltaVariant::Minus:
      if (i < r && k.table.bots[i] == n - 1)
        remove_right();
      else
        out.tops[i] = m_tgt(car, d.tops[i]);
      break;
  }
  validate_dia(mu, out);
  check(shape_of(mu, out) == delta_scheme(k, i), Err::Internal, "delta shape mismatch");
  return out;
}

LCell unit_law_cell(const MarkedCarrier& car, const LCell& c, int i) {
  MarkUniv mu{&car};
  SchemeCell k = arity(c.phi);
  const int n = c.phi.dim();
  check(i >= 0 && i <= k.rank() && k.table.tops[i] == n, Err::NotFullDimensional,
        "unit law needs a full-dimensional column");
  check(is_identity_cell(car, c.dia.tops[i]), Err::NotIdentityAtSlot,
        "column " + std::to_string(i) + " is not an identity cell");
  // chi: units except the identity instruction at slot i
  Dia<InstrUniv> chi = unit_diagram(k);
  chi.tops[i] = sp(at_dim({n - 1}, {}, n));
  Instr merged = mu_instr(c.phi, chi);
  Instr dphi = delta_instr(c.phi, i);
  check(instr_parallel(merged, dphi), Err::Internal, "unit law: instructions not parallel");
  Dia<MarkUniv> du = delta_diagram(car, c.dia, i, DeltaVariant::Exact);
  LCell out = coherence_cell(car, merged, dphi, du);
  // endpoints: xi(merged, du) = xi(c) and xi(dphi, du)
  check(m_eq(xi_free(car, merged, du), xi_free(car, c)), Err::Internal,
        "unit law: source is not xi(c)");
  return out;
}

LCell lift_along_ar(const MarkedCarrier& car, const LCell& s, const LCell& t,
                    const Dia<MarkUniv>& v) {
  MarkUniv mu{&car};
  SchemeCell kv = shape_of(mu, v);
  const int n = kv.dim;
  check(n >= 1 && s.phi.dim() == n - 1 && t.phi.dim() == n - 1, Err::SquareDoesNotCommute,
        "lift boundary data must live one dimension below the diagram");
  if (!(instr_parallel(s.phi, t.phi) && arity(s.phi) == scheme_boundary(kv, n - 1) &&
        arity(t.phi) == scheme_boundary(kv, n - 1)))
    fail(Err::SquareDoesNotCommute, "arity square does not commute");
  if (!(dia_eq(mu, dia_boundary(mu, v, n - 1, Side::Src), s.dia) &&
        dia_eq(mu, dia_boundary(mu, v, n - 1, Side::Tgt), t.dia)))
    fail(Err::SquareDoesNotCommute, "diagram does not restrict to the given boundaries");
  LCell out = validate_lcell(car, kappa(s.phi, t.phi, kv), v);
  check(lcell_eq(lcell_boundary(car, out, Side::Src), s) &&
            lcell_eq(lcell_boundary(car, out, Side::Tgt), t),
        Err::Internal, "lift triangles do not commute");
  return out;
}

// --- hom ---------------------------------------------------------------------------

HomView hom_cat(const MarkedCarrier& car, const MCell& x, const MCell& y) {
  check(x.dim() == 0 && y.dim() == 0, Err::DimMismatch, "hom endpoints must be 0-cells");
  return HomView{&car, x, y};
}

// d is given at the carrier level (entry dimensions already one above the
// hom dimensions); k is the hom-level shape.
MCell hom_paste(const HomView& h, const SchemeCell& k, const Dia<MarkUniv>& d) {
  MarkUniv mu{h.car};
  check(shape_of(mu, d) == suspend_scheme(k), Err::ShapeMismatch, "hom paste shape mismatch");
  return xi_free(*h.car, suspend_instr(sp(k)), d);
}

MCell hom_identity(const HomView& h, const MCell& z) {
  MarkUniv mu{h.car};
  int hz = z.dim() - 1;  // hom dimension of z
  Dia<MarkUniv> d = eta_dia(mu, z);
  d.dim = z.dim() + 1;
  return hom_paste(h, at_dim({hz}, {}, hz + 1), d);
}

MCell hom_compose(const HomView& h, const MCell& u, const MCell& v) {
  int hn = u.dim() - 1;  // hom dimension
  check(hn >= 1, Err::DimMismatch, "hom composition needs hom-dimension >= 1");
  Dia<MarkUniv> d;
  d.dim = u.dim();
  d.tops = {u, v};
  d.bots = {m_tgt(*h.car, u)};
  return hom_paste(h, two_chain(hn), d);
}

}  // namespace omegapaste
