#pragma once
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "omegapaste/globular.hpp"
#include "omegapaste/instr.hpp"

namespace omegapaste {

// Cells of the free weak omega-category on a globular set, optionally
// extended with formal inverse/p/q atoms for a set of marked generators.
//
//   Gen(name)       a generator from the base globular set
//   Inv(u)          formal inverse of a cell u: x -> y, typed y -> x
//   P(u)            formal cell  u * Inv(u) -> id(x)
//   Q(u)            formal cell  Inv(u) * u -> id(y)
//   Comp(phi, dia)  xi(phi, dia) in flattened normal form
class MCell;
struct MCellNode;
struct MarkedCarrier;

struct MarkUniv {
  const MarkedCarrier* car = nullptr;
  using Cell = MCell;
  int dim(const Cell& c) const;
  Cell src(const Cell& c) const;
  Cell tgt(const Cell& c) const;
  bool eq(const Cell& a, const Cell& b) const;
  std::string show(const Cell& c) const;
};

class MCell {
 public:
  enum class Kind { Gen, Inv, P, Q, Comp };

  MCell() = default;
  bool empty() const { return node_ == nullptr; }

  Kind kind() const;
  int dim() const;
  size_t hash() const;
  int level() const;  // formal-atom nesting depth; 0 for generators
  bool is_atom() const { return kind() != Kind::Comp; }

  const std::string& name() const;        // Gen
  const MCell& of() const;                // Inv / P / Q
  const Instr& instr() const;             // Comp
  const Dia<MarkUniv>& dia() const;       // Comp

 private:
  friend MCell m_gen(const MarkedCarrier& car, const GCell& g);
  friend MCell m_inv(const MarkedCarrier& car, const MCell& u);
  friend MCell m_p(const MarkedCarrier& car, const MCell& u);
  friend MCell m_q(const MarkedCarrier& car, const MCell& u);
  friend MCell m_comp_raw(const MarkedCarrier& car, Instr phi, Dia<MarkUniv> dia);
  friend MCell m_bnd_cached(const MarkedCarrier& car, const MCell& c, Side side);
  friend struct MarkUniv;
  explicit MCell(std::shared_ptr<const MCellNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const MCellNode> node_;
};

struct MarkedCarrier {
  GlobularSet base;
  std::set<std::pair<int, std::string>> marks;
  int depth = 0;       // formal atoms exist up to this nesting level
  int dim_budget = 16;
};

// Free carrier over g with formal inverse data for the marked cells.
MarkedCarrier extend_with_marks(GlobularSet g, const std::vector<GCell>& marks, int depth);
inline MarkedCarrier free_carrier(GlobularSet g) { return extend_with_marks(std::move(g), {}, 0); }

MCell m_gen(const MarkedCarrier& car, const GCell& g);
MCell m_inv(const MarkedCarrier& car, const MCell& u);
MCell m_p(const MarkedCarrier& car, const MCell& u);
MCell m_q(const MarkedCarrier& car, const MCell& u);

MCell m_src(const MarkedCarrier& car, const MCell& c);
MCell m_tgt(const MarkedCarrier& car, const MCell& c);
inline MCell m_bnd(const MarkedCarrier& car, const MCell& c, Side s) {
  return s == Side::Src ? m_src(car, c) : m_tgt(car, c);
}
bool m_eq(const MCell& a, const MCell& b);
std::string show(const MCell& c);

// Whether the cell mentions a given generator anywhere.
bool mentions(const MCell& c, const GCell& g);

// --- cells of LX -------------------------------------------------------------

struct LCell {
  Instr phi;
  Dia<MarkUniv> dia;
};

LCell validate_lcell(const MarkedCarrier& car, Instr phi, Dia<MarkUniv> dia);
LCell lcell_boundary(const MarkedCarrier& car, const LCell& c, Side side);
bool lcell_eq(const LCell& a, const LCell& b);
std::string show(const MarkedCarrier& car, const LCell& c);

// eta^L: an atom or composite viewed as a cell of LX.
LCell decompose(const MarkedCarrier& car, const MCell& c);

// xi for the free algebra: evaluation by flattening to normal form.
MCell xi_free(const MarkedCarrier& car, const LCell& c);
MCell xi_free(const MarkedCarrier& car, const Instr& phi, const Dia<MarkUniv>& dia);

// --- operations ---------------------------------------------------------------

MCell identity_cell(const MarkedCarrier& car, const MCell& x);
MCell compose_cells(const MarkedCarrier& car, const MCell& u, const MCell& v);
MCell paste(const MarkedCarrier& car, const SchemeCell& k, const Dia<MarkUniv>& d);
bool is_identity_cell(const MarkedCarrier& car, const MCell& c);

// kappa(<a,b>, k^(n+1)) over d; source xi(a,d), target xi(b,d).
LCell coherence_cell(const MarkedCarrier& car, const Instr& a, const Instr& b,
                     const Dia<MarkUniv>& d);

enum class DeltaVariant { Exact, Plus, Minus };
Dia<MarkUniv> delta_diagram(const MarkedCarrier& car, const Dia<MarkUniv>& d, int i,
                            DeltaVariant v);

// The invertible cell xi(phi,u) -> xi(delta^i phi, delta^i u) when column i
// holds an identity.
LCell unit_law_cell(const MarkedCarrier& car, const LCell& c, int i);

// The lift (kappa(<phi_s,phi_t>, shape v), v) through ar.
LCell lift_along_ar(const MarkedCarrier& car, const LCell& s, const LCell& t,
                    const Dia<MarkUniv>& v);

// Hom weak omega-category X(x,y): cells shifted one dimension down, with the
// structure map evaluated through suspension.
struct HomView {
  const MarkedCarrier* car = nullptr;
  MCell x, y;
};
HomView hom_cat(const MarkedCarrier& car, const MCell& x, const MCell& y);
MCell hom_identity(const HomView& h, const MCell& z);
MCell hom_compose(const HomView& h, const MCell& u, const MCell& v);
MCell hom_paste(const HomView& h, const SchemeCell& k, const Dia<MarkUniv>& d);

}  // namespace omegapaste
