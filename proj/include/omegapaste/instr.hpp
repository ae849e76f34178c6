#pragma once
#include <memory>
#include <string>

#include "omegapaste/diagram.hpp"
#include "omegapaste/scheme.hpp"

namespace omegapaste {

// Pasting instructions: the fragment of L1 generated by units, contraction
// cells and substitution, kept modulo the monad laws by normalization.
//
//   Unit(n)              e~_n, arity [n]
//   Contract(s, t, k)    kappa(<s,t>, k), arity k
//   Subst(h, args)       mu^L_1(h, args), arity mu^T(arities)
//
// Normal form: no Subst with a Unit head, a Subst head, or all-unit args.
class Instr;
struct InstrNode;

struct InstrUniv {
  using Cell = Instr;
  int dim(const Cell& c) const;
  Cell src(const Cell& c) const;
  Cell tgt(const Cell& c) const;
  bool eq(const Cell& a, const Cell& b) const;
  std::string show(const Cell& c) const;
};

class Instr {
 public:
  enum class Kind { Unit, Contract, Subst };

  Instr() = default;  // empty; only as a placeholder before assignment
  bool empty() const { return node_ == nullptr; }

  Kind kind() const;
  int dim() const;
  const SchemeCell& arity() const;
  size_t hash() const;
  bool is_unit() const { return !empty() && kind() == Kind::Unit; }

  int unit_level() const;
  const Instr& csrc() const;
  const Instr& ctgt() const;
  const Instr& head() const;
  const Dia<InstrUniv>& args() const;

 private:
  friend Instr make_unit(int n);
  friend Instr make_contract(Instr s, Instr t, SchemeCell ar);
  friend Instr make_subst(Instr h, Dia<InstrUniv> args);
  friend Instr normalize(const Instr& t);
  friend Instr instr_boundary(const Instr& t, Side side);
  explicit Instr(std::shared_ptr<const InstrNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const InstrNode> node_;
};

// Raw constructors: typing is checked, the monad laws are not applied.
Instr make_unit(int n);
Instr make_contract(Instr s, Instr t, SchemeCell ar);
Instr make_subst(Instr h, Dia<InstrUniv> args);

// Applies the monad laws to a fixpoint; idempotent.
Instr normalize(const Instr& t);
// Structural equality of normal forms (sound for equality in L1).
bool instr_equal(const Instr& a, const Instr& b);

inline SchemeCell arity(const Instr& t) { return t.arity(); }
Instr instr_boundary(const Instr& t, Side side);
bool instr_parallel(const Instr& a, const Instr& b);

// kappa(<s,t>, k): the contraction cell s -> t of arity k.
Instr kappa(const Instr& s, const Instr& t, const SchemeCell& k);
// mu^L_1: substitution followed by normalization.
Instr mu_instr(const Instr& head, const Dia<InstrUniv>& args);
// Standard pasting instruction; section of arity.
Instr sp(const SchemeCell& k);
// kappa(<a,b>, k^(n+1)) for parallel a, b of common arity k.
Instr coherence_instr(const Instr& a, const Instr& b, const SchemeCell& k);
// kappa(<s(t),t(t)>, delta^i(arity t)).
Instr delta_instr(const Instr& t, int i);
// Sigma~: suspension, structural on the term.
Instr suspend_instr(const Instr& t);

// Unit diagram of a given shape: eta^T decorated with units (the image of k
// under T eta^L_1).
Dia<InstrUniv> unit_diagram(const SchemeCell& k);

std::string show(const Instr& t);

}  // namespace omegapaste
