#include "omegapaste/instr.hpp"

#include <map>
#include <mutex>

namespace omegapaste {

struct InstrNode {
  Instr::Kind kind;
  int dim = 0;
  SchemeCell ar;
  // Unit
  int level = 0;
  // Contract
  Instr s, t;
  // Subst
  Instr h;
  Dia<InstrUniv> args;

  size_t hash = 0;

  mutable std::once_flag src_once, tgt_once, norm_once;
  mutable Instr src_cache, tgt_cache, norm_cache;
};

namespace {
size_t mix(size_t h, size_t v) { return h * 1000003u ^ (v + 0x9e3779b9u + (h << 6)); }
size_t hash_sch(const SchemeCell& c) {
  size_t h = 0xcafe;
  h = mix(h, static_cast<size_t>(c.dim));
  for (int v : c.table.tops) h = mix(h, static_cast<size_t>(v) + 1);
  for (int v : c.table.bots) h = mix(h, static_cast<size_t>(v) + 7);
  return h;
}
}  // namespace

int InstrUniv::dim(const Cell& c) const { return c.dim(); }
Instr InstrUniv::src(const Cell& c) const { return instr_boundary(c, Side::Src); }
Instr InstrUniv::tgt(const Cell& c) const { return instr_boundary(c, Side::Tgt); }
bool InstrUniv::eq(const Cell& a, const Cell& b) const { return instr_equal(a, b); }
std::string InstrUniv::show(const Cell& c) const { return omegapaste::show(c); }

Instr::Kind Instr::kind() const { return node_->kind; }
int Instr::dim() const { return node_->dim; }
const SchemeCell& Instr::arity() const { return node_->ar; }
size_t Instr::hash() const { return node_->hash; }
int Instr::unit_level() const {
  check(kind() == Kind::Unit, Err::Internal, "not a unit");
  return node_->level;
}
const Instr& Instr::csrc() const {
  check(kind() == Kind::Contract, Err::Internal, "not a contraction");
  return node_->s;
}
const Instr& Instr::ctgt() const {
  check(kind() == Kind::Contract, Err::Internal, "not a contraction");
  return node_->t;
}
const Instr& Instr::head() const {
  check(kind() == Kind::Subst, Err::Internal, "not a substitution");
  return node_->h;
}
const Dia<InstrUniv>& Instr::args() const {
  check(kind() == Kind::Subst, Err::Internal, "not a substitution");
  return node_->args;
}

Instr make_unit(int n) {
  check(n >= 0, Err::DimensionOutOfRange, "negative unit dimension");
  auto node = std::make_shared<InstrNode>();
  node->kind = Instr::Kind::Unit;
  node->dim = n;
  node->level = n;
  node->ar = globe(n);
  node->hash = mix(1, static_cast<size_t>(n));
  return Instr(std::move(node));
}

Instr make_contract(Instr s, Instr t, SchemeCell ar) {
  const int n = ar.dim;
  check(n >= 1, Err::DimensionOutOfRange, "contraction needs dimension >= 1");
  check(!s.empty() && !t.empty() && s.dim() == n - 1 && t.dim() == n - 1, Err::DimMismatch,
        "contraction boundaries must live one dimension below the arity");
  check(instr_parallel(s, t), Err::NotParallel,
        "contraction boundaries are not parallel: " + show(s) + " vs " + show(t));
  SchemeCell want = scheme_boundary(ar, n - 1);
  check(arity(s) == want && arity(t) == want, Err::ArityMismatch,
        "boundaries must have arity " + show(want) + ", got " + show(arity(s)) + " and " +
            show(arity(t)));
  auto node = std::make_shared<InstrNode>();
  node->kind = Instr::Kind::Contract;
  node->dim = n;
  node->ar = ar;
  node->s = std::move(s);
  node->t = std::move(t);
  node->hash = mix(mix(mix(2, node->s.hash()), node->t.hash()), hash_sch(ar));
  return Instr(std::move(node));
}

Instr make_subst(Instr h, Dia<InstrUniv> args) {
  check(!h.empty(), Err::Internal, "empty head");
  InstrUniv iu;
  check(shape_of(iu, args) == arity(h), Err::ShapeMismatch,
        "args have shape " + show(shape_of(iu, args)) + " but the head wants " +
            show(arity(h)));
  validate_dia(iu, args);
  // arity = mu^T of the arities
  Dia<SchUniv> shapes;
  shapes.dim = args.dim;
  for (const auto& e : args.tops) shapes.tops.push_back(arity(e));
  for (const auto& e : args.bots) shapes.bots.push_back(arity(e));
  auto node = std::make_shared<InstrNode>();
  node->kind = Instr::Kind::Subst;
  node->dim = h.dim();
  node->ar = sch_mu(shapes);
  size_t hh = mix(3, h.hash());
  for (const auto& e : args.tops) hh = mix(hh, e.hash());
  for (const auto& e : args.bots) hh = mix(hh, e.hash() + 13);
  node->hash = hh;
  node->h = std::move(h);
  node->args = std::move(args);
  return Instr(std::move(node));
}

Dia<InstrUniv> unit_diagram(const SchemeCell& k) {
  Dia<InstrUniv> d;
  d.dim = k.dim;
  for (int v : k.table.tops) d.tops.push_back(make_unit(v));
  for (int v : k.table.bots) d.bots.push_back(make_unit(v));
  return d;
}

namespace {
bool all_units(const Dia<InstrUniv>& d) {
  for (const auto& e : d.tops)
    if (!e.is_unit()) return false;
  for (const auto& e : d.bots)
    if (!e.is_unit()) return false;
  return true;
}
}  // namespace

Instr normalize(const Instr& t) {
  check(!t.empty(), Err::Internal, "normalize of empty term");
  const InstrNode* node = &*t.node_;
  std::call_once(node->norm_once, [&] {
    switch (t.kind()) {
      case Instr::Kind::Unit:
        node->norm_cache = t;
        break;
      case Instr::Kind::Contract:
        node->norm_cache =
            make_contract(normalize(t.csrc()), normalize(t.ctgt()), t.arity());
        break;
      case Instr::Kind::Subst: {
        Instr h = normalize(t.head());
        InstrUniv iu;
        Dia<InstrUniv> a;
        a.dim = t.args().dim;
        for (const auto& e : t.args().tops) a.tops.push_back(normalize(e));
        for (const auto& e : t.args().bots) a.bots.push_back(normalize(e));
        if (h.is_unit()) {
          node->norm_cache = a.tops[0];  // mu(e~_n, [x]) = x
        } else if (h.kind() == Instr::Kind::Subst) {
          // associativity: substitute into the head's own arguments
          const Instr& h2 = h.head();
          std::vector<SchemeCell> inner_shapes;
          for (const auto& e : h.args().tops) inner_shapes.push_back(arity(e));
          auto parts = dia_unsplice(iu, arity(h2), inner_shapes, a);
          Dia<InstrUniv> c;
          c.dim = h.args().dim;
          for (size_t i = 0; i < parts.size(); ++i)
            c.tops.push_back(mu_instr(h.args().tops[i], parts[i]));
          for (int j = 0; j < h.args().rank(); ++j) {
            int m = h.args().bots[j].dim();
            c.bots.push_back(iter_bnd(iu, c.tops[j + 1], m, Side::Src));
          }
          node->norm_cache = normalize(make_subst(h2, std::move(c)));
        } else if (all_units(a)) {
          node->norm_cache = h;  // mu(h, units) = h
        } else {
          node->norm_cache = make_subst(std::move(h), std::move(a));
        }
        break;
      }
    }
  });
  return node->norm_cache;
}

bool instr_equal(const Instr& a, const Instr& b) {
  Instr x = normalize(a), y = normalize(b);
  // structural comparison of normal forms
  auto rec = [](auto&& self, const Instr& u, const Instr& v) -> bool {
    if (u.hash() != v.hash() || u.kind() != v.kind() || u.dim() != v.dim()) return false;
    switch (u.kind()) {
      case Instr::Kind::Unit:
        return u.unit_level() == v.unit_level();
      case Instr::Kind::Contract:
        return u.arity() == v.arity() && self(self, u.csrc(), v.csrc()) &&
               self(self, u.ctgt(), v.ctgt());
      case Instr::Kind::Subst: {
        if (!self(self, u.head(), v.head())) return false;
        const auto &da = u.args(), &db = v.args();
        if (da.dim != db.dim || da.tops.size() != db.tops.size() ||
            da.bots.size() != db.bots.size())
          return false;
        for (size_t i = 0; i < da.tops.size(); ++i)
          if (!self(self, da.tops[i], db.tops[i])) return false;
        for (size_t i = 0; i < da.bots.size(); ++i)
          if (!self(self, da.bots[i], db.bots[i])) return false;
        return true;
      }
    }
    return false;
  };
  return rec(rec, x, y);
}

Instr instr_boundary(const Instr& t, Side side) {
  check(t.dim() >= 1, Err::DimZero, "boundary of a 0-dimensional instruction");
  const InstrNode* node = &*t.node_;
  auto& once = side == Side::Src ? node->src_once : node->tgt_once;
  auto& cache = side == Side::Src ? node->src_cache : node->tgt_cache;
  std::call_once(once, [&] {
    switch (t.kind()) {
      case Instr::Kind::Unit:
        cache = make_unit(t.unit_level() - 1);
        break;
      case Instr::Kind::Contract:
        cache = side == Side::Src ? t.csrc() : t.ctgt();
        break;
      case Instr::Kind::Subst: {
        InstrUniv iu;
        cache = mu_instr(instr_boundary(t.head(), side),
                         dia_boundary(iu, t.args(), t.dim() - 1, side));
        break;
      }
    }
  });
  return cache;
}

bool instr_parallel(const Instr& a, const Instr& b) {
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  return instr_equal(instr_boundary(a, Side::Src), instr_boundary(b, Side::Src)) &&
         instr_equal(instr_boundary(a, Side::Tgt), instr_boundary(b, Side::Tgt));
}

Instr kappa(const Instr& s, const Instr& t, const SchemeCell& k) {
  return make_contract(normalize(s), normalize(t), k);
}

Instr mu_instr(const Instr& head, const Dia<InstrUniv>& args) {
  return normalize(make_subst(head, args));
}

Instr sp(const SchemeCell& k) {
  static std::mutex mu;
  static std::map<std::string, Instr> memo;
  std::string key = show(k);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Instr out;
  if (k == globe(k.dim)) {
    out = make_unit(k.dim);
  } else {
    Instr below = sp(scheme_boundary(k, k.dim - 1));
    out = kappa(below, below, k);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, out);
  return out;
}

Instr coherence_instr(const Instr& a, const Instr& b, const SchemeCell& k) {
  check(arity(a) == k && arity(b) == k, Err::ArityMismatch,
        "coherence needs both instructions of arity " + show(k));
  return kappa(a, b, SchemeCell{k.table, k.dim + 1});
}

Instr delta_instr(const Instr& t, int i) {
  SchemeCell k = arity(t);
  SchemeCell dk = delta_scheme(k, i);
  return kappa(instr_boundary(t, Side::Src), instr_boundary(t, Side::Tgt), dk);
}

Instr suspend_instr(const Instr& t) {
  switch (t.kind()) {
    case Instr::Kind::Unit:
      return make_unit(t.unit_level() + 1);
    case Instr::Kind::Contract:
      return make_contract(suspend_instr(t.csrc()), suspend_instr(t.ctgt()),
                           suspend_scheme(t.arity()));
    case Instr::Kind::Subst: {
      Dia<InstrUniv> a;
      a.dim = t.args().dim + 1;
      for (const auto& e : t.args().tops) a.tops.push_back(suspend_instr(e));
      for (const auto& e : t.args().bots) a.bots.push_back(suspend_instr(e));
      return make_subst(suspend_instr(t.head()), std::move(a));
    }
  }
  fail(Err::Internal, "bad instruction kind");
}

std::string show(const Instr& t) {
  if (t.empty()) return "<empty>";
  switch (t.kind()) {
    case Instr::Kind::Unit:
      return "(e " + std::to_string(t.unit_level()) + ")";
    case Instr::Kind::Contract: {
      // print standard pasting instructions compactly
      if (instr_equal(t.csrc(), t.ctgt())) {
        Instr below = sp(scheme_boundary(t.arity(), t.dim() - 1));
        if (instr_equal(t.csrc(), below)) return "(sp " + show(t.arity()) + ")";
      }
      return "(kappa " + show(t.csrc()) + " " + show(t.ctgt()) + " " + show(t.arity()) + ")";
    }
    case Instr::Kind::Subst: {
      InstrUniv iu;
      return "(mu " + show(t.head()) + " " + show_dia(iu, t.args()) + ")";
    }
  }
  return "?";
}

}  // namespace omegapaste
