#include "omegapaste/witness.hpp"

#include <algorithm>
#include <map>

namespace omegapaste {

namespace {
int instr_size(const Instr& t) {
  switch (t.kind()) {
    case Instr::Kind::Unit:
      return 1;
    case Instr::Kind::Contract:
      return 1 + instr_size(t.csrc()) + instr_size(t.ctgt());
    case Instr::Kind::Subst: {
      int s = 1 + instr_size(t.head());
      for (const auto& e : t.args().tops) s += instr_size(e);
      return s;
    }
  }
  return 1;
}
}  // namespace

int size_of(const MCell& c) {
  switch (c.kind()) {
    case MCell::Kind::Gen:
      return 1;
    case MCell::Kind::Inv:
    case MCell::Kind::P:
    case MCell::Kind::Q:
      return 1 + size_of(c.of());
    case MCell::Kind::Comp: {
      int s = instr_size(c.instr());
      for (const auto& e : c.dia().tops) s += size_of(e);
      return s;
    }
  }
  return 1;
}

std::vector<MCell> enumerate_cells(const MarkedCarrier& car, const CoreOptions& opt) {
  MarkUniv mu{&car};
  // deterministic: keyed by printed form
  std::vector<std::map<std::string, MCell>> level(opt.max_dim + 1);
  size_t total = 0;
  auto add = [&](int d, const MCell& c) {
    if (total >= opt.max_cells || size_of(c) > opt.size_bound) return false;
    auto [it, fresh] = level[d].emplace(show(c), c);
    if (fresh) ++total;
    return fresh;
  };
  for (int d = 0; d <= std::min(opt.max_dim, car.base.max_dim); ++d)
    for (const auto& n : car.base.cells[d]) add(d, m_gen(car, GCell{d, n}));
  if (car.depth >= 1)
    for (const auto& [d, n] : car.marks)
      if (d <= opt.max_dim) add(d, m_inv(car, m_gen(car, GCell{d, n})));
  for (int d = 1; d <= opt.max_dim; ++d) {
    for (const auto& [key, x] : level[d - 1]) add(d, identity_cell(car, x));
    bool grew = true;
    while (grew && total < opt.max_cells) {
      grew = false;
      std::vector<MCell> snapshot;
      for (const auto& [key, c] : level[d]) snapshot.push_back(c);
      for (const auto& a : snapshot) {
        for (const auto& b : snapshot) {
          if (!m_eq(m_tgt(car, a), m_src(car, b))) continue;
          if (size_of(a) + size_of(b) + 3 > opt.size_bound) continue;
          grew |= add(d, compose_cells(car, a, b));
          if (total >= opt.max_cells) break;
        }
        if (total >= opt.max_cells) break;
      }
    }
  }
  std::vector<MCell> out;
  for (int d = 0; d <= opt.max_dim; ++d)
    for (const auto& [key, c] : level[d]) out.push_back(c);
  return out;
}

bool hereditarily_invertible(const MarkedCarrier& car, const MCell& c, int invert_above,
                             int depth) {
  if (c.dim() == 0) return true;
  if (!hereditarily_invertible(car, m_src(car, c), invert_above, depth) ||
      !hereditarily_invertible(car, m_tgt(car, c), invert_above, depth))
    return false;
  if (c.dim() <= invert_above) return true;
  FreeAlg alg{&car};
  FreeStore store{&alg, {}};
  try {
    FreeWitness w = synthesize_witness(alg, alg.decomp(c), store, depth);
    return validate_witness(alg, w, depth).ok;
  } catch (const OmegaError&) {
    return false;
  }
}

std::vector<MCell> core_filter(const MarkedCarrier& car, const CoreOptions& opt) {
  std::vector<MCell> out;
  // memo keyed by printed form: certification is deterministic
  std::map<std::string, bool> memo;
  auto hered = [&](auto&& self, const MCell& c) -> bool {
    if (c.dim() == 0) return true;
    std::string key = show(c);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = self(self, m_src(car, c)) && self(self, m_tgt(car, c));
    if (ok && c.dim() > opt.invert_above) {
      FreeAlg alg{&car};
      FreeStore store{&alg, {}};
      try {
        FreeWitness w = synthesize_witness(alg, alg.decomp(c), store, opt.depth);
        ok = validate_witness(alg, w, opt.depth).ok;
      } catch (const OmegaError&) {
        ok = false;
      }
    }
    memo[key] = ok;
    return ok;
  };
  for (const auto& c : enumerate_cells(car, opt))
    if (hered(hered, c)) out.push_back(c);
  return out;
}

}  // namespace omegapaste
