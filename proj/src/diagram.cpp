#include "omegapaste/diagram.hpp"

namespace omegapaste {

namespace detail {

std::vector<SlotUnit> slot_units(const Scheme& k, int m) {
  auto comps = transversal_components(k, m);
  std::vector<SlotUnit> us;
  size_t ci = 0;
  for (int i = 0; i <= k.rank(); ++i) {
    if (ci < comps.size() && comps[ci].first == i) {
      us.push_back({comps[ci].first, comps[ci].second, true});
      i = comps[ci].second;
      ++ci;
    } else {
      us.push_back({i, i, false});
    }
  }
  return us;
}

}  // namespace detail

SchemeCell sch_compose(const SchemeCell& a, const SchemeCell& b, int m) {
  LevelUniv lu;
  return dia_to_sch(dia_compose(lu, sch_to_dia(a), sch_to_dia(b), m));
}

SchemeCell sch_mu(const Dia<SchUniv>& outer) {
  LevelUniv lu;
  Dia<DiaUniv<LevelUniv>> o;
  o.dim = outer.dim;
  for (const auto& c : outer.tops) o.tops.push_back(sch_to_dia(c));
  for (const auto& c : outer.bots) o.bots.push_back(sch_to_dia(c));
  return dia_to_sch(dia_mu(lu, o));
}

std::vector<MergeStep> plan_mu(const SchemeCell& outer, const std::vector<SchemeCell>& inners,
                               SchemeCell* result) {
  check(inners.size() == outer.table.tops.size(), Err::ShapeMismatch,
        "splice needs one inner per outer column");
  for (size_t i = 0; i < inners.size(); ++i)
    check(inners[i].dim == outer.table.tops[i], Err::ShapeMismatch,
          "inner " + std::to_string(i) + " has dim " + std::to_string(inners[i].dim) +
              ", outer column wants " + std::to_string(outer.table.tops[i]));
  std::vector<SchemeCell> blocks;
  for (const auto& k : inners) blocks.push_back(SchemeCell{k.table, outer.dim});
  std::vector<int> levels = outer.table.bots;

  std::vector<MergeStep> steps;
  while (!levels.empty()) {
    size_t best = 0;
    for (size_t i = 1; i < levels.size(); ++i)
      if (levels[i] > levels[best]) best = i;
    steps.push_back({best, levels[best], blocks[best], blocks[best + 1]});
    blocks[best] = sch_compose(blocks[best], blocks[best + 1], levels[best]);
    blocks.erase(blocks.begin() + static_cast<long>(best) + 1);
    levels.erase(levels.begin() + static_cast<long>(best));
  }
  if (result) *result = blocks[0];
  return steps;
}

}  // namespace omegapaste
