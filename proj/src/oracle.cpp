#include "omegapaste/oracle.hpp"

#include <algorithm>
#include <set>

namespace omegapaste::oracle {

Dia<GlobUniv> extract_dia(const GlobularSet& y, int dim) {
  GlobUniv u{&y};
  check(!y.cells.empty() && !y.cells[0].empty(), Err::Internal, "extraction needs a 0-cell");

  // order the 0-cells along the 1-skeleton
  std::map<std::string, std::set<std::string>> next;
  std::set<std::string> has_in;
  bool any_higher = false;
  for (int d = 1; d <= y.max_dim; ++d)
    for (const auto& n : y.cells[d]) {
      any_higher = true;
      GCell c{d, n};
      auto s = iter_bnd(u, c, 0, Side::Src).name;
      auto t = iter_bnd(u, c, 0, Side::Tgt).name;
      if (s == t) fail(Err::Internal, "pasting extraction hit a loop");
      next[s].insert(t);
      has_in.insert(t);
    }
  if (!any_higher) {
    check(y.cells[0].size() == 1, Err::Internal, "several isolated 0-cells");
    return Dia<GlobUniv>{dim, {GCell{0, y.cells[0][0]}}, {}};
  }
  std::string start;
  for (const auto& n : y.cells[0])
    if (!has_in.count(n)) {
      check(start.empty(), Err::Internal, "several path sources");
      start = n;
    }
  check(!start.empty(), Err::Internal, "no path source");
  std::vector<std::string> path{start};
  while (next.count(path.back())) {
    const auto& outs = next.at(path.back());
    check(outs.size() == 1, Err::Internal, "branching 0-skeleton");
    path.push_back(*outs.begin());
  }
  check(path.size() == y.cells[0].size(), Err::Internal, "disconnected 0-skeleton");

  Dia<GlobUniv> out;
  out.dim = dim;
  for (size_t a = 0; a + 1 < path.size(); ++a) {
    if (a > 0) out.bots.push_back(GCell{0, path[a]});
    GlobularSet h = hom_globular_set(y, path[a], path[a + 1]);
    Dia<GlobUniv> sub = extract_dia(h, dim - 1);
    for (const auto& c : sub.tops) out.tops.push_back(GCell{c.dim + 1, c.name});
    for (const auto& c : sub.bots) out.bots.push_back(GCell{c.dim + 1, c.name});
  }
  validate_dia(u, out);
  return out;
}

Dia<GlobUniv> oracle_mu(const GlobularSet& x, const Dia<DiaUniv<GlobUniv>>& outer) {
  GlobUniv ux{&x};
  DiaUniv<GlobUniv> du{&ux};
  validate_dia(du, outer);

  const int r = outer.rank();
  // realisations of the inner shapes and of the outer-bottom shapes
  std::vector<Realisation> rtop, rbot;
  for (const auto& d : outer.tops) rtop.push_back(realisation(shape_of(ux, d)));
  for (const auto& d : outer.bots) rbot.push_back(realisation(shape_of(ux, d)));

  GlueProblem p;
  for (int i = 0; i <= r; ++i) {
    p.objects.push_back(&rtop[i].glob);
    if (i < r) p.objects.push_back(&rbot[i].glob);
  }
  GlobUniv urt;
  for (int i = 1; i <= r; ++i) {
    size_t bot = static_cast<size_t>(2 * i - 1);
    int m = outer.bots[i - 1].dim;
    // |bot shape| -> |inner_{i-1}| via the target boundary of its columns
    urt.g = &rtop[i - 1].glob;
    p.arrows.push_back({bot, bot - 1,
                        diagram_to_map(rbot[i - 1], rtop[i - 1].glob,
                                       dia_boundary(urt, rtop[i - 1].columns(urt), m, Side::Tgt))});
    urt.g = &rtop[i].glob;
    p.arrows.push_back({bot, bot + 1,
                        diagram_to_map(rbot[i - 1], rtop[i].glob,
                                       dia_boundary(urt, rtop[i].columns(urt), m, Side::Src))});
  }
  GlueResult gr = glue(p);

  // label the glued pasting in X
  std::vector<std::map<GCell, GCell>> legs;
  for (int i = 0; i <= r; ++i) {
    legs.push_back(diagram_to_map(rtop[i], x, outer.tops[i]));
    if (i < r) legs.push_back(diagram_to_map(rbot[i], x, outer.bots[i]));
  }
  auto label = gr.induce(x, legs);

  Dia<GlobUniv> skeleton = extract_dia(gr.glob, outer.dim);
  Dia<GlobUniv> out;
  out.dim = outer.dim;
  for (const auto& c : skeleton.tops) out.tops.push_back(label.at(c));
  for (const auto& c : skeleton.bots) out.bots.push_back(label.at(c));
  validate_dia(ux, out);
  return out;
}

}  // namespace omegapaste::oracle
