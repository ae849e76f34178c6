#include "omegapaste/globular.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

namespace omegapaste {

bool GlobularSet::has_cell(int dim, const std::string& name) const {
  if (dim < 0 || dim > max_dim) return false;
  return std::find(cells[dim].begin(), cells[dim].end(), name) != cells[dim].end();
}

const std::string& GlobularSet::src1(int dim, const std::string& name) const {
  check(dim >= 1 && dim <= max_dim, Err::DimensionOutOfRange, "src of a 0-cell");
  auto it = src[dim].find(name);
  check(it != src[dim].end(), Err::DanglingBoundary, "no src for " + name);
  return it->second;
}

const std::string& GlobularSet::tgt1(int dim, const std::string& name) const {
  check(dim >= 1 && dim <= max_dim, Err::DimensionOutOfRange, "tgt of a 0-cell");
  auto it = tgt[dim].find(name);
  check(it != tgt[dim].end(), Err::DanglingBoundary, "no tgt for " + name);
  return it->second;
}

GlobularSet validate_globular_set(GlobularSet raw) {
  check(raw.max_dim >= 0, Err::DimensionOutOfRange, "negative max_dim");
  raw.cells.resize(raw.max_dim + 1);
  raw.src.resize(raw.max_dim + 1);
  raw.tgt.resize(raw.max_dim + 1);
  for (int d = 0; d <= raw.max_dim; ++d) {
    std::set<std::string> seen;
    for (const auto& n : raw.cells[d])
      check(seen.insert(n).second, Err::DanglingBoundary, "duplicate cell name " + n);
    if (d == 0) continue;
    for (const auto& n : raw.cells[d]) {
      auto s = raw.src[d].find(n), t = raw.tgt[d].find(n);
      check(s != raw.src[d].end() && t != raw.tgt[d].end(), Err::DanglingBoundary,
            "missing boundary for " + n);
      check(raw.has_cell(d - 1, s->second), Err::DanglingBoundary,
            "src of " + n + " names absent cell " + s->second);
      check(raw.has_cell(d - 1, t->second), Err::DanglingBoundary,
            "tgt of " + n + " names absent cell " + t->second);
    }
    for (const auto& [n, v] : raw.src[d])
      check(raw.has_cell(d, n), Err::DanglingBoundary, "src entry for absent cell " + n);
    for (const auto& [n, v] : raw.tgt[d])
      check(raw.has_cell(d, n), Err::DanglingBoundary, "tgt entry for absent cell " + n);
  }
  for (int d = 2; d <= raw.max_dim; ++d)
    for (const auto& n : raw.cells[d]) {
      const auto& s = raw.src[d].at(n);
      const auto& t = raw.tgt[d].at(n);
      check(raw.src[d - 1].at(s) == raw.src[d - 1].at(t) &&
                raw.tgt[d - 1].at(s) == raw.tgt[d - 1].at(t),
            Err::GlobularityViolation, "cell " + n + " has non-parallel boundaries");
    }
  return raw;
}

GCell GlobMap::operator()(const GCell& c) const {
  auto it = assign.find(c);
  check(it != assign.end(), Err::DanglingBoundary, "map undefined on " + c.name);
  return it->second;
}

GlobMap validate_glob_map(const GlobularSet& dom, const GlobularSet& cod,
                          std::map<GCell, GCell> assign) {
  for (int d = 0; d <= dom.max_dim; ++d)
    for (const auto& n : dom.cells[d]) {
      auto it = assign.find({d, n});
      check(it != assign.end(), Err::DanglingBoundary, "map undefined on " + n);
      check(it->second.dim == d && cod.has_cell(d, it->second.name), Err::DimMismatch,
            "image of " + n + " is not a " + std::to_string(d) + "-cell of the codomain");
      if (d >= 1) {
        check(assign.at({d - 1, dom.src1(d, n)}).name == cod.src1(d, it->second.name),
              Err::GlobularityViolation, "map does not commute with src at " + n);
        check(assign.at({d - 1, dom.tgt1(d, n)}).name == cod.tgt1(d, it->second.name),
              Err::GlobularityViolation, "map does not commute with tgt at " + n);
      }
    }
  return GlobMap{&dom, &cod, std::move(assign)};
}

GCell disk_top(int n) { return {n, "e" + std::to_string(n)}; }
GCell disk_minus(int m) { return {m, "e" + std::to_string(m) + "-"}; }
GCell disk_plus(int m) { return {m, "e" + std::to_string(m) + "+"}; }

GlobularSet build_disk(int n, bool boundary_only) {
  check(n >= 0, Err::DimensionOutOfRange, "negative disk dimension");
  GlobularSet g;
  g.max_dim = boundary_only ? std::max(0, n - 1) : n;
  g.cells.resize(g.max_dim + 1);
  g.src.resize(g.max_dim + 1);
  g.tgt.resize(g.max_dim + 1);
  int lower = boundary_only ? n - 1 : n - 1;
  for (int m = 0; m <= lower; ++m) {
    g.cells[m] = {disk_minus(m).name, disk_plus(m).name};
    if (m >= 1) {
      g.src[m][disk_minus(m).name] = disk_minus(m - 1).name;
      g.src[m][disk_plus(m).name] = disk_minus(m - 1).name;
      g.tgt[m][disk_minus(m).name] = disk_plus(m - 1).name;
      g.tgt[m][disk_plus(m).name] = disk_plus(m - 1).name;
    }
  }
  if (!boundary_only) {
    g.cells[n] = {disk_top(n).name};
    if (n >= 1) {
      g.src[n][disk_top(n).name] = disk_minus(n - 1).name;
      g.tgt[n][disk_top(n).name] = disk_plus(n - 1).name;
    }
  }
  return validate_globular_set(std::move(g));
}

static std::map<GCell, GCell> disk_map_assign(int m, int n, bool tau, bool from_boundary) {
  // G^m (or dG^m) into G^n; the top of G^m goes to e<m>- (sigma) or e<m>+ (tau)
  std::map<GCell, GCell> a;
  for (int j = 0; j <= m - 1; ++j) {
    a[disk_minus(j)] = disk_minus(j);
    a[disk_plus(j)] = disk_plus(j);
  }
  if (!from_boundary) a[disk_top(m)] = m == n ? disk_top(n) : (tau ? disk_plus(m) : disk_minus(m));
  return a;
}

GlobMap disk_sigma(const GlobularSet& gm, const GlobularSet& gn, int m, int n) {
  check(m <= n, Err::DimensionOutOfRange, "sigma needs m <= n");
  return validate_glob_map(gm, gn, disk_map_assign(m, n, false, false));
}

GlobMap disk_tau(const GlobularSet& gm, const GlobularSet& gn, int m, int n) {
  check(m <= n, Err::DimensionOutOfRange, "tau needs m <= n");
  return validate_glob_map(gm, gn, disk_map_assign(m, n, true, false));
}

GlobMap disk_iota(const GlobularSet& bd, const GlobularSet& gn, int n) {
  return validate_glob_map(bd, gn, disk_map_assign(n, n, false, true));
}

bool is_parallel(const GlobularSet& g, const GCell& u, const GCell& v) {
  check(u.dim == v.dim, Err::DimMismatch, "parallel cells must share a dimension");
  check(g.has_cell(u.dim, u.name) && g.has_cell(v.dim, v.name), Err::DanglingBoundary,
        "cells not in the globular set");
  if (u.dim == 0) return true;
  return g.src1(u.dim, u.name) == g.src1(v.dim, v.name) &&
         g.tgt1(u.dim, u.name) == g.tgt1(v.dim, v.name);
}

// --- colimits ----------------------------------------------------------------

namespace {
struct UnionFind {
  std::vector<size_t> parent;
  size_t find(size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};
}  // namespace

GlueResult glue(const GlueProblem& p) {
  check(!p.objects.empty(), Err::DimensionOutOfRange, "glue needs at least one object");
  for (const auto& a : p.arrows) {
    check(a.from < p.objects.size() && a.to < p.objects.size(), Err::DanglingBoundary,
          "arrow endpoints out of range");
    validate_glob_map(*p.objects[a.from], *p.objects[a.to], a.assign);
  }
  // index every cell
  std::vector<std::pair<size_t, GCell>> cells;
  std::map<std::pair<size_t, std::string>, size_t> id;
  auto key = [](size_t obj, const GCell& c) {
    return std::make_pair(obj, std::to_string(c.dim) + ":" + c.name);
  };
  for (size_t o = 0; o < p.objects.size(); ++o)
    for (int d = 0; d <= p.objects[o]->max_dim; ++d)
      for (const auto& n : p.objects[o]->cells[d]) {
        id[key(o, {d, n})] = cells.size();
        cells.emplace_back(o, GCell{d, n});
      }
  UnionFind uf;
  uf.parent.resize(cells.size());
  std::iota(uf.parent.begin(), uf.parent.end(), 0);
  for (const auto& a : p.arrows)
    for (const auto& [c, img] : a.assign) uf.unite(id.at(key(a.from, c)), id.at(key(a.to, img)));

  GlueResult res;
  int max_dim = 0;
  for (const auto* o : p.objects) max_dim = std::max(max_dim, o->max_dim);
  res.glob.max_dim = max_dim;
  res.glob.cells.resize(max_dim + 1);
  res.glob.src.resize(max_dim + 1);
  res.glob.tgt.resize(max_dim + 1);
  // canonical names per class, first-encounter order within each dimension
  std::map<size_t, GCell> class_name;
  for (int d = 0; d <= max_dim; ++d)
    for (size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].second.dim != d) continue;
      size_t root = uf.find(i);
      if (class_name.count(root)) continue;
      GCell q{d, "q" + std::to_string(d) + "_" + std::to_string(res.glob.cells[d].size())};
      res.glob.cells[d].push_back(q.name);
      class_name[root] = q;
    }
  res.cocone.resize(p.objects.size());
  for (size_t i = 0; i < cells.size(); ++i) {
    auto [o, c] = cells[i];
    GCell q = class_name.at(uf.find(i));
    res.cocone[o][c] = q;
  }
  // induced boundaries; members must agree
  for (size_t i = 0; i < cells.size(); ++i) {
    auto [o, c] = cells[i];
    if (c.dim == 0) continue;
    GCell q = class_name.at(uf.find(i));
    GCell s = res.cocone[o].at(GCell{c.dim - 1, p.objects[o]->src1(c.dim, c.name)});
    GCell t = res.cocone[o].at(GCell{c.dim - 1, p.objects[o]->tgt1(c.dim, c.name)});
    auto is = res.glob.src[c.dim].find(q.name);
    check(is == res.glob.src[c.dim].end() || is->second == s.name, Err::Internal,
          "glued src disagrees");
    auto it = res.glob.tgt[c.dim].find(q.name);
    check(it == res.glob.tgt[c.dim].end() || it->second == t.name, Err::Internal,
          "glued tgt disagrees");
    res.glob.src[c.dim][q.name] = s.name;
    res.glob.tgt[c.dim][q.name] = t.name;
  }
  res.glob = validate_globular_set(std::move(res.glob));
  return res;
}

std::map<GCell, GCell> GlueResult::induce(const GlobularSet& target,
                                          const std::vector<std::map<GCell, GCell>>& legs) const {
  check(legs.size() == cocone.size(), Err::LengthMismatch, "one leg per glued object");
  std::map<GCell, GCell> out;
  for (size_t o = 0; o < cocone.size(); ++o)
    for (const auto& [c, q] : cocone[o]) {
      auto it = legs[o].find(c);
      check(it != legs[o].end(), Err::DanglingBoundary, "leg undefined on " + c.name);
      auto prev = out.find(q);
      check(prev == out.end() || prev->second == it->second, Err::SquareDoesNotCommute,
            "legs do not agree on the glued cell " + q.name);
      out[q] = it->second;
    }
  validate_glob_map(glob, target, out);
  return out;
}

GlobularSet hom_globular_set(const GlobularSet& g, const std::string& x, const std::string& y) {
  check(g.has_cell(0, x) && g.has_cell(0, y), Err::DanglingBoundary,
        "hom endpoints must be 0-cells");
  GlobularSet h;
  h.max_dim = std::max(0, g.max_dim - 1);
  h.cells.resize(h.max_dim + 1);
  h.src.resize(h.max_dim + 1);
  h.tgt.resize(h.max_dim + 1);
  GlobUniv u{&g};
  for (int d = 1; d <= g.max_dim; ++d)
    for (const auto& n : g.cells[d]) {
      GCell c{d, n};
      if (iter_bnd(u, c, 0, Side::Src).name != x || iter_bnd(u, c, 0, Side::Tgt).name != y)
        continue;
      h.cells[d - 1].push_back(n);
      if (d >= 2) {
        h.src[d - 1][n] = g.src1(d, n);
        h.tgt[d - 1][n] = g.tgt1(d, n);
      }
    }
  return validate_globular_set(std::move(h));
}

// --- realisations ------------------------------------------------------------

Dia<GlobUniv> Realisation::columns(const GlobUniv& u) const {
  (void)u;
  Dia<GlobUniv> d;
  d.dim = shape.dim;
  d.tops = tops;
  d.bots = bots;
  return d;
}

Realisation realisation(const SchemeCell& c) {
  // objects: G^{k_0}, G^{b_1}, G^{k_1}, ..., arrows tau/sigma from the bottoms
  std::vector<GlobularSet> disks;
  const auto& k = c.table;
  for (int i = 0; i <= k.rank(); ++i) {
    disks.push_back(build_disk(k.tops[i], false));
    if (i < k.rank()) disks.push_back(build_disk(k.bots[i], false));
  }
  GlueProblem p;
  for (const auto& d : disks) p.objects.push_back(&d);
  for (int i = 1; i <= k.rank(); ++i) {
    size_t bot = static_cast<size_t>(2 * i - 1);
    p.arrows.push_back({bot, bot - 1,
                        disk_tau(disks[bot], disks[bot - 1], k.bots[i - 1], k.tops[i - 1]).assign});
    p.arrows.push_back(
        {bot, bot + 1, disk_sigma(disks[bot], disks[bot + 1], k.bots[i - 1], k.tops[i]).assign});
  }
  GlueResult gr = glue(p);
  Realisation r;
  r.shape = c;
  r.glob = gr.glob;
  for (int i = 0; i <= k.rank(); ++i) {
    r.tops.push_back(gr.map_in(static_cast<size_t>(2 * i), disk_top(k.tops[i])));
    if (i < k.rank())
      r.bots.push_back(gr.map_in(static_cast<size_t>(2 * i + 1), disk_top(k.bots[i])));
  }
  return r;
}

std::map<GCell, GCell> diagram_to_map(const Realisation& r, const GlobularSet& x,
                                      const Dia<GlobUniv>& d) {
  check(shape_of(GlobUniv{&x}, d) == SchemeCell{r.shape.table, d.dim}, Err::ShapeMismatch,
        "diagram does not match the realised shape");
  GlobUniv ux{&x};
  GlobUniv ur{&r.glob};
  std::map<GCell, GCell> out;
  auto set_img = [&](const GCell& cell, const GCell& img) {
    auto it = out.find(cell);
    check(it == out.end() || it->second == img, Err::SquareDoesNotCommute,
          "inconsistent images for " + cell.name);
    out[cell] = img;
  };
  auto descend = [&](auto&& self, const GCell& cell, const GCell& img) -> void {
    set_img(cell, img);
    if (cell.dim == 0) return;
    self(self, ur.src(cell), ux.src(img));
    self(self, ur.tgt(cell), ux.tgt(img));
  };
  for (size_t i = 0; i < r.tops.size(); ++i) descend(descend, r.tops[i], d.tops[i]);
  validate_glob_map(r.glob, x, out);
  return out;
}

// --- json ---------------------------------------------------------------------

std::string glob_to_json(const GlobularSet& g) {
  nlohmann::ordered_json j;
  j["max_dim"] = g.max_dim;
  nlohmann::ordered_json cells = nlohmann::ordered_json::object();
  nlohmann::ordered_json src = nlohmann::ordered_json::object();
  nlohmann::ordered_json tgt = nlohmann::ordered_json::object();
  for (int d = 0; d <= g.max_dim; ++d) {
    auto names = g.cells[d];
    std::sort(names.begin(), names.end());
    cells[std::to_string(d)] = names;
    if (d >= 1) {
      nlohmann::ordered_json s = nlohmann::ordered_json::object(),
                             t = nlohmann::ordered_json::object();
      for (const auto& n : names) {
        s[n] = g.src[d].at(n);
        t[n] = g.tgt[d].at(n);
      }
      src[std::to_string(d)] = s;
      tgt[std::to_string(d)] = t;
    }
  }
  j["cells"] = cells;
  j["src"] = src;
  j["tgt"] = tgt;
  return j.dump(2);
}

GlobularSet glob_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Err::SyntaxError, std::string("bad JSON: ") + e.what());
  }
  GlobularSet g;
  try {
    g.max_dim = j.at("max_dim").get<int>();
    check(g.max_dim >= 0 && g.max_dim <= 64, Err::DimensionOutOfRange, "max_dim out of range");
    g.cells.resize(g.max_dim + 1);
    g.src.resize(g.max_dim + 1);
    g.tgt.resize(g.max_dim + 1);
    for (auto& [ds, names] : j.at("cells").items()) {
      int d = std::stoi(ds);
      check(d >= 0 && d <= g.max_dim, Err::DimensionOutOfRange, "cell dimension out of range");
      g.cells[d] = names.get<std::vector<std::string>>();
    }
    const nlohmann::json src = j.value("src", nlohmann::json::object());
    const nlohmann::json tgt = j.value("tgt", nlohmann::json::object());
    for (auto& [ds, m] : src.items()) {
      int d = std::stoi(ds);
      check(d >= 1 && d <= g.max_dim, Err::DimensionOutOfRange, "src dimension out of range");
      for (auto& [n, v] : m.items()) g.src[d][n] = v.get<std::string>();
    }
    for (auto& [ds, m] : tgt.items()) {
      int d = std::stoi(ds);
      check(d >= 1 && d <= g.max_dim, Err::DimensionOutOfRange, "tgt dimension out of range");
      for (auto& [n, v] : m.items()) g.tgt[d][n] = v.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Err::SyntaxError, std::string("bad globular-set JSON: ") + e.what());
  }
  return validate_globular_set(std::move(g));
}

}  // namespace omegapaste
