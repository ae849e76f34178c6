#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omegapaste/diagram.hpp"
#include "omegapaste/scheme.hpp"

namespace omegapaste {

// Finite truncated globular set: named cells per dimension with one-step
// source and target maps satisfying globularity.
struct GlobularSet {
  int max_dim = 0;
  std::vector<std::vector<std::string>> cells;        // [dim] -> names
  std::vector<std::map<std::string, std::string>> src;  // [dim] -> name -> name, dim >= 1
  std::vector<std::map<std::string, std::string>> tgt;

  bool has_cell(int dim, const std::string& name) const;
  const std::string& src1(int dim, const std::string& name) const;
  const std::string& tgt1(int dim, const std::string& name) const;
  int cell_count(int dim) const {
    return dim <= max_dim ? static_cast<int>(cells[dim].size()) : 0;
  }
};

// Raw presentation in, validated set out (globularity checked).
GlobularSet validate_globular_set(GlobularSet raw);

struct GCell {
  int dim = 0;
  std::string name;
  friend bool operator==(const GCell&, const GCell&) = default;
  friend auto operator<=>(const GCell&, const GCell&) = default;
};

// Cell universe view of a globular set.
struct GlobUniv {
  const GlobularSet* g = nullptr;
  using Cell = GCell;
  int dim(const Cell& c) const { return c.dim; }
  Cell src(const Cell& c) const { return {c.dim - 1, g->src1(c.dim, c.name)}; }
  Cell tgt(const Cell& c) const { return {c.dim - 1, g->tgt1(c.dim, c.name)}; }
  bool eq(const Cell& a, const Cell& b) const { return a == b; }
  std::string show(const Cell& c) const { return c.name; }
};

// Map of globular sets: a per-dimension cell assignment commuting with
// src and tgt.
struct GlobMap {
  const GlobularSet* dom = nullptr;
  const GlobularSet* cod = nullptr;
  std::map<GCell, GCell> assign;

  GCell operator()(const GCell& c) const;
};

GlobMap validate_glob_map(const GlobularSet& dom, const GlobularSet& cod,
                          std::map<GCell, GCell> assign);

// G^n (one n-cell "e<n>", two m-cells "e<m>-", "e<m>+" below) or its
// boundary dG^n. dG^0 is the empty globular set.
GlobularSet build_disk(int n, bool boundary_only);
// Canonical disk cell names.
GCell disk_top(int n);
GCell disk_minus(int m);
GCell disk_plus(int m);
// sigma/tau: G^m -> G^n for m < n, and the boundary inclusion dG^n -> G^n.
GlobMap disk_sigma(const GlobularSet& gm, const GlobularSet& gn, int m, int n);
GlobMap disk_tau(const GlobularSet& gm, const GlobularSet& gn, int m, int n);
GlobMap disk_iota(const GlobularSet& bd, const GlobularSet& gn, int n);

bool is_parallel(const GlobularSet& g, const GCell& u, const GCell& v);

// --- colimits ---------------------------------------------------------------

struct GlueArrow {
  size_t from = 0, to = 0;          // object indices
  std::map<GCell, GCell> assign;    // validated against the two objects
};

struct GlueProblem {
  std::vector<const GlobularSet*> objects;
  std::vector<GlueArrow> arrows;
};

struct GlueResult {
  GlobularSet glob;                       // cells named q<dim>_<ordinal>
  std::vector<std::map<GCell, GCell>> cocone;  // per object

  GCell map_in(size_t obj, const GCell& c) const { return cocone[obj].at(c); }
  // Induced map out of the colimit, given a cocone into `target` compatible
  // with the arrows; verifies well-definedness.
  std::map<GCell, GCell> induce(const GlobularSet& target,
                                const std::vector<std::map<GCell, GCell>>& legs) const;
};

GlueResult glue(const GlueProblem& p);

// Hom globular set X(x,y): cells u of dimension n+1 with s_0(u)=x, t_0(u)=y,
// keeping their names, with dimensions shifted down by one.
GlobularSet hom_globular_set(const GlobularSet& g, const std::string& x, const std::string& y);

// --- realisations -----------------------------------------------------------

struct Realisation {
  GlobularSet glob;
  // canonical diagram: the class of each column's disk top, left to right
  Dia<GlobUniv> columns(const GlobUniv& u) const;
  std::vector<GCell> tops;  // column top cells
  std::vector<GCell> bots;  // shared boundary cells between columns
  SchemeCell shape;
};

// Colimit of the zig-zag of disks G^{k_i} glued along G^{b_i}.
Realisation realisation(const SchemeCell& c);

// The globular map |shape(d)| -> X sending column tops to d's entries.
std::map<GCell, GCell> diagram_to_map(const Realisation& r, const GlobularSet& x,
                                      const Dia<GlobUniv>& d);

// JSON presentation (deterministic: cells sorted per dimension).
std::string glob_to_json(const GlobularSet& g);
GlobularSet glob_from_json(const std::string& text);

}  // namespace omegapaste
