#pragma once
#include <string>
#include <utility>
#include <vector>

#include "omegapaste/error.hpp"

namespace omegapaste {

// Globular pasting scheme: a table of naturals
//
//   k_0   k_1  ...  k_r
//      b_1   b_2 ... b_r
//
// with r >= 0 and k_{i-1} > b_i < k_i for all 1 <= i <= r.
struct Scheme {
  std::vector<int> tops;
  std::vector<int> bots;

  int rank() const { return static_cast<int>(bots.size()); }
  int max_level() const;
  friend bool operator==(const Scheme&, const Scheme&) = default;
};

Scheme validate_scheme(std::vector<int> tops, std::vector<int> bots);

// A scheme regarded as an n-cell of T1. The same table occurs at many
// dimensions, so the dimension is carried explicitly.
struct SchemeCell {
  Scheme table;
  int dim = 0;

  int rank() const { return table.rank(); }
  friend bool operator==(const SchemeCell&, const SchemeCell&) = default;
};

SchemeCell at_dim(Scheme k, int n);
inline SchemeCell at_dim(std::vector<int> tops, std::vector<int> bots, int n) {
  return at_dim(validate_scheme(std::move(tops), std::move(bots)), n);
}

// [n] as an n-cell (eta of the point), and the one-lower degenerate view.
SchemeCell globe(int n);
// 2_n = [n,n / n-1] as an n-cell.
SchemeCell two_chain(int n);
// Linear chain of w columns of value n joined at n-1, as an n-cell.
SchemeCell linear_chain(int w, int n);

bool is_degenerate(const SchemeCell& c);

// Number of i with k_i = dim; zero iff degenerate.
int fdl_norm(const SchemeCell& c);

// Maximal segments lying strictly above level m; pairs (i,j) left to right.
std::vector<std::pair<int, int>> transversal_components(const Scheme& k, int m);
std::vector<std::pair<int, int>> transversal_components(const SchemeCell& c, int m);

// s_m = t_m on T1: replace each m-transversal component with the single
// column [m].
SchemeCell scheme_boundary(const SchemeCell& c, int m);

// delta^i: cancel one full-dimensional column per the three-case description.
SchemeCell delta_scheme(const SchemeCell& c, int i);

// Sigma_n: increment every entry; dimension rises by one.
SchemeCell suspend_scheme(const SchemeCell& c);

// --- encodings -------------------------------------------------------------

// Smooth zig-zag sequence m_0 ... m_l with m_0 = m_l = -1 and unit steps.
struct ZigZag {
  std::vector<int> seq;
  friend bool operator==(const ZigZag&, const ZigZag&) = default;
};

// Iterated-list (bracket tree) encoding; a node is a list of children.
struct Nested {
  std::vector<Nested> kids;
  friend bool operator==(const Nested&, const Nested&) = default;
};

ZigZag validate_zigzag(std::vector<int> seq);

ZigZag to_zigzag(const Scheme& k);
Scheme from_zigzag(const ZigZag& z);
ZigZag nested_to_zigzag(const Nested& t);
Nested zigzag_to_nested(const ZigZag& z);
inline Nested to_nested(const Scheme& k) { return zigzag_to_nested(to_zigzag(k)); }
inline Scheme from_nested(const Nested& t) { return from_zigzag(nested_to_zigzag(t)); }

std::string show(const Scheme& k);
std::string show(const SchemeCell& c);
std::string show(const ZigZag& z);
std::string show(const Nested& t);

}  // namespace omegapaste
