#include "omegapaste/scheme.hpp"

#include <algorithm>
#include <sstream>

namespace omegapaste {

int Scheme::max_level() const {
  return *std::max_element(tops.begin(), tops.end());
}

Scheme validate_scheme(std::vector<int> tops, std::vector<int> bots) {
  check(!tops.empty() && tops.size() == bots.size() + 1, Err::LengthMismatch,
        "need r+1 tops over r bottoms");
  for (int v : tops) check(v >= 0, Err::NegativeEntry, "negative top entry");
  for (int v : bots) check(v >= 0, Err::NegativeEntry, "negative bottom entry");
  for (size_t i = 0; i < bots.size(); ++i)
    check(tops[i] > bots[i] && bots[i] < tops[i + 1], Err::ZigzagViolation,
          "bottom " + std::to_string(bots[i]) + " at position " + std::to_string(i + 1) +
              " is not a strict local minimum");
  return Scheme{std::move(tops), std::move(bots)};
}

SchemeCell at_dim(Scheme k, int n) {
  check(n >= 0, Err::NegativeEntry, "negative dimension");
  check(k.max_level() <= n, Err::DimensionOutOfRange,
        "scheme has level " + std::to_string(k.max_level()) + " > dim " + std::to_string(n));
  return SchemeCell{std::move(k), n};
}

SchemeCell globe(int n) { return at_dim(validate_scheme({n}, {}), n); }

SchemeCell two_chain(int n) {
  check(n >= 1, Err::DimensionOutOfRange, "2_n needs n >= 1");
  return at_dim(validate_scheme({n, n}, {n - 1}), n);
}

SchemeCell linear_chain(int w, int n) {
  check(w >= 1 && n >= 1, Err::DimensionOutOfRange, "linear chain needs w,n >= 1");
  return at_dim(validate_scheme(std::vector<int>(w, n), std::vector<int>(w - 1, n - 1)), n);
}

bool is_degenerate(const SchemeCell& c) { return c.table.max_level() < c.dim; }

int fdl_norm(const SchemeCell& c) {
  return static_cast<int>(std::count(c.table.tops.begin(), c.table.tops.end(), c.dim));
}

std::vector<std::pair<int, int>> transversal_components(const Scheme& k, int m) {
  std::vector<std::pair<int, int>> out;
  int r = k.rank();
  int i = 0;
  while (i <= r) {
    if (k.tops[i] <= m) {
      ++i;
      continue;
    }
    int j = i;
    while (j < r && k.bots[j] >= m && k.tops[j + 1] > m) ++j;
    out.emplace_back(i, j);
    i = j + 1;
  }
  return out;
}

std::vector<std::pair<int, int>> transversal_components(const SchemeCell& c, int m) {
  check(m >= 0 && m < c.dim, Err::DimensionOutOfRange,
        "m = " + std::to_string(m) + " not in [0, " + std::to_string(c.dim) + ")");
  return transversal_components(c.table, m);
}

SchemeCell scheme_boundary(const SchemeCell& c, int m) {
  auto comps = transversal_components(c, m);
  std::vector<int> tops, bots;
  size_t ci = 0;
  int r = c.rank();
  for (int i = 0; i <= r; ++i) {
    if (ci < comps.size() && comps[ci].first == i) {
      tops.push_back(m);
      i = comps[ci].second;  // skip the segment and its inner bottoms
      ++ci;
    } else {
      tops.push_back(c.table.tops[i]);
    }
    if (i < r) bots.push_back(c.table.bots[i]);
  }
  return at_dim(validate_scheme(std::move(tops), std::move(bots)), m);
}

SchemeCell delta_scheme(const SchemeCell& c, int i) {
  const int n = c.dim, r = c.rank();
  check(i >= 0 && i <= r, Err::DimensionOutOfRange, "column index out of range");
  check(c.table.tops[i] == n, Err::NotFullDimensional,
        "k_" + std::to_string(i) + " = " + std::to_string(c.table.tops[i]) +
            " is not the full dimension " + std::to_string(n));
  auto tops = c.table.tops;
  auto bots = c.table.bots;
  if (i > 0 && bots[i - 1] == n - 1) {
    tops.erase(tops.begin() + i);
    bots.erase(bots.begin() + (i - 1));
  } else if (i < r && bots[i] == n - 1) {
    tops.erase(tops.begin() + i);
    bots.erase(bots.begin() + i);
  } else {
    tops[i] = n - 1;
  }
  return at_dim(validate_scheme(std::move(tops), std::move(bots)), n);
}

SchemeCell suspend_scheme(const SchemeCell& c) {
  auto tops = c.table.tops;
  auto bots = c.table.bots;
  for (int& v : tops) ++v;
  for (int& v : bots) ++v;
  return at_dim(validate_scheme(std::move(tops), std::move(bots)), c.dim + 1);
}

// --- encodings -------------------------------------------------------------

ZigZag validate_zigzag(std::vector<int> seq) {
  check(seq.size() >= 3, Err::MalformedEncoding, "zig-zag needs length >= 3");
  check(seq.front() == -1 && seq.back() == -1, Err::MalformedEncoding,
        "zig-zag must start and end at -1");
  for (size_t i = 1; i < seq.size(); ++i)
    check(std::abs(seq[i] - seq[i - 1]) == 1, Err::MalformedEncoding,
          "zig-zag steps must be +-1");
  for (size_t i = 1; i + 1 < seq.size(); ++i)
    check(seq[i] >= 0, Err::MalformedEncoding, "inner zig-zag entries must be >= 0");
  return ZigZag{std::move(seq)};
}

ZigZag to_zigzag(const Scheme& k) {
  std::vector<int> seq;
  seq.push_back(-1);
  int cur = -1;
  auto walk_to = [&](int lvl) {
    while (cur < lvl) seq.push_back(++cur);
    while (cur > lvl) seq.push_back(--cur);
  };
  for (int i = 0; i <= k.rank(); ++i) {
    if (i > 0) walk_to(k.bots[i - 1]);
    walk_to(k.tops[i]);
  }
  walk_to(-1);
  return ZigZag{std::move(seq)};
}

Scheme from_zigzag(const ZigZag& zz) {
  const auto& m = validate_zigzag(zz.seq).seq;
  // Inner extrema (m_{i-1} = m_{i+1}) alternate max, min, ..., max.
  std::vector<int> tops, bots;
  bool expect_top = true;
  for (size_t i = 1; i + 1 < m.size(); ++i) {
    if (m[i - 1] != m[i + 1]) continue;
    bool is_max = m[i] > m[i - 1];
    check(is_max == expect_top, Err::MalformedEncoding, "extrema do not alternate");
    (is_max ? tops : bots).push_back(m[i]);
    expect_top = !expect_top;
  }
  check(!expect_top && !tops.empty(), Err::MalformedEncoding, "zig-zag must end on a maximum");
  return validate_scheme(std::move(tops), std::move(bots));
}

ZigZag nested_to_zigzag(const Nested& t) {
  std::vector<int> seq{-1};
  int depth = -1;
  auto walk = [&](auto&& self, const Nested& node) -> void {
    seq.push_back(++depth);
    for (const auto& kid : node.kids) self(self, kid);
    seq.push_back(--depth);
  };
  walk(walk, t);
  return validate_zigzag(std::move(seq));
}

Nested zigzag_to_nested(const ZigZag& zz) {
  const auto& m = validate_zigzag(zz.seq).seq;
  std::vector<Nested> stack;
  stack.emplace_back();  // virtual level -1 node
  for (size_t i = 1; i < m.size(); ++i) {
    if (m[i] > m[i - 1]) {
      stack.emplace_back();
    } else {
      Nested done = std::move(stack.back());
      stack.pop_back();
      check(!stack.empty(), Err::MalformedEncoding, "unbalanced zig-zag");
      stack.back().kids.push_back(std::move(done));
    }
  }
  check(stack.size() == 1 && stack[0].kids.size() == 1, Err::MalformedEncoding,
        "zig-zag does not describe a single tree");
  return std::move(stack[0].kids[0]);
}

std::string show(const Scheme& k) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i <= k.rank(); ++i) {
    if (i) os << ',';
    os << k.tops[i];
  }
  if (k.rank() > 0) {
    os << " / ";
    for (int i = 0; i < k.rank(); ++i) {
      if (i) os << ',';
      os << k.bots[i];
    }
  }
  os << ']';
  return os.str();
}

std::string show(const SchemeCell& c) { return show(c.table) + "@" + std::to_string(c.dim); }

std::string show(const ZigZag& z) {
  std::ostringstream os;
  os << "zz[";
  for (size_t i = 0; i < z.seq.size(); ++i) {
    if (i) os << ',';
    os << z.seq[i];
  }
  os << ']';
  return os.str();
}

std::string show(const Nested& t) {
  if (t.kids.empty()) return "[ ]";
  std::string out = "[";
  for (size_t i = 0; i < t.kids.size(); ++i) {
    if (i) out += ",";
    out += show(t.kids[i]);
  }
  return out + "]";
}

}  // namespace omegapaste
