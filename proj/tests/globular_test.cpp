#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omegapaste/globular.hpp"
#include "omegapaste/oracle.hpp"

using namespace omegapaste;

namespace {

GlobularSet two_arrows() {
  GlobularSet g;
  g.max_dim = 1;
  g.cells = {{"a", "b", "c"}, {"f", "g"}};
  g.src = {{}, {{"f", "a"}, {"g", "b"}}};
  g.tgt = {{}, {{"f", "b"}, {"g", "c"}}};
  return validate_globular_set(std::move(g));
}

}  // namespace

TEST_CASE("validate globular sets") {
  GlobularSet pt;
  pt.max_dim = 0;
  pt.cells = {{"x"}};
  CHECK_NOTHROW((void)validate_globular_set(pt));
  CHECK_NOTHROW((void)two_arrows());

  GlobularSet bad;
  bad.max_dim = 2;
  bad.cells = {{"a", "b", "c"}, {"f", "g"}, {"al"}};
  bad.src = {{}, {{"f", "a"}, {"g", "a"}}, {{"al", "f"}}};
  bad.tgt = {{}, {{"f", "b"}, {"g", "c"}}, {{"al", "g"}}};
  CHECK_THROWS_WITH_AS((void)validate_globular_set(bad), doctest::Contains("Globularity"),
                       OmegaError);

  GlobularSet dangling;
  dangling.max_dim = 1;
  dangling.cells = {{"a"}, {"f"}};
  dangling.src = {{}, {{"f", "a"}}};
  dangling.tgt = {{}, {{"f", "zz"}}};
  CHECK_THROWS_WITH_AS((void)validate_globular_set(dangling), doctest::Contains("Dangling"),
                       OmegaError);
}

TEST_CASE("disks") {
  auto g0b = build_disk(0, true);
  CHECK(g0b.cell_count(0) == 0);  // empty (initial) globular set
  auto g2 = build_disk(2, false);
  CHECK(g2.cell_count(0) == 2);
  CHECK(g2.cell_count(1) == 2);
  CHECK(g2.cell_count(2) == 1);
  auto g1b = build_disk(1, true);
  CHECK(g1b.cell_count(0) == 2);
  CHECK(g1b.max_dim == 0);
}

TEST_CASE("parallelism") {
  auto g = two_arrows();
  CHECK(is_parallel(g, {0, "a"}, {0, "c"}));
  CHECK_FALSE(is_parallel(g, {1, "f"}, {1, "g"}));
  CHECK_THROWS_AS((void)is_parallel(g, {0, "a"}, {1, "f"}), OmegaError);
  // maps dG^{n+1} -> X correspond to parallel pairs of n-cells
  auto bd = build_disk(2, true);
  int pairs = 0;
  for (const auto& u : g.cells[1])
    for (const auto& v : g.cells[1]) {
      std::map<GCell, GCell> a;
      a[disk_minus(1)] = {1, u};
      a[disk_plus(1)] = {1, v};
      a[disk_minus(0)] = {0, g.src1(1, u)};
      a[disk_plus(0)] = {0, g.tgt1(1, u)};
      bool ok = true;
      try {
        (void)validate_glob_map(bd, g, a);
      } catch (const OmegaError&) {
        ok = false;
      }
      CHECK(ok == is_parallel(g, {1, u}, {1, v}));
      pairs += ok;
    }
  CHECK(pairs == 2);  // (f,f) and (g,g)
}

TEST_CASE("glue: pushout of boundary inclusions is the disk boundary") {
  for (int n = 1; n <= 3; ++n) {
    auto bd = build_disk(n - 1, true);
    auto d1 = build_disk(n - 1, false);
    auto d2 = build_disk(n - 1, false);
    GlueProblem p;
    p.objects = {&bd, &d1, &d2};
    p.arrows.push_back({0, 1, disk_iota(bd, d1, n - 1).assign});
    p.arrows.push_back({0, 2, disk_iota(bd, d2, n - 1).assign});
    auto res = glue(p);
    auto expect = build_disk(n, true);
    for (int m = 0; m <= expect.max_dim; ++m)
      CHECK(res.glob.cell_count(m) == expect.cell_count(m));
  }
}

TEST_CASE("glue: colimit of one object") {
  auto g = two_arrows();
  GlueProblem p;
  p.objects = {&g};
  auto res = glue(p);
  CHECK(res.glob.cell_count(0) == 3);
  CHECK(res.glob.cell_count(1) == 2);
}

TEST_CASE("hom globular sets") {
  auto g = two_arrows();
  auto h = hom_globular_set(g, "a", "b");
  CHECK(h.cell_count(0) == 1);
  CHECK(h.cells[0][0] == "f");
  auto empty = hom_globular_set(g, "a", "a");
  CHECK(empty.cell_count(0) == 0);
  // brute-force filter oracle on a 2-dimensional set
  GlobularSet x;
  x.max_dim = 2;
  x.cells = {{"a", "b"}, {"f", "g", "h"}, {"al", "be"}};
  x.src = {{}, {{"f", "a"}, {"g", "a"}, {"h", "b"}}, {{"al", "f"}, {"be", "g"}}};
  x.tgt = {{}, {{"f", "b"}, {"g", "b"}, {"h", "a"}}, {{"al", "g"}, {"be", "g"}}};
  x = validate_globular_set(std::move(x));
  auto hx = hom_globular_set(x, "a", "b");
  CHECK(hx.cell_count(0) == 2);
  CHECK(hx.cell_count(1) == 2);
  GlobUniv u{&x};
  int count0 = 0, count1 = 0;
  for (const auto& n : x.cells[1])
    count0 += iter_bnd(u, {1, n}, 0, Side::Src).name == "a" &&
              iter_bnd(u, {1, n}, 0, Side::Tgt).name == "b";
  for (const auto& n : x.cells[2])
    count1 += iter_bnd(u, {2, n}, 0, Side::Src).name == "a" &&
              iter_bnd(u, {2, n}, 0, Side::Tgt).name == "b";
  CHECK(count0 == hx.cell_count(0));
  CHECK(count1 == hx.cell_count(1));
}

TEST_CASE("realisations") {
  auto r1 = realisation(globe(3));
  CHECK(r1.glob.cell_count(3) == 1);
  CHECK(r1.glob.cell_count(2) == 2);
  CHECK(r1.glob.cell_count(0) == 2);

  auto r2 = realisation(at_dim({1, 1}, {0}, 1));
  CHECK(r2.glob.cell_count(0) == 3);
  CHECK(r2.glob.cell_count(1) == 2);

  auto r3 = realisation(at_dim({2, 1, 2, 2}, {0, 0, 1}, 2));
  CHECK(r3.glob.cell_count(0) == 4);
  CHECK(r3.glob.cell_count(1) == 6);
  CHECK(r3.glob.cell_count(2) == 3);

  // realisation commutes with suspension up to two extra 0-cells
  auto c = at_dim({2, 1, 2, 2}, {0, 0, 1}, 2);
  auto rs = realisation(suspend_scheme(c));
  CHECK(rs.glob.cell_count(0) == 2);
  for (int d = 0; d <= 2; ++d) CHECK(rs.glob.cell_count(d + 1) == r3.glob.cell_count(d));
}

TEST_CASE("extraction recovers the canonical diagram") {
  for (auto c : {globe(2), at_dim({1, 1}, {0}, 1), at_dim({2, 1, 2, 2}, {0, 0, 1}, 2),
                 at_dim({3, 6, 5, 7, 2, 6}, {2, 3, 4, 0, 1}, 7)}) {
    auto r = realisation(c);
    GlobUniv u{&r.glob};
    auto d = oracle::extract_dia(r.glob, c.dim);
    CHECK(dia_eq(u, d, r.columns(u)));
  }
}

TEST_CASE("json round trip") {
  auto g = two_arrows();
  auto g2 = glob_from_json(glob_to_json(g));
  CHECK(g2.cell_count(0) == 3);
  CHECK(g2.cell_count(1) == 2);
  CHECK(glob_to_json(g2) == glob_to_json(g));
  CHECK_THROWS_AS((void)glob_from_json("{"), OmegaError);
  CHECK_THROWS_AS((void)glob_from_json(R"({"max_dim": 1, "cells": {"0": ["a"], "1": ["f"]},
    "src": {"1": {"f": "a"}}, "tgt": {"1": {"f": "zz"}}})"),
                  OmegaError);
}
