#include <random>
#include <set>

#include "doctest.h"
#include "hjm/symmetry.hpp"
#include "hjm/verify.hpp"

using namespace hjm;

namespace {

std::set<std::vector<Index>> line_set(int n, LineKind kind) {
  auto t = line_table(n, 3, kind);
  std::set<std::vector<Index>> out;
  for (std::size_t l = 0; l < t->size(); ++l) {
    std::vector<Index> p(t->line(l), t->line(l) + 3);
    std::sort(p.begin(), p.end());
    out.insert(p);
  }
  return out;
}

PointSet random_set(const Shape& sh, std::mt19937_64& rng, int density = 2) {
  PointSet a(sh);
  for (Index i = 0; i < sh.cells(); ++i)
    if (rng() % density == 0) a.insert(i);
  return a;
}

}  // namespace

TEST_CASE("group orders") {
  for (int n = 1; n <= 4; ++n) {
    auto geo = group_elements(GroupKind::kGeometric, n, 3);
    auto comb = group_elements(GroupKind::kCombinatorial, n, 3);
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    CHECK(geo.size() == f << n);
    CHECK(comb.size() == f * 6);
    CHECK(group_order(GroupKind::kGeometric, n, 3) == geo.size());
    // Elements act as distinct permutations of the cube.
    Shape sh(n, 3);
    std::set<std::vector<Index>> images;
    for (const auto& g : geo) {
      std::vector<Index> img;
      for (Index c = 0; c < sh.cells(); ++c) img.push_back(g.apply(sh, c));
      images.insert(img);
    }
    CHECK(images.size() == geo.size());
  }
  CHECK_THROWS_AS(group_elements(GroupKind::kCombinatorial, 12, 3), Error);
}

TEST_CASE("reflection of a single coordinate") {
  auto g = GroupElement::geometric(3, {0, 1, 2, 3}, 1u);
  CHECK(apply(g, Word::parse(3, "1123")).str() == "3123");
  Shape sh(2, 3);
  PointSet a = PointSet::from_strings(sh, {"12", "21", "33"});
  CHECK(apply_set(GroupElement::identity(GroupKind::kGeometric, 2, 3), a) == a);
  CHECK(apply_set(GroupElement::identity(GroupKind::kCombinatorial, 2, 3), a) == a);
}

TEST_CASE("group laws on random elements") {
  std::mt19937_64 rng(3);
  for (GroupKind kind : {GroupKind::kGeometric, GroupKind::kCombinatorial})
    for (int n = 1; n <= 6; ++n) {
      auto els = group_elements(kind, n, 3);
      Shape sh(n, 3);
      const auto id = GroupElement::identity(kind, n, 3);
      for (int t = 0; t < 1000 / 6; ++t) {
        const auto& a = els[rng() % els.size()];
        const auto& b = els[rng() % els.size()];
        const auto& c = els[rng() % els.size()];
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * a.inverse()) == id);
        CHECK((a.inverse() * a) == id);
        CHECK((a * id) == a);
        Index w = rng() % sh.cells();
        CHECK((a * b).apply(sh, w) == a.apply(sh, b.apply(sh, w)));
      }
    }
}

TEST_CASE("group elements preserve their line family") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n) {
    Shape sh(n, 3);
    auto geo = line_set(n, LineKind::kGeometric);
    auto comb = line_set(n, LineKind::kCombinatorial);
    auto ge = group_elements(GroupKind::kGeometric, n, 3);
    auto ce = group_elements(GroupKind::kCombinatorial, n, 3);
    for (int t = 0; t < 10; ++t) {
      const auto& g = ge[rng() % ge.size()];
      const auto& c = ce[rng() % ce.size()];
      for (const auto& l : geo) {
        std::vector<Index> img;
        for (Index p : l) img.push_back(g.apply(sh, p));
        std::sort(img.begin(), img.end());
        CHECK(geo.count(img) == 1);
      }
      for (const auto& l : comb) {
        std::vector<Index> img;
        for (Index p : l) img.push_back(c.apply(sh, p));
        std::sort(img.begin(), img.end());
        CHECK(comb.count(img) == 1);
      }
    }
  }
}

TEST_CASE("canonical form is constant on orbits") {
  std::mt19937_64 rng(9);
  Shape sh(3, 3);
  auto els = group_elements(GroupKind::kGeometric, 3, 3);
  for (int t = 0; t < 100; ++t) {
    PointSet a = random_set(sh, rng);
    const auto& g = els[rng() % els.size()];
    CHECK(canonical_form(a, GroupKind::kGeometric) ==
          canonical_form(apply_set(g, a), GroupKind::kGeometric));
    CHECK(!(a < canonical_form(a, GroupKind::kGeometric)));
  }
  // Beyond 64 cells the generic path is used.
  Shape s4(4, 3);
  auto e4 = group_elements(GroupKind::kGeometric, 4, 3);
  for (int t = 0; t < 5; ++t) {
    PointSet a = random_set(s4, rng, 5);
    const auto& g = e4[rng() % e4.size()];
    CHECK(canonical_form(a, GroupKind::kGeometric) ==
          canonical_form(apply_set(g, a), GroupKind::kGeometric));
  }
  CHECK(canonical_form(PointSet(sh), GroupKind::kGeometric).empty());
}

TEST_CASE("sphere halves are equivalent") {
  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i)
      if (i % 2 == 1 || i == n)
        CHECK(canonical_form(sphere_members(i, Parity::kOdd, n),
                           GroupKind::kGeometric) ==
            canonical_form(sphere_members(i, Parity::kEven, n),
                           GroupKind::kGeometric));
}

TEST_CASE("Moser property is invariant under the geometric group") {
  Shape sh(2, 3);
  auto els = group_elements(GroupKind::kGeometric, 2, 3);
  for (std::uint64_t m = 0; m < 512; ++m) {
    PointSet a = PointSet::from_mask(sh, m);
    for (const auto& g : els) CHECK(is_moser(a) == is_moser(apply_set(g, a)));
  }
  std::mt19937_64 rng(1);
  Shape s3(3, 3);
  auto e3 = group_elements(GroupKind::kGeometric, 3, 3);
  for (int t = 0; t < 300; ++t) {
    PointSet a = random_set(s3, rng, 3);
    for (const auto& g : e3) CHECK(is_moser(a) == is_moser(apply_set(g, a)));
  }
}

TEST_CASE("orbit census") {
  Shape sh(2, 3);
  std::vector<PointSet> one{PointSet::from_strings(sh, {"11"})};
  auto c = classify_orbits(one, GroupKind::kGeometric);
  CHECK(c.classes == 1);

  // All 512 subsets of [3]^2: Burnside count against the census.
  std::vector<PointSet> all;
  for (std::uint64_t m = 0; m < 512; ++m) all.push_back(PointSet::from_mask(sh, m));
  auto census = classify_orbits(all, GroupKind::kGeometric);
  auto els = group_elements(GroupKind::kGeometric, 2, 3);
  std::uint64_t fixed = 0;
  for (const auto& g : els)
    for (const auto& a : all) fixed += apply_set(g, a) == a;
  CHECK(census.classes == fixed / els.size());
  CHECK(census.weighted_total() == 512);
  CHECK(census.csv().rfind("orbit_size,multiplicity\n", 0) == 0);
}

TEST_CASE("orbit representatives") {
  auto any = [](const PointSet&) { return true; };
  CHECK(orbit_representatives(sphere_members(0, Parity::kAll, 3),
                              GroupKind::kGeometric, any)
            .size() == 2);

  // Subsets of S_{1,2} = {12,21,23,32}: explicit orbit enumeration.
  PointSet s12 = sphere_members(1, Parity::kAll, 2);
  auto reps = orbit_representatives(s12, GroupKind::kGeometric, any);
  auto els = group_elements(GroupKind::kGeometric, 2, 3);
  std::set<std::vector<std::string>> orbits;
  auto cells = s12.indices();
  for (int m = 0; m < 16; ++m) {
    PointSet a(s12.shape());
    for (int i = 0; i < 4; ++i)
      if ((m >> i) & 1) a.insert(cells[i]);
    std::vector<std::string> best = a.strings();
    PointSet lo = a;
    for (const auto& g : els) {
      PointSet b = apply_set(g, a);
      if (b < lo) lo = b;
    }
    orbits.insert(lo.strings());
  }
  CHECK(reps.size() == orbits.size());
  for (const auto& r : reps) CHECK(orbits.count(r.strings()) == 1);
}
