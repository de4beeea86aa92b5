#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "hjm/construct.hpp"
#include "hjm/search.hpp"

using namespace hjm;

namespace {

// Lines straight from the definitions, as cell triples (or k-tuples).
std::vector<std::vector<Index>> oracle_lines(int n, int k, Predicate pred) {
  const Shape sh(n, k);
  std::vector<std::vector<Index>> out;
  std::set<std::vector<Index>> seen;
  if (pred == Predicate::kCapSet) {
    for (Index x = 0; x < sh.cells(); ++x)
      for (Index r = 1; r < sh.cells(); ++r) {
        std::vector<Index> l;
        for (int t = 0; t < 3; ++t) {
          Index c = 0;
          for (int p = 0; p < n; ++p)
            c += static_cast<Index>(((sh.letter(x, p) - 1) + t * (sh.letter(r, p) - 1)) % 3) * sh.place(p);
          l.push_back(c);
        }
        std::sort(l.begin(), l.end());
        if (seen.insert(l).second) out.push_back(l);
      }
    return out;
  }
  // Each coordinate is a constant, x (1..k) or, for geometric lines, x-bar.
  const int kinds = k + (pred == Predicate::kMoser ? 2 : 1);
  std::vector<int> t(n, 0);
  for (;;) {
    bool moving = false;
    for (int v : t) moving = moving || v >= k;
    if (moving) {
      std::vector<Index> l;
      for (int i = 1; i <= k; ++i) {
        Index c = 0;
        for (int p = 0; p < n; ++p) {
          const int letter = t[p] < k ? t[p] + 1 : (t[p] == k ? i : k + 1 - i);
          c += static_cast<Index>(letter - 1) * sh.place(p);
        }
        l.push_back(c);
      }
      std::sort(l.begin(), l.end());
      if (seen.insert(l).second) out.push_back(l);
    }
    int p = 0;
    while (p < n && ++t[p] == kinds) t[p++] = 0;
    if (p == n) break;
  }
  return out;
}

bool oracle_ok(std::uint64_t m, const std::vector<std::vector<Index>>& lines) {
  for (const auto& l : lines) {
    bool all = true;
    for (Index c : l) all = all && ((m >> c) & 1);
    if (all) return false;
  }
  return true;
}

std::vector<std::int64_t> oracle_stats(const Shape& sh, std::uint64_t m) {
  std::vector<std::int64_t> a(sh.n() + 1, 0);
  for (Index c = 0; c < sh.cells(); ++c)
    if ((m >> c) & 1) ++a[twos(sh, c)];
  return a;
}

bool geq(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < y[i]) return false;
  return true;
}

// Non-dominated members of a list of vectors.
std::set<std::vector<std::int64_t>> oracle_frontier(const std::set<std::vector<std::int64_t>>& all) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& v : all) {
    bool dom = false;
    for (const auto& w : all) dom = dom || (w != v && geq(w, v));
    if (!dom) out.insert(v);
  }
  return out;
}

std::set<std::vector<std::int64_t>> as_set(const std::vector<StatVector>& v) {
  std::set<std::vector<std::int64_t>> s;
  for (const auto& x : v) s.insert(x.a);
  return s;
}

std::set<std::vector<std::int64_t>> as_set(std::initializer_list<std::vector<std::int64_t>> l) {
  return {l.begin(), l.end()};
}

void check_frontier_invariants(const ParetoFrontier& f, Predicate pred) {
  const auto& e = f.entries();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j)
      if (i != j) CHECK_FALSE(e[i].stats.dominates(e[j].stats));
    if (i) CHECK(e[i - 1].stats > e[i].stats);
    // Deleting a point keeps the predicate, so every one-step decrease is
    // covered by the frontier.
    for (int t = 0; t <= f.n(); ++t) {
      if (e[i].stats.a[t] == 0) continue;
      auto a = e[i].stats.a;
      --a[t];
      CHECK(f.dominated(a));
    }
  }
  CHECK(f.audit(pred).empty());
}

const bool kLong = std::getenv("HJM_LONG") != nullptr;

}  // namespace

TEST_CASE("line systems match direct constructions") {
  for (auto [n, k] : {std::pair{1, 3}, {2, 3}, {3, 3}, {2, 4}, {3, 2}, {4, 3}}) {
    for (auto pred : {Predicate::kLineFree, Predicate::kMoser, Predicate::kCapSet}) {
      if (pred == Predicate::kCapSet && k != 3) continue;
      LineSystem ls(Shape(n, k), pred);
      auto want = oracle_lines(n, k, pred);
      std::set<std::vector<Index>> got;
      for (std::size_t i = 0; i < ls.size(); ++i) {
        std::vector<Index> l(ls.line(i), ls.line(i) + ls.arity());
        std::sort(l.begin(), l.end());
        got.insert(l);
      }
      CHECK(got.size() == ls.size());
      CHECK(got == std::set<std::vector<Index>>(want.begin(), want.end()));
    }
  }
  CHECK(LineSystem(Shape(4, 3), Predicate::kCapSet).size() == 81 * 80 / 6);
}

TEST_CASE("incidence blocked_after agrees with blocked") {
  std::mt19937_64 rng(7);
  for (auto pred : {Predicate::kLineFree, Predicate::kMoser, Predicate::kCapSet}) {
    Incidence inc(Shape(3, 3), pred);
    for (int trial = 0; trial < 200; ++trial) {
      Mask set = 0, blk = 0;
      for (int step = 0; step < 8; ++step) {
        std::size_t c = rng() % 27;
        if ((set >> c) & 1 || (blk >> c) & 1) continue;
        blk = inc.blocked_after(set, blk, c);
        set |= bit(c);
        CHECK(blk == inc.blocked(set));
      }
    }
  }
}

TEST_CASE("enumerate_all matches brute force") {
  for (auto [n, k] : {std::pair{0, 3}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 2}, {2, 2}}) {
    for (auto pred : {Predicate::kLineFree, Predicate::kMoser, Predicate::kCapSet}) {
      if (pred == Predicate::kCapSet && k != 3) continue;
      const Shape sh(n, k);
      auto lines = oracle_lines(n, k, pred);
      std::uint64_t want = 0;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << sh.cells()); ++m) want += oracle_ok(m, lines);
      CHECK(enumerate_all(n, k, pred) == want);
    }
  }
  CHECK(enumerate_all(0, 3, Predicate::kMoser) == 2);
  CHECK(enumerate_all(2, 3, Predicate::kMoser) == 230);
  CHECK(enumerate_all(2, 3, Predicate::kLineFree) == 247);
}

TEST_CASE("3D Moser census") {
  auto c = moser3_census();
  CHECK(c.sets == 3813884);
  CHECK(c.classes == 83158);
  const std::map<std::uint64_t, std::uint64_t> want{{48, 76066}, {24, 6527}, {16, 51}, {12, 338},
                                                     {8, 109},   {6, 41},    {4, 13},  {3, 5},
                                                     {2, 3},     {1, 5}};
  CHECK(c.histogram == want);
  std::uint64_t total = 0;
  for (auto [size, count] : c.histogram) total += size * count;
  CHECK(total == c.sets);
}

TEST_CASE("max_set small cases") {
  // Brute force over all subsets for the tiny cubes.
  for (auto [n, k] : {std::pair{1, 3}, {2, 3}, {2, 4}, {3, 2}}) {
    for (auto pred : {Predicate::kLineFree, Predicate::kMoser, Predicate::kCapSet}) {
      if (pred == Predicate::kCapSet && k != 3) continue;
      const Shape sh(n, k);
      auto lines = oracle_lines(n, k, pred);
      int best = 0;
      std::vector<std::uint64_t> maxima;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << sh.cells()); ++m) {
        if (!oracle_ok(m, lines)) continue;
        const int s = __builtin_popcountll(m);
        if (s > best) {
          best = s;
          maxima.clear();
        }
        if (s == best) maxima.push_back(m);
      }
      auto r = max_set(n, k, pred);
      CHECK(r.size == best);
      REQUIRE(r.witnesses.size() == maxima.size());
      for (std::size_t i = 0; i < maxima.size(); ++i) CHECK(r.witnesses[i].mask() == maxima[i]);
    }
  }

  auto dhj2 = max_set(2, 3, Predicate::kLineFree);
  CHECK(dhj2.size == 6);
  CHECK(dhj2.witnesses.size() == 4);
  auto ext = extremal_2d();
  std::sort(ext.begin(), ext.end());
  CHECK(dhj2.witnesses == ext);

  auto dhj3 = max_set(3, 3, Predicate::kLineFree);
  CHECK(dhj3.size == 18);
  REQUIRE(dhj3.witnesses.size() == 1);
  CHECK(dhj3.witnesses[0] == xyz_set());

  const int moser[] = {1, 2, 6, 16};
  const int caps[] = {1, 2, 4, 9};
  for (int n = 0; n <= 3; ++n) {
    CHECK(max_set(n, 3, Predicate::kMoser, false).size == moser[n]);
    CHECK(max_set(n, 3, Predicate::kCapSet, false).size == caps[n]);
  }
  for (const auto& w : max_set(3, 3, Predicate::kMoser).witnesses) CHECK(is_moser(w));
  CHECK_THROWS_AS(max_set(5, 3, Predicate::kMoser), Error);
}

TEST_CASE("cap set maximum in four dimensions") {
  auto r = max_set(4, 3, Predicate::kCapSet, false);
  CHECK(r.size == 20);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(satisfies(r.witnesses[0], Predicate::kCapSet));
  CHECK(r.witnesses[0].size() == 20);
}

TEST_CASE("Moser maximum in four dimensions") {
  auto r = moser_max_4d();
  CHECK(r.size == 43);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(is_moser(r.witnesses[0]));
  CHECK(r.witnesses[0].size() == 43);
}

TEST_CASE("frontier insert and merge") {
  std::mt19937_64 rng(11);
  const Shape sh(2, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::set<std::vector<std::int64_t>> all;
    std::vector<std::pair<StatVector, PointSet>> items;
    for (int i = 0; i < 30; ++i) {
      std::vector<std::int64_t> a{static_cast<std::int64_t>(rng() % 5), static_cast<std::int64_t>(rng() % 5),
                                  static_cast<std::int64_t>(rng() % 2)};
      all.insert(a);
      PointSet w(sh);
      w.insert(rng() % 9);
      items.emplace_back(StatVector(2, a), w);
    }
    ParetoFrontier f(2);
    for (const auto& [v, w] : items) f.insert(v, w);
    CHECK(as_set(f.vectors()) == oracle_frontier(all));

    // Merging shuffled halves gives the same entries and witnesses.
    std::shuffle(items.begin(), items.end(), rng);
    ParetoFrontier g1(2), g2(2);
    for (std::size_t i = 0; i < items.size(); ++i) (i % 2 ? g1 : g2).insert(items[i].first, items[i].second);
    ParetoFrontier m1(2), m2(2);
    m1.merge(g1);
    m1.merge(g2);
    m2.merge(g2);
    m2.merge(g1);
    REQUIRE(m1.size() == f.size());
    REQUIRE(m2.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(m1.entries()[i].stats == f.entries()[i].stats);
      CHECK(m1.entries()[i].witness == f.entries()[i].witness);
      CHECK(m2.entries()[i].witness == f.entries()[i].witness);
    }
  }
}

TEST_CASE("Pareto frontiers for n <= 3") {
  // Brute-force frontiers for n = 1, 2.
  for (int n = 1; n <= 2; ++n) {
    const Shape sh(n, 3);
    auto lines = oracle_lines(n, 3, Predicate::kMoser);
    std::set<std::vector<std::int64_t>> all;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << sh.cells()); ++m)
      if (oracle_ok(m, lines)) all.insert(oracle_stats(sh, m));
    CHECK(as_set(pareto(n, Predicate::kMoser).vectors()) == oracle_frontier(all));
  }

  auto f1 = pareto(1, Predicate::kMoser);
  CHECK(as_set(f1.vectors()) == as_set({{2, 0}, {1, 1}}));
  CHECK(as_set(f1.extremal()) == as_set({{2, 0}, {1, 1}}));

  auto f2 = pareto(2, Predicate::kMoser);
  CHECK(as_set(f2.vectors()) == as_set({{4, 0, 0}, {3, 2, 0}, {2, 4, 0}, {2, 2, 1}}));
  CHECK(as_set(f2.extremal()) == as_set({{4, 0, 0}, {2, 4, 0}, {2, 2, 1}}));

  auto f3 = pareto(3, Predicate::kMoser);
  CHECK(as_set(f3.vectors()) ==
        as_set({{3, 6, 3, 1}, {4, 4, 3, 1}, {4, 6, 2, 1}, {2, 6, 6, 0}, {3, 6, 5, 0}, {4, 4, 5, 0},
                {3, 7, 4, 0}, {4, 6, 4, 0}, {3, 9, 3, 0}, {4, 7, 3, 0}, {5, 4, 3, 0}, {4, 9, 2, 0},
                {5, 6, 2, 0}, {6, 3, 2, 0}, {3, 10, 1, 0}, {5, 7, 1, 0}, {6, 4, 1, 0}, {4, 12, 0, 0},
                {5, 9, 0, 0}, {6, 6, 0, 0}, {7, 3, 0, 0}, {8, 0, 0, 0}}));
  CHECK(as_set(f3.extremal()) == as_set({{3, 6, 3, 1}, {4, 4, 3, 1}, {4, 6, 2, 1}, {2, 6, 6, 0},
                                         {4, 4, 5, 0}, {4, 6, 4, 0}, {4, 12, 0, 0}, {8, 0, 0, 0}}));
  for (const auto* f : {&f1, &f2, &f3}) check_frontier_invariants(*f, Predicate::kMoser);

  auto s3 = slice_search3();
  REQUIRE(s3.size() == f3.size());
  for (std::size_t i = 0; i < f3.size(); ++i) {
    CHECK(s3.entries()[i].stats == f3.entries()[i].stats);
    CHECK(s3.entries()[i].witness == f3.entries()[i].witness);
  }

  auto sizes = middle_frontier_sizes();
  CHECK(sizes.size() == 512);
  CHECK(*std::max_element(sizes.begin(), sizes.end()) <= 23);

  auto fl = pareto(2, Predicate::kLineFree);
  check_frontier_invariants(fl, Predicate::kLineFree);
  CHECK_THROWS_AS(pareto(4, Predicate::kMoser), Error);
}

TEST_CASE("restricted 3D frontiers") {
  std::vector<std::uint32_t> sets;
  enumerate_all(3, 3, Predicate::kMoser, [&](Mask m) { sets.push_back(static_cast<std::uint32_t>(m)); });
  const Shape sh(3, 3);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    std::uint32_t allowed = (1u << 27) - 1;
    for (int i = 0; i < 3 + trial; ++i) allowed &= ~(1u << (rng() % 27));
    std::set<std::vector<std::int64_t>> all;
    for (auto m : sets)
      if (!(m & ~allowed)) all.insert(oracle_stats(sh, m));
    auto f = moser3_frontier_within(allowed);
    CHECK(as_set(f.vectors()) == oracle_frontier(all));
    for (const auto& e : f.entries()) CHECK((e.witness.mask() & ~std::uint64_t{allowed}) == 0);
    CHECK(f.audit(Predicate::kMoser).empty());
  }
}

TEST_CASE("counts by statistics") {
  // n <= 3 against brute force.
  for (int n = 1; n <= 2; ++n) {
    const Shape sh(n, 3);
    auto lines = oracle_lines(n, 3, Predicate::kMoser);
    std::map<std::vector<std::int64_t>, std::uint64_t> want;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << sh.cells()); ++m)
      if (oracle_ok(m, lines)) ++want[oracle_stats(sh, m)];
    for (const auto& [a, c] : want) CHECK(count_by_statistics(StatVector(n, a)) == c);
  }
  CHECK(count_by_statistics(StatVector(4, {0, 0, 0, 0, 0})) == 1);
  CHECK(count_by_statistics(StatVector(4, {16, 1, 0, 0, 0})) == 0);
  CHECK(count_by_statistics(StatVector(4, {0, 0, 0, 0, 2})) == 0);
  CHECK(count_by_statistics(StatVector(4, {5, 12, 18, 4, 0})) == 4368);
  CHECK(count_by_statistics(StatVector(4, {5, 12, 12, 4, 1})) == 27520);
  CHECK(count_by_statistics(StatVector(4, {6, 8, 12, 8, 0})) == 80000);
  // Single-sphere counts have closed forms: any subset of S_{4,4} of size 2
  // is Moser, and so is any pair in S_{3,4}.
  CHECK(count_by_statistics(StatVector(4, {2, 0, 0, 0, 0})) == 120);
  CHECK(count_by_statistics(StatVector(4, {0, 2, 0, 0, 0})) == 496);

  std::uint64_t seen = 0;
  for_each_with_statistics(StatVector(4, {5, 12, 18, 4, 0}), [&](const PointSet& a) {
    ++seen;
    CHECK(is_moser(a));
    CHECK(statistics(a) == StatVector(4, {5, 12, 18, 4, 0}));
  });
  CHECK(seen == 4368);
}

TEST_CASE("good sets") {
  auto r = good_set_classify();
  CHECK(r.all_match);
  CHECK(r.classes == 1);
  CHECK(r.sets.size() == 16);
  const Shape sh(4, 3);
  std::set<std::array<int, 4>> types(r.types.begin(), r.types.end());
  CHECK(types.size() == r.sets.size());
  for (const auto& a : r.sets) {
    int d = 0;
    for (Index c : a.indices()) d += twos(sh, c) == 3;
    CHECK(d == 4);
  }
  auto g = good_set(1, 1, 1, 1);
  for (const char* w : {"1222", "2122", "2212", "2221"}) CHECK(g.contains(parse_word_index(sh, w)));
}

TEST_CASE("four-dimensional shards") {
  Pareto4Search p;
  CHECK(p.shards() == 396);
  for (std::size_t i = 0; i < p.shards(); ++i) CHECK(p.rep(i).size() >= 3);
  CHECK_THROWS_AS(p.run(-1), Error);
  CHECK_THROWS_AS(p.run(static_cast<int>(p.shards())), Error);

  auto top = p.shards_with_corners(15);
  CHECK(top.size() == 2);
  std::vector<ShardState> states;
  for (int s : top) states.push_back(p.run(s));
  auto f = merge_shards(states);
  CHECK(as_set(rows_from(f, 15)) == as_set({{15, 4, 0, 0, 0}, {16, 0, 0, 0, 0}}));
  check_frontier_invariants(f, Predicate::kMoser);

  // The a >= 12 strata, cross-checked by exact counts.
  std::vector<ShardState> mid;
  for (int s : p.shards_with_corners(12)) mid.push_back(p.run(s));
  auto g = merge_shards(mid);
  check_frontier_invariants(g, Predicate::kMoser);
  CHECK(check_stat_clauses(g).empty());
  for (const auto& v : rows_from(g, 12)) {
    CHECK(count_by_statistics(v) > 0);
    for (int t = 0; t < 5; ++t) {
      auto a = v.a;
      ++a[t];
      CHECK(count_by_statistics(StatVector(4, a)) == 0);
    }
  }
  std::reverse(mid.begin(), mid.end());
  auto h = merge_shards(mid);
  REQUIRE(h.size() == g.size());
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(h.entries()[i].witness == g.entries()[i].witness);
}

TEST_CASE("shard checkpoints") {
  Pareto4Search p;
  int shard = -1;
  for (int s : p.shards_with_corners(10))
    if (p.run(s).total >= 20) {
      shard = s;
      break;
    }
  REQUIRE(shard >= 0);
  const auto dir = std::filesystem::temp_directory_path() / "hjm_test_search";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "shard.txt").string();

  std::vector<ShardState> seen;
  auto full = p.run(shard, nullptr, [&](const ShardState& s) { seen.push_back(s); }, 0);
  CHECK(full.complete);
  CHECK(full.progress == full.total);
  REQUIRE(seen.size() >= 21);

  // Resume from an intermediate snapshot and reach the same frontier.
  const ShardState& part = seen[seen.size() / 2];
  write_checkpoint(path, part);
  auto back = read_checkpoint(path);
  CHECK(back.shard == part.shard);
  CHECK(back.progress == part.progress);
  CHECK(back.complete == part.complete);
  CHECK(back.frontier.vectors() == part.frontier.vectors());
  auto resumed = p.run(shard, &back);
  CHECK(resumed.frontier.vectors() == full.frontier.vectors());
  for (std::size_t i = 0; i < full.frontier.size(); ++i)
    CHECK(resumed.frontier.entries()[i].witness == full.frontier.entries()[i].witness);

  write_checkpoint(path, full);
  CHECK(read_checkpoint(path).complete);
  {
    std::FILE* out = std::fopen(path.c_str(), "w");
    std::fputs("shard 1\nbogus 3\n", out);
    std::fclose(out);
  }
  CHECK_THROWS_AS(read_checkpoint(path), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("statistics clauses on the published frontier") {
  auto rows = read_stat_csv(std::string(HJM_DATA_DIR) + "/pareto4d_published.csv");
  ParetoFrontier f(4);
  for (const auto& v : rows) f.insert(v, PointSet(Shape(4, 3)));
  CHECK(f.size() == rows.size());
  CHECK(check_stat_clauses(f).empty());

  ParetoFrontier bad(4);
  bad.insert(StatVector(4, {20, 10, 10, 2, 1}), PointSet(Shape(4, 3)));
  CHECK(check_stat_clauses(bad).size() >= 3);
}

TEST_CASE("heuristic search") {
  auto a = heuristic_max(2, 3, Predicate::kLineFree, 2000, 1);
  CHECK(a.set().size() == 6);
  auto b = heuristic_max(4, 3, Predicate::kMoser, 50000, 5);
  auto c = heuristic_max(4, 3, Predicate::kMoser, 50000, 5);
  CHECK(b.set() == c.set());
  CHECK(b.set().size() >= 40);
  CHECK(is_moser(b.set()));
  auto d = heuristic_max(3, 3, Predicate::kCapSet, 20000, 2);
  CHECK(satisfies(d.set(), Predicate::kCapSet));
  CHECK(d.set().size() == 9);
  if (kLong) {
    auto e = heuristic_max(6, 3, Predicate::kMoser, 10000000, 2);
    CHECK(e.set().size() >= 344);
    CHECK(is_moser(e.set()));
  }
}
