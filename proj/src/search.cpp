#include "hjm/search.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hjm/construct.hpp"
#include "hjm/rational_lp.hpp"

namespace hjm {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Mask low_bits(std::size_t n) { return n >= 128 ? ~Mask{0} : bit(n) - 1; }

// Cells with exactly i twos, for i = 0..n.
std::vector<Mask> sphere_masks(const Shape& sh) {
  std::vector<Mask> s(sh.n() + 1, 0);
  for (Index c = 0; c < sh.cells(); ++c) s[twos(sh, c)] |= bit(c);
  return s;
}

template <int W>
using Stats = std::array<std::int32_t, W>;

template <int W>
bool geq(const Stats<W>& a, const Stats<W>& b) {
  for (int i = 0; i < W; ++i)
    if (a[i] < b[i]) return false;
  return true;
}

// Frontier over fixed-width statistics with mask witnesses.
template <int W>
class MaskFrontier {
 public:
  struct Item {
    Stats<W> s;
    Mask w;
  };

  bool dominated(const Stats<W>& s) const {
    for (const auto& it : items_)
      if (geq<W>(it.s, s) && it.s != s) return true;
    return false;
  }

  bool insert(const Stats<W>& s, Mask w) {
    for (auto& it : items_) {
      if (it.s == s) {
        if (w < it.w) {
          it.w = w;
          return true;
        }
        return false;
      }
      if (geq<W>(it.s, s)) return false;
    }
    items_.erase(std::remove_if(items_.begin(), items_.end(),
                                [&](const Item& it) { return geq<W>(s, it.s); }),
                 items_.end());
    items_.push_back({s, w});
    return true;
  }

  const std::vector<Item>& items() const { return items_; }

  ParetoFrontier to_frontier(const Shape& sh) const {
    ParetoFrontier f(sh.n());
    for (const auto& it : items_) {
      std::vector<std::int64_t> a(it.s.begin(), it.s.end());
      f.insert(StatVector(sh.n(), a), mask_set(sh, it.w));
    }
    return f;
  }

 private:
  std::vector<Item> items_;
};

// Middle point of the line through u in the first slice and w in the third
// slice (both words of [3]^d), or -1 when there is none.
int slice_mid(const Shape& sh, Index u, Index w) {
  Index m = 0;
  for (int p = 0; p < sh.n(); ++p) {
    const int a = sh.letter(u, p), b = sh.letter(w, p);
    int v;
    if (a == b)
      v = a;
    else if (a + b == 4 && a != 2)
      v = 2;
    else
      return -1;
    m += static_cast<Index>(v - 1) * sh.place(p);
  }
  return static_cast<int>(m);
}

template <int W>
Stats<W> mask_stats(std::uint32_t m, const std::array<int, 27>& tw) {
  Stats<W> s{};
  for (; m; m &= m - 1) ++s[tw[__builtin_ctz(m)]];
  return s;
}

const std::array<int, 27>& twos27() {
  static const auto t = [] {
    std::array<int, 27> a{};
    const Shape sh(3, 3);
    for (Index c = 0; c < 27; ++c) a[c] = twos(sh, c);
    return a;
  }();
  return t;
}

const std::array<int, 27>& twos9() {
  static const auto t = [] {
    std::array<int, 27> a{};
    const Shape sh(2, 3);
    for (Index c = 0; c < 9; ++c) a[c] = twos(sh, c);
    return a;
  }();
  return t;
}

struct Moser2 {
  std::vector<std::uint32_t> sets;  // all 230, increasing
  std::vector<Stats<3>> stats;
  // Middle-slice frontier for every excluded set.
  std::array<std::vector<std::uint32_t>, 512> table_sets;
  std::array<std::vector<Stats<3>>, 512> table_stats;
  // ex[u][B] = middle cells excluded by u in slice 1 and B in slice 3.
  std::array<std::array<std::uint32_t, 512>, 9> ex;
};

const Moser2& moser2() {
  static const Moser2 data = [] {
    Moser2 d;
    enumerate_all(2, 3, Predicate::kMoser,
                  [&](Mask m) { d.sets.push_back(static_cast<std::uint32_t>(m)); });
    std::sort(d.sets.begin(), d.sets.end());
    for (auto m : d.sets) d.stats.push_back(mask_stats<3>(m, twos9()));
    for (std::uint32_t e = 0; e < 512; ++e) {
      MaskFrontier<3> f;
      for (std::size_t i = 0; i < d.sets.size(); ++i)
        if (!(d.sets[i] & e)) f.insert(d.stats[i], d.sets[i]);
      auto items = f.items();
      std::sort(items.begin(), items.end(),
                [](const auto& x, const auto& y) { return x.s > y.s; });
      for (const auto& it : items) {
        d.table_sets[e].push_back(static_cast<std::uint32_t>(it.w));
        d.table_stats[e].push_back(it.s);
      }
    }
    const Shape sh(2, 3);
    for (Index u = 0; u < 9; ++u)
      for (std::uint32_t b = 0; b < 512; ++b) {
        std::uint32_t e = 0;
        for (Index w = 0; w < 9; ++w) {
          if (!((b >> w) & 1)) continue;
          const int m = slice_mid(sh, u, w);
          if (m >= 0) e |= 1u << m;
        }
        d.ex[u][b] = e;
      }
    return d;
  }();
  return data;
}

MaskFrontier<4> frontier3_within(std::uint32_t allowed, bool symmetric) {
  const Moser2& d = moser2();
  const std::uint32_t u1 = allowed & 511, u2 = (allowed >> 9) & 511, u3 = (allowed >> 18) & 511;
  std::vector<std::size_t> l1, l3;
  for (std::size_t i = 0; i < d.sets.size(); ++i) {
    if (!(d.sets[i] & ~u1)) l1.push_back(i);
    if (!(d.sets[i] & ~u3)) l3.push_back(i);
  }
  MaskFrontier<4> f;
  for (std::size_t i : l1) {
    const std::uint32_t b1 = d.sets[i];
    for (std::size_t j : l3) {
      if (symmetric && j < i) continue;
      const std::uint32_t b3 = d.sets[j];
      std::uint32_t e = ~u2 & 511;
      for (std::uint32_t m = b1; m; m &= m - 1) e |= d.ex[__builtin_ctz(m)][b3];
      const auto& ts = d.table_stats[e];
      const auto& tw = d.table_sets[e];
      for (std::size_t t = 0; t < ts.size(); ++t) {
        const Stats<4> s{d.stats[i][0] + d.stats[j][0], d.stats[i][1] + d.stats[j][1] + ts[t][0],
                         d.stats[i][2] + d.stats[j][2] + ts[t][1], ts[t][2]};
        if (f.dominated(s)) continue;
        f.insert(s, Mask{b1} | (Mask{tw[t]} << 9) | (Mask{b3} << 18));
        if (symmetric && i != j) f.insert(s, Mask{b3} | (Mask{tw[t]} << 9) | (Mask{b1} << 18));
      }
    }
  }
  return f;
}

struct Moser3 {
  std::vector<std::uint32_t> sets;  // all 3813884, increasing
  std::array<std::vector<std::uint32_t>, 256> by_corners;
  std::array<int, 8> corner_cells{};
};

std::uint32_t corner_code(std::uint32_t m, const std::array<int, 8>& cells) {
  std::uint32_t c = 0;
  for (int i = 0; i < 8; ++i)
    if ((m >> cells[i]) & 1) c |= 1u << i;
  return c;
}

const Moser3& moser3() {
  static const Moser3 data = [] {
    Moser3 d;
    int j = 0;
    for (Index c = 0; c < 27; ++c)
      if (twos27()[c] == 0) d.corner_cells[j++] = static_cast<int>(c);
    d.sets.reserve(3813884);
    enumerate_all(3, 3, Predicate::kMoser,
                  [&](Mask m) { d.sets.push_back(static_cast<std::uint32_t>(m)); });
    std::sort(d.sets.begin(), d.sets.end());
    for (auto m : d.sets) d.by_corners[corner_code(m, d.corner_cells)].push_back(m);
    return d;
  }();
  return data;
}

using MidTable = std::array<std::array<int, 27>, 27>;

const MidTable& mid3() {
  static const MidTable t = [] {
    MidTable m{};
    const Shape sh(3, 3);
    for (Index u = 0; u < 27; ++u)
      for (Index w = 0; w < 27; ++w) m[u][w] = slice_mid(sh, u, w);
    return m;
  }();
  return t;
}

// Per third-slice cell w, the middle cells excluded together with a1.
std::array<std::uint32_t, 27> exclusion_rows(std::uint32_t a1) {
  const MidTable& mid = mid3();
  std::array<std::uint32_t, 27> rows{};
  for (int w = 0; w < 27; ++w)
    for (std::uint32_t m = a1; m; m &= m - 1) {
      const int v = mid[__builtin_ctz(m)][w];
      if (v >= 0) rows[w] |= 1u << v;
    }
  return rows;
}

std::uint32_t exclusion(const std::array<std::uint32_t, 27>& rows, std::uint32_t a3) {
  std::uint32_t e = 0;
  for (; a3; a3 &= a3 - 1) e |= rows[__builtin_ctz(a3)];
  return e;
}

CertKind cert_kind(Predicate p) {
  switch (p) {
    case Predicate::kLineFree:
      return CertKind::kLineFree;
    case Predicate::kMoser:
      return CertKind::kMoser;
    case Predicate::kCapSet:
      return CertKind::kCapSet;
  }
  return CertKind::kLineFree;
}

GroupKind group_for(Predicate p) {
  return p == Predicate::kLineFree ? GroupKind::kCombinatorial : GroupKind::kGeometric;
}

std::string stats_csv(const std::vector<std::int64_t>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

Mask to_mask(const PointSet& a) {
  require(a.shape().cells() <= 128, ErrorCode::kDimensionOverflow, "mask needs at most 128 cells");
  Mask m = 0;
  for (Index i : a.indices()) m |= bit(i);
  return m;
}

PointSet mask_set(const Shape& shape, Mask m) {
  require(shape.cells() <= 128, ErrorCode::kDimensionOverflow, "mask needs at most 128 cells");
  PointSet a(shape);
  for (Index i = 0; i < shape.cells(); ++i)
    if ((m >> i) & 1) a.insert(i);
  return a;
}

LineSystem::LineSystem(const Shape& shape, Predicate pred)
    : shape_(shape), pred_(pred), arity_(shape.k()), through_(shape.cells()) {
  if (pred == Predicate::kCapSet) {
    require(shape.k() == 3, ErrorCode::kInvalidArgument, "cap sets need k = 3");
    for (Index x = 0; x < shape.cells(); ++x)
      for (Index y = x + 1; y < shape.cells(); ++y) {
        Index z = 0;
        for (int p = 0; p < shape.n(); ++p) {
          const int s = (shape.letter(x, p) - 1 + shape.letter(y, p) - 1) % 3;
          z += static_cast<Index>((3 - s) % 3) * shape.place(p);
        }
        if (z > y) points_.insert(points_.end(), {x, y, z});
      }
  } else if (shape.n() > 0) {
    auto table = line_table(shape.n(), shape.k(),
                            pred == Predicate::kMoser ? LineKind::kGeometric : LineKind::kCombinatorial);
    for (std::size_t i = 0; i < table->size(); ++i)
      points_.insert(points_.end(), table->line(i), table->line(i) + arity_);
  }
  for (std::size_t i = 0; i < size(); ++i)
    for (int j = 0; j < arity_; ++j) through_[line(i)[j]].push_back(static_cast<std::uint32_t>(i));
}

Incidence::Incidence(const Shape& shape, Predicate pred) : shape_(shape), others_(shape.cells()) {
  require(shape.cells() <= 128, ErrorCode::kBudgetExceeded, "dense search needs k^n <= 128");
  LineSystem ls(shape, pred);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const Index* l = ls.line(i);
    for (int j = 0; j < ls.arity(); ++j) {
      Mask o = 0;
      for (int t = 0; t < ls.arity(); ++t)
        if (t != j) o |= bit(l[t]);
      others_[l[j]].push_back(o);
    }
  }
}

bool Incidence::closes(Mask set, std::size_t c) const {
  for (Mask o : others_[c])
    if ((o & set) == o) return true;
  return false;
}

Mask Incidence::blocked(Mask set) const {
  Mask b = 0;
  for (std::size_t c = 0; c < cells(); ++c)
    if (!((set >> c) & 1) && closes(set, c)) b |= bit(c);
  return b;
}

Mask Incidence::blocked_after(Mask set, Mask blocked, std::size_t c) const {
  const Mask s = set | bit(c);
  for (Mask o : others_[c]) {
    const Mask miss = o & ~s;
    if (miss && !(miss & (miss - 1))) blocked |= miss;
  }
  return blocked & ~s;
}

// ---------------------------------------------------------------------------

namespace {

struct Enumerator {
  const Incidence& inc;
  std::size_t n;
  const std::function<void(Mask)>& fn;
  std::uint64_t count = 0;

  void rec(std::size_t c, Mask set, Mask blk) {
    if (c == n) {
      ++count;
      if (fn) fn(set);
      return;
    }
    if (!((blk >> c) & 1)) rec(c + 1, set | bit(c), inc.blocked_after(set, blk, c));
    rec(c + 1, set, blk);
  }
};

// Hyperplanes of F_3^n as cell masks, three per direction.
std::vector<std::array<Mask, 3>> hyperplanes(const Shape& sh) {
  std::vector<std::array<Mask, 3>> out;
  const Index total = sh.cells();
  for (Index a = 1; a < total; ++a) {
    // One normal per direction: first nonzero digit equal to 1 (letter 2).
    int first = -1;
    for (int p = 0; p < sh.n() && first < 0; ++p)
      if (sh.letter(a, p) != 1) first = sh.letter(a, p);
    if (first != 2) continue;
    std::array<Mask, 3> h{};
    for (Index x = 0; x < total; ++x) {
      int dot = 0;
      for (int p = 0; p < sh.n(); ++p) dot += (sh.letter(a, p) - 1) * (sh.letter(x, p) - 1);
      h[dot % 3] |= bit(x);
    }
    out.push_back(h);
  }
  return out;
}

struct MaxSearch {
  const Incidence& inc;
  std::size_t n;
  bool all;
  int best = 0;
  std::vector<Mask> found{};
  std::uint64_t nodes = 0;
  // Optional cap on points per hyperplane.
  std::vector<std::array<Mask, 3>> planes{};
  int plane_cap = 0;

  int bound(Mask set, Mask avail) const {
    int b = popcount(set | avail);
    for (const auto& h : planes) {
      int t = 0;
      for (int j = 0; j < 3; ++j) t += std::min(plane_cap, popcount((set | avail) & h[j]));
      b = std::min(b, t);
    }
    return b;
  }

  void rec(std::size_t c, Mask set, Mask blk, int size) {
    ++nodes;
    const Mask avail = ~blk & ~set & low_bits(n) & ~low_bits(c);
    const int b = bound(set, avail);
    if (b < best || (!all && b == best && !found.empty())) return;
    if (c == n) {
      if (size > best) {
        best = size;
        found.clear();
      }
      if (all || found.empty()) found.push_back(set);
      return;
    }
    if (!((blk >> c) & 1)) rec(c + 1, set | bit(c), inc.blocked_after(set, blk, c), size + 1);
    rec(c + 1, set, blk, size);
  }
};

}  // namespace

std::uint64_t enumerate_all(int n, int k, Predicate pred, const std::function<void(Mask)>& fn) {
  Shape sh(n, k);
  Incidence inc(sh, pred);
  Enumerator e{inc, static_cast<std::size_t>(sh.cells()), fn};
  e.rec(0, 0, 0);
  return e.count;
}

MaxSetResult max_set(int n, int k, Predicate pred, bool all) {
  if (n == 4 && k == 3 && pred == Predicate::kMoser) return moser_max_4d();
  Shape sh(n, k);
  const bool cap4 = n == 4 && k == 3 && pred == Predicate::kCapSet;
  require(sh.cells() <= 64 || cap4, ErrorCode::kBudgetExceeded,
          "max_set: k^n too large for exhaustive search");
  Incidence inc(sh, pred);
  MaxSearch s{inc, static_cast<std::size_t>(sh.cells()), all && !cap4};
  Mask start = 0, blk = 0;
  if (cap4) {
    // Any cap with at least 10 points spans F_3^4 and so contains an affine
    // frame; map it to 1111, 2111, 1211, 1121, 1112.
    for (const char* w : {"1111", "2111", "1211", "1121", "1112"}) {
      const Index c = parse_word_index(sh, w);
      blk = inc.blocked_after(start, blk, c);
      start |= bit(c);
    }
    s.planes = hyperplanes(sh);
    s.plane_cap = 9;
    s.best = 10;
  }
  // Frame cells are already decided; walk the rest.
  struct Walk {
    MaxSearch& s;
    Mask fixed;
    void rec(std::size_t c, Mask set, Mask blk, int size) {
      if (c < s.n && ((fixed >> c) & 1)) return rec(c + 1, set, blk, size);
      ++s.nodes;
      const Mask avail = ~blk & ~set & low_bits(s.n) & ~low_bits(c);
      const int b = s.bound(set, avail);
      if (b < s.best || (!s.all && b == s.best && !s.found.empty())) return;
      if (c == s.n) {
        if (size > s.best) {
          s.best = size;
          s.found.clear();
        }
        if (s.all || s.found.empty()) s.found.push_back(set);
        return;
      }
      if (!((blk >> c) & 1))
        rec(c + 1, set | bit(c), s.inc.blocked_after(set, blk, c), size + 1);
      rec(c + 1, set, blk, size);
    }
  };
  if (cap4) {
    Walk{s, start}.rec(0, start, blk, popcount(start));
  } else {
    s.rec(0, 0, 0, 0);
  }
  MaxSetResult r;
  r.size = s.best;
  r.nodes = s.nodes;
  std::sort(s.found.begin(), s.found.end());
  std::set<PointSet> classes;
  for (Mask m : s.found) {
    PointSet a = mask_set(sh, m);
    if (sh.cells() <= 64) classes.insert(canonical_form(a, group_for(pred)));
    r.witnesses.push_back(std::move(a));
  }
  r.classes.assign(classes.begin(), classes.end());
  return r;
}

// ---------------------------------------------------------------------------

std::vector<StatVector> ParetoFrontier::vectors() const {
  std::vector<StatVector> v;
  for (const auto& e : entries_) v.push_back(e.stats);
  return v;
}

bool ParetoFrontier::dominated(const std::vector<std::int64_t>& a) const {
  StatVector v(n_, a);
  for (const auto& e : entries_)
    if (e.stats.dominates(v)) return true;
  return false;
}

bool ParetoFrontier::insert(const StatVector& v, const PointSet& witness) {
  require(v.n == n_, ErrorCode::kDimensionMismatch, "frontier dimension mismatch");
  for (auto& e : entries_) {
    if (e.stats == v) {
      if (witness < e.witness) {
        e.witness = witness;
        return true;
      }
      return false;
    }
    if (e.stats.dominates(v)) return false;
  }
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                [&](const Entry& e) { return v.dominates(e.stats); }),
                 entries_.end());
  auto pos = std::find_if(entries_.begin(), entries_.end(),
                          [&](const Entry& e) { return e.stats < v; });
  entries_.insert(pos, Entry{v, witness});
  return true;
}

void ParetoFrontier::merge(const ParetoFrontier& o) {
  for (const auto& e : o.entries()) insert(e.stats, e.witness);
}

std::vector<StatVector> ParetoFrontier::extremal() const {
  std::vector<StatVector> out;
  const std::size_t m = entries_.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (m == 1) {
      out.push_back(entries_[i].stats);
      break;
    }
    // Is v_i dominated by some sum_j l_j v_j with sum l_j = 1, j != i?
    RationalLP lp(m - 1);
    for (int t = 0; t <= n_; ++t) {
      std::vector<mpq_class> row;
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) row.emplace_back(static_cast<long>(entries_[j].stats.a[t]));
      lp.add(row, Sense::kGe, mpq_class(static_cast<long>(entries_[i].stats.a[t])));
    }
    lp.add(std::vector<mpq_class>(m - 1, 1), Sense::kEq, 1);
    if (!lp.maximise(std::vector<mpq_class>(m - 1, 0)).feasible) out.push_back(entries_[i].stats);
  }
  return out;
}

std::vector<std::string> ParetoFrontier::audit(Predicate pred) const {
  std::vector<std::string> bad;
  for (const auto& e : entries_) {
    if (!satisfies(e.witness, pred)) bad.push_back(e.stats.str() + ": witness violates predicate");
    if (!(statistics(e.witness) == e.stats)) bad.push_back(e.stats.str() + ": witness statistics");
  }
  return bad;
}

ParetoFrontier pareto(int n, Predicate pred) {
  require(n >= 0 && n <= 3, ErrorCode::kBudgetExceeded, "pareto needs n <= 3");
  Shape sh(n, 3);
  auto spheres = sphere_masks(sh);
  MaskFrontier<4> f;
  enumerate_all(n, 3, pred, [&](Mask m) {
    Stats<4> s{};
    for (int i = 0; i <= n; ++i) s[i] = popcount(m & spheres[i]);
    if (!f.dominated(s)) f.insert(s, m);
  });
  ParetoFrontier out(n);
  for (const auto& it : f.items()) {
    std::vector<std::int64_t> a(it.s.begin(), it.s.begin() + n + 1);
    out.insert(StatVector(n, a), mask_set(sh, it.w));
  }
  return out;
}

ParetoFrontier slice_search3() {
  return frontier3_within((1u << 27) - 1, true).to_frontier(Shape(3, 3));
}

std::vector<std::size_t> middle_frontier_sizes() {
  std::vector<std::size_t> s;
  for (const auto& t : moser2().table_stats) s.push_back(t.size());
  return s;
}

ParetoFrontier moser3_frontier_within(std::uint32_t allowed) {
  return frontier3_within(allowed & ((1u << 27) - 1), false).to_frontier(Shape(3, 3));
}

// ---------------------------------------------------------------------------

Pareto4Search::Pareto4Search() {
  PointSet corners = sphere_members(4, Parity::kAll, 4);
  reps_ = orbit_representatives(corners, GroupKind::kGeometric,
                                [](const PointSet& a) { return a.size() >= 3; });
}

std::vector<int> Pareto4Search::shards_with_corners(int a) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < reps_.size(); ++i)
    if (static_cast<int>(reps_[i].size()) >= a) out.push_back(static_cast<int>(i));
  return out;
}

ShardState Pareto4Search::run(int shard, const ShardState* resume,
                              const std::function<void(const ShardState&)>& checkpoint,
                              double every) const {
  require(shard >= 0 && static_cast<std::size_t>(shard) < reps_.size(),
          ErrorCode::kInvalidArgument, "shard id out of range");
  const Shape sh4(4, 3);
  const Moser3& d3 = moser3();
  const PointSet& rep = reps_[shard];

  // Corner codes of the first and third slices.
  std::uint32_t c1 = 0, c3 = 0;
  for (int i = 0; i < 8; ++i) {
    const Index cell = static_cast<Index>(d3.corner_cells[i]);
    if (rep.contains(cell)) c1 |= 1u << i;
    if (rep.contains(54 + cell)) c3 |= 1u << i;
  }
  const auto& l1 = d3.by_corners[c1];
  const auto& l3 = d3.by_corners[c3];

  ShardState st;
  st.shard = shard;
  st.total = l1.size();
  MaskFrontier<5> f;
  if (resume) {
    require(resume->shard == shard, ErrorCode::kInvalidArgument, "checkpoint is for another shard");
    st = *resume;
    for (const auto& e : resume->frontier.entries()) {
      Stats<5> s{};
      for (int i = 0; i < 5; ++i) s[i] = static_cast<std::int32_t>(e.stats.a[i]);
      f.insert(s, to_mask(e.witness));
    }
    if (st.complete) return st;
  }

  std::unordered_map<std::uint32_t, MaskFrontier<4>> memo;
  const auto start = Clock::now();
  auto last = start;
  const double base_seconds = st.seconds;
  auto snapshot = [&] {
    st.frontier = f.to_frontier(sh4);
    st.seconds = base_seconds + since(start);
  };

  for (std::uint64_t i = st.progress; i < l1.size(); ++i) {
    const std::uint32_t a1 = l1[i];
    const auto rows = exclusion_rows(a1);
    const Stats<4> s1 = mask_stats<4>(a1, twos27());
    for (std::uint32_t a3 : l3) {
      const std::uint32_t allowed = ~exclusion(rows, a3) & ((1u << 27) - 1);
      auto it = memo.find(allowed);
      if (it == memo.end()) {
        ++st.memo_misses;
        if (memo.size() > 400000) memo.clear();
        it = memo.emplace(allowed, frontier3_within(allowed, false)).first;
      } else {
        ++st.memo_hits;
      }
      const Stats<4> s3 = mask_stats<4>(a3, twos27());
      for (const auto& mid : it->second.items()) {
        const Stats<5> s{s1[0] + s3[0], s1[1] + s3[1] + mid.s[0], s1[2] + s3[2] + mid.s[1],
                         s1[3] + s3[3] + mid.s[2], mid.s[3]};
        if (f.dominated(s)) continue;
        f.insert(s, Mask{a1} | (mid.w << 27) | (Mask{a3} << 54));
      }
    }
    st.progress = i + 1;
    if (checkpoint && since(last) >= every) {
      snapshot();
      checkpoint(st);
      last = Clock::now();
    }
  }
  st.complete = true;
  snapshot();
  if (checkpoint) checkpoint(st);
  return st;
}

void write_checkpoint(const std::string& path, const ShardState& s) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::kInvalidArgument, "cannot write " + path);
  out << "shard " << s.shard << '\n';
  out << "status " << (s.complete ? "complete" : "partial") << '\n';
  out << "progress " << s.progress << ' ' << s.total << '\n';
  out << "memo " << s.memo_hits << ' ' << s.memo_misses << '\n';
  out << "seconds " << s.seconds << '\n';
  for (const auto& e : s.frontier.entries()) {
    out << "entry " << stats_csv(e.stats.a) << ' ';
    const auto w = e.witness.strings();
    for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << w[i];
    out << '\n';
  }
}

ShardState read_checkpoint(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kMalformedInput, "cannot open " + path);
  ShardState s;
  std::string line;
  const Shape sh(4, 3);
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "shard") {
      ls >> s.shard;
    } else if (key == "status") {
      std::string v;
      ls >> v;
      s.complete = v == "complete";
    } else if (key == "progress") {
      ls >> s.progress >> s.total;
    } else if (key == "memo") {
      ls >> s.memo_hits >> s.memo_misses;
    } else if (key == "seconds") {
      ls >> s.seconds;
    } else if (key == "entry") {
      std::string stats, words;
      ls >> stats >> words;
      std::vector<std::int64_t> a;
      std::stringstream ss(stats);
      for (std::string t; std::getline(ss, t, ',');) a.push_back(std::stoll(t));
      std::vector<std::string> w;
      std::stringstream ws(words);
      for (std::string t; std::getline(ws, t, ',');) w.push_back(t);
      require(a.size() == 5, ErrorCode::kMalformedInput, "checkpoint: bad entry");
      s.frontier.insert(StatVector(4, a), PointSet::from_strings(sh, w));
    } else if (!key.empty()) {
      throw Error(ErrorCode::kMalformedInput, "checkpoint: unknown key " + key);
    }
    require(!ls.fail(), ErrorCode::kMalformedInput, "checkpoint: bad line '" + line + "'");
  }
  require(s.shard >= 0, ErrorCode::kMalformedInput, "checkpoint: missing shard id");
  return s;
}

ParetoFrontier merge_shards(const std::vector<ShardState>& shards) {
  ParetoFrontier f(4);
  for (const auto& s : shards) f.merge(s.frontier);
  return f;
}

std::vector<StatVector> rows_from(const ParetoFrontier& f, int a) {
  std::vector<StatVector> out;
  for (const auto& e : f.entries())
    if (e.stats.a[0] >= a) out.push_back(e.stats);
  return out;
}

std::vector<std::string> check_stat_clauses(const ParetoFrontier& f) {
  std::vector<std::string> bad;
  for (const auto& e : f.entries()) {
    const auto& v = e.stats.a;
    const std::int64_t t = e.stats.total();
    auto clause = [&](const char* name, bool premise, bool concl) {
      if (premise && !concl) bad.push_back(std::string(name) + " fails at " + e.stats.str());
    };
    clause("(i)", t >= 40, v[4] == 0);
    clause("(ii)", t >= 43, v[3] == 0);
    clause("(iii)", t >= 42, v[3] <= 2);
    clause("(iv)", t >= 41, v[3] <= 3);
    clause("(v)", t >= 40, v[3] <= 6);
    clause("(vi)", t >= 43, v[2] >= 18);
    clause("(vii)", t >= 42, v[2] >= 12);
    clause("(viii)", t >= 43, v[1] >= 15);
  }
  return bad;
}

// ---------------------------------------------------------------------------

MaxSetResult moser_max_4d() {
  const Moser3& d3 = moser3();
  // g[U] = size of the largest Moser subset of U.
  std::vector<std::uint8_t> g(std::size_t{1} << 27, 0);
  for (auto m : d3.sets) g[m] = static_cast<std::uint8_t>(__builtin_popcount(m));
  for (int b = 0; b < 27; ++b) {
    const std::uint32_t step = 1u << b;
    for (std::uint32_t hi = 0; hi < (1u << 27); hi += 2 * step)
      for (std::uint32_t u = hi + step; u < hi + 2 * step; ++u)
        g[u] = std::max(g[u], g[u ^ step]);
  }

  const Shape sh3(3, 3);
  MaskAction act(sh3, group_elements(GroupKind::kGeometric, 3, 3));
  std::vector<std::uint32_t> by_size(d3.sets);
  std::stable_sort(by_size.begin(), by_size.end(), [](std::uint32_t x, std::uint32_t y) {
    return __builtin_popcount(x) > __builtin_popcount(y);
  });

  MaxSetResult r;
  int best = 0;
  std::uint32_t b1 = 0, b3 = 0;
  for (std::uint32_t a1 : by_size) {
    const int s1 = __builtin_popcount(a1);
    if (2 * s1 + 16 <= best) break;
    if (!act.is_canonical(a1)) continue;
    const auto rows = exclusion_rows(a1);
    for (std::uint32_t a3 : by_size) {
      const int s3 = __builtin_popcount(a3);
      if (s3 > s1) continue;
      if (s1 + s3 + 16 <= best) break;
      ++r.nodes;
      const std::uint32_t allowed = ~exclusion(rows, a3) & ((1u << 27) - 1);
      const int v = s1 + s3 + g[allowed];
      if (v > best) {
        best = v;
        b1 = a1;
        b3 = a3;
      }
    }
  }
  // Rebuild a middle slice for the witness.
  const std::uint32_t allowed = ~exclusion(exclusion_rows(b1), b3) & ((1u << 27) - 1);
  std::uint32_t mid = 0;
  for (auto m : d3.sets)
    if (!(m & ~allowed) && __builtin_popcount(m) == g[allowed]) {
      mid = m;
      break;
    }
  r.size = best;
  PointSet w = mask_set(Shape(4, 3), Mask{b1} | (Mask{mid} << 27) | (Mask{b3} << 54));
  require(is_moser(w) && static_cast<int>(w.size()) == best, ErrorCode::kInternal,
          "moser_max_4d: witness failed");
  r.classes.push_back(canonical_form(w, GroupKind::kGeometric));
  r.witnesses.push_back(std::move(w));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct StatFill {
  const Incidence& inc;
  std::vector<std::size_t> order{};// cells to decide, grouped by sphere
  std::vector<int> sphere_of{};    // twos per cell
  std::vector<Mask> spheres{};
  std::vector<Mask> rest{};        // cells of order[pos..]
  const std::function<void(Mask)>* fn = nullptr;
  std::uint64_t count = 0;

  void rec(std::size_t pos, Mask set, Mask blk, std::array<int, 5>& need) {
    bool done = true;
    for (std::size_t j = 1; j < spheres.size(); ++j) {
      if (need[j] == 0) continue;
      done = false;
      if (popcount(spheres[j] & rest[pos] & ~blk) < need[j]) return;
    }
    if (done) {
      ++count;
      if (fn && *fn) (*fn)(set);
      return;
    }
    const std::size_t c = order[pos];
    const int j = sphere_of[c];
    if (need[j] > 0 && !((blk >> c) & 1)) {
      --need[j];
      rec(pos + 1, set | bit(c), inc.blocked_after(set, blk, c), need);
      ++need[j];
    }
    rec(pos + 1, set, blk, need);
  }
};

void fill_with_statistics(const Shape& sh, const std::vector<std::int64_t>& t, Mask corners,
                          const Incidence& inc, StatFill& f) {
  f.spheres = sphere_masks(sh);
  f.sphere_of.resize(sh.cells());
  for (Index c = 0; c < sh.cells(); ++c) f.sphere_of[c] = twos(sh, c);
  for (int j = sh.n(); j >= 1; --j)
    for (Index c = 0; c < sh.cells(); ++c)
      if (f.sphere_of[c] == j) f.order.push_back(c);
  f.rest.assign(f.order.size() + 1, 0);
  for (std::size_t p = f.order.size(); p-- > 0;) f.rest[p] = f.rest[p + 1] | bit(f.order[p]);
  std::array<int, 5> need{};
  for (int j = 1; j <= sh.n(); ++j) need[j] = static_cast<int>(t[j]);
  if (inc.blocked(0) & corners) return;
  Mask blk = inc.blocked(corners);
  for (Mask m = corners; m;) {
    // Corners must not complete lines among themselves.
    std::size_t c = 0;
    while (!((m >> c) & 1)) ++c;
    m &= ~bit(c);
    if (inc.closes(corners & ~bit(c), c)) return;
  }
  f.rec(0, corners, blk, need);
}

std::vector<std::int64_t> checked_stats(const StatVector& stats) {
  const int n = stats.n;
  require(n >= 0 && n <= 4 && static_cast<int>(stats.a.size()) == n + 1,
          ErrorCode::kInvalidArgument, "count_by_statistics needs n <= 4");
  return stats.a;
}

bool stats_in_range(int n, const std::vector<std::int64_t>& t) {
  for (int i = 0; i <= n; ++i)
    if (t[i] < 0 || mpz_class(t[i]) > StatVector::capacity(n, i)) return false;
  return true;
}

}  // namespace

std::uint64_t count_by_statistics(const StatVector& stats) {
  const auto t = checked_stats(stats);
  const int n = stats.n;
  if (!stats_in_range(n, t)) return 0;
  if (n <= 3) {
    const Shape sh(n, 3);
    auto spheres = sphere_masks(sh);
    std::uint64_t count = 0;
    enumerate_all(n, 3, Predicate::kMoser, [&](Mask m) {
      for (int i = 0; i <= n; ++i)
        if (popcount(m & spheres[i]) != t[i]) return;
      ++count;
    });
    return count;
  }
  const Shape sh(4, 3);
  Incidence inc(sh, Predicate::kMoser);
  const PointSet corners = sphere_members(4, Parity::kAll, 4);
  const auto reps = orbit_representatives(corners, GroupKind::kGeometric, [&](const PointSet& a) {
    return static_cast<std::int64_t>(a.size()) == t[0];
  });
  const std::uint64_t order = group_order(GroupKind::kGeometric, 4, 3);
  std::uint64_t total = 0;
  for (const auto& rep : reps) {
    StatFill f{inc};
    fill_with_statistics(sh, t, to_mask(rep), inc, f);
    total += f.count * (order / stabiliser_order(rep, GroupKind::kGeometric));
  }
  return total;
}

void for_each_with_statistics(const StatVector& stats,
                              const std::function<void(const PointSet&)>& fn) {
  const auto t = checked_stats(stats);
  require(stats.n == 4, ErrorCode::kInvalidArgument, "for_each_with_statistics needs n = 4");
  if (!stats_in_range(4, t)) return;
  const Shape sh(4, 3);
  Incidence inc(sh, Predicate::kMoser);
  const PointSet corners = sphere_members(4, Parity::kAll, 4);
  const auto reps = orbit_representatives(corners, GroupKind::kGeometric, [&](const PointSet& a) {
    return static_cast<std::int64_t>(a.size()) == t[0];
  });
  const auto group = group_elements(GroupKind::kGeometric, 4, 3);
  std::set<PointSet> all;
  const std::function<void(Mask)> collect = [&](Mask m) {
    PointSet a = mask_set(sh, m);
    for (const auto& g : group) all.insert(apply_set(g, a));
  };
  for (const auto& rep : reps) {
    StatFill f{inc};
    f.fn = &collect;
    fill_with_statistics(sh, t, to_mask(rep), inc, f);
  }
  for (const auto& a : all) fn(a);
}

GoodSetReport good_set_classify() {
  GoodSetReport r;
  for_each_with_statistics(StatVector(4, {6, 12, 18, 4, 0}), [&](const PointSet& a) {
    r.sets.push_back(a);
  });
  r.all_match = true;
  std::set<PointSet> classes;
  const Shape sh(4, 3);
  for (const auto& a : r.sets) {
    std::array<int, 4> type{0, 0, 0, 0};
    for (Index c : a.indices()) {
      if (twos(sh, c) != 3) continue;
      for (int p = 0; p < 4; ++p)
        if (sh.letter(c, p) != 2) type[p] = type[p] ? -1 : sh.letter(c, p);
    }
    bool typed = true;
    for (int v : type) typed = typed && v > 0;
    r.types.push_back(type);
    if (!typed || !(good_set(type[0], type[1], type[2], type[3]) == a)) r.all_match = false;
    classes.insert(canonical_form(a, GroupKind::kGeometric));
  }
  r.classes = classes.size();
  return r;
}

OrbitCensus moser3_census() {
  const Moser3& d3 = moser3();
  const Shape sh(3, 3);
  MaskAction act(sh, group_elements(GroupKind::kGeometric, 3, 3));
  OrbitCensus c;
  c.sets = d3.sets.size();
  for (auto m : d3.sets) {
    std::size_t stab = 0;
    if (act.is_canonical(m, &stab)) {
      ++c.classes;
      ++c.histogram[act.order() / stab];
    }
  }
  return c;
}

// ---------------------------------------------------------------------------

Certificate heuristic_max(int n, int k, Predicate pred, std::uint64_t budget, std::uint64_t seed) {
  const Shape sh(n, k);
  require(sh.cells() <= (Index{1} << 20), ErrorCode::kBudgetExceeded, "heuristic_max: cube too large");
  LineSystem ls(sh, pred);
  const std::size_t cells = sh.cells();
  const int ar = ls.arity();
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t m) { return static_cast<std::size_t>(rng() % m); };

  std::vector<char> in(cells, 0);
  std::vector<int> cnt(ls.size(), 0);
  std::vector<int> block(cells, 0);
  std::size_t size = 0;

  auto missing = [&](std::size_t l) {
    const Index* p = ls.line(l);
    for (int j = 0; j < ar; ++j)
      if (!in[p[j]]) return static_cast<std::size_t>(p[j]);
    return cells;
  };
  auto add = [&](std::size_t c) {
    in[c] = 1;
    ++size;
    for (auto l : ls.through(c)) {
      if (++cnt[l] == ar - 1) {
        const std::size_t m = missing(l);
        if (m < cells) ++block[m];
      }
    }
  };
  auto remove = [&](std::size_t c) {
    for (auto l : ls.through(c)) {
      if (cnt[l] == ar - 1) {
        const std::size_t m = missing(l);
        if (m < cells) --block[m];
      }
      if (--cnt[l] == ar - 1) ++block[c];
    }
    in[c] = 0;
    --size;
  };
  auto fill = [&](std::vector<std::size_t> cand) {
    for (std::size_t i = cand.size(); i > 1; --i) std::swap(cand[i - 1], cand[pick(i)]);
    for (auto c : cand)
      if (!in[c] && block[c] == 0) add(c);
  };

  // Lines with all points but one present count towards the missing cell, so
  // a cell with block == 0 can be added.
  std::vector<std::size_t> all(cells);
  for (std::size_t i = 0; i < cells; ++i) all[i] = i;
  if (ar == 1) {
    // Every single point is a line; only the empty set qualifies.
  } else {
    fill(all);
  }
  std::vector<char> best = in;
  std::size_t best_size = size;
  const std::uint64_t stall = 1000 * static_cast<std::uint64_t>(cells);
  std::uint64_t last_gain = 0;

  for (std::uint64_t it = 0; it < budget && ar > 1; ++it) {
    if (it - last_gain > stall) {
      // Restart from scratch; the best set is kept aside.
      for (std::size_t c = 0; c < cells; ++c)
        if (in[c]) remove(c);
      fill(all);
      last_gain = it;
    }
    const std::size_t p = pick(cells);
    if (in[p]) continue;
    if (block[p] == 0) {
      add(p);
    } else {
      std::vector<std::size_t> out;
      for (auto l : ls.through(p)) {
        if (cnt[l] != ar - 1) continue;
        const Index* q = ls.line(l);
        bool covered = false;
        for (int j = 0; j < ar; ++j)
          covered = covered || std::find(out.begin(), out.end(), q[j]) != out.end();
        if (covered) continue;
        std::vector<std::size_t> mem;
        for (int j = 0; j < ar; ++j)
          if (q[j] != p) mem.push_back(q[j]);
        out.push_back(mem[pick(mem.size())]);
      }
      if (out.size() > 2 || (out.size() == 2 && pick(1000) >= 15)) continue;
      for (auto c : out) remove(c);
      add(p);
      std::vector<std::size_t> near;
      for (auto c : out)
        for (auto l : ls.through(c)) {
          const Index* q = ls.line(l);
          for (int j = 0; j < ar; ++j)
            if (!in[q[j]]) near.push_back(q[j]);
        }
      fill(near);
    }
    if (size > best_size) {
      best_size = size;
      best = in;
      last_gain = it;
    }
  }

  PointSet a(sh);
  for (std::size_t c = 0; c < cells; ++c)
    if (best[c]) a.insert(c);
  require(satisfies(a, pred), ErrorCode::kInternal, "heuristic_max produced an invalid set");
  return make_certificate(a, cert_kind(pred), {"heuristic_max", seed, "1.0"});
}

}  // namespace hjm
