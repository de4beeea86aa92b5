#include "hjm/optimize.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <numeric>

namespace hjm {

namespace {

using Clock = std::chrono::steady_clock;

template <int W>
struct Bits {
  std::uint64_t w[W] = {};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1u; }
  bool any() const {
    for (int j = 0; j < W; ++j)
      if (w[j]) return true;
    return false;
  }
  int first() const {
    for (int j = 0; j < W; ++j)
      if (w[j]) return j * 64 + std::countr_zero(w[j]);
    return -1;
  }
  bool intersects(const Bits& o) const {
    for (int j = 0; j < W; ++j)
      if (w[j] & o.w[j]) return true;
    return false;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    for (int j = 0; j < W; ++j) r.w[j] = w[j] & o.w[j];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r;
    for (int j = 0; j < W; ++j) r.w[j] = w[j] | o.w[j];
    return r;
  }
  Bits minus(const Bits& o) const {
    Bits r;
    for (int j = 0; j < W; ++j) r.w[j] = w[j] & ~o.w[j];
    return r;
  }
};

struct Deadline {
  double limit = 0;
  Clock::time_point start = Clock::now();
  bool hit = false;
  std::uint64_t ticks = 0;
  bool expired() {
    if (limit <= 0 || hit) return hit;
    if ((++ticks & 0x3ff) == 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() > limit)
      hit = true;
    return hit;
  }
};

// Maximum weight vertex set containing no hyperedge entirely.
template <int W>
class HyperSolver {
 public:
  HyperSolver(std::vector<std::uint64_t> weight,
              std::vector<std::vector<int>> edges, const OptOptions& opt)
      : weight_(std::move(weight)), edges_(std::move(edges)), opt_(opt) {
    dl_.limit = opt.time_limit;
    const int v = static_cast<int>(weight_.size());
    inc_.resize(v);
    std::vector<std::size_t> order(edges_.size());
    std::iota(order.begin(), order.end(), 0);
    auto minw = [&](const std::vector<int>& e) {
      std::uint64_t m = UINT64_MAX;
      for (int x : e) m = std::min(m, weight_[x]);
      return m;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return minw(edges_[a]) > minw(edges_[b]);
    });
    std::vector<std::vector<int>> sorted;
    for (std::size_t i : order) sorted.push_back(edges_[i]);
    edges_ = std::move(sorted);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      Bits<W> m;
      for (int x : edges_[e]) {
        m.set(x);
        inc_[x].push_back(static_cast<int>(e));
      }
      mask_.push_back(m);
    }
  }

  void run() {
    Bits<W> chosen, free;
    std::uint64_t fw = 0;
    for (int i = 0; i < static_cast<int>(weight_.size()); ++i) {
      free.set(i);
      fw += weight_[i];
    }
    root_bound_ = bound(chosen, free, 0, fw);
    dfs(chosen, free, 0, fw);
  }

  bool exact() const { return !dl_.hit; }
  bool found() const { return found_; }
  std::uint64_t best() const { return best_; }
  std::uint64_t root_bound() const { return root_bound_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<std::vector<int>>& optima() const { return optima_; }

 private:
  std::uint64_t bound(const Bits<W>& chosen, const Bits<W>& free,
                      std::uint64_t cur, std::uint64_t fw) const {
    Bits<W> decided_in = chosen | free, used;
    std::uint64_t red = 0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Bits<W>& m = mask_[e];
      if (m.minus(decided_in).any()) continue;
      Bits<W> f = m & free;
      if (f.intersects(used)) continue;
      std::uint64_t lo = UINT64_MAX;
      int cnt = 0;
      for (int x : edges_[e])
        if (free.test(x)) {
          lo = std::min(lo, weight_[x]);
          ++cnt;
        }
      if (cnt < 2) continue;
      red += lo;
      used = used | f;
    }
    return cur + fw - red;
  }

  void record(const Bits<W>& chosen, std::uint64_t cur) {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(weight_.size()); ++i)
      if (chosen.test(i)) s.push_back(i);
    if (!found_ || cur > best_) {
      found_ = true;
      best_ = cur;
      optima_.clear();
      optima_.push_back(std::move(s));
    } else if (cur == best_ && opt_.all_optima) {
      optima_.push_back(std::move(s));
    }
  }

  void dfs(Bits<W> chosen, Bits<W> free, std::uint64_t cur, std::uint64_t fw) {
    ++nodes_;
    if (dl_.expired()) return;
    if (!free.any()) {
      record(chosen, cur);
      return;
    }
    if (found_) {
      std::uint64_t b = bound(chosen, free, cur, fw);
      if (b < best_ || (b == best_ && !opt_.all_optima)) return;
    }
    const int v = free.first();
    {
      Bits<W> c = chosen, f = free;
      c.set(v);
      f.reset(v);
      std::uint64_t nfw = fw - weight_[v];
      bool ok = true;
      for (int e : inc_[v]) {
        Bits<W> missing = mask_[e].minus(c);
        int x = missing.first();
        if (x < 0) {
          ok = false;
          break;
        }
        missing.reset(x);
        if (!missing.any() && f.test(x)) {
          f.reset(x);
          nfw -= weight_[x];
        }
      }
      if (ok) dfs(c, f, cur + weight_[v], nfw);
    }
    free.reset(v);
    dfs(chosen, free, cur, fw - weight_[v]);
  }

  std::vector<std::uint64_t> weight_;
  std::vector<std::vector<int>> edges_;
  std::vector<Bits<W>> mask_;
  std::vector<std::vector<int>> inc_;
  OptOptions opt_;
  Deadline dl_;
  bool found_ = false;
  std::uint64_t best_ = 0, root_bound_ = 0, nodes_ = 0;
  std::vector<std::vector<int>> optima_;
};

struct HyperResult {
  std::uint64_t best = 0, bound = 0, nodes = 0;
  bool exact = true;
  std::vector<std::vector<int>> optima;
};

template <int W>
HyperResult solve_w(const std::vector<std::uint64_t>& weight,
                    const std::vector<std::vector<int>>& edges,
                    const OptOptions& opt) {
  HyperSolver<W> s(weight, edges, opt);
  s.run();
  return {s.best(), s.exact() ? s.best() : s.root_bound(), s.nodes(),
          s.exact(), s.optima()};
}

HyperResult solve_hyper(const std::vector<std::uint64_t>& weight,
                        const std::vector<std::vector<int>>& edges,
                        const OptOptions& opt) {
  const std::size_t v = weight.size();
  if (v <= 64) return solve_w<1>(weight, edges, opt);
  if (v <= 128) return solve_w<2>(weight, edges, opt);
  if (v <= 256) return solve_w<4>(weight, edges, opt);
  throw Error(ErrorCode::kBudgetExceeded, "simplex too large for the solver");
}

std::uint64_t weight_u64(const SimplexPoint& p) {
  mpz_class w = cell_size(p);
  require(w.fits_ulong_p(), ErrorCode::kDimensionOverflow,
          "cell weight exceeds 64 bits");
  return w.get_ui();
}

// Points of Delta_{n,3} in branching order.
std::vector<SimplexPoint> ordered_points(int n, PointOrder order) {
  auto pts = simplex_points(n, 3);
  switch (order) {
    case PointOrder::kWeightDesc:
      std::stable_sort(pts.begin(), pts.end(),
                       [](const SimplexPoint& a, const SimplexPoint& b) {
                         return cell_size(a) > cell_size(b);
                       });
      break;
    case PointOrder::kLex:
      break;
    case PointOrder::kLexDesc:
      std::reverse(pts.begin(), pts.end());
      break;
  }
  return pts;
}

SimplexSet to_set(const std::vector<SimplexPoint>& pts,
                  const std::vector<int>& chosen) {
  SimplexSet s;
  for (int i : chosen) s.push_back(pts[i]);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

std::vector<SimplexSet> fujimura_triangles(int n) {
  std::vector<SimplexSet> out;
  for (int r = 1; r <= n; ++r)
    for (const auto& b : simplex_points(n - r, 3))
      out.push_back({SimplexPoint{b[0] + r, b[1], b[2]},
                     SimplexPoint{b[0], b[1] + r, b[2]},
                     SimplexPoint{b[0], b[1], b[2] + r}});
  return out;
}

std::vector<SimplexSet> isosceles_triples(int n) {
  std::vector<SimplexSet> out;
  for (const auto& top : simplex_points(n, 3))
    for (int u = 1; u <= top[1]; ++u)
      for (int r = 0; 2 * r <= u; ++r) {
        int s = u - r;
        SimplexPoint p1{top[0] + r, top[1] - u, top[2] + s};
        SimplexPoint p2{top[0] + s, top[1] - u, top[2] + r};
        if (r == s)
          out.push_back({p1, top});
        else
          out.push_back({p1, p2, top});
      }
  return out;
}

SimplexOptResult max_fujimura(int n, const OptOptions& opt) {
  require(n >= 0 && n <= 30, ErrorCode::kInvalidArgument,
          "max_fujimura supports 0 <= n <= 30");
  auto pts = ordered_points(n, opt.order);
  std::map<SimplexPoint, int> pos;
  std::vector<std::uint64_t> w;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pos[pts[i]] = static_cast<int>(i);
    w.push_back(weight_u64(pts[i]));
  }
  std::vector<std::vector<int>> edges;
  for (const auto& t : fujimura_triangles(n)) {
    std::vector<int> e;
    for (const auto& p : t) e.push_back(pos.at(p));
    edges.push_back(e);
  }
  HyperResult h = solve_hyper(w, edges, opt);
  SimplexOptResult r;
  r.weight = static_cast<unsigned long>(h.best);
  r.upper_bound = static_cast<unsigned long>(h.bound);
  r.exact = h.exact;
  r.nodes = h.nodes;
  for (const auto& o : h.optima) r.optima.push_back(to_set(pts, o));
  std::sort(r.optima.begin(), r.optima.end());
  if (!r.optima.empty()) r.best = r.optima.front();
  return r;
}

// ---------------------------------------------------------------------------
// Isosceles-free sets hold at most one point per diagonal c - a = h, so the
// search assigns each diagonal a point or nothing.

namespace {

template <int W>
class DiagonalSolver {
 public:
  DiagonalSolver(int n, const OptOptions& opt) : opt_(opt) {
    dl_.limit = opt.time_limit;
    pts_ = simplex_points(n, 3);
    std::map<SimplexPoint, int> pos;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      pos[pts_[i]] = static_cast<int>(i);
      w_.push_back(weight_u64(pts_[i]));
    }
    std::vector<int> hs;
    for (int h = 0; h <= n; ++h) {
      hs.push_back(h);
      if (h) hs.push_back(-h);
    }
    if (opt.order == PointOrder::kLexDesc) std::reverse(hs.begin(), hs.end());
    if (opt.order == PointOrder::kLex) std::sort(hs.begin(), hs.end());
    for (int h : hs) {
      std::vector<int> d;
      for (std::size_t i = 0; i < pts_.size(); ++i)
        if (pts_[i][2] - pts_[i][0] == h) d.push_back(static_cast<int>(i));
      std::stable_sort(d.begin(), d.end(),
                       [&](int a, int b) { return w_[a] > w_[b]; });
      diags_.push_back(d);
    }
    partner_.resize(pts_.size());
    for (const auto& t : isosceles_triples(n)) {
      if (t.size() != 3) continue;
      int a = pos.at(t[0]), b = pos.at(t[1]), c = pos.at(t[2]);
      partner_[a].push_back({b, c});
      partner_[b].push_back({a, c});
      partner_[c].push_back({a, b});
    }
  }

  void run() {
    Bits<W> chosen, excluded;
    root_bound_ = bound(0, excluded, 0);
    dfs(0, chosen, excluded, 0);
  }

  const std::vector<SimplexPoint>& points() const { return pts_; }
  bool exact() const { return !dl_.hit; }
  std::uint64_t best() const { return best_; }
  std::uint64_t root_bound() const { return root_bound_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<std::vector<int>>& optima() const { return optima_; }

 private:
  std::uint64_t bound(std::size_t level, const Bits<W>& excluded,
                      std::uint64_t cur) const {
    std::uint64_t b = cur;
    for (std::size_t l = level; l < diags_.size(); ++l)
      for (int p : diags_[l])
        if (!excluded.test(p)) {
          b += w_[p];
          break;
        }
    return b;
  }

  void dfs(std::size_t level, const Bits<W>& chosen, const Bits<W>& excluded,
           std::uint64_t cur) {
    ++nodes_;
    if (dl_.expired()) return;
    if (level == diags_.size()) {
      std::vector<int> s;
      for (std::size_t i = 0; i < pts_.size(); ++i)
        if (chosen.test(static_cast<int>(i))) s.push_back(static_cast<int>(i));
      if (!found_ || cur > best_) {
        found_ = true;
        best_ = cur;
        optima_.assign(1, s);
      } else if (cur == best_ && opt_.all_optima) {
        optima_.push_back(s);
      }
      return;
    }
    if (found_) {
      std::uint64_t b = bound(level, excluded, cur);
      if (b < best_ || (b == best_ && !opt_.all_optima)) return;
    }
    for (int p : diags_[level]) {
      if (excluded.test(p)) continue;
      Bits<W> c = chosen, x = excluded;
      c.set(p);
      for (const auto& [q, r] : partner_[p]) {
        if (c.test(q)) x.set(r);
        if (c.test(r)) x.set(q);
      }
      dfs(level + 1, c, x, cur + w_[p]);
    }
    dfs(level + 1, chosen, excluded, cur);
  }

  OptOptions opt_;
  Deadline dl_;
  std::vector<SimplexPoint> pts_;
  std::vector<std::uint64_t> w_;
  std::vector<std::vector<int>> diags_;
  std::vector<std::vector<std::pair<int, int>>> partner_;
  bool found_ = false;
  std::uint64_t best_ = 0, root_bound_ = 0, nodes_ = 0;
  std::vector<std::vector<int>> optima_;
};

template <int W>
SimplexOptResult moser_b_w(int n, const OptOptions& opt) {
  DiagonalSolver<W> s(n, opt);
  s.run();
  SimplexOptResult r;
  r.weight = static_cast<unsigned long>(s.best());
  r.exact = s.exact();
  r.upper_bound = static_cast<unsigned long>(s.exact() ? s.best() : s.root_bound());
  r.nodes = s.nodes();
  for (const auto& o : s.optima()) r.optima.push_back(to_set(s.points(), o));
  std::sort(r.optima.begin(), r.optima.end());
  if (!r.optima.empty()) r.best = r.optima.front();
  return r;
}

}  // namespace

SimplexOptResult max_moser_b(int n, const OptOptions& opt) {
  require(n >= 0 && n <= 30, ErrorCode::kInvalidArgument,
          "max_moser_b supports 0 <= n <= 30");
  const std::size_t v = static_cast<std::size_t>(n + 1) * (n + 2) / 2;
  if (v <= 64) return moser_b_w<1>(n, opt);
  if (v <= 128) return moser_b_w<2>(n, opt);
  if (v <= 256) return moser_b_w<4>(n, opt);
  return moser_b_w<8>(n, opt);
}

mpz_class props_upper_bound(int n) {
  std::map<int, mpz_class> best;
  for (const auto& p : simplex_points(n, 3)) {
    mpz_class w = cell_size(p);
    auto& b = best[p[2] - p[0]];
    if (w > b) b = w;
  }
  mpz_class t = 0;
  for (const auto& [h, w] : best) t += w;
  return t;
}

std::int64_t fujimura_max_general(int n, int k) {
  require(n >= 0 && k >= 1, ErrorCode::kInvalidArgument, "bad simplex size");
  auto pts = simplex_points(n, k);
  require(pts.size() <= 256, ErrorCode::kBudgetExceeded,
          "Delta_{n,k} too large for exhaustive search");
  std::map<std::vector<int>, int> pos;
  for (std::size_t i = 0; i < pts.size(); ++i)
    pos[pts[i].coords()] = static_cast<int>(i);
  std::vector<std::vector<int>> edges;
  for (int r = 1; r <= n; ++r)
    for (const auto& b : simplex_points(n - r, k)) {
      std::vector<int> e;
      for (int i = 0; i < k; ++i) {
        std::vector<int> q = b.coords();
        q[i] += r;
        e.push_back(pos.at(q));
      }
      edges.push_back(e);
    }
  std::vector<std::uint64_t> w(pts.size(), 1);
  return static_cast<std::int64_t>(solve_hyper(w, edges, {}).best);
}

}  // namespace hjm
