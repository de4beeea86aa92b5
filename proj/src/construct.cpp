#include "hjm/construct.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

#include "hjm/optimize.hpp"

namespace hjm {

namespace {

SimplexSet sorted(SimplexSet b) {
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

SimplexSet without(const SimplexSet& b, const std::set<SimplexPoint>& drop) {
  SimplexSet out;
  for (const auto& p : b)
    if (!drop.count(p)) out.push_back(p);
  return out;
}

// Union of whole cells of [3]^n, skipping the enumeration of the cube.
PointSet cells_union(int n, const std::vector<SimplexPoint>& cells) {
  return gamma_union(cells, n, 3);
}

PointSet words(int n, std::initializer_list<const char*> w) {
  std::vector<std::string> v(w.begin(), w.end());
  return PointSet::from_strings(Shape(n, 3), v);
}

// Index of the word over [k]^n from letter counts per position.
Index index_of(const Shape& sh, const std::vector<int>& letters) {
  Index idx = 0;
  for (int x : letters) idx = idx * sh.k() + static_cast<Index>(x - 1);
  return idx;
}

}  // namespace

// ---------------------------------------------------------------------------

SimplexSet b_jn(int j, int n) {
  require(j >= 0 && j <= 2, ErrorCode::kInvalidArgument, "j must be 0, 1 or 2");
  require(n >= 0, ErrorCode::kInvalidArgument, "n must be nonnegative");
  SimplexSet out;
  for (const auto& p : simplex_points(n, 3))
    if ((p[0] + 2 * p[1]) % 3 != j) out.push_back(p);
  return out;
}

SimplexSet trimmed_b0(int n) {
  std::set<SimplexPoint> drop;
  switch (n) {
    case 4:
      drop = {{0, 0, 4}, {0, 4, 0}, {4, 0, 0}};
      break;
    case 5:
      drop = {{0, 4, 1}, {0, 5, 0}, {4, 0, 1}, {5, 0, 0}};
      break;
    case 6:
      drop = {{0, 1, 5}, {0, 5, 1}, {1, 0, 5}, {1, 5, 0}, {5, 0, 1}, {5, 1, 0}};
      break;
    case 7:
      drop = {{0, 1, 6}, {1, 0, 6}, {0, 5, 2}, {5, 0, 2},
              {1, 5, 1}, {5, 1, 1}, {1, 6, 0}, {6, 1, 0},
              {0, 7, 0}, {7, 0, 0}};
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument, "trimmed_b0 supports n = 4..7");
  }
  return without(b_jn(0, n), drop);
}

MediumResult medium_construction(int m) {
  const int n = 3 * m;
  require(n >= 7 && n <= 999, ErrorCode::kInvalidArgument,
          "medium construction needs 7 <= 3m <= 999");
  std::vector<std::array<int, 3>> groups = {
      {-7, -3, 10}, {-7, 0, 7}, {-7, 3, 4},  {-6, -4, 10}, {-6, -1, 7},
      {-6, 2, 4},   {-5, -1, 6}, {-5, 2, 3}, {-4, -2, 6},  {-4, 1, 3},
      {-3, 1, 2},   {-2, 0, 2},  {-1, 0, 1}};
  for (int x = 0; m - 8 - 2 * x >= 0; ++x)
    for (int y = 0; y <= 1; ++y) {
      groups.push_back({-8 - y - 2 * x, -6 + y - 2 * x, 14 + 4 * x});
      groups.push_back({-8 - y - 2 * x, -3 + y - 2 * x, 11 + 4 * x});
      groups.push_back({-8 - y - 2 * x, x + y, 8 + x});
      groups.push_back({-8 - 2 * x, 3 + x, 5 + x});
    }
  std::set<SimplexPoint> b;
  for (auto g : groups) {
    std::sort(g.begin(), g.end());
    do {
      if (m + g[0] >= 0 && m + g[1] >= 0 && m + g[2] >= 0)
        b.insert(SimplexPoint{m + g[0], m + g[1], m + g[2]});
    } while (std::next_permutation(g.begin(), g.end()));
  }

  // Repair: drop the lightest vertex of each upright triangle still present.
  MediumResult r;
  auto lighter = [](const SimplexPoint& p, const SimplexPoint& q) {
    mpz_class wp = cell_size(p), wq = cell_size(q);
    return wp != wq ? wp < wq : p < q;
  };
  for (int s = 1; s <= n; ++s)
    for (int a = 0; a + s <= n; ++a)
      for (int bb = 0; a + bb + s <= n; ++bb) {
        int c = n - a - bb - s;
        SimplexPoint t[3] = {{a + s, bb, c}, {a, bb + s, c}, {a, bb, c + s}};
        if (b.count(t[0]) && b.count(t[1]) && b.count(t[2])) {
          b.erase(*std::min_element(t, t + 3, lighter));
          ++r.removed;
        }
      }
  r.b.assign(b.begin(), b.end());
  require(!find_simplex(r.b), ErrorCode::kInternal, "medium construction has a triangle");
  r.weight = simplex_weight(r.b);
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), 3, n);
  r.density = mpq_class(r.weight, total);
  r.density.canonicalize();
  return r;
}

SimplexSet reduce_digit(const SimplexSet& b, const std::string& prefix) {
  std::vector<int> sub(3, 0);
  for (char ch : prefix) {
    require(ch >= '1' && ch <= '3', ErrorCode::kInvalidArgument, "prefix letters are 1..3");
    ++sub[ch - '1'];
  }
  SimplexSet out;
  for (const auto& p : b) {
    std::vector<int> c = p.coords();
    bool ok = true;
    for (int i = 0; i < 3; ++i) ok = ok && (c[i] -= sub[i]) >= 0;
    if (ok) out.emplace_back(c);
  }
  return sorted(out);
}

ESets e_sets() {
  return {cells_union(4, b_jn(0, 4)) - words(4, {"1111", "2222"}),
          cells_union(4, b_jn(1, 4)) - words(4, {"2222", "3333"}),
          cells_union(4, b_jn(2, 4)) - words(4, {"1111", "3333"}),
          cells_union(4, {{3, 1, 0}, {3, 0, 1}, {2, 2, 0}, {2, 0, 2}, {1, 1, 2}, {1, 2, 1},
                          {0, 2, 2}})};
}

PointSet xyz_set() { return cells_union(3, b_jn(0, 3)); }

std::vector<PointSet> extremal_2d() {
  return {words(2, {"12", "13", "21", "22", "31", "33"}),
          words(2, {"11", "12", "21", "23", "32", "33"}),
          words(2, {"11", "13", "22", "23", "31", "32"}),
          words(2, {"12", "13", "21", "23", "31", "32"})};
}

// ---------------------------------------------------------------------------

bool has_k_ap(const std::vector<std::int64_t>& s, int k) {
  if (k <= 1) return !s.empty();
  std::unordered_set<std::int64_t> in(s.begin(), s.end());
  std::vector<std::int64_t> v(in.begin(), in.end());
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      std::int64_t d = v[j] - v[i];
      int len = 2;
      while (len < k && in.count(v[i] + len * d)) ++len;
      if (len >= k) return true;
    }
  return false;
}

std::vector<std::int64_t> behrend_set(std::int64_t n, int k) {
  require(k >= 3, ErrorCode::kInvalidArgument, "behrend_set needs k >= 3");
  require(n >= 0, ErrorCode::kInvalidArgument, "behrend_set needs N >= 0");
  std::vector<std::int64_t> best;
  if (n == 0) return best;
  if (k == 3) {
    // Digits below d in base 2d-1, grouped by the sum of squared digits.
    for (std::int64_t d = 2; 2 * d - 1 <= std::max<std::int64_t>(3, 2 * n); ++d) {
      const std::int64_t base = 2 * d - 1;
      for (int dims = 1;; ++dims) {
        std::int64_t smallest = 1;
        for (int i = 1; i < dims; ++i) smallest *= base;
        if (smallest > n) break;
        std::map<std::int64_t, std::vector<std::int64_t>> spheres;
        std::vector<std::int64_t> digit(dims, 0);
        while (true) {
          std::int64_t v = 0, sq = 0;
          for (int i = dims - 1; i >= 0; --i) {
            v = v * base + digit[i];
            sq += digit[i] * digit[i];
          }
          if (v + 1 <= n) spheres[sq].push_back(v + 1);
          int i = 0;
          while (i < dims && ++digit[i] == d) digit[i++] = 0;
          if (i == dims) break;
        }
        for (auto& [sq, pts] : spheres)
          if (pts.size() > best.size()) best = pts;
        if (d >= n) break;
      }
    }
    if (best.empty()) best.push_back(1);
  } else {
    std::unordered_set<std::int64_t> in;
    for (std::int64_t v = 1; v <= n; ++v) {
      bool ok = true;
      // v as the last term of a progression.
      for (std::int64_t d = 1; ok && v - (k - 1) * d >= 1; ++d) {
        int t = 1;
        while (t < k && in.count(v - t * d)) ++t;
        ok = t < k;
      }
      if (ok) {
        in.insert(v);
        best.push_back(v);
      }
    }
  }
  std::sort(best.begin(), best.end());
  require(!has_k_ap(best, k), ErrorCode::kInternal, "behrend_set produced a progression");
  return best;
}

std::int64_t r3_exact(std::int64_t n) {
  require(n >= 0 && n <= 200, ErrorCode::kBudgetExceeded, "r3_exact supports N <= 200");
  std::vector<std::int64_t> r(n + 1, 0);
  if (n >= 1) r[1] = 1;
  for (std::int64_t m = 2; m <= n; ++m) {
    // A set of size r[m-1]+1 in [1,m] must use both 1 and m.
    const std::int64_t target = r[m - 1] + 1;
    std::vector<int> banned(m + 1, 0);
    std::vector<std::int64_t> picked;
    auto add = [&](std::int64_t v, int delta) {
      for (std::int64_t u : picked) {
        std::int64_t w = 2 * v - u;
        if (w >= 1 && w <= m) banned[w] += delta;
        if ((u + v) % 2 == 0) banned[(u + v) / 2] += delta;
      }
    };
    bool found = false;
    picked.push_back(m);
    std::function<void(std::int64_t)> dfs = [&](std::int64_t v) {
      if (found) return;
      const std::int64_t have = static_cast<std::int64_t>(picked.size());
      if (have >= target) {
        found = true;
        return;
      }
      if (v >= m) return;
      std::int64_t free = 0;
      for (std::int64_t u = v; u < m; ++u) free += !banned[u];
      std::int64_t cap = std::min(free, r[m - v]);
      if (v > 1) cap = std::min(cap, r[m - v + 1] - 1);
      if (have + cap < target) return;
      if (!banned[v]) {
        add(v, 1);
        picked.push_back(v);
        dfs(v + 1);
        picked.pop_back();
        add(v, -1);
        if (found) return;
      }
      if (v != 1) dfs(v + 1);
    };
    dfs(1);
    r[m] = found ? target : r[m - 1];
  }
  return r[n];
}

std::vector<std::vector<std::int64_t>> circulant_matrix(int k) {
  require(k >= 2, ErrorCode::kInvalidArgument, "circulant matrix needs k >= 2");
  const int d = k - 1;
  std::vector<std::vector<std::int64_t>> m(d, std::vector<std::int64_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[i][j] = ((j - i) % d + d) % d + 1;
  return m;
}

namespace {

// Inverse over the rationals; empty when singular.
std::vector<std::vector<mpq_class>> inverse(const std::vector<std::vector<std::int64_t>>& m,
                                            mpq_class& det) {
  const std::size_t d = m.size();
  std::vector<std::vector<mpq_class>> a(d, std::vector<mpq_class>(2 * d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a[i][j] = static_cast<long>(m[i][j]);
    a[i][d + i] = 1;
  }
  det = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (p < d && a[p][c] == 0) ++p;
    if (p == d) {
      det = 0;
      return {};
    }
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    mpq_class piv = a[c][c];
    for (auto& v : a[c]) v /= piv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < 2 * d; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<std::vector<mpq_class>> inv(d, std::vector<mpq_class>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) inv[i][j] = a[i][d + j];
  return inv;
}

}  // namespace

mpz_class determinant(const std::vector<std::vector<std::int64_t>>& m) {
  mpq_class det;
  inverse(m, det);
  require(det.get_den() == 1, ErrorCode::kInternal, "non-integral determinant");
  return det.get_num();
}

std::vector<std::vector<std::int64_t>> adjugate(const std::vector<std::vector<std::int64_t>>& m) {
  mpq_class det;
  auto inv = inverse(m, det);
  require(det != 0, ErrorCode::kInvalidArgument, "singular matrix");
  std::vector<std::vector<std::int64_t>> out(m.size(), std::vector<std::int64_t>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      mpq_class v = det * inv[i][j];
      require(v.get_den() == 1, ErrorCode::kInternal, "adjugate entry not integral");
      out[i][j] = v.get_num().get_si();
    }
  return out;
}

CirculantResult circulant_construction(int n, int k) {
  require(k >= 3, ErrorCode::kInvalidArgument, "circulant construction needs k >= 3");
  require(n >= 1, ErrorCode::kInvalidArgument, "circulant construction needs n >= 1");
  CirculantResult r;
  auto m = circulant_matrix(k);
  r.det = determinant(m);
  require(r.det != 0, ErrorCode::kInternal, "circulant matrix is singular");
  auto adj = adjugate(m);

  // Integers t with -sqrt(n)/2 <= t < sqrt(n)/2.
  auto inside = [n](std::int64_t t) {
    return t >= 0 ? 4 * t * t < n : 4 * t * t <= n;
  };
  std::int64_t lo = 0, hi = 0;
  while (inside(lo - 1)) --lo;
  while (inside(hi + 1)) ++hi;
  for (std::int64_t v : behrend_set(hi - lo + 1, k)) r.s.push_back(v - 1 + lo);

  const int d = k - 1;
  const std::int64_t c = n / k;
  std::vector<std::size_t> pick(d, 0);
  std::set<SimplexPoint> b;
  while (true) {
    std::vector<int> coords(k);
    std::int64_t sum = 0;
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      std::int64_t a = c;
      for (int j = 0; j < d; ++j) a += adj[i][j] * r.s[pick[j]];
      ok = a >= 0;
      coords[i + 1] = static_cast<int>(a);
      sum += a;
    }
    if (ok && sum <= n) {
      coords[0] = static_cast<int>(n - sum);
      b.insert(SimplexPoint(coords));
    }
    int i = 0;
    while (i < d && ++pick[i] == r.s.size()) pick[i++] = 0;
    if (i == d) break;
  }
  r.b.assign(b.begin(), b.end());
  require(!find_simplex(r.b), ErrorCode::kInternal, "circulant construction has a simplex");
  return r;
}

AsymptoticParams asymptotic_params(int k) {
  require(k >= 2, ErrorCode::kInvalidArgument, "asymptotic params need k >= 2");
  AsymptoticParams p;
  p.k = k;
  p.ell = 1;
  while ((std::int64_t{1} << (p.ell + 1)) < 2 * k) ++p.ell;
  const double ell = p.ell;
  const double log2k = std::log(2.0) / std::log(static_cast<double>(k));
  p.alpha = std::pow(log2k, 1.0 - 1.0 / ell) * ell * std::pow(2.0, (ell - 1) / 2 - 1.0 / ell);
  p.beta = (k - 1) / (2 * ell);
  return p;
}

// ---------------------------------------------------------------------------

PointSet sphere_lb(int n, int i) {
  require(i >= 0 && i <= n, ErrorCode::kInvalidArgument, "sphere index out of range");
  return sphere_members(i, Parity::kAll, n);
}

PointSet semisphere_lb(int n, int i) {
  require(i >= 1 && i <= n, ErrorCode::kInvalidArgument, "semisphere needs 1 <= i <= n");
  return sphere_members(i - 1, Parity::kAll, n) | sphere_members(i, Parity::kEven, n);
}

PointSet best_semisphere(int n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "semisphere needs n >= 1");
  int best = 1;
  for (int i = 2; i <= n; ++i)
    if (binomial(n + 1, i) * (1 << (i - 1)) > binomial(n + 1, best) * (1 << (best - 1))) best = i;
  return semisphere_lb(n, best);
}

CodeTable::CodeTable() {
  // Rows n = 1..13, columns d = 1..8.
  static const std::int64_t rows[13][8] = {
      {2},
      {4, 2},
      {8, 4, 2},
      {16, 8, 2, 2},
      {32, 16, 4, 2, 2},
      {64, 32, 8, 4, 2, 2},
      {128, 64, 16, 8, 2, 2, 2},
      {256, 128, 20, 16, 4, 2, 2, 2},
      {512, 256, 40, 20, 6, 4, 2, 2},
      {1024, 512, 72, 40, 12, 6, 2, 2},
      {2048, 1024, 144, 72, 24, 12, 2, 2},
      {4096, 2048, 256, 144, 32, 24, 4, 2},
      {8192, 4096, 512, 256, 64, 32, 8, 4},
  };
  for (int n = 1; n <= 13; ++n)
    for (int d = 1; d <= std::min(n, 8); ++d) table_[{n, d}] = rows[n - 1][d - 1];
  warnings_.push_back(
      "A(13,6): source row labels the entry A(12,6)=32; stored as A(13,6) = A(12,5) = 32");
  for (const auto& [key, v] : table_) {
    auto [n, d] = key;
    if (d % 2 == 0 && table_.count({n - 1, d - 1}) && table_.at({n - 1, d - 1}) != v)
      warnings_.push_back("A(" + std::to_string(n) + "," + std::to_string(d) +
                          ") disagrees with A(n-1,d-1)");
  }
}

bool CodeTable::has(int n, int d) const {
  try {
    at(n, d);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::int64_t CodeTable::at(int n, int d) const {
  require(n >= 0 && d >= 1, ErrorCode::kInvalidArgument, "bad code parameters");
  if (n == 0 || d > n) return 1;
  auto it = table_.find({n, d});
  if (it != table_.end()) return it->second;
  if (n < 62 && d == 1) return std::int64_t{1} << n;
  if (n < 63 && d == 2) return std::int64_t{1} << (n - 1);
  if (3 * d > 2 * n) return 2;
  if (d % 2 == 0 && table_.count({n - 1, d - 1})) return table_.at({n - 1, d - 1});
  if (d % 2 == 1 && table_.count({n + 1, d + 1})) return table_.at({n + 1, d + 1});
  throw Error(ErrorCode::kBudgetExceeded,
              "A(" + std::to_string(n) + "," + std::to_string(d) + ") not in the table");
}

CodingBound coding_bound(int n, const CodeTable& table) {
  require(n >= 0, ErrorCode::kInvalidArgument, "n must be nonnegative");
  CodingBound r;
  r.n = n;
  r.per_k.assign(n + 1, -1);
  for (int k = 0; k <= n; ++k) {
    std::int64_t total = 0;
    bool ok = true;
    for (int j = 0; j <= k && ok; ++j) {
      if (!table.has(n - j, k - j + 1)) {
        ok = false;
        break;
      }
      total += binomial(n, j).get_si() * table.at(n - j, k - j + 1);
    }
    if (!ok) continue;
    r.per_k[k] = total;
    if (total > r.value) {
      r.value = total;
      r.best_k = k;
    }
  }
  require(r.value > 0, ErrorCode::kBudgetExceeded, "no coding bound available");
  return r;
}

std::optional<std::vector<std::uint32_t>> find_code(int n, int d, std::int64_t size,
                                                    std::uint64_t budget) {
  require(n >= 0 && n <= 16, ErrorCode::kInvalidArgument, "code length must be <= 16");
  const std::uint32_t words = 1u << n;
  std::vector<std::uint32_t> code;
  // Lexicode first.
  for (std::uint32_t w = 0; w < words; ++w) {
    bool ok = true;
    for (auto c : code) ok = ok && __builtin_popcount(c ^ w) >= d;
    if (ok) code.push_back(w);
  }
  if (static_cast<std::int64_t>(code.size()) >= size) {
    code.resize(size);
    return code;
  }
  // Clique search containing the zero word.
  std::vector<std::uint32_t> cur{0};
  std::vector<std::uint32_t> cand;
  for (std::uint32_t w = 1; w < words; ++w)
    if (__builtin_popcount(w) >= d) cand.push_back(w);
  std::uint64_t nodes = 0;
  bool found = false;
  std::function<void(const std::vector<std::uint32_t>&)> dfs =
      [&](const std::vector<std::uint32_t>& c) {
        if (found || ++nodes > budget) return;
        if (static_cast<std::int64_t>(cur.size()) >= size) {
          found = true;
          return;
        }
        if (static_cast<std::int64_t>(cur.size() + c.size()) < size) return;
        for (std::size_t i = 0; i < c.size() && !found; ++i) {
          if (static_cast<std::int64_t>(cur.size() + c.size() - i) < size) return;
          std::vector<std::uint32_t> next;
          for (std::size_t j = i + 1; j < c.size(); ++j)
            if (__builtin_popcount(c[i] ^ c[j]) >= d) next.push_back(c[j]);
          cur.push_back(c[i]);
          dfs(next);
          if (!found) cur.pop_back();
        }
      };
  dfs(cand);
  if (!found) return std::nullopt;
  return cur;
}

std::optional<PointSet> coding_witness(int n, const CodeTable& table) {
  require(n >= 1 && n <= 10, ErrorCode::kBudgetExceeded, "coding witness supports n <= 10");
  CodingBound cb = coding_bound(n, table);
  const int k = cb.best_k;
  Shape sh(n, 3);
  PointSet out(sh);
  for (int j = 0; j <= k; ++j) {
    auto code = find_code(n - j, k - j + 1, table.at(n - j, k - j + 1));
    if (!code) return std::nullopt;
    // Every placement of j twos.
    for (std::uint32_t twos = 0; twos < (1u << n); ++twos) {
      if (__builtin_popcount(twos) != j) continue;
      for (std::uint32_t cw : *code) {
        std::vector<int> letters(n);
        int bit = 0;
        for (int pos = 0; pos < n; ++pos) {
          if ((twos >> pos) & 1u)
            letters[pos] = 2;
          else
            letters[pos] = ((cw >> bit++) & 1u) ? 3 : 1;
        }
        out.insert(index_of(sh, letters));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PointSet ab_moser(const SimplexSet& b, int n) {
  if (auto t = find_isosceles(b)) {
    std::string s;
    for (const auto& p : *t) s += p.str();
    throw Error(ErrorCode::kInvalidArgument, "B contains the isosceles triple " + s);
  }
  return gamma_union(b, n, 3);
}

PointSet augment_ab(const SimplexSet& b, int n, const std::vector<std::string>& extra) {
  PointSet a = ab_moser(b, n);
  const Shape& sh = a.shape();
  std::set<SimplexPoint> in(b.begin(), b.end());
  std::map<SimplexPoint, std::vector<Index>> by_cell;
  for (const auto& w : extra) {
    Index idx = parse_word_index(sh, w);
    SimplexPoint t = cell_of(sh, idx);
    require(!in.count(t), ErrorCode::kInvalidArgument,
            "extra point " + w + " already lies in a cell of B");
    by_cell[t].push_back(idx);
  }
  for (const auto& [t, pts] : by_cell) {
    const int a0 = t[0], b0 = t[1], c0 = t[2];
    // Upper end of a degenerate pair whose lower end is in B.
    for (int r = 1; 2 * r <= b0; ++r)
      require(!in.count(SimplexPoint{a0 + r, b0 - 2 * r, c0 + r}), ErrorCode::kInvalidArgument,
              "cell " + t.str() + " is the upper end of a degenerate pair in B");
    // Distances forbidden by lower-end pairs.
    std::vector<int> bad;
    for (int r = 1; r <= std::min(a0, c0); ++r)
      if (in.count(SimplexPoint{a0 - r, b0 + 2 * r, c0 - r})) bad.push_back(2 * r);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        int h = hamming(sh, pts[i], pts[j]);
        require(std::find(bad.begin(), bad.end(), h) == bad.end(), ErrorCode::kInvalidArgument,
                "extra points " + word_string(sh, pts[i]) + " and " + word_string(sh, pts[j]) +
                    " are at forbidden Hamming distance " + std::to_string(h));
      }
    for (Index p : pts) a.insert(p);
  }
  if (auto l = find_line(a, LineKind::kGeometric)) {
    std::string s;
    for (Index i : *l) s += (s.empty() ? "" : ",") + word_string(sh, i);
    throw Error(ErrorCode::kInvalidArgument, "augmented set contains the line {" + s + "}");
  }
  return a;
}

SimplexSet moser_b5() {
  return {{0, 0, 5}, {0, 2, 3}, {1, 1, 3}, {1, 2, 2}, {2, 2, 1}, {3, 1, 1}, {3, 2, 0}, {5, 0, 0}};
}

std::vector<std::string> moser_b5_extra() { return {"13333", "31111"}; }

SimplexSet moser_b10() {
  return {{0, 0, 10}, {0, 2, 8}, {0, 3, 7}, {0, 4, 6}, {1, 4, 5}, {2, 1, 7}, {2, 3, 5},
          {3, 2, 5},  {3, 3, 4}, {3, 4, 3}, {4, 4, 2}, {5, 1, 4}, {5, 3, 2}, {6, 2, 2},
          {6, 3, 1},  {6, 4, 0}, {8, 1, 1}, {9, 0, 1}, {9, 1, 0}};
}

std::vector<std::string> moser_b10_extra() {
  return {"1111133333", "1111313333", "1113113333", "1133331113",
          "1133331131", "1133331311", "3311333111", "3313133111",
          "3313313111", "3331111133", "3331111313", "3331111331"};
}

std::int64_t neighbour_free_max(int a, int b, int c) {
  SimplexPoint t{a, b, c};
  const int n = a + b + c;
  require(cell_size(t) <= 64, ErrorCode::kBudgetExceeded, "cell too large for exhaustive search");
  Shape sh(n, 3);
  std::vector<Index> pts;
  for (Index i = 0; i < sh.cells(); ++i)
    if (cell_of(sh, i) == t) pts.push_back(i);
  const std::size_t m = pts.size();
  std::vector<std::uint64_t> adj(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || hamming(sh, pts[i], pts[j]) != 2) continue;
      adj[i] |= std::uint64_t{1} << j;
    }
  std::int64_t best = 0;
  std::function<void(std::uint64_t, std::int64_t)> dfs = [&](std::uint64_t free, std::int64_t cur) {
    if (cur + __builtin_popcountll(free) <= best) return;
    if (!free) {
      best = cur;
      return;
    }
    int v = __builtin_ctzll(free);
    dfs(free & ~adj[v] & ~(std::uint64_t{1} << v), cur + 1);
    dfs(free & ~(std::uint64_t{1} << v), cur);
  };
  dfs(m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1, 0);
  return best;
}

ShellResult sphere_shell_lb(int n, int i, const std::vector<std::string>& a_prime) {
  require(i >= 1 && i + 1 <= n, ErrorCode::kInvalidArgument, "shell needs 1 <= i < n");
  Shape sh(n, 3);
  PointSet extra = PointSet::from_strings(sh, a_prime);
  require((extra - sphere_members(i + 1, Parity::kAll, n)).empty(), ErrorCode::kInvalidArgument,
          "A' must lie in S_{i+1,n}");
  for (Parity p : {Parity::kEven, Parity::kOdd}) {
    PointSet a = sphere_members(i - 1, Parity::kAll, n) | sphere_members(i, p, n) | extra;
    if (is_moser(a)) return {a, p};
  }
  throw Error(ErrorCode::kInvalidArgument, "A' is incompatible with both sphere halves");
}

ShellResult sphere_shell_lb(int n, int i) {
  if (n == 4 && i == 3) return sphere_shell_lb(4, 3, {"1111", "3331", "3333"});
  if (n == 5 && i == 4) return sphere_shell_lb(5, 4, {"11111", "11333", "33311", "33331"});
  if (n == 6 && i == 5)
    return sphere_shell_lb(6, 5, {"111111", "111113", "113331", "131333", "313133", "331131"});
  throw Error(ErrorCode::kInvalidArgument, "no stored A' for this (n, i)");
}

PointSet higher_k(int n, int k) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be positive");
  Shape sh(n, k);
  require(sh.cells() <= (Index{1} << 24), ErrorCode::kBudgetExceeded, "cube too large");
  PointSet out(sh);
  auto counts = [&](Index idx) {
    std::vector<int> c(k + 1, 0);
    for (int p = 0; p < n; ++p) ++c[sh.letter(idx, p)];
    return c;
  };
  switch (k) {
    case 4:
      for (Index i = 0; i < sh.cells(); ++i) {
        auto c = counts(i);
        if (c[1] + c[4] == n / 2) out.insert(i);
      }
      break;
    case 5: {
      // Value a+e+2(b+d)+3c lies in [n, 3n].
      std::vector<mpz_class> weight(2 * n + 1, 0);
      for (const auto& p : simplex_points(n, 5)) {
        int v = p[0] + p[4] + 2 * (p[1] + p[3]) + 3 * p[2];
        weight[v - n] += cell_size(p);
      }
      auto s = behrend_set(2 * n + 1, 3);
      std::int64_t best_shift = 0;
      mpz_class best = -1;
      for (std::int64_t shift = 0; s.back() + shift <= 2 * n + 1; ++shift) {
        mpz_class w = 0;
        for (auto v : s) w += weight[v + shift - 1];
        if (w > best) {
          best = w;
          best_shift = shift;
        }
      }
      std::vector<char> keep(2 * n + 1, 0);
      for (auto v : s) keep[v + best_shift - 1] = 1;
      for (Index i = 0; i < sh.cells(); ++i) {
        auto c = counts(i);
        if (keep[c[1] + c[5] + 2 * (c[2] + c[4]) + 3 * c[3] - n]) out.insert(i);
      }
      break;
    }
    case 6: {
      auto base = max_fujimura(n);
      PointSet a = gamma_union(base.best, n, 3);
      Shape s3(n, 3);
      static const int fold[7] = {0, 1, 2, 3, 3, 2, 1};
      for (Index i = 0; i < sh.cells(); ++i) {
        Index j = 0;
        for (int p = 0; p < n; ++p) j = j * 3 + static_cast<Index>(fold[sh.letter(i, p)] - 1);
        if (a.contains(j)) out.insert(i);
      }
      break;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument, "higher_k supports k = 4, 5, 6");
  }
  return out;
}

PointSet good_set(int x, int y, int z, int w) {
  for (int v : {x, y, z, w})
    require(v == 1 || v == 3, ErrorCode::kInvalidArgument, "good set types use letters 1 and 3");
  const int t[4] = {x, y, z, w};
  Shape sh(4, 3);
  PointSet out(sh);
  for (Index i = 0; i < sh.cells(); ++i) {
    int l[4], two = 0, match = 0;
    for (int p = 0; p < 4; ++p) {
      l[p] = sh.letter(i, p);
      if (l[p] == 2)
        ++two;
      else if (l[p] == t[p])
        ++match;
    }
    const int off = 4 - two;  // coordinates different from 2
    bool keep = false;
    switch (off) {
      case 1:  // x222, 2y22, 22z2, 222w
        keep = match == 1;
        break;
      case 2:  // all but the pairs with both letters matching the type
        keep = match != 2;
        break;
      case 3:  // exactly one letter matching the type
        keep = match == 1;
        break;
      case 4:  // xyzw, one reflected letter, or all reflected
        keep = match == 4 || match == 3 || match == 0;
        break;
      default:
        break;
    }
    if (keep) out.insert(i);
  }
  return out;
}

}  // namespace hjm
