#include "hjm/verify.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "hjm/optimize.hpp"

namespace hjm {

std::string predicate_name(Predicate p) {
  switch (p) {
    case Predicate::kLineFree:
      return "line-free";
    case Predicate::kMoser:
      return "moser";
    case Predicate::kCapSet:
      return "cap-set";
  }
  return "?";
}

Predicate parse_predicate(const std::string& name) {
  if (name == "line-free") return Predicate::kLineFree;
  if (name == "moser") return Predicate::kMoser;
  if (name == "cap-set") return Predicate::kCapSet;
  throw Error(ErrorCode::kInvalidArgument, "unknown predicate '" + name + "'");
}

namespace {

// Tables are cached up to this many cells; beyond that lines are streamed.
constexpr Index kTableCells = 2187;

}  // namespace

std::optional<std::vector<Index>> find_line(const PointSet& a, LineKind kind) {
  const Shape& sh = a.shape();
  const int k = sh.k();
  if (sh.n() == 0 || a.size() < static_cast<std::size_t>(k)) return std::nullopt;
  if (sh.cells() <= kTableCells) {
    auto t = line_table(sh.n(), k, kind);
    for (std::size_t l = 0; l < t->size(); ++l) {
      const Index* p = t->line(l);
      bool all = true;
      for (int i = 0; i < k && all; ++i) all = a.contains(p[i]);
      if (all) return std::vector<Index>(p, p + k);
    }
    return std::nullopt;
  }
  std::optional<std::vector<Index>> hit;
  for_each_line(sh, kind, [&](const Index* p) {
    for (int i = 0; i < k; ++i)
      if (!a.contains(p[i])) return true;
    hit = std::vector<Index>(p, p + k);
    return false;
  });
  return hit;
}

bool is_line_free(const PointSet& a) {
  return !find_line(a, LineKind::kCombinatorial);
}

bool is_moser(const PointSet& a) { return !find_line(a, LineKind::kGeometric); }

std::optional<std::array<Index, 3>> find_cap_line(const PointSet& a) {
  const Shape& sh = a.shape();
  require(sh.k() == 3, ErrorCode::kInvalidArgument, "cap sets need k = 3");
  auto pts = a.indices();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Index x = pts[i], y = pts[j], z = 0;
      for (int pos = 0; pos < sh.n(); ++pos) {
        int dx = sh.letter(x, pos) - 1, dy = sh.letter(y, pos) - 1;
        z += static_cast<Index>((6 - dx - dy) % 3) * sh.place(pos);
      }
      if (z > y && a.contains(z)) return std::array<Index, 3>{x, y, z};
    }
  return std::nullopt;
}

bool is_cap_set(const PointSet& a) { return !find_cap_line(a); }

bool satisfies(const PointSet& a, Predicate p) {
  switch (p) {
    case Predicate::kLineFree:
      return is_line_free(a);
    case Predicate::kMoser:
      return is_moser(a);
    case Predicate::kCapSet:
      return is_cap_set(a);
  }
  return false;
}

// ---------------------------------------------------------------------------

StatVector::StatVector(int n_, std::vector<std::int64_t> a_)
    : n(n_), a(std::move(a_)) {
  require(static_cast<int>(a.size()) == n + 1, ErrorCode::kDimensionMismatch,
          "statistics vector needs n+1 entries");
}

mpz_class StatVector::capacity(int n, int i) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, n - i);
  return binomial(n, i) * p;
}

mpq_class StatVector::density(int i) const {
  mpq_class q(mpz_class(static_cast<long>(a[i])), capacity(n, i));
  q.canonicalize();
  return q;
}

std::vector<mpq_class> StatVector::densities() const {
  std::vector<mpq_class> out;
  for (int i = 0; i <= n; ++i) out.push_back(density(i));
  return out;
}

std::int64_t StatVector::total() const {
  std::int64_t t = 0;
  for (auto x : a) t += x;
  return t;
}

std::vector<StatVector> read_stat_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kMalformedInput, "cannot open " + path);
  std::string line;
  std::getline(in, line);
  const int cols = static_cast<int>(std::count(line.begin(), line.end(), ',')) + 1;
  std::vector<StatVector> out;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<std::int64_t> a;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        a.push_back(std::stoll(cell));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kMalformedInput, "bad CSV cell '" + cell + "' in " + path);
      }
    }
    require(static_cast<int>(a.size()) == cols, ErrorCode::kMalformedInput,
            "ragged CSV row in " + path);
    out.emplace_back(cols - 1, std::move(a));
  }
  return out;
}

void write_stat_csv(std::ostream& out, const std::vector<StatVector>& rows) {
  int n = rows.empty() ? 0 : rows.front().n;
  for (int i = 0; i <= n; ++i) out << (i ? ",a" : "a") << i;
  out << '\n';
  for (const auto& r : rows) {
    for (int i = 0; i <= n; ++i) out << (i ? "," : "") << r.a[i];
    out << '\n';
  }
}

std::string StatVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(a[i]);
  }
  return s + ")";
}

bool StatVector::dominates(const StatVector& o) const {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < o.a[i]) return false;
    strict |= a[i] > o.a[i];
  }
  return strict;
}

StatVector statistics(const PointSet& a) {
  require(a.k() == 3, ErrorCode::kInvalidArgument, "statistics need k = 3");
  std::vector<std::int64_t> c(a.n() + 1, 0);
  for (Index i : a.indices()) ++c[twos(a.shape(), i)];
  return StatVector(a.n(), std::move(c));
}

std::vector<DoubleCountingRow> check_double_counting(const PointSet& a) {
  const int n = a.n();
  require(a.k() == 3 && n >= 1, ErrorCode::kInvalidArgument,
          "double counting needs k = 3 and n >= 1");
  StatVector whole = statistics(a);
  std::vector<StatVector> side, centre;
  for (int axis = 0; axis < n; ++axis) {
    side.push_back(statistics(slice_extract(axis, 1, a)));
    side.push_back(statistics(slice_extract(axis, 3, a)));
    centre.push_back(statistics(slice_extract(axis, 2, a)));
  }
  std::vector<DoubleCountingRow> rows;
  for (int i = 0; i <= n - 1; ++i) {
    DoubleCountingRow row;
    row.i = i;
    row.count = whole.a[i + 1];
    row.direct = whole.density(i + 1);
    if (n - i - 1 > 0) {
      mpq_class cnt = 0, dens = 0;
      for (const auto& v : side) {
        cnt += v.a[i + 1];
        dens += v.density(i + 1);
      }
      row.side_count = cnt / (n - i - 1);
      row.side_average = dens / static_cast<long>(side.size());
    }
    mpq_class cnt = 0, dens = 0;
    for (const auto& w : centre) {
      cnt += w.a[i];
      dens += w.density(i);
    }
    row.centre_count = cnt / (i + 1);
    row.centre_average = dens / static_cast<long>(centre.size());
    bool ok = row.centre_count == row.count && row.centre_average == row.direct;
    if (row.side_count)
      ok = ok && *row.side_count == row.count && *row.side_average == row.direct;
    require(ok, ErrorCode::kInternal,
            "double counting identity failed at i = " + std::to_string(i));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

mpq_class LinearInequality::lhs(const StatVector& st) const {
  mpq_class t = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    int i = slot(static_cast<int>(j));
    require(i <= st.n, ErrorCode::kDimensionMismatch,
            "inequality slot beyond the statistics vector");
    if (v[j] != 0) t += v[j] * st.density(i);
  }
  return t;
}

std::string LinearInequality::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << v[j].get_str() << "*alpha_" << slot(static_cast<int>(j));
  }
  os << " <= " << s.get_str() << "  [n=" << dim << "]";
  return os.str();
}

LinearInequality propagate(const LinearInequality& base, int q, int r, int n) {
  const int m = static_cast<int>(base.v.size()) - 1;
  require(base.q == 1 && base.r == 0, ErrorCode::kInvalidArgument,
          "propagation starts from an unshifted inequality");
  require(q >= 1 && r >= 0 && n >= m * q + r, ErrorCode::kInvalidArgument,
          "propagation needs q >= 1, r >= 0 and n >= m q + r");
  LinearInequality out = base;
  out.q = q;
  out.r = r;
  out.dim = n;
  return out;
}

std::vector<LinearInequality> base_inequalities() {
  auto mk = [](std::string name, std::vector<long> v, long s) {
    LinearInequality li;
    li.name = std::move(name);
    for (long x : v) li.v.emplace_back(x);
    li.s = s;
    li.dim = static_cast<int>(v.size()) - 1;
    return li;
  };
  return {
      mk("alpha-1", {2, 1}, 2),        mk("alpha-2", {4, 2, 1}, 4),
      mk("eleven", {8, 6, 6, 2}, 11),  mk("six", {4, 4, 3, 1}, 6),
      mk("seven", {7, 3, 3, 1}, 7),    mk("eight", {8, 3, 3, 1}, 8),
      mk("four", {0, 4, 2, 1}, 4),     mk("seven-b", {4, 0, 6, 2}, 7),
      mk("five", {5, 0, 3, 1}, 5),
  };
}

std::vector<LinearInequality> known_inequality_bank(int n) {
  std::vector<LinearInequality> out;
  for (const auto& base : base_inequalities()) {
    const int m = static_cast<int>(base.v.size()) - 1;
    for (int q = 1; m * q <= n; ++q)
      for (int r = 0; m * q + r <= n; ++r) out.push_back(propagate(base, q, r, n));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::int64_t pair_deficiency(const PointSet& b) {
  const Shape& sh = b.shape();
  auto pts = b.indices();
  for (Index p : pts)
    require(twos(sh, p) == 0, ErrorCode::kInvalidArgument,
            "pair_deficiency needs points without 2s");
  std::int64_t c = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      c += hamming(sh, pts[i], pts[j]) == 2;
  return c;
}

mpq_class lym_sum(const PointSet& a) {
  std::map<SimplexPoint, long> per_cell;
  for (Index i : a.indices()) ++per_cell[cell_of(a.shape(), i)];
  mpq_class t = 0;
  for (const auto& [cell, cnt] : per_cell) t += mpq_class(cnt, 1) / cell_size(cell);
  t.canonicalize();
  return t;
}

HocReport hoc_check(const PointSet& a) {
  require(is_line_free(a), ErrorCode::kInvalidArgument,
          "hoc_check needs a line-free set");
  HocReport r;
  r.sum = lym_sum(a);
  r.c_mu = fujimura_max_general(a.n(), a.k());
  r.c_mu_swapped = fujimura_max_general(a.k(), a.n());
  r.violated = r.sum > r.c_mu;
  return r;
}

// ---------------------------------------------------------------------------

mpz_class simplex_weight(const SimplexSet& b) {
  mpz_class w = 0;
  for (const auto& p : b) w += cell_size(p);
  return w;
}

PointSet gamma_union(const SimplexSet& b, int n, int k) {
  Shape sh(n, k);
  std::set<SimplexPoint> want;
  for (const auto& p : b) {
    require(p.k() == k && p.n() == n, ErrorCode::kDimensionMismatch,
            "simplex point " + p.str() + " not in Delta_{n,k}");
    want.insert(p);
  }
  PointSet out(sh);
  for (Index i = 0; i < sh.cells(); ++i)
    if (want.count(cell_of(sh, i))) out.insert(i);
  return out;
}

std::optional<SimplexSet> find_simplex(const SimplexSet& b) {
  std::set<std::vector<int>> in;
  for (const auto& p : b) in.insert(p.coords());
  for (const auto& p : b) {
    const int k = p.k();
    for (int r = 1; r <= p[0]; ++r) {
      std::vector<int> base = p.coords();
      base[0] -= r;
      SimplexSet tri{p};
      bool all = true;
      for (int i = 1; i < k && all; ++i) {
        std::vector<int> q = base;
        q[i] += r;
        all = in.count(q) > 0;
        if (all) tri.emplace_back(q);
      }
      if (all) return tri;
    }
  }
  return std::nullopt;
}

std::optional<SimplexSet> find_isosceles(const SimplexSet& b) {
  std::set<std::vector<int>> in;
  for (const auto& p : b) {
    require(p.k() == 3, ErrorCode::kInvalidArgument,
            "isosceles triples live in Delta_{n,3}");
    in.insert(p.coords());
  }
  for (const auto& top : b) {
    for (int u = 1; u <= top[1]; ++u)
      for (int r = 0; r <= u; ++r) {
        int s = u - r;
        std::vector<int> p1{top[0] + r, top[1] - u, top[2] + s};
        std::vector<int> p2{top[0] + s, top[1] - u, top[2] + r};
        if (in.count(p1) && in.count(p2)) {
          SimplexSet out{SimplexPoint(p1)};
          if (p2 != p1) out.emplace_back(p2);
          out.push_back(top);
          return out;
        }
      }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

DefectScores defect_scores(const std::vector<mpq_class>& x) {
  require(x.size() == 5, ErrorCode::kDimensionMismatch,
          "defect scores need (a,b,c,d,e)");
  const mpq_class &a = x[0], &b = x[1], &c = x[2], &d = x[3], &e = x[4];
  DefectScores r;
  r.D = 356 - (4 * a + 6 * b + 10 * c + 20 * d + 60 * e);
  r.s = 12 * a + mpq_class(15, 2) * b + mpq_class(20, 3) * c +
        mpq_class(15, 2) * d + 12 * e;
  r.S = 15 * a + 5 * b + mpq_class(5, 2) * c + mpq_class(3, 2) * d + e;
  r.s_slice = a + mpq_class(5, 4) * b + mpq_class(5, 3) * c +
              mpq_class(5, 2) * d - mpq_class(125, 2);
  return r;
}

DefectScores defect_scores(const StatVector& st) {
  require(st.n == 4, ErrorCode::kDimensionMismatch,
          "defect scores need 4D statistics");
  std::vector<mpq_class> x;
  for (auto v : st.a) x.emplace_back(static_cast<long>(v));
  return defect_scores(x);
}

}  // namespace hjm
