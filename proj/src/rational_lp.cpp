#include "hjm/rational_lp.hpp"

#include "hjm/error.hpp"

namespace hjm {

void RationalLP::add(LinearConstraint c) {
  require(c.coeffs.size() == vars_, ErrorCode::kDimensionMismatch,
          "constraint width differs from the variable count");
  rows_.push_back(std::move(c));
}

namespace {

struct Tableau {
  // rows_ x (cols + 1); last column is the right-hand side.
  std::vector<std::vector<mpq_class>> t;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    mpq_class p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || t[i][c] == 0) continue;
      mpq_class f = t[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Maximises obj.y over the current basis; columns with allowed[c] false
  // never enter. Returns false when unbounded.
  bool run(const std::vector<mpq_class>& obj, const std::vector<bool>& allowed) {
    while (true) {
      // Reduced costs: obj_c - sum_r obj_{basis r} t[r][c].
      std::size_t enter = cols;
      for (std::size_t c = 0; c < cols && enter == cols; ++c) {
        if (!allowed[c]) continue;
        mpq_class rc = obj[c];
        for (std::size_t r = 0; r < t.size(); ++r)
          if (t[r][c] != 0) rc -= obj[basis[r]] * t[r][c];
        if (rc > 0) enter = c;
      }
      if (enter == cols) return true;
      std::size_t leave = t.size();
      mpq_class best;
      for (std::size_t r = 0; r < t.size(); ++r) {
        if (t[r][enter] <= 0) continue;
        mpq_class ratio = t[r][cols] / t[r][enter];
        if (leave == t.size() || ratio < best ||
            (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == t.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution RationalLP::maximise(const std::vector<mpq_class>& objective) const {
  require(objective.size() == vars_, ErrorCode::kDimensionMismatch,
          "objective width differs from the variable count");
  const std::size_t m = rows_.size();
  // Column layout: structural, one slack/surplus per inequality, artificials.
  std::size_t slack = 0, art = 0;
  for (const auto& r : rows_) {
    slack += r.sense != Sense::kEq;
  }
  std::vector<LinearConstraint> rows = rows_;
  for (auto& r : rows)
    if (r.rhs < 0) {
      for (auto& v : r.coeffs) v = -v;
      r.rhs = -r.rhs;
      if (r.sense == Sense::kLe)
        r.sense = Sense::kGe;
      else if (r.sense == Sense::kGe)
        r.sense = Sense::kLe;
    }
  for (const auto& r : rows) art += r.sense != Sense::kLe;

  Tableau tb;
  tb.cols = vars_ + slack + art;
  tb.t.assign(m, std::vector<mpq_class>(tb.cols + 1, 0));
  tb.basis.assign(m, 0);
  std::size_t s = vars_, a = vars_ + slack;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < vars_; ++j) tb.t[i][j] = rows[i].coeffs[j];
    tb.t[i][tb.cols] = rows[i].rhs;
    if (rows[i].sense == Sense::kLe) {
      tb.t[i][s] = 1;
      tb.basis[i] = s++;
    } else {
      if (rows[i].sense == Sense::kGe) tb.t[i][s++] = -1;
      tb.t[i][a] = 1;
      tb.basis[i] = a++;
    }
  }
  const std::size_t first_art = vars_ + slack;

  LpSolution sol;
  std::vector<bool> allowed(tb.cols, true);
  if (art > 0) {
    std::vector<mpq_class> phase1(tb.cols, 0);
    for (std::size_t c = first_art; c < tb.cols; ++c) phase1[c] = -1;
    tb.run(phase1, allowed);
    for (std::size_t i = 0; i < m; ++i)
      if (tb.basis[i] >= first_art && tb.t[i][tb.cols] != 0) return sol;
    // Drive zero-level artificials out of the basis, dropping redundant rows.
    for (std::size_t i = 0; i < tb.t.size();) {
      if (tb.basis[i] < first_art) {
        ++i;
        continue;
      }
      std::size_t c = 0;
      while (c < first_art && tb.t[i][c] == 0) ++c;
      if (c < first_art) {
        tb.pivot(i, c);
        ++i;
      } else {
        tb.t.erase(tb.t.begin() + i);
        tb.basis.erase(tb.basis.begin() + i);
      }
    }
    for (std::size_t c = first_art; c < tb.cols; ++c) allowed[c] = false;
  }
  sol.feasible = true;
  std::vector<mpq_class> obj(tb.cols, 0);
  for (std::size_t j = 0; j < vars_; ++j) obj[j] = objective[j];
  if (!tb.run(obj, allowed)) {
    sol.bounded = false;
    return sol;
  }
  sol.y.assign(vars_, 0);
  for (std::size_t i = 0; i < tb.t.size(); ++i)
    if (tb.basis[i] < vars_) sol.y[tb.basis[i]] = tb.t[i][tb.cols];
  sol.value = 0;
  for (std::size_t j = 0; j < vars_; ++j) sol.value += objective[j] * sol.y[j];
  sol.basis = tb.basis;
  return sol;
}

// ---------------------------------------------------------------------------

LpMaxResult lp_max(const std::vector<std::vector<mpq_class>>& points,
                   const std::vector<LinearConstraint>& extra,
                   const std::vector<mpq_class>& objective, HullMode mode,
                   bool lex_tiebreak) {
  require(!points.empty(), ErrorCode::kInvalidArgument, "empty point list");
  const std::size_t d = objective.size(), m = points.size();
  for (const auto& p : points)
    require(p.size() == d, ErrorCode::kDimensionMismatch,
            "point dimension differs from the objective");
  // Variables: x (d) then lambda (m).
  const std::size_t vars = d + m;
  RationalLP base(vars);
  {
    std::vector<mpq_class> row(vars, 0);
    for (std::size_t j = 0; j < m; ++j) row[d + j] = 1;
    base.add(row, Sense::kEq, 1);
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<mpq_class> row(vars, 0);
    row[i] = 1;
    for (std::size_t j = 0; j < m; ++j) row[d + j] = -points[j][i];
    base.add(row, mode == HullMode::kConvex ? Sense::kEq : Sense::kLe, 0);
  }
  for (const auto& c : extra) {
    require(c.coeffs.size() == d, ErrorCode::kDimensionMismatch,
            "extra constraint width differs from the objective");
    std::vector<mpq_class> row(vars, 0);
    for (std::size_t i = 0; i < d; ++i) row[i] = c.coeffs[i];
    base.add(row, c.sense, c.rhs);
  }
  std::vector<mpq_class> obj(vars, 0);
  for (std::size_t i = 0; i < d; ++i) obj[i] = objective[i];

  LpMaxResult res;
  LpSolution sol = base.maximise(obj);
  if (!sol.feasible) return res;
  require(sol.bounded, ErrorCode::kInternal, "hull LP cannot be unbounded");
  res.feasible = true;
  res.value = sol.value;
  if (lex_tiebreak) {
    RationalLP lp = base;
    std::vector<mpq_class> fix(vars, 0);
    for (std::size_t i = 0; i < d; ++i) fix[i] = objective[i];
    lp.add(fix, Sense::kEq, res.value);
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<mpq_class> o(vars, 0);
      o[i] = -1;
      LpSolution s = lp.maximise(o);
      require(s.feasible && s.bounded, ErrorCode::kInternal,
              "lexicographic refinement lost feasibility");
      std::vector<mpq_class> pin(vars, 0);
      pin[i] = 1;
      lp.add(pin, Sense::kEq, s.y[i]);
      sol = s;
    }
  }
  res.x.assign(sol.y.begin(), sol.y.begin() + d);
  for (std::size_t j = 0; j < m; ++j)
    if (sol.y[d + j] != 0) res.weights.emplace_back(j, sol.y[d + j]);
  return res;
}

std::string rational_str(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

}  // namespace hjm
