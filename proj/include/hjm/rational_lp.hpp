#pragma once

// Exact linear programming over the rationals: a dense two-phase tableau
// simplex with Bland's rule.

#include <string>
#include <vector>

#include <gmpxx.h>

namespace hjm {

enum class Sense { kLe, kGe, kEq };

struct LinearConstraint {
  std::vector<mpq_class> coeffs;
  Sense sense = Sense::kLe;
  mpq_class rhs;
};

struct LpSolution {
  bool feasible = false;
  bool bounded = true;
  mpq_class value;
  std::vector<mpq_class> y;
  std::vector<std::size_t> basis;
};

// maximise c.y subject to the constraints and y >= 0.
class RationalLP {
 public:
  explicit RationalLP(std::size_t vars) : vars_(vars) {}

  std::size_t vars() const { return vars_; }
  void add(LinearConstraint c);
  void add(std::vector<mpq_class> coeffs, Sense sense, mpq_class rhs) {
    add(LinearConstraint{std::move(coeffs), sense, std::move(rhs)});
  }
  LpSolution maximise(const std::vector<mpq_class>& objective) const;

 private:
  std::size_t vars_;
  std::vector<LinearConstraint> rows_;
};

enum class HullMode {
  kConvex,    // x in conv(points)
  kDownward,  // 0 <= x <= some point of conv(points)
};

struct LpMaxResult {
  bool feasible = false;
  mpq_class value;
  std::vector<mpq_class> x;
  // Convex weights over the input points (nonzero entries only).
  std::vector<std::pair<std::size_t, mpq_class>> weights;
};

// Maximises objective.x over the hull of `points` intersected with `extra`
// (constraints on x). With `lex_tiebreak` the returned x is the
// lexicographically smallest optimal point.
LpMaxResult lp_max(const std::vector<std::vector<mpq_class>>& points,
                   const std::vector<LinearConstraint>& extra,
                   const std::vector<mpq_class>& objective,
                   HullMode mode = HullMode::kConvex, bool lex_tiebreak = true);

std::string rational_str(const mpq_class& q);

}  // namespace hjm
