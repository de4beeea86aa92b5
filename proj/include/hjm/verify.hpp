#pragma once

// Set predicates, statistics and the linear-inequality machinery.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hjm/cube.hpp"

namespace hjm {

enum class Predicate { kLineFree, kMoser, kCapSet };

std::string predicate_name(Predicate p);
Predicate parse_predicate(const std::string& name);

// First line (in enumeration order) lying wholly in `a`, if any.
std::optional<std::vector<Index>> find_line(const PointSet& a, LineKind kind);
bool is_line_free(const PointSet& a);
bool is_moser(const PointSet& a);

// Affine lines x, x+r, x+2r of F_3^n (k = 3, letters 1,2,3 read as 0,1,2).
std::optional<std::array<Index, 3>> find_cap_line(const PointSet& a);
bool is_cap_set(const PointSet& a);

bool satisfies(const PointSet& a, Predicate p);

// ---------------------------------------------------------------------------
// Statistics of subsets of [3]^n: a_i counts points with exactly i
// coordinates equal to 2.

struct StatVector {
  int n = 0;
  std::vector<std::int64_t> a;

  StatVector() = default;
  StatVector(int n, std::vector<std::int64_t> a);

  // |S_{n-i,n}| = C(n,i) 2^(n-i).
  static mpz_class capacity(int n, int i);
  mpq_class density(int i) const;
  std::vector<mpq_class> densities() const;
  std::int64_t total() const;
  std::string str() const;

  // Componentwise >= with at least one strict.
  bool dominates(const StatVector& o) const;

  friend bool operator==(const StatVector&, const StatVector&) = default;
  friend auto operator<=>(const StatVector& x, const StatVector& y) {
    return x.a <=> y.a;
  }
};

StatVector statistics(const PointSet& a);

// Statistic vectors, one per CSV row, header line skipped.
std::vector<StatVector> read_stat_csv(const std::string& path);
void write_stat_csv(std::ostream& out, const std::vector<StatVector>& rows);

struct DoubleCountingRow {
  int i = 0;
  // Average of alpha_{i+1} over the 2n side slices; absent when n-i-1 = 0.
  std::optional<mpq_class> side_average;
  // Average of alpha_i over the n centre slices.
  mpq_class centre_average;
  mpq_class direct;
  // Raw counts: sum a_{i+1}(V)/(n-i-1), sum a_i(W)/(i+1), a_{i+1}(A).
  std::optional<mpq_class> side_count;
  mpq_class centre_count;
  std::int64_t count = 0;
};

// Checks the slice double-counting identities; throws kInternal on failure.
std::vector<DoubleCountingRow> check_double_counting(const PointSet& a);

// ---------------------------------------------------------------------------
// Linear inequalities sum_j v_j alpha_{q j + r}(A) <= s over Moser sets of
// [3]^dim.

struct LinearInequality {
  std::vector<mpq_class> v;
  int q = 1;
  int r = 0;
  mpq_class s;
  int dim = 0;
  std::string name;

  int slot(int j) const { return q * j + r; }
  mpq_class lhs(const StatVector& st) const;
  bool holds(const StatVector& st) const { return lhs(st) <= s; }
  std::string str() const;
};

LinearInequality propagate(const LinearInequality& base, int q, int r, int n);

// The base inequalities (dimension 1, 2 and 3) behind the bank.
std::vector<LinearInequality> base_inequalities();
// Every propagated instance valid in dimension n.
std::vector<LinearInequality> known_inequality_bank(int n);

// ---------------------------------------------------------------------------

// Pairs at Hamming distance exactly 2 inside a subset of S_{n,n}.
std::int64_t pair_deficiency(const PointSet& b);

// Sum over cells of |A cap Gamma| / |Gamma|.
mpq_class lym_sum(const PointSet& a);

struct HocReport {
  mpq_class sum;
  // Unweighted Fujimura maximum on Delta_{n,k} and on the swapped indexing
  // Delta_{k,n}.
  std::int64_t c_mu = 0;
  std::int64_t c_mu_swapped = 0;
  bool violated = false;
};
HocReport hoc_check(const PointSet& a);

// ---------------------------------------------------------------------------
// Simplex-level patterns.

using SimplexSet = std::vector<SimplexPoint>;

mpz_class simplex_weight(const SimplexSet& b);
// Union of the cells Gamma_b, b in B, over [k]^n.
PointSet gamma_union(const SimplexSet& b, int n, int k);
// A simplex (a_1+r,...),...,(...,a_k+r), r >= 1, inside B.
std::optional<SimplexSet> find_simplex(const SimplexSet& b);
// An isosceles triple (a+r,b,c+s),(a+s,b,c+r),(a,b+r+s,c), r+s >= 1, in B.
std::optional<SimplexSet> find_isosceles(const SimplexSet& b);

// ---------------------------------------------------------------------------
// Slice defect functionals on 4D statistics (a,b,c,d,e).

struct DefectScores {
  mpq_class D;
  mpq_class s;
  mpq_class S;
  mpq_class s_slice;
};

DefectScores defect_scores(const std::vector<mpq_class>& abcde);
DefectScores defect_scores(const StatVector& st);

}  // namespace hjm
