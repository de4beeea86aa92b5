#pragma once

// Explicit lower-bound constructions for line-free and Moser sets.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hjm/cube.hpp"
#include "hjm/verify.hpp"

namespace hjm {

// ---------------------------------------------------------------------------
// Fujimura sets.

// {(a,b,c) in Delta_{n,3} : a + 2b != j mod 3}.
SimplexSet b_jn(int j, int n);
// B_{0,n} with the corner triangles trimmed, n in 4..7.
SimplexSet trimmed_b0(int n);

// The shifted-group construction for n = 3m, followed by removal of one
// vertex from every remaining upright triangle.
struct MediumResult {
  SimplexSet b;
  std::size_t removed = 0;  // points dropped by the repair
  mpz_class weight;
  mpq_class density;
};
MediumResult medium_construction(int m);

// Points of B whose first digits are `prefix` ("1" or "12"), as a subset of
// Delta_{n - |prefix|, 3}.
SimplexSet reduce_digit(const SimplexSet& b, const std::string& prefix);

// E_0, E_1, E_2 and X in [3]^4.
struct ESets {
  PointSet e0, e1, e2, x;
};
ESets e_sets();
PointSet xyz_set();
// The four extremal 6-point sets x, y, z, w of [3]^2.
std::vector<PointSet> extremal_2d();

// ---------------------------------------------------------------------------
// Progression-free sets and the circulant construction.

// A subset of {1..N} without a k-term progression; digit-sphere method for
// k = 3 (best over parameters), greedy otherwise.
std::vector<std::int64_t> behrend_set(std::int64_t n, int k);
bool has_k_ap(const std::vector<std::int64_t>& s, int k);
// Largest progression-free subset size of {1..N}, by exhaustive search.
std::int64_t r3_exact(std::int64_t n);

// Circulant matrix with first row (1, 2, ..., k-1).
std::vector<std::vector<std::int64_t>> circulant_matrix(int k);
mpz_class determinant(const std::vector<std::vector<std::int64_t>>& m);
// det(M) * M^{-1}, integral by Cramer's rule.
std::vector<std::vector<std::int64_t>> adjugate(const std::vector<std::vector<std::int64_t>>& m);

struct CirculantResult {
  SimplexSet b;
  std::vector<std::int64_t> s;  // the progression-free set used
  mpz_class det;
};
CirculantResult circulant_construction(int n, int k);

struct AsymptoticParams {
  int k = 3;
  int ell = 1;
  double alpha = 0;
  double beta = 0;
};
AsymptoticParams asymptotic_params(int k);

// ---------------------------------------------------------------------------
// Moser constructions.

// S_{i,n} (points with i coordinates different from 2).
PointSet sphere_lb(int n, int i);
// S_{i-1,n} together with the even half of S_{i,n}.
PointSet semisphere_lb(int n, int i);
// Semisphere with the largest size over i.
PointSet best_semisphere(int n);

class CodeTable {
 public:
  CodeTable();
  // A(n,d); throws kBudgetExceeded when the entry is unknown.
  std::int64_t at(int n, int d) const;
  bool has(int n, int d) const;
  const std::map<std::pair<int, int>, std::int64_t>& stored() const { return table_; }
  std::vector<std::string> warnings() const { return warnings_; }

 private:
  std::map<std::pair<int, int>, std::int64_t> table_;
  std::vector<std::string> warnings_;
};

struct CodingBound {
  int n = 0;
  int best_k = 0;
  std::int64_t value = 0;
  std::vector<std::int64_t> per_k;  // value for k = 0..n
};
CodingBound coding_bound(int n, const CodeTable& table = CodeTable());

// A binary code of length n, minimum distance d and `size` words, as bit
// masks, or nothing if the search fails within the node budget.
std::optional<std::vector<std::uint32_t>> find_code(int n, int d, std::int64_t size,
                                                    std::uint64_t budget = 2000000);
// The Moser set behind the coding bound for k = best_k, when codes are found.
std::optional<PointSet> coding_witness(int n, const CodeTable& table = CodeTable());

// Gamma union of an isosceles-free B; throws if B has an isosceles triple.
PointSet ab_moser(const SimplexSet& b, int n);

// Extra points added to A_B. Each must lie in a cell that is only the lower
// end of degenerate isosceles pairs (a'+r,b',c'+r),(a',b'+2r,c') with the
// upper end in B, and two extra points of one cell may not be at Hamming
// distance 2r for such an r.
PointSet augment_ab(const SimplexSet& b, int n, const std::vector<std::string>& extra);

// The published n = 5 and n = 10 examples.
SimplexSet moser_b5();
std::vector<std::string> moser_b5_extra();
SimplexSet moser_b10();
std::vector<std::string> moser_b10_extra();

// Largest subset of Gamma_{a,b,c} in which no two points differ by swapping
// one 1 with one 3 (exhaustive, small cells only).
std::int64_t neighbour_free_max(int a, int b, int c);

// S_{i-1,n} + half of S_{i,n} + A' in S_{i+1,n}; the half is the one that
// makes the result Moser (even preferred).
struct ShellResult {
  PointSet set{Shape(0, 3)};
  Parity parity = Parity::kEven;
};
ShellResult sphere_shell_lb(int n, int i, const std::vector<std::string>& a_prime);
// The published A' lists for (n, i) = (4, 3), (5, 4), (6, 5).
ShellResult sphere_shell_lb(int n, int i);

// Geometric-line-free sets in [k]^n for k = 4, 5, 6.
PointSet higher_k(int n, int k);

// The good set of type xyzw in [3]^4.
PointSet good_set(int x, int y, int z, int w);

}  // namespace hjm
