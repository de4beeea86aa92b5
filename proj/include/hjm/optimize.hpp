#pragma once

// Exact maximisation over subsets of the simplex Delta_{n,3}: weighted
// Fujimura sets (no upright triangle) and isosceles-free sets, weighted by
// cell size.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "hjm/cube.hpp"
#include "hjm/rational_lp.hpp"
#include "hjm/verify.hpp"

namespace hjm {

enum class PointOrder {
  kWeightDesc,  // descending weight, ties lexicographic
  kLex,
  kLexDesc,
};

struct OptOptions {
  // Wall-clock limit in seconds; 0 means none.
  double time_limit = 0;
  PointOrder order = PointOrder::kWeightDesc;
  // Collect every optimal set instead of a single witness.
  bool all_optima = false;
};

struct SimplexOptResult {
  mpz_class weight;
  SimplexSet best;  // sorted
  bool exact = true;
  // Upper bound on the optimum; equals weight when exact.
  mpz_class upper_bound;
  std::uint64_t nodes = 0;
  std::vector<SimplexSet> optima;
};

SimplexOptResult max_fujimura(int n, const OptOptions& opt = {});
SimplexOptResult max_moser_b(int n, const OptOptions& opt = {});

// Sum over the diagonals c - a = h of the heaviest cell on the diagonal.
mpz_class props_upper_bound(int n);

// Largest Fujimura subset of Delta_{n,k}, counting points.
std::int64_t fujimura_max_general(int n, int k);

// All upright triangles / isosceles triples of Delta_{n,3}, as point lists.
std::vector<SimplexSet> fujimura_triangles(int n);
std::vector<SimplexSet> isosceles_triples(int n);

}  // namespace hjm
