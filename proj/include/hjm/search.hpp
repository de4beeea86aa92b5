#pragma once

// Exhaustive searches over subsets of [k]^n: maxima, enumerations, Pareto
// frontiers of statistics and the sharded four-dimensional slice search.
//
// Dense searches work on 128-bit masks, so they need k^n <= 128.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hjm/certificate.hpp"
#include "hjm/cube.hpp"
#include "hjm/symmetry.hpp"
#include "hjm/verify.hpp"

namespace hjm {

using Mask = unsigned __int128;

inline int popcount(Mask m) {
  return __builtin_popcountll(static_cast<std::uint64_t>(m)) +
         __builtin_popcountll(static_cast<std::uint64_t>(m >> 64));
}
inline Mask bit(std::size_t i) { return Mask{1} << i; }

Mask to_mask(const PointSet& a);
PointSet mask_set(const Shape& shape, Mask m);

// The forbidden lines of a predicate as lists of cells.
class LineSystem {
 public:
  LineSystem(const Shape& shape, Predicate pred);

  const Shape& shape() const { return shape_; }
  Predicate predicate() const { return pred_; }
  int arity() const { return arity_; }
  std::size_t size() const { return points_.size() / arity_; }
  const Index* line(std::size_t i) const { return &points_[i * arity_]; }
  const std::vector<std::uint32_t>& through(Index cell) const { return through_[cell]; }

 private:
  Shape shape_;
  Predicate pred_;
  int arity_;
  std::vector<Index> points_;
  std::vector<std::vector<std::uint32_t>> through_;
};

// For each cell, the other points of every line through it, as masks.
class Incidence {
 public:
  Incidence(const Shape& shape, Predicate pred);

  const Shape& shape() const { return shape_; }
  std::size_t cells() const { return others_.size(); }
  const std::vector<Mask>& others(std::size_t c) const { return others_[c]; }
  // True when adding c to `set` completes a line.
  bool closes(Mask set, std::size_t c) const;
  // Cells outside `set` whose addition would complete a line.
  Mask blocked(Mask set) const;
  // `blocked` after adding c to set, given blocked(set).
  Mask blocked_after(Mask set, Mask blocked, std::size_t c) const;

 private:
  Shape shape_;
  std::vector<std::vector<Mask>> others_;
};

// ---------------------------------------------------------------------------

struct MaxSetResult {
  std::int64_t size = 0;
  // Every maximum set, in increasing order (when collected).
  std::vector<PointSet> witnesses;
  // Their distinct canonical forms.
  std::vector<PointSet> classes;
  std::uint64_t nodes = 0;
};

// Largest subset of [k]^n satisfying `pred`. Exhaustive for k^n <= 64; the
// n = 4 Moser and cap-set cases use dedicated searches. With `all` every
// maximum set is collected.
MaxSetResult max_set(int n, int k, Predicate pred, bool all = true);

// Number of subsets satisfying `pred`; `fn` sees each one.
std::uint64_t enumerate_all(int n, int k, Predicate pred,
                            const std::function<void(Mask)>& fn = {});

// ---------------------------------------------------------------------------

class ParetoFrontier {
 public:
  struct Entry {
    StatVector stats;
    PointSet witness;
  };

  explicit ParetoFrontier(int n = 0) : n_(n) {}

  int n() const { return n_; }
  std::size_t size() const { return entries_.size(); }
  // Sorted by statistics, descending.
  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<StatVector> vectors() const;

  bool dominated(const std::vector<std::int64_t>& a) const;
  // Adds the vector unless it is dominated; an equal vector keeps the
  // smaller witness. Returns true when the frontier changed.
  bool insert(const StatVector& v, const PointSet& witness);
  void merge(const ParetoFrontier& o);

  // Entries not dominated by any convex combination of the other entries.
  std::vector<StatVector> extremal() const;
  // Entries whose witness fails to re-verify or has other statistics.
  std::vector<std::string> audit(Predicate pred) const;

 private:
  int n_;
  std::vector<Entry> entries_;
};

// Exact frontier of k = 3 sets by full enumeration, n <= 3.
ParetoFrontier pareto(int n, Predicate pred);

// The n = 3 frontier assembled from 2D slices with a table of middle-slice
// frontiers indexed by excluded cells.
ParetoFrontier slice_search3();
// Frontier sizes of the 512 middle-slice tables.
std::vector<std::size_t> middle_frontier_sizes();

// Frontier of 3D Moser sets inside the allowed 27-bit set.
ParetoFrontier moser3_frontier_within(std::uint32_t allowed);

// ---------------------------------------------------------------------------
// Four-dimensional slice search, one shard per class of A cap S_{4,4} with at
// least three points.

struct ShardState {
  int shard = -1;
  bool complete = false;
  std::uint64_t progress = 0;  // first-slice candidates finished
  std::uint64_t total = 0;     // first-slice candidates
  ParetoFrontier frontier{4};
  std::uint64_t memo_hits = 0;
  std::uint64_t memo_misses = 0;
  double seconds = 0;
};

class Pareto4Search {
 public:
  Pareto4Search();

  std::size_t shards() const { return reps_.size(); }
  const PointSet& rep(std::size_t i) const { return reps_[i]; }
  // Shards whose corner set has at least `a` points.
  std::vector<int> shards_with_corners(int a) const;

  // Runs (or resumes) a shard; `checkpoint` is called every `every` seconds
  // with the partial state and once at the end.
  ShardState run(int shard, const ShardState* resume = nullptr,
                 const std::function<void(const ShardState&)>& checkpoint = {},
                 double every = 30) const;

 private:
  std::vector<PointSet> reps_;
};

void write_checkpoint(const std::string& path, const ShardState& s);
ShardState read_checkpoint(const std::string& path);
// Union of shard frontiers, independent of order.
ParetoFrontier merge_shards(const std::vector<ShardState>& shards);

// Rows of a frontier with a_0 >= a, as (a, b, c, d, e) vectors.
std::vector<StatVector> rows_from(const ParetoFrontier& f, int a);
// Clauses of the large-set statistics proposition that fail on the frontier.
std::vector<std::string> check_stat_clauses(const ParetoFrontier& f);

// ---------------------------------------------------------------------------

// Largest Moser set in [3]^4, by slices with a dense table of largest Moser
// subsets of [3]^3.
MaxSetResult moser_max_4d();

// Number of Moser sets in [3]^n (n <= 4) with exactly these statistics.
std::uint64_t count_by_statistics(const StatVector& stats);
// Calls fn on every such set (n = 4).
void for_each_with_statistics(const StatVector& stats,
                              const std::function<void(const PointSet&)>& fn);

struct GoodSetReport {
  std::vector<PointSet> sets;
  std::vector<std::array<int, 4>> types;
  std::size_t classes = 0;
  bool all_match = false;  // every set equals good_set of its type
};
GoodSetReport good_set_classify();

// Census of the 3D Moser sets under the 48-element geometric group.
OrbitCensus moser3_census();

// Randomised local search; deterministic for a given seed. `budget` is the
// number of moves.
Certificate heuristic_max(int n, int k, Predicate pred, std::uint64_t budget,
                          std::uint64_t seed);

}  // namespace hjm
