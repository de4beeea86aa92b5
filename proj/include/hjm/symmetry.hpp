#pragma once

// Symmetry groups of [k]^n.
//
// The combinatorial group permutes coordinates and the alphabet (order
// n!k!); the geometric group permutes coordinates and reflects individual
// coordinates by x -> k+1-x (order n!2^n). Both preserve the respective line
// families.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "hjm/cube.hpp"

namespace hjm {

enum class GroupKind { kCombinatorial, kGeometric };

// Largest group that canonical_form / orbit code will iterate.
inline constexpr std::uint64_t kMaxGroupOrder = 4'000'000;

class GroupElement {
 public:
  // perm[i] is the destination of coordinate i. For the combinatorial group
  // `alphabet` is a permutation of 1..k (alphabet[x-1] is the image of x);
  // for the geometric group `reflect` bit i reflects coordinate i.
  static GroupElement combinatorial(int k, std::vector<int> perm,
                                    std::vector<int> alphabet);
  static GroupElement geometric(int k, std::vector<int> perm,
                                std::uint32_t reflect);
  static GroupElement identity(GroupKind kind, int n, int k);

  GroupKind kind() const { return kind_; }
  int n() const { return static_cast<int>(perm_.size()); }
  int k() const { return k_; }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<int>& alphabet() const { return alphabet_; }
  std::uint32_t reflect() const { return reflect_; }

  Index apply(const Shape& shape, Index idx) const;
  // Letter that `letter` at coordinate `pos` becomes.
  int act(int pos, int letter) const {
    if (kind_ == GroupKind::kCombinatorial) return alphabet_[letter - 1];
    return (reflect_ >> pos) & 1u ? k_ + 1 - letter : letter;
  }

  // (a * b)(w) = a(b(w)).
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  GroupElement inverse() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  GroupElement(GroupKind kind, int k, std::vector<int> perm,
               std::vector<int> alphabet, std::uint32_t reflect);

  GroupKind kind_;
  int k_;
  std::vector<int> perm_;
  std::vector<int> alphabet_;
  std::uint32_t reflect_ = 0;
};

std::uint64_t group_order(GroupKind kind, int n, int k);
// Every element, identity first. Throws kGroupTooLarge beyond kMaxGroupOrder.
std::vector<GroupElement> group_elements(GroupKind kind, int n, int k);

Word apply(const GroupElement& g, const Word& w);
PointSet apply_set(const GroupElement& g, const PointSet& a);

// Image tables for sets of at most 64 cells, one byte-indexed table per
// group element and byte of the mask.
class MaskAction {
 public:
  MaskAction(const Shape& shape, const std::vector<GroupElement>& group);

  std::size_t order() const { return tables_.size() / bytes_ / 256; }
  std::uint64_t image(std::size_t g, std::uint64_t mask) const {
    const std::uint64_t* t = &tables_[g * bytes_ * 256];
    std::uint64_t out = 0;
    for (int b = 0; b < bytes_; ++b, mask >>= 8) out |= t[b * 256 + (mask & 255)];
    return out;
  }
  std::uint64_t canonical(std::uint64_t mask) const;
  // True when no image is smaller; `stab` receives the stabiliser order.
  bool is_canonical(std::uint64_t mask, std::size_t* stab = nullptr) const;

 private:
  int bytes_;
  std::vector<std::uint64_t> tables_;
};

// Smallest set of the orbit, in the PointSet order.
PointSet canonical_form(const PointSet& a, GroupKind kind);
std::uint64_t stabiliser_order(const PointSet& a, GroupKind kind);

struct OrbitCensus {
  std::uint64_t sets = 0;
  std::uint64_t classes = 0;
  // orbit size -> number of classes with that orbit size.
  std::map<std::uint64_t, std::uint64_t> histogram;

  std::string csv() const;
  // Sum of orbit_size * multiplicity.
  std::uint64_t weighted_total() const;
};

// Accepts sets one at a time and counts classes by canonical form.
class OrbitClassifier {
 public:
  OrbitClassifier(const Shape& shape, GroupKind kind);
  void add(const PointSet& a);
  OrbitCensus census() const;

 private:
  Shape shape_;
  GroupKind kind_;
  std::vector<GroupElement> group_;
  std::map<std::vector<std::uint64_t>, std::uint64_t> seen_;
  std::uint64_t sets_ = 0;
};

OrbitCensus classify_orbits(const std::vector<PointSet>& sets, GroupKind kind);

// One representative (the canonical form) per class of subsets of `stratum`
// accepted by `pred`. The stratum must be invariant under the group and have
// at most 32 cells. Representatives come out in increasing order.
std::vector<PointSet> orbit_representatives(
    const PointSet& stratum, GroupKind kind,
    const std::function<bool(const PointSet&)>& pred);

}  // namespace hjm
