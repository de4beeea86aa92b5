#include "hjm/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>
#include <memory>
#include <sstream>
#include <tuple>

namespace hjm {

GroupElement::GroupElement(GroupKind kind, int k, std::vector<int> perm,
                           std::vector<int> alphabet, std::uint32_t reflect)
    : kind_(kind),
      k_(k),
      perm_(std::move(perm)),
      alphabet_(std::move(alphabet)),
      reflect_(reflect) {
  std::vector<int> p = perm_;
  std::sort(p.begin(), p.end());
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    require(p[i] == i, ErrorCode::kInvalidArgument,
            "coordinate map is not a permutation");
  if (kind_ == GroupKind::kCombinatorial) {
    std::vector<int> a = alphabet_;
    std::sort(a.begin(), a.end());
    for (int i = 0; i < k; ++i)
      require(static_cast<int>(a.size()) == k && a[i] == i + 1,
              ErrorCode::kInvalidArgument,
              "alphabet map is not a permutation");
  } else {
    require(perm_.size() <= 32, ErrorCode::kInvalidArgument,
            "reflection mask limited to 32 coordinates");
  }
}

GroupElement GroupElement::combinatorial(int k, std::vector<int> perm,
                                         std::vector<int> alphabet) {
  return GroupElement(GroupKind::kCombinatorial, k, std::move(perm),
                      std::move(alphabet), 0);
}

GroupElement GroupElement::geometric(int k, std::vector<int> perm,
                                     std::uint32_t reflect) {
  return GroupElement(GroupKind::kGeometric, k, std::move(perm), {}, reflect);
}

GroupElement GroupElement::identity(GroupKind kind, int n, int k) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (kind == GroupKind::kGeometric) return geometric(k, perm, 0);
  std::vector<int> alpha(k);
  std::iota(alpha.begin(), alpha.end(), 1);
  return combinatorial(k, perm, alpha);
}

Index GroupElement::apply(const Shape& shape, Index idx) const {
  Index out = 0;
  for (int pos = shape.n() - 1; pos >= 0; --pos) {
    int letter = static_cast<int>(idx % k_) + 1;
    idx /= k_;
    out += static_cast<Index>(act(pos, letter) - 1) * shape.place(perm_[pos]);
  }
  return out;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  require(a.kind_ == b.kind_ && a.k_ == b.k_ && a.n() == b.n(),
          ErrorCode::kDimensionMismatch, "composing incompatible elements");
  std::vector<int> perm(b.n());
  for (int i = 0; i < b.n(); ++i) perm[i] = a.perm_[b.perm_[i]];
  if (a.kind_ == GroupKind::kCombinatorial) {
    std::vector<int> alpha(a.k_);
    for (int x = 0; x < a.k_; ++x) alpha[x] = a.alphabet_[b.alphabet_[x] - 1];
    return GroupElement::combinatorial(a.k_, perm, alpha);
  }
  std::uint32_t r = 0;
  for (int i = 0; i < b.n(); ++i)
    r |= (((b.reflect_ >> i) ^ (a.reflect_ >> b.perm_[i])) & 1u) << i;
  return GroupElement::geometric(a.k_, perm, r);
}

GroupElement GroupElement::inverse() const {
  std::vector<int> inv(n());
  for (int i = 0; i < n(); ++i) inv[perm_[i]] = i;
  if (kind_ == GroupKind::kCombinatorial) {
    std::vector<int> alpha(k_);
    for (int x = 0; x < k_; ++x) alpha[alphabet_[x] - 1] = x + 1;
    return combinatorial(k_, inv, alpha);
  }
  std::uint32_t r = 0;
  for (int j = 0; j < n(); ++j) r |= ((reflect_ >> inv[j]) & 1u) << j;
  return geometric(k_, inv, r);
}

std::uint64_t group_order(GroupKind kind, int n, int k) {
  std::uint64_t r = 1;
  auto mul = [&](std::uint64_t f) {
    if (r > kMaxGroupOrder * 64) return;
    r *= f;
  };
  for (int i = 2; i <= n; ++i) mul(i);
  if (kind == GroupKind::kCombinatorial)
    for (int i = 2; i <= k; ++i) mul(i);
  else
    for (int i = 0; i < n; ++i) mul(2);
  return r;
}

std::vector<GroupElement> group_elements(GroupKind kind, int n, int k) {
  require(group_order(kind, n, k) <= kMaxGroupOrder, ErrorCode::kGroupTooLarge,
          "symmetry group too large to iterate");
  std::vector<GroupElement> out;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (kind == GroupKind::kGeometric) {
      for (std::uint32_t r = 0; r < (std::uint32_t{1} << n); ++r)
        out.push_back(GroupElement::geometric(k, perm, r));
    } else {
      std::vector<int> alpha(k);
      std::iota(alpha.begin(), alpha.end(), 1);
      do {
        out.push_back(GroupElement::combinatorial(k, perm, alpha));
      } while (std::next_permutation(alpha.begin(), alpha.end()));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Word apply(const GroupElement& g, const Word& w) {
  require(g.n() == w.n() && g.k() == w.k(), ErrorCode::kDimensionMismatch,
          "group element and word differ in shape");
  return Word::from_index(w.shape(), g.apply(w.shape(), w.index()));
}

PointSet apply_set(const GroupElement& g, const PointSet& a) {
  require(g.n() == a.n() && g.k() == a.k(), ErrorCode::kDimensionMismatch,
          "group element and set differ in shape");
  PointSet out(a.shape());
  for (Index i : a.indices()) out.insert(g.apply(a.shape(), i));
  return out;
}

// ---------------------------------------------------------------------------

MaskAction::MaskAction(const Shape& shape,
                       const std::vector<GroupElement>& group)
    : bytes_(static_cast<int>((shape.cells() + 7) / 8)) {
  require(shape.cells() <= 64, ErrorCode::kInvalidArgument,
          "mask action needs at most 64 cells");
  tables_.assign(group.size() * bytes_ * 256, 0);
  for (std::size_t g = 0; g < group.size(); ++g) {
    std::vector<std::uint64_t> img(shape.cells());
    for (Index c = 0; c < shape.cells(); ++c)
      img[c] = std::uint64_t{1} << group[g].apply(shape, c);
    for (int b = 0; b < bytes_; ++b)
      for (int v = 0; v < 256; ++v) {
        std::uint64_t out = 0;
        for (int bit = 0; bit < 8; ++bit) {
          Index c = b * 8 + bit;
          if ((v >> bit) & 1 && c < shape.cells()) out |= img[c];
        }
        tables_[(g * bytes_ + b) * 256 + v] = out;
      }
  }
}

std::uint64_t MaskAction::canonical(std::uint64_t mask) const {
  std::uint64_t best = mask;
  for (std::size_t g = 0; g < order(); ++g) best = std::min(best, image(g, mask));
  return best;
}

bool MaskAction::is_canonical(std::uint64_t mask, std::size_t* stab) const {
  std::size_t s = 0;
  for (std::size_t g = 0; g < order(); ++g) {
    std::uint64_t m = image(g, mask);
    if (m < mask) return false;
    s += m == mask;
  }
  if (stab) *stab = s;
  return true;
}

namespace {

const MaskAction& cached_action(const Shape& shape, GroupKind kind) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<MaskAction>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(shape.n(), shape.k(), static_cast<int>(kind));
  auto& slot = cache[key];
  if (!slot)
    slot = std::make_unique<MaskAction>(
        shape, group_elements(kind, shape.n(), shape.k()));
  return *slot;
}

}  // namespace

PointSet canonical_form(const PointSet& a, GroupKind kind) {
  if (a.shape().cells() <= 64)
    return PointSet::from_mask(a.shape(),
                               cached_action(a.shape(), kind).canonical(a.mask()));
  PointSet best = a;
  for (const auto& g : group_elements(kind, a.n(), a.k())) {
    PointSet img = apply_set(g, a);
    if (img < best) best = std::move(img);
  }
  return best;
}

std::uint64_t stabiliser_order(const PointSet& a, GroupKind kind) {
  if (a.shape().cells() <= 64) {
    const MaskAction& act = cached_action(a.shape(), kind);
    std::uint64_t s = 0;
    for (std::size_t g = 0; g < act.order(); ++g) s += act.image(g, a.mask()) == a.mask();
    return s;
  }
  std::uint64_t s = 0;
  for (const auto& g : group_elements(kind, a.n(), a.k())) s += apply_set(g, a) == a;
  return s;
}

std::string OrbitCensus::csv() const {
  std::ostringstream os;
  os << "orbit_size,multiplicity\n";
  for (auto it = histogram.rbegin(); it != histogram.rend(); ++it)
    os << it->first << ',' << it->second << '\n';
  return os.str();
}

std::uint64_t OrbitCensus::weighted_total() const {
  std::uint64_t t = 0;
  for (const auto& [size, mult] : histogram) t += size * mult;
  return t;
}

OrbitClassifier::OrbitClassifier(const Shape& shape, GroupKind kind)
    : shape_(shape), kind_(kind) {}

void OrbitClassifier::add(const PointSet& a) {
  require(a.shape() == shape_, ErrorCode::kDimensionMismatch,
          "set shape differs from classifier shape");
  ++sets_;
  ++seen_[canonical_form(a, kind_).blocks()];
}

OrbitCensus OrbitClassifier::census() const {
  OrbitCensus c;
  c.sets = sets_;
  c.classes = seen_.size();
  const std::uint64_t order = group_order(kind_, shape_.n(), shape_.k());
  for (const auto& [blocks, count] : seen_) {
    PointSet rep(shape_);
    for (std::size_t w = 0; w < blocks.size(); ++w)
      for (int b = 0; b < 64; ++b)
        if ((blocks[w] >> b) & 1) rep.insert(w * 64 + b);
    ++c.histogram[order / stabiliser_order(rep, kind_)];
  }
  return c;
}

OrbitCensus classify_orbits(const std::vector<PointSet>& sets, GroupKind kind) {
  if (sets.empty()) return {};
  OrbitClassifier cl(sets.front().shape(), kind);
  for (const auto& s : sets) cl.add(s);
  return cl.census();
}

std::vector<PointSet> orbit_representatives(
    const PointSet& stratum, GroupKind kind,
    const std::function<bool(const PointSet&)>& pred) {
  const Shape& shape = stratum.shape();
  const std::vector<Index> cells = stratum.indices();
  const int m = static_cast<int>(cells.size());
  require(m <= 32, ErrorCode::kInvalidArgument,
          "orbit_representatives needs a stratum of at most 32 cells");
  std::map<Index, int> local;
  for (int i = 0; i < m; ++i) local[cells[i]] = i;

  auto group = group_elements(kind, shape.n(), shape.k());
  const int bytes = (m + 7) / 8;
  std::vector<std::uint32_t> tab(group.size() * bytes * 256, 0);
  for (std::size_t g = 0; g < group.size(); ++g) {
    std::vector<std::uint32_t> img(m);
    for (int i = 0; i < m; ++i) {
      auto it = local.find(group[g].apply(shape, cells[i]));
      require(it != local.end(), ErrorCode::kInvalidArgument,
              "stratum is not invariant under the group");
      img[i] = std::uint32_t{1} << it->second;
    }
    for (int b = 0; b < bytes; ++b)
      for (int v = 0; v < 256; ++v) {
        std::uint32_t out = 0;
        for (int bit = 0; bit < 8; ++bit)
          if ((v >> bit) & 1 && b * 8 + bit < m) out |= img[b * 8 + bit];
        tab[(g * bytes + b) * 256 + v] = out;
      }
  }

  std::vector<PointSet> out;
  const std::uint64_t limit = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    bool rep = true;
    for (std::size_t g = 0; g < group.size() && rep; ++g) {
      std::uint32_t im = 0;
      std::uint64_t v = mask;
      for (int b = 0; b < bytes; ++b, v >>= 8)
        im |= tab[(g * bytes + b) * 256 + (v & 255)];
      rep = im >= mask;
    }
    if (!rep) continue;
    PointSet s(shape);
    for (int i = 0; i < m; ++i)
      if ((mask >> i) & 1) s.insert(cells[i]);
    if (pred(s)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace hjm
