#pragma once

// The cube [k]^n: words, lines, cells, spheres and slices.
//
// Words are stored as base-k indices. Digit 1 maps to numeral 0 and the first
// letter of the word is the most significant digit, so index order coincides
// with the lexicographic order of digit strings ("11" < "12" < ... < "33").

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "hjm/error.hpp"

namespace hjm {

using Index = std::uint64_t;

// Enumeration beyond 2^48 cells is refused.
inline constexpr Index kMaxCells = Index{1} << 48;

class Shape {
 public:
  Shape(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  Index cells() const { return cells_; }
  // k^i for 0 <= i <= n.
  Index power(int i) const { return pow_[i]; }
  // Place value of coordinate `pos` (0 = leftmost letter).
  Index place(int pos) const { return pow_[n_ - 1 - pos]; }
  // Letter (1..k) at coordinate `pos` of the word with index `idx`.
  int letter(Index idx, int pos) const {
    return static_cast<int>((idx / place(pos)) % k_) + 1;
  }

  friend bool operator==(const Shape& a, const Shape& b) {
    return a.n_ == b.n_ && a.k_ == b.k_;
  }

 private:
  int n_;
  int k_;
  Index cells_;
  std::vector<Index> pow_;
};

class Word {
 public:
  Word(const Shape& shape, std::vector<int> letters);
  static Word from_index(const Shape& shape, Index idx);
  // Parses a digit string such as "1123"; n is the string length.
  static Word parse(int k, std::string_view text);

  const Shape& shape() const { return shape_; }
  int n() const { return shape_.n(); }
  int k() const { return shape_.k(); }
  Index index() const { return index_; }
  const std::vector<int>& letters() const { return letters_; }
  int operator[](int pos) const { return letters_[pos]; }
  std::string str() const;

  friend bool operator==(const Word& a, const Word& b) {
    return a.shape_ == b.shape_ && a.index_ == b.index_;
  }

 private:
  Word(const Shape& shape, std::vector<int> letters, Index idx)
      : shape_(shape), letters_(std::move(letters)), index_(idx) {}

  Shape shape_;
  std::vector<int> letters_;
  Index index_;
};

std::string word_string(const Shape& shape, Index idx);
Index parse_word_index(const Shape& shape, std::string_view text);

// Iterable over all k^n words in index order.
class WordRange {
 public:
  class iterator {
   public:
    using value_type = Word;
    using difference_type = std::ptrdiff_t;
    iterator(const Shape* shape, Index idx) : shape_(shape), idx_(idx) {}
    Word operator*() const { return Word::from_index(*shape_, idx_); }
    iterator& operator++() {
      ++idx_;
      return *this;
    }
    bool operator==(const iterator& o) const { return idx_ == o.idx_; }
    bool operator!=(const iterator& o) const { return idx_ != o.idx_; }

   private:
    const Shape* shape_;
    Index idx_;
  };

  explicit WordRange(Shape shape) : shape_(std::move(shape)) {}
  iterator begin() const { return {&shape_, 0}; }
  iterator end() const { return {&shape_, shape_.cells()}; }
  Index size() const { return shape_.cells(); }

 private:
  Shape shape_;
};

WordRange enumerate_words(int n, int k);

int hamming(const Word& a, const Word& b);
int hamming(const Shape& shape, Index a, Index b);

// ---------------------------------------------------------------------------
// Lines.

enum class LineKind { kCombinatorial, kGeometric };

inline constexpr int kWild = -1;      // x
inline constexpr int kAntiWild = -2;  // x-bar, substituted by k+1-i

class LineTemplate {
 public:
  LineTemplate(const Shape& shape, std::vector<int> symbols, LineKind kind);
  // Parses "x2", "xX", "1x3": x is the wildcard, X its mirror.
  static LineTemplate parse(int k, std::string_view text, LineKind kind);

  const Shape& shape() const { return shape_; }
  LineKind kind() const { return kind_; }
  const std::vector<int>& symbols() const { return symbols_; }
  std::string str() const;

 private:
  Shape shape_;
  std::vector<int> symbols_;
  LineKind kind_;
};

// The k points of the line, the i-th substituting i for x (and k+1-i for X).
std::vector<Word> line_points(const LineTemplate& t);
std::vector<Index> line_indices(const LineTemplate& t);

// Combinatorial: all (k+1)^n - k^n templates. Geometric: one template per line
// (the first wildcard is always x), ((k+2)^n - k^n)/2 of them.
std::vector<LineTemplate> enumerate_lines(int n, int k, LineKind kind);
Index line_count(int n, int k, LineKind kind);

// Flat table of line point indices, k entries per line.
class LineTable {
 public:
  LineTable(const Shape& shape, LineKind kind);

  const Shape& shape() const { return shape_; }
  LineKind kind() const { return kind_; }
  std::size_t size() const { return points_.size() / shape_.k(); }
  const Index* line(std::size_t i) const { return &points_[i * shape_.k()]; }
  // Lines through a cell, as line numbers.
  const std::vector<std::uint32_t>& lines_through(Index cell) const {
    return incidence_[cell];
  }

 private:
  Shape shape_;
  LineKind kind_;
  std::vector<Index> points_;
  std::vector<std::vector<std::uint32_t>> incidence_;
};

// Streams every line without storing a table; `fn` returns false to stop.
// Returns false when stopped early.
bool for_each_line(const Shape& shape, LineKind kind,
                   const std::function<bool(const Index*)>& fn);

// Built once per (n, k, kind) and shared read-only afterwards.
std::shared_ptr<const LineTable> line_table(int n, int k, LineKind kind);

// ---------------------------------------------------------------------------
// Cells and the simplex Delta_{n,k}.

class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<int> coords);
  SimplexPoint(std::initializer_list<int> coords)
      : SimplexPoint(std::vector<int>(coords)) {}

  int k() const { return static_cast<int>(coords_.size()); }
  int n() const { return n_; }
  int operator[](int i) const { return coords_[i]; }
  const std::vector<int>& coords() const { return coords_; }
  std::string str() const;

  friend auto operator<=>(const SimplexPoint& a, const SimplexPoint& b) {
    return a.coords_ <=> b.coords_;
  }
  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  std::vector<int> coords_;
  int n_;
};

// All points of Delta_{n,k} in lexicographic order.
std::vector<SimplexPoint> simplex_points(int n, int k);

SimplexPoint cell_of(const Word& w);
SimplexPoint cell_of(const Shape& shape, Index idx);
// Multinomial n!/(a_1!...a_k!).
mpz_class cell_size(const SimplexPoint& p);
mpz_class multinomial(const std::vector<int>& parts);
mpz_class binomial(long n, long k);

// ---------------------------------------------------------------------------
// Subsets of [k]^n as dense bit arrays.
//
// Sets are ordered as binary numbers in which cell i carries weight 2^i; the
// smallest set of an orbit is its canonical form.

class PointSet {
 public:
  explicit PointSet(const Shape& shape);
  PointSet(const Shape& shape, const std::vector<Index>& cells);
  static PointSet full(const Shape& shape);
  // Requires k^n <= 64.
  static PointSet from_mask(const Shape& shape, std::uint64_t mask);
  static PointSet from_strings(const Shape& shape,
                               const std::vector<std::string>& words);

  const Shape& shape() const { return shape_; }
  int n() const { return shape_.n(); }
  int k() const { return shape_.k(); }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(Index i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
  bool contains(const Word& w) const { return contains(w.index()); }
  void insert(Index i);
  void erase(Index i);

  std::vector<Index> indices() const;
  // Sorted digit strings.
  std::vector<std::string> strings() const;
  std::string str() const;
  std::uint64_t mask() const;
  const std::vector<std::uint64_t>& blocks() const { return bits_; }

  PointSet& operator|=(const PointSet& o);
  PointSet& operator&=(const PointSet& o);
  PointSet& operator-=(const PointSet& o);
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.shape_ == b.shape_ && a.bits_ == b.bits_;
  }
  friend bool operator<(const PointSet& a, const PointSet& b);

 private:
  void check_same(const PointSet& o) const;

  Shape shape_;
  std::vector<std::uint64_t> bits_;
  std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------
// Spheres of [3]^n.

enum class Parity { kOdd, kEven, kAll };

struct SphereIndex {
  int i;  // number of coordinates different from 2
  Parity parity;
  friend bool operator==(const SphereIndex&, const SphereIndex&) = default;
};

// Parity is that of the number of 1s, and kAll for the centre point.
SphereIndex sphere_of(const Word& w);
// Number of coordinates equal to 2.
int twos(const Shape& shape, Index idx);
PointSet sphere_members(int i, Parity parity, int n);

// ---------------------------------------------------------------------------
// Slices: fixing one coordinate of [k]^n.

PointSet slice_embed(int axis, int value, const PointSet& inner);
PointSet slice_extract(int axis, int value, const PointSet& set);

// Index of the word obtained by inserting `value` at coordinate `axis`.
Index embed_index(const Shape& outer, int axis, int value, Index inner_idx);

}  // namespace hjm
