#include "hjm/cube.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <tuple>

namespace hjm {

Shape::Shape(int n, int k) : n_(n), k_(k) {
  require(n >= 0, ErrorCode::kInvalidArgument, "dimension must be >= 0");
  require(k >= 1 && k <= 9, ErrorCode::kInvalidArgument,
          "alphabet size must be in 1..9");
  pow_.assign(n + 1, 1);
  for (int i = 1; i <= n; ++i) {
    require(pow_[i - 1] <= kMaxCells / k, ErrorCode::kDimensionOverflow,
            "k^n exceeds the 2^48 cell limit");
    pow_[i] = pow_[i - 1] * k;
  }
  cells_ = pow_[n];
}

Word::Word(const Shape& shape, std::vector<int> letters)
    : shape_(shape), letters_(std::move(letters)), index_(0) {
  require(static_cast<int>(letters_.size()) == shape.n(),
          ErrorCode::kDimensionMismatch, "word length differs from n");
  for (int d : letters_) {
    require(d >= 1 && d <= shape.k(), ErrorCode::kInvalidArgument,
            "letter out of range");
    index_ = index_ * shape.k() + (d - 1);
  }
}

Word Word::from_index(const Shape& shape, Index idx) {
  require(idx < shape.cells(), ErrorCode::kInvalidArgument,
          "word index out of range");
  std::vector<int> letters(shape.n());
  Index r = idx;
  for (int pos = shape.n() - 1; pos >= 0; --pos) {
    letters[pos] = static_cast<int>(r % shape.k()) + 1;
    r /= shape.k();
  }
  return Word(shape, std::move(letters), idx);
}

Word Word::parse(int k, std::string_view text) {
  Shape shape(static_cast<int>(text.size()), k);
  return from_index(shape, parse_word_index(shape, text));
}

std::string Word::str() const { return word_string(shape_, index_); }

std::string word_string(const Shape& shape, Index idx) {
  std::string s(shape.n(), '0');
  for (int pos = shape.n() - 1; pos >= 0; --pos) {
    s[pos] = static_cast<char>('1' + idx % shape.k());
    idx /= shape.k();
  }
  return s;
}

Index parse_word_index(const Shape& shape, std::string_view text) {
  require(static_cast<int>(text.size()) == shape.n(),
          ErrorCode::kDimensionMismatch,
          "word '" + std::string(text) + "' has wrong length");
  Index idx = 0;
  for (char c : text) {
    int d = c - '0';
    require(d >= 1 && d <= shape.k(), ErrorCode::kMalformedInput,
            "bad letter in word '" + std::string(text) + "'");
    idx = idx * shape.k() + (d - 1);
  }
  return idx;
}

WordRange enumerate_words(int n, int k) { return WordRange(Shape(n, k)); }

int hamming(const Word& a, const Word& b) {
  require(a.shape() == b.shape(), ErrorCode::kDimensionMismatch,
          "hamming: words of different shape");
  return hamming(a.shape(), a.index(), b.index());
}

int hamming(const Shape& shape, Index a, Index b) {
  int d = 0;
  for (int i = 0; i < shape.n(); ++i) {
    d += (a % shape.k()) != (b % shape.k());
    a /= shape.k();
    b /= shape.k();
  }
  return d;
}

// ---------------------------------------------------------------------------

LineTemplate::LineTemplate(const Shape& shape, std::vector<int> symbols,
                           LineKind kind)
    : shape_(shape), symbols_(std::move(symbols)), kind_(kind) {
  require(static_cast<int>(symbols_.size()) == shape.n(),
          ErrorCode::kDimensionMismatch, "template length differs from n");
  bool wild = false;
  for (int s : symbols_) {
    if (s == kWild || s == kAntiWild) {
      wild = true;
      require(!(s == kAntiWild && kind == LineKind::kCombinatorial),
              ErrorCode::kInvalidArgument,
              "combinatorial template with mirrored wildcard");
    } else {
      require(s >= 1 && s <= shape.k(), ErrorCode::kInvalidArgument,
              "template letter out of range");
    }
  }
  require(wild, ErrorCode::kInvalidArgument, "template without wildcard");
}

LineTemplate LineTemplate::parse(int k, std::string_view text, LineKind kind) {
  std::vector<int> sym;
  for (char c : text) {
    if (c == 'x')
      sym.push_back(kWild);
    else if (c == 'X')
      sym.push_back(kAntiWild);
    else
      sym.push_back(c - '0');
  }
  return LineTemplate(Shape(static_cast<int>(text.size()), k), std::move(sym),
                      kind);
}

std::string LineTemplate::str() const {
  std::string s;
  for (int v : symbols_)
    s += v == kWild ? 'x' : v == kAntiWild ? 'X' : static_cast<char>('0' + v);
  return s;
}

std::vector<Index> line_indices(const LineTemplate& t) {
  const Shape& sh = t.shape();
  Index base = 0, wild = 0, anti = 0;
  for (int pos = 0; pos < sh.n(); ++pos) {
    int s = t.symbols()[pos];
    if (s == kWild)
      wild += sh.place(pos);
    else if (s == kAntiWild)
      anti += sh.place(pos);
    else
      base += static_cast<Index>(s - 1) * sh.place(pos);
  }
  std::vector<Index> out;
  for (int i = 1; i <= sh.k(); ++i)
    out.push_back(base + (i - 1) * wild + (sh.k() - i) * anti);
  return out;
}

std::vector<Word> line_points(const LineTemplate& t) {
  std::vector<Word> out;
  for (Index i : line_indices(t)) out.push_back(Word::from_index(t.shape(), i));
  return out;
}

namespace {

// Odometer over symbol vectors. Symbol codes: 0..k-1 letters, k = x, k+1 = X.
template <class Fn>
void for_each_symbols(const Shape& sh, LineKind kind, Fn&& fn) {
  const int n = sh.n(), k = sh.k();
  const int alphabet = kind == LineKind::kGeometric ? k + 2 : k + 1;
  std::vector<int> code(n, 0);
  while (true) {
    int first_wild = -1;
    for (int pos = 0; pos < n && first_wild < 0; ++pos)
      if (code[pos] >= k) first_wild = code[pos];
    if (first_wild == k) fn(code);
    int pos = n - 1;
    while (pos >= 0 && ++code[pos] == alphabet) code[pos--] = 0;
    if (pos < 0) break;
  }
}

}  // namespace

std::vector<LineTemplate> enumerate_lines(int n, int k, LineKind kind) {
  require(n >= 1, ErrorCode::kInvalidArgument, "lines need n >= 1");
  Shape sh(n, k);
  std::vector<LineTemplate> out;
  for_each_symbols(sh, kind, [&](const std::vector<int>& code) {
    std::vector<int> sym(n);
    for (int i = 0; i < n; ++i)
      sym[i] = code[i] < k ? code[i] + 1 : code[i] == k ? kWild : kAntiWild;
    out.emplace_back(sh, std::move(sym), kind);
  });
  return out;
}

Index line_count(int n, int k, LineKind kind) {
  Shape sh(n, k);
  mpz_class a, b;
  mpz_ui_pow_ui(b.get_mpz_t(), k, n);
  if (kind == LineKind::kCombinatorial) {
    mpz_ui_pow_ui(a.get_mpz_t(), k + 1, n);
    return static_cast<Index>(mpz_class(a - b).get_ui());
  }
  mpz_ui_pow_ui(a.get_mpz_t(), k + 2, n);
  return static_cast<Index>(mpz_class((a - b) / 2).get_ui());
}

LineTable::LineTable(const Shape& shape, LineKind kind)
    : shape_(shape), kind_(kind) {
  require(shape.n() >= 1, ErrorCode::kInvalidArgument, "lines need n >= 1");
  const int n = shape.n(), k = shape.k();
  points_.reserve(line_count(n, k, kind) * k);
  for_each_symbols(shape, kind, [&](const std::vector<int>& code) {
    Index base = 0, wild = 0, anti = 0;
    for (int pos = 0; pos < n; ++pos) {
      if (code[pos] < k)
        base += static_cast<Index>(code[pos]) * shape.place(pos);
      else if (code[pos] == k)
        wild += shape.place(pos);
      else
        anti += shape.place(pos);
    }
    for (int i = 1; i <= k; ++i)
      points_.push_back(base + (i - 1) * wild + (k - i) * anti);
  });
  incidence_.resize(shape.cells());
  for (std::size_t l = 0; l < size(); ++l)
    for (int i = 0; i < k; ++i)
      incidence_[points_[l * k + i]].push_back(static_cast<std::uint32_t>(l));
}

bool for_each_line(const Shape& shape, LineKind kind,
                   const std::function<bool(const Index*)>& fn) {
  require(shape.n() >= 1, ErrorCode::kInvalidArgument, "lines need n >= 1");
  const int n = shape.n(), k = shape.k();
  std::vector<Index> pts(k);
  bool go = true;
  for_each_symbols(shape, kind, [&](const std::vector<int>& code) {
    if (!go) return;
    Index base = 0, wild = 0, anti = 0;
    for (int pos = 0; pos < n; ++pos) {
      if (code[pos] < k)
        base += static_cast<Index>(code[pos]) * shape.place(pos);
      else if (code[pos] == k)
        wild += shape.place(pos);
      else
        anti += shape.place(pos);
    }
    for (int i = 1; i <= k; ++i) pts[i - 1] = base + (i - 1) * wild + (k - i) * anti;
    go = fn(pts.data());
  });
  return go;
}

std::shared_ptr<const LineTable> line_table(int n, int k, LineKind kind) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const LineTable>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, k, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const LineTable>(Shape(n, k), kind);
  cache.emplace(key, t);
  return t;
}

// ---------------------------------------------------------------------------

SimplexPoint::SimplexPoint(std::vector<int> coords)
    : coords_(std::move(coords)), n_(0) {
  for (int c : coords_) {
    require(c >= 0, ErrorCode::kInvalidArgument,
            "simplex coordinate must be >= 0");
    n_ += c;
  }
}

std::string SimplexPoint::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(coords_[i]);
  }
  return s + ")";
}

namespace {

void simplex_rec(int left, int k, std::vector<int>& cur,
                 std::vector<SimplexPoint>& out) {
  if (static_cast<int>(cur.size()) == k - 1) {
    cur.push_back(left);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= left; ++v) {
    cur.push_back(v);
    simplex_rec(left - v, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<SimplexPoint> simplex_points(int n, int k) {
  require(n >= 0 && k >= 1, ErrorCode::kInvalidArgument, "bad simplex size");
  std::vector<SimplexPoint> out;
  std::vector<int> cur;
  simplex_rec(n, k, cur, out);
  return out;
}

SimplexPoint cell_of(const Shape& shape, Index idx) {
  std::vector<int> c(shape.k(), 0);
  for (int i = 0; i < shape.n(); ++i) {
    ++c[idx % shape.k()];
    idx /= shape.k();
  }
  return SimplexPoint(std::move(c));
}

SimplexPoint cell_of(const Word& w) { return cell_of(w.shape(), w.index()); }

mpz_class multinomial(const std::vector<int>& parts) {
  mpz_class r = 1;
  long total = 0;
  for (int p : parts) {
    total += p;
    r *= binomial(total, p);
  }
  return r;
}

mpz_class cell_size(const SimplexPoint& p) { return multinomial(p.coords()); }

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

// ---------------------------------------------------------------------------

PointSet::PointSet(const Shape& shape)
    : shape_(shape), bits_((shape.cells() + 63) / 64, 0) {
  require(shape.cells() <= (Index{1} << 32), ErrorCode::kDimensionOverflow,
          "point set too large for a dense bit array");
}

PointSet::PointSet(const Shape& shape, const std::vector<Index>& cells)
    : PointSet(shape) {
  for (Index c : cells) insert(c);
}

PointSet PointSet::full(const Shape& shape) {
  PointSet s(shape);
  for (Index i = 0; i < shape.cells(); ++i) s.insert(i);
  return s;
}

PointSet PointSet::from_mask(const Shape& shape, std::uint64_t mask) {
  require(shape.cells() <= 64, ErrorCode::kInvalidArgument,
          "mask form needs at most 64 cells");
  PointSet s(shape);
  if (shape.cells() < 64) mask &= (std::uint64_t{1} << shape.cells()) - 1;
  s.bits_[0] = mask;
  s.size_ = std::popcount(mask);
  return s;
}

PointSet PointSet::from_strings(const Shape& shape,
                                const std::vector<std::string>& words) {
  PointSet s(shape);
  for (const auto& w : words) s.insert(parse_word_index(shape, w));
  return s;
}

void PointSet::insert(Index i) {
  require(i < shape_.cells(), ErrorCode::kInvalidArgument,
          "cell index out of range");
  std::uint64_t& b = bits_[i >> 6];
  std::uint64_t m = std::uint64_t{1} << (i & 63);
  if (!(b & m)) {
    b |= m;
    ++size_;
  }
}

void PointSet::erase(Index i) {
  require(i < shape_.cells(), ErrorCode::kInvalidArgument,
          "cell index out of range");
  std::uint64_t& b = bits_[i >> 6];
  std::uint64_t m = std::uint64_t{1} << (i & 63);
  if (b & m) {
    b &= ~m;
    --size_;
  }
}

std::vector<Index> PointSet::indices() const {
  std::vector<Index> out;
  out.reserve(size_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t b = bits_[w];
    while (b) {
      out.push_back(w * 64 + std::countr_zero(b));
      b &= b - 1;
    }
  }
  return out;
}

std::vector<std::string> PointSet::strings() const {
  std::vector<std::string> out;
  for (Index i : indices()) out.push_back(word_string(shape_, i));
  return out;
}

std::string PointSet::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& w : strings()) {
    if (!first) s += ',';
    s += w;
    first = false;
  }
  return s + "}";
}

std::uint64_t PointSet::mask() const {
  require(shape_.cells() <= 64, ErrorCode::kInvalidArgument,
          "mask form needs at most 64 cells");
  return bits_[0];
}

void PointSet::check_same(const PointSet& o) const {
  require(shape_ == o.shape_, ErrorCode::kDimensionMismatch,
          "point sets of different shape");
}

PointSet& PointSet::operator|=(const PointSet& o) {
  check_same(o);
  size_ = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    size_ += std::popcount(bits_[i] |= o.bits_[i]);
  return *this;
}

PointSet& PointSet::operator&=(const PointSet& o) {
  check_same(o);
  size_ = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    size_ += std::popcount(bits_[i] &= o.bits_[i]);
  return *this;
}

PointSet& PointSet::operator-=(const PointSet& o) {
  check_same(o);
  size_ = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    size_ += std::popcount(bits_[i] &= ~o.bits_[i]);
  return *this;
}

bool operator<(const PointSet& a, const PointSet& b) {
  a.check_same(b);
  for (std::size_t i = a.bits_.size(); i-- > 0;)
    if (a.bits_[i] != b.bits_[i]) return a.bits_[i] < b.bits_[i];
  return false;
}

// ---------------------------------------------------------------------------

int twos(const Shape& shape, Index idx) {
  int t = 0;
  for (int i = 0; i < shape.n(); ++i) {
    t += idx % shape.k() == 1;
    idx /= shape.k();
  }
  return t;
}

SphereIndex sphere_of(const Word& w) {
  require(w.k() == 3, ErrorCode::kInvalidArgument, "spheres need k = 3");
  int ones = 0, non2 = 0;
  for (int d : w.letters()) {
    ones += d == 1;
    non2 += d != 2;
  }
  if (non2 == 0) return {0, Parity::kAll};
  return {non2, ones % 2 ? Parity::kOdd : Parity::kEven};
}

PointSet sphere_members(int i, Parity parity, int n) {
  require(i >= 0 && i <= n, ErrorCode::kInvalidArgument,
          "sphere index out of range");
  require(i > 0 || parity == Parity::kAll, ErrorCode::kDegenerateSphere,
          "S_{0,n} is a single point and has no parity halves");
  Shape sh(n, 3);
  PointSet s(sh);
  for (Index idx = 0; idx < sh.cells(); ++idx) {
    int ones = 0, two = 0;
    Index r = idx;
    for (int p = 0; p < n; ++p) {
      ones += r % 3 == 0;
      two += r % 3 == 1;
      r /= 3;
    }
    if (n - two != i) continue;
    if (parity == Parity::kOdd && ones % 2 == 0) continue;
    if (parity == Parity::kEven && ones % 2 == 1) continue;
    s.insert(idx);
  }
  return s;
}

// ---------------------------------------------------------------------------

Index embed_index(const Shape& outer, int axis, int value, Index inner_idx) {
  const Index low = outer.power(outer.n() - 1 - axis);
  return (inner_idx / low) * low * outer.k() +
         static_cast<Index>(value - 1) * low + inner_idx % low;
}

PointSet slice_embed(int axis, int value, const PointSet& inner) {
  Shape outer(inner.n() + 1, inner.k());
  require(axis >= 0 && axis < outer.n(), ErrorCode::kInvalidArgument,
          "slice axis out of range");
  require(value >= 1 && value <= outer.k(), ErrorCode::kInvalidArgument,
          "slice value out of range");
  PointSet out(outer);
  for (Index i : inner.indices()) out.insert(embed_index(outer, axis, value, i));
  return out;
}

PointSet slice_extract(int axis, int value, const PointSet& set) {
  const Shape& outer = set.shape();
  require(outer.n() >= 1, ErrorCode::kInvalidArgument, "cannot slice [k]^0");
  require(axis >= 0 && axis < outer.n(), ErrorCode::kInvalidArgument,
          "slice axis out of range");
  require(value >= 1 && value <= outer.k(), ErrorCode::kInvalidArgument,
          "slice value out of range");
  Shape inner(outer.n() - 1, outer.k());
  PointSet out(inner);
  for (Index i = 0; i < inner.cells(); ++i)
    if (set.contains(embed_index(outer, axis, value, i))) out.insert(i);
  return out;
}

}  // namespace hjm
