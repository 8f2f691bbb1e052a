#pragma once

// Dense bit-packed linear algebra over the two-element field.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swsheaf {

class GF2Vector {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  GF2Vector() = default;
  explicit GF2Vector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  static GF2Vector unit(std::size_t len, std::size_t index) {
    GF2Vector v(len);
    v.set(index, true);
    return v;
  }

  // Parses a string of '0'/'1' characters; index 0 is the leftmost character.
  static GF2Vector from_string(std::string_view bits) {
    GF2Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i, true);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("GF2Vector: expected '0' or '1' in \"" + std::string(bits) + "\"");
      }
    }
    return v;
  }

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const {
    check_index(i);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  bool operator[](std::size_t i) const { return get(i); }

  void set(std::size_t i, bool value) {
    check_index(i);
    const word_type mask = word_type{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }

  void flip(std::size_t i) {
    check_index(i);
    words_[i / kWordBits] ^= word_type{1} << (i % kWordBits);
  }

  bool any() const noexcept {
    return std::any_of(words_.begin(), words_.end(), [](word_type w) { return w != 0; });
  }
  bool is_zero() const noexcept { return !any(); }

  std::size_t popcount() const noexcept {
    std::size_t n = 0;
    for (word_type w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  // Index of the lowest set bit, or size() when the vector is zero.
  std::size_t first_set() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return len_;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) out.push_back(i);
    }
    return out;
  }

  bool dot(const GF2Vector& other) const {
    check_same_size(other);
    word_type acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
  }

  GF2Vector& operator^=(const GF2Vector& other) {
    check_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend GF2Vector operator^(GF2Vector lhs, const GF2Vector& rhs) {
    lhs ^= rhs;
    return lhs;
  }
  // Addition and subtraction coincide over GF(2).
  friend GF2Vector operator+(GF2Vector lhs, const GF2Vector& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  friend bool operator==(const GF2Vector&, const GF2Vector&) = default;
  friend bool operator<(const GF2Vector& a, const GF2Vector& b) {
    if (a.len_ != b.len_) return a.len_ < b.len_;
    return a.to_string() < b.to_string();
  }

  // Sub-vector [offset, offset + count).
  GF2Vector slice(std::size_t offset, std::size_t count) const {
    if (offset + count > len_) throw std::out_of_range("GF2Vector::slice out of range");
    GF2Vector out(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (get(offset + i)) out.set(i, true);
    }
    return out;
  }

  // Concatenation of this vector followed by `tail`.
  GF2Vector concat(const GF2Vector& tail) const {
    GF2Vector out(len_ + tail.len_);
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) out.set(i, true);
    }
    for (std::size_t i = 0; i < tail.len_; ++i) {
      if (tail.get(i)) out.set(len_ + i, true);
    }
    return out;
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  std::span<const word_type> words() const noexcept { return words_; }

 private:
  static std::size_t word_count(std::size_t len) { return (len + kWordBits - 1) / kWordBits; }

  void check_index(std::size_t i) const {
    if (i >= len_) throw std::out_of_range("GF2Vector index " + std::to_string(i) + " >= " + std::to_string(len_));
  }
  void check_same_size(const GF2Vector& other) const {
    if (other.len_ != len_) {
      throw std::invalid_argument("GF2Vector length mismatch: " + std::to_string(len_) + " vs " +
                                  std::to_string(other.len_));
    }
  }

  std::size_t len_ = 0;
  std::vector<word_type> words_;
};

class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows, GF2Vector(cols)) {}

  static GF2Matrix identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  // One string of '0'/'1' per row.
  static GF2Matrix from_rows(std::initializer_list<std::string_view> rows) {
    return from_rows(std::vector<std::string_view>(rows));
  }
  static GF2Matrix from_rows(const std::vector<std::string_view>& rows) {
    if (rows.empty()) return {};
    GF2Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw std::invalid_argument("GF2Matrix::from_rows: ragged rows");
      m.data_[r] = GF2Vector::from_string(rows[r]);
    }
    return m;
  }
  static GF2Matrix from_row_vectors(std::size_t cols, std::vector<GF2Vector> rows) {
    GF2Matrix m;
    m.rows_ = rows.size();
    m.cols_ = cols;
    for (const auto& r : rows) {
      if (r.size() != cols) throw std::invalid_argument("GF2Matrix::from_row_vectors: row length mismatch");
    }
    m.data_ = std::move(rows);
    return m;
  }
  // Matrix whose columns are the given vectors.
  static GF2Matrix from_columns(std::size_t rows, const std::vector<GF2Vector>& cols) {
    GF2Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw std::invalid_argument("GF2Matrix::from_columns: column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) {
        if (cols[c].get(r)) m.set(r, c, true);
      }
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return row_at(r).get(c); }
  void set(std::size_t r, std::size_t c, bool value) { row_at(r).set(c, value); }
  void flip(std::size_t r, std::size_t c) { row_at(r).flip(c); }

  const GF2Vector& row(std::size_t r) const { return row_at(r); }
  GF2Vector& row(std::size_t r) { return row_at(r); }

  GF2Vector column(std::size_t c) const {
    GF2Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (get(r, c)) v.set(r, true);
    }
    return v;
  }

  GF2Vector operator*(const GF2Vector& x) const {
    if (x.size() != cols_) {
      throw std::invalid_argument("GF2Matrix * GF2Vector: " + std::to_string(cols_) + " columns vs length " +
                                  std::to_string(x.size()));
    }
    GF2Vector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (data_[r].dot(x)) y.set(r, true);
    }
    return y;
  }

  GF2Matrix operator*(const GF2Matrix& rhs) const {
    if (rhs.rows_ != cols_) throw std::invalid_argument("GF2Matrix product: inner dimension mismatch");
    GF2Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t k = 0; k < cols_; ++k) {
        if (get(r, k)) out.data_[r] ^= rhs.data_[k];
      }
    }
    return out;
  }

  GF2Matrix& operator^=(const GF2Matrix& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) throw std::invalid_argument("GF2Matrix shape mismatch");
    for (std::size_t r = 0; r < rows_; ++r) data_[r] ^= other.data_[r];
    return *this;
  }
  friend GF2Matrix operator+(GF2Matrix lhs, const GF2Matrix& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  friend bool operator==(const GF2Matrix& a, const GF2Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  GF2Matrix transpose() const {
    GF2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (get(r, c)) t.set(c, r, true);
      }
    }
    return t;
  }

  // XOR-adds `block` into this matrix with its top-left corner at (row0, col0).
  void add_block(std::size_t row0, std::size_t col0, const GF2Matrix& block) {
    if (row0 + block.rows_ > rows_ || col0 + block.cols_ > cols_) {
      throw std::out_of_range("GF2Matrix::add_block out of range");
    }
    for (std::size_t r = 0; r < block.rows_; ++r) {
      for (std::size_t c = 0; c < block.cols_; ++c) {
        if (block.get(r, c)) flip(row0 + r, col0 + c);
      }
    }
  }

  // Rows stacked: [this; below].
  GF2Matrix vstack(const GF2Matrix& below) const {
    if (below.cols_ != cols_ && below.rows_ != 0 && rows_ != 0) throw std::invalid_argument("vstack: column mismatch");
    GF2Matrix out(rows_ + below.rows_, rows_ != 0 ? cols_ : below.cols_);
    out.add_block(0, 0, *this);
    out.add_block(rows_, 0, below);
    return out;
  }
  // Columns side by side: [this, right].
  GF2Matrix hstack(const GF2Matrix& right) const {
    if (right.rows_ != rows_) throw std::invalid_argument("hstack: row mismatch");
    GF2Matrix out(rows_, cols_ + right.cols_);
    out.add_block(0, 0, *this);
    out.add_block(0, cols_, right);
    return out;
  }

  bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const GF2Vector& v) { return v.is_zero(); });
  }

  // Debug dump: one line of '0'/'1' characters per row.
  std::string to_string() const {
    std::string s;
    for (const auto& r : data_) {
      s += r.to_string();
      s += '\n';
    }
    return s;
  }

 private:
  const GF2Vector& row_at(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("GF2Matrix row " + std::to_string(r) + " >= " + std::to_string(rows_));
    return data_[r];
  }
  GF2Vector& row_at(std::size_t r) {
    if (r >= rows_) throw std::out_of_range("GF2Matrix row " + std::to_string(r) + " >= " + std::to_string(rows_));
    return data_[r];
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GF2Vector> data_;
};

struct RrefResult {
  GF2Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

// Gauss-Jordan elimination. The reduced row echelon form over a field is unique.
inline RrefResult rref(const GF2Matrix& m) {
  RrefResult out{m, {}, 0};
  GF2Matrix& r = out.reduced;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < r.cols() && pivot_row < r.rows(); ++c) {
    std::size_t sel = pivot_row;
    while (sel < r.rows() && !r.get(sel, c)) ++sel;
    if (sel == r.rows()) continue;
    if (sel != pivot_row) std::swap(r.row(sel), r.row(pivot_row));
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i != pivot_row && r.get(i, c)) r.row(i) ^= r.row(pivot_row);
    }
    out.pivots.push_back(c);
    ++pivot_row;
  }
  out.rank = out.pivots.size();
  return out;
}

inline std::size_t rank(const GF2Matrix& m) { return rref(m).rank; }

// Null-space basis read off the RREF: one vector per free column, ordered by
// free-column index, with the free coordinate set and pivot coordinates solved.
inline std::vector<GF2Vector> kernel_basis(const GF2Matrix& m) {
  const RrefResult red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : red.pivots) is_pivot[p] = true;

  std::vector<GF2Vector> basis;
  basis.reserve(m.cols() - red.rank);
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    GF2Vector v(m.cols());
    v.set(f, true);
    for (std::size_t i = 0; i < red.rank; ++i) {
      if (red.reduced.get(i, f)) v.set(red.pivots[i], true);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incrementally maintained echelon basis of a subspace, for span membership.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return rows_.size(); }

  // Reduces v against the stored rows; the result is zero iff v is in the span.
  GF2Vector reduce(GF2Vector v) const {
    if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: length mismatch");
    for (const auto& [pivot, row] : rows_) {
      if (v.get(pivot)) v ^= row;
    }
    return v;
  }

  bool contains(const GF2Vector& v) const { return reduce(v).is_zero(); }

  // Returns true when v was independent of the current span and got added.
  bool insert(const GF2Vector& v) {
    GF2Vector r = reduce(v);
    if (r.is_zero()) return false;
    const std::size_t pivot = r.first_set();
    for (auto& [p, row] : rows_) {
      if (row.get(pivot)) row ^= r;
    }
    rows_.emplace_back(pivot, std::move(r));
    return true;
  }

 private:
  std::size_t dim_;
  std::vector<std::pair<std::size_t, GF2Vector>> rows_;
};

// Complement of the column space: standard basis vectors e_i, taken in
// increasing i, that extend a basis of image(m) to the whole target space.
inline std::vector<GF2Vector> cokernel_basis(const GF2Matrix& m) {
  EchelonBasis span(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) span.insert(m.column(c));
  std::vector<GF2Vector> reps;
  for (std::size_t i = 0; i < m.rows() && span.size() < m.rows(); ++i) {
    GF2Vector e = GF2Vector::unit(m.rows(), i);
    if (span.insert(e)) reps.push_back(std::move(e));
  }
  return reps;
}

inline bool in_span(std::span<const GF2Vector> vectors, const GF2Vector& target) {
  EchelonBasis span(target.size());
  for (const auto& v : vectors) {
    if (v.size() != target.size()) throw std::invalid_argument("in_span: length mismatch");
    span.insert(v);
  }
  return span.contains(target);
}

inline std::size_t span_dimension(std::span<const GF2Vector> vectors, std::size_t dim) {
  EchelonBasis span(dim);
  for (const auto& v : vectors) span.insert(v);
  return span.size();
}

// True when both families span the same subspace of F_2^dim.
inline bool same_span(std::span<const GF2Vector> a, std::span<const GF2Vector> b, std::size_t dim) {
  EchelonBasis sa(dim);
  for (const auto& v : a) sa.insert(v);
  EchelonBasis sb(dim);
  for (const auto& v : b) sb.insert(v);
  if (sa.size() != sb.size()) return false;
  return std::all_of(b.begin(), b.end(), [&](const GF2Vector& v) { return sa.contains(v); });
}

}  // namespace swsheaf
