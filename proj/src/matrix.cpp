#include "cmdp/matrix.hpp"

#include <algorithm>
#include <string>

namespace cmdp {

namespace {

struct Echelon {
  std::vector<std::size_t> pivot_cols;  // pivot column of each nonzero row, in order
};

// Reduced row echelon form on the first `cols` columns of the augmented
// row-major matrix `a` (width `width`). Rows are permuted in place.
Echelon rref(const Field& f, std::vector<Value>& a, std::size_t rows, std::size_t width, std::size_t cols) {
  Echelon e;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    std::size_t piv = prow;
    while (piv < rows && a[piv * width + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != prow)
      std::swap_ranges(a.begin() + piv * width, a.begin() + (piv + 1) * width, a.begin() + prow * width);
    Value* pr = a.data() + prow * width;
    const Value inv = f.inv(pr[c]);
    for (std::size_t k = c; k < width; ++k) pr[k] = f.mul(pr[k], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == prow) continue;
      Value* rr = a.data() + r * width;
      const Value factor = rr[c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < width; ++k) rr[k] = f.sub(rr[k], f.mul(factor, pr[k]));
    }
    e.pivot_cols.push_back(c);
    ++prow;
  }
  return e;
}

std::vector<Value> augmented(const GfMatrix& a, std::span<const Value> b) {
  if (b.size() != a.rows())
    throw std::invalid_argument("right-hand side has " + std::to_string(b.size()) + " entries, expected " +
                                std::to_string(a.rows()));
  const std::size_t w = a.cols() + 1;
  std::vector<Value> aug(a.rows() * w);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), aug.begin() + r * w);
    aug[r * w + a.cols()] = b[r];
  }
  return aug;
}

void check_consistent(const std::vector<Value>& aug, std::size_t rows, std::size_t w, std::size_t rank) {
  for (std::size_t r = rank; r < rows; ++r)
    if (aug[r * w + (w - 1)] != 0) throw InconsistentSystem("linear system has no solution");
}

}  // namespace

void require_same_field(const Field& a, const Field& b) {
  if (!a.same_as(b)) throw FieldMismatch("matrices over " + a.to_string() + " and " + b.to_string());
}

GfMatrix::GfMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (!field_) throw std::invalid_argument("null field");
}

GfMatrix::GfMatrix(FieldPtr field, std::initializer_list<std::initializer_list<std::uint32_t>> rows)
    : GfMatrix(std::move(field), rows.size(), rows.size() ? rows.begin()->size() : 0) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix rows");
    std::size_t c = 0;
    for (auto v : row) set(r, c++, v);
    ++r;
  }
}

GfMatrix GfMatrix::identity(FieldPtr field, std::size_t n) {
  GfMatrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

GfMatrix GfMatrix::from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows) {
  GfMatrix m(std::move(field), rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void GfMatrix::set(std::size_t r, std::size_t c, std::uint32_t v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  if (!field_->contains(v))
    throw std::invalid_argument("value " + std::to_string(v) + " outside " + field_->to_string());
  data_[r * cols_ + c] = static_cast<Value>(v);
}

void GfMatrix::set_block(std::size_t r0, std::size_t c0, const GfMatrix& src) {
  require_same_field(*field_, *src.field_);
  if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) throw std::out_of_range("block out of range");
  for (std::size_t r = 0; r < src.rows_; ++r)
    std::copy(src.row(r).begin(), src.row(r).end(), data_.begin() + (r0 + r) * cols_ + c0);
}

GfMatrix GfMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw std::out_of_range("block out of range");
  GfMatrix out(field_, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

GfMatrix GfMatrix::select_columns(std::span<const std::size_t> cols) const {
  GfMatrix out(field_, rows_, cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] >= cols_) throw std::out_of_range("column index out of range");
    for (std::size_t r = 0; r < rows_; ++r) out(r, k) = (*this)(r, cols[k]);
  }
  return out;
}

bool GfMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Value v) { return v == 0; });
}

bool GfMatrix::operator==(const GfMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || data_ != o.data_) return false;
  if (!field_ || !o.field_) return field_ == o.field_;
  return field_->same_as(*o.field_);
}

GfMatrix operator*(const GfMatrix& a, const GfMatrix& b) {
  require_same_field(*a.field(), *b.field());
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  const Field& f = *a.field();
  GfMatrix out(a.field(), a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Value x = a(r, k);
      if (x == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) = f.add(out(r, c), f.mul(x, b(k, c)));
    }
  return out;
}

std::vector<Value> operator*(const GfMatrix& a, std::span<const Value> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  const Field& f = *a.field();
  std::vector<Value> out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Value acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) acc = f.add(acc, f.mul(a(r, c), x[c]));
    out[r] = acc;
  }
  return out;
}

Value det_inplace(const Field& f, std::span<Value> a, std::size_t m) {
  Value d = 1;
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (piv < m && a[piv * m + c] == 0) ++piv;
    if (piv == m) return 0;
    if (piv != c) {
      for (std::size_t k = c; k < m; ++k) std::swap(a[piv * m + k], a[c * m + k]);
      d = f.neg(d);
    }
    const Value p = a[c * m + c];
    d = f.mul(d, p);
    const Value inv = f.inv(p);
    for (std::size_t r = c + 1; r < m; ++r) {
      const Value factor = f.mul(a[r * m + c], inv);
      if (factor == 0) continue;
      for (std::size_t k = c + 1; k < m; ++k) a[r * m + k] = f.sub(a[r * m + k], f.mul(factor, a[c * m + k]));
    }
  }
  return d;
}

Value det(const GfMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::vector<Value> a(m.data().begin(), m.data().end());
  return det_inplace(*m.field(), a, m.rows());
}

std::size_t rank(const GfMatrix& m) {
  if (m.empty()) return 0;
  std::vector<Value> a(m.data().begin(), m.data().end());
  return rref(*m.field(), a, m.rows(), m.cols(), m.cols()).pivot_cols.size();
}

std::optional<std::vector<Value>> solve_unique(const GfMatrix& a, std::span<const Value> b) {
  const std::size_t w = a.cols() + 1;
  auto aug = augmented(a, b);
  const auto e = rref(*a.field(), aug, a.rows(), w, a.cols());
  check_consistent(aug, a.rows(), w, e.pivot_cols.size());
  if (e.pivot_cols.size() < a.cols()) return std::nullopt;
  std::vector<Value> x(a.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = aug[r * w + a.cols()];
  return x;
}

std::vector<std::optional<Value>> solve_determined(const GfMatrix& a, std::span<const Value> b) {
  const std::size_t w = a.cols() + 1;
  auto aug = augmented(a, b);
  const auto e = rref(*a.field(), aug, a.rows(), w, a.cols());
  check_consistent(aug, a.rows(), w, e.pivot_cols.size());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::optional<Value>> x(a.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    bool clean = true;
    for (std::size_t c = e.pivot_cols[r] + 1; c < a.cols() && clean; ++c)
      clean = is_pivot[c] || aug[r * w + c] == 0;
    if (clean) x[e.pivot_cols[r]] = aug[r * w + a.cols()];
  }
  return x;
}

std::vector<std::vector<Value>> nullspace(const GfMatrix& a) {
  const Field& f = *a.field();
  std::vector<Value> m(a.data().begin(), a.data().end());
  const auto e = rref(f, m, a.rows(), a.cols(), a.cols());
  std::vector<int> pivot_row(a.cols(), -1);
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) pivot_row[e.pivot_cols[r]] = static_cast<int>(r);
  std::vector<std::vector<Value>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (pivot_row[free] >= 0) continue;
    std::vector<Value> v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = f.neg(m[r * a.cols() + free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace cmdp
