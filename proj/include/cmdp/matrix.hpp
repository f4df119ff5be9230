#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cmdp/gf.hpp"

namespace cmdp {

/// Raised when a linear system has no solution. On an erasure channel the
/// received data never contradicts the code, so this points at bad input.
class InconsistentSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix over a finite field.
class GfMatrix {
 public:
  GfMatrix() = default;
  GfMatrix(FieldPtr field, std::size_t rows, std::size_t cols);
  GfMatrix(FieldPtr field, std::initializer_list<std::initializer_list<std::uint32_t>> rows);

  static GfMatrix identity(FieldPtr field, std::size_t n);
  static GfMatrix from_rows(FieldPtr field, const std::vector<std::vector<std::uint32_t>>& rows);

  const FieldPtr& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Value operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Value& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  /// Bounds-checked write that also checks the value is in the field.
  void set(std::size_t r, std::size_t c, std::uint32_t v);

  std::span<const Value> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const Value> data() const { return data_; }

  /// Copies `src` into this matrix with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const GfMatrix& src);
  GfMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  GfMatrix select_columns(std::span<const std::size_t> cols) const;

  bool is_zero() const;
  bool operator==(const GfMatrix& o) const;
  bool operator!=(const GfMatrix& o) const { return !(*this == o); }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Value> data_;
};

void require_same_field(const Field& a, const Field& b);

GfMatrix operator*(const GfMatrix& a, const GfMatrix& b);
std::vector<Value> operator*(const GfMatrix& a, std::span<const Value> x);

/// Determinant by Gaussian elimination. Throws std::invalid_argument if not square.
Value det(const GfMatrix& m);
std::size_t rank(const GfMatrix& m);

/// Determinant of the m x m row-major matrix stored in `a`; `a` is destroyed.
/// Hot path for minor enumeration.
Value det_inplace(const Field& f, std::span<Value> a, std::size_t m);

/// The unique x with A x = b, or nullopt when A lacks full column rank.
/// Throws InconsistentSystem when the system has no solution.
std::optional<std::vector<Value>> solve_unique(const GfMatrix& a, std::span<const Value> b);

/// Per-unknown solution of A x = b: entry i holds x_i when every solution
/// agrees on it (e_i lies in the row space of A), nullopt otherwise.
/// Throws InconsistentSystem when the system has no solution.
std::vector<std::optional<Value>> solve_determined(const GfMatrix& a, std::span<const Value> b);

/// Basis of {x : A x = 0}, one vector per entry.
std::vector<std::vector<Value>> nullspace(const GfMatrix& a);

}  // namespace cmdp
