#pragma once

#include <vector>

#include "cmdp/gf.hpp"
#include "cmdp/matrix.hpp"
#include "cmdp/poly.hpp"

namespace cmdp {

/// (n, k, delta) with the derived memory nu = delta/(n-k) and
/// L = floor(delta/k) + floor(delta/(n-k)).
struct CodeParams {
  int n = 0;
  int k = 0;
  int delta = 0;
  int nu = 0;
  int L = 0;

  /// Requires 0 < k < n, delta >= 0 and (n-k) | delta.
  static CodeParams make(int n, int k, int delta);
  int rows() const { return n - k; }
  bool operator==(const CodeParams&) const = default;
};

/// A convolutional code given by the coefficients H_0..H_nu of its
/// parity-check matrix H(z) = H_0 + H_1 z + ... + H_nu z^nu.
class ConvCode {
 public:
  /// `coeffs[i]` is H_i, each (n-k) x n. Left-primeness is not checked here.
  ConvCode(FieldPtr field, int n, int k, int delta, std::vector<GfMatrix> coeffs);

  /// Builds from coefficient rows listed highest index first
  /// ([H_nu, ..., H_0]), each row-major, which is how codes are written down.
  static ConvCode from_high_first(FieldPtr field, int n, int k, int delta,
                                  const std::vector<std::vector<std::uint32_t>>& high_first);

  const FieldPtr& field() const { return field_; }
  const CodeParams& params() const { return params_; }
  int n() const { return params_.n; }
  int k() const { return params_.k; }
  int nu() const { return params_.nu; }
  int L() const { return params_.L; }

  /// H_i, or the zero matrix for i < 0 or i > nu.
  const GfMatrix& H(int i) const { return (i < 0 || i > params_.nu) ? zero_ : coeffs_[i]; }
  const std::vector<GfMatrix>& coeffs() const { return coeffs_; }
  /// Coefficients highest index first, each flattened row-major.
  std::vector<std::vector<Value>> high_first() const;

  /// Column c of H(z) row r as a polynomial.
  Poly entry_poly(int r, int c) const;

  bool operator==(const ConvCode& o) const;

 private:
  FieldPtr field_;
  CodeParams params_;
  std::vector<GfMatrix> coeffs_;
  GfMatrix zero_;
};

/// Lower block-Toeplitz (j+1)(n-k) x (j+1)n matrix with block (r, c) = H_{r-c}.
GfMatrix sliding_matrix(const ConvCode& code, int j);

/// (j+1)(n-k) x (nu+j+1)n matrix whose block row r holds H_nu ... H_0 from block column r.
GfMatrix partial_matrix(const ConvCode& code, int j);

/// Upper block-Toeplitz matrix with H_nu on the diagonal and H_{nu-s} on the
/// s-th block superdiagonal; j defaults to L.
GfMatrix reverse_sliding_matrix(const ConvCode& code, int j = -1);

/// The code with parity-check matrix H_nu + H_{nu-1} z + ... + H_0 z^nu.
ConvCode reverse_code(const ConvCode& code);

/// Determinant of the 2nu x 2nu Sylvester matrix of h_1 and h_2 taken as
/// formal degree-nu polynomials. Only for n = 2, k = 1.
Value resultant(const ConvCode& code);

/// True iff the gcd of the maximal minors of H(z) is a nonzero constant.
bool is_left_prime(const ConvCode& code);

/// Polynomial gcd of all (n-k) x (n-k) minors of H(z) (monic, or empty when all vanish).
Poly maximal_minor_gcd(const ConvCode& code);

}  // namespace cmdp
