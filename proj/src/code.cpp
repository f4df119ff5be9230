#include "cmdp/code.hpp"

#include <stdexcept>
#include <string>

namespace cmdp {

CodeParams CodeParams::make(int n, int k, int delta) {
  if (k <= 0 || k >= n) throw std::invalid_argument("need 0 < k < n");
  if (delta < 0) throw std::invalid_argument("degree must be nonnegative");
  if (delta % (n - k) != 0)
    throw std::invalid_argument("(n-k) = " + std::to_string(n - k) + " does not divide delta = " + std::to_string(delta));
  CodeParams p;
  p.n = n;
  p.k = k;
  p.delta = delta;
  p.nu = delta / (n - k);
  p.L = delta / k + delta / (n - k);
  return p;
}

ConvCode::ConvCode(FieldPtr field, int n, int k, int delta, std::vector<GfMatrix> coeffs)
    : field_(std::move(field)), params_(CodeParams::make(n, k, delta)), coeffs_(std::move(coeffs)) {
  if (!field_) throw std::invalid_argument("null field");
  if (static_cast<int>(coeffs_.size()) != params_.nu + 1)
    throw std::invalid_argument("expected " + std::to_string(params_.nu + 1) + " coefficient matrices, got " +
                                std::to_string(coeffs_.size()));
  for (const auto& h : coeffs_) {
    if (static_cast<int>(h.rows()) != n - k || static_cast<int>(h.cols()) != n)
      throw std::invalid_argument("coefficient matrices must be (n-k) x n");
    require_same_field(*field_, *h.field());
  }
  zero_ = GfMatrix(field_, n - k, n);
}

ConvCode ConvCode::from_high_first(FieldPtr field, int n, int k, int delta,
                                   const std::vector<std::vector<std::uint32_t>>& high_first) {
  std::vector<GfMatrix> coeffs;
  for (auto it = high_first.rbegin(); it != high_first.rend(); ++it) {
    if (static_cast<int>(it->size()) != (n - k) * n)
      throw std::invalid_argument("coefficient needs " + std::to_string((n - k) * n) + " entries");
    GfMatrix h(field, n - k, n);
    for (int r = 0; r < n - k; ++r)
      for (int c = 0; c < n; ++c) h.set(r, c, (*it)[r * n + c]);
    coeffs.push_back(std::move(h));
  }
  return ConvCode(std::move(field), n, k, delta, std::move(coeffs));
}

std::vector<std::vector<Value>> ConvCode::high_first() const {
  std::vector<std::vector<Value>> out;
  for (int i = params_.nu; i >= 0; --i) out.emplace_back(coeffs_[i].data().begin(), coeffs_[i].data().end());
  return out;
}

Poly ConvCode::entry_poly(int r, int c) const {
  Poly p;
  for (int i = 0; i <= params_.nu; ++i) p.push_back(coeffs_[i](r, c));
  poly_trim(p);
  return p;
}

bool ConvCode::operator==(const ConvCode& o) const {
  return field_->same_as(*o.field_) && params_ == o.params_ && coeffs_ == o.coeffs_;
}

GfMatrix sliding_matrix(const ConvCode& code, int j) {
  if (j < 0) throw std::invalid_argument("j must be nonnegative");
  const int n = code.n();
  const int m = n - code.k();
  GfMatrix out(code.field(), (j + 1) * m, (j + 1) * n);
  for (int r = 0; r <= j; ++r)
    for (int c = 0; c <= r; ++c)
      if (r - c <= code.nu()) out.set_block(r * m, c * n, code.H(r - c));
  return out;
}

GfMatrix partial_matrix(const ConvCode& code, int j) {
  if (j < 0) throw std::invalid_argument("j must be nonnegative");
  const int n = code.n();
  const int m = n - code.k();
  const int nu = code.nu();
  GfMatrix out(code.field(), (j + 1) * m, (nu + j + 1) * n);
  for (int r = 0; r <= j; ++r)
    for (int s = 0; s <= nu; ++s) out.set_block(r * m, (r + s) * n, code.H(nu - s));
  return out;
}

GfMatrix reverse_sliding_matrix(const ConvCode& code, int j) {
  if (j < 0) j = code.L();
  const int n = code.n();
  const int m = n - code.k();
  const int nu = code.nu();
  GfMatrix out(code.field(), (j + 1) * m, (j + 1) * n);
  for (int r = 0; r <= j; ++r)
    for (int c = r; c <= j && c - r <= nu; ++c) out.set_block(r * m, c * n, code.H(nu - (c - r)));
  return out;
}

ConvCode reverse_code(const ConvCode& code) {
  std::vector<GfMatrix> rev(code.coeffs().rbegin(), code.coeffs().rend());
  return ConvCode(code.field(), code.n(), code.k(), code.params().delta, std::move(rev));
}

Value resultant(const ConvCode& code) {
  if (code.n() != 2 || code.k() != 1) throw std::invalid_argument("resultant needs a rate 1/2 code");
  const int nu = code.nu();
  if (nu == 0) return 1;
  GfMatrix syl(code.field(), 2 * nu, 2 * nu);
  for (int poly = 0; poly < 2; ++poly)
    for (int r = 0; r < nu; ++r)
      for (int s = 0; s <= nu; ++s) syl(poly * nu + r, r + s) = code.H(nu - s)(0, poly);
  return det(syl);
}

Poly maximal_minor_gcd(const ConvCode& code) {
  const Field& f = *code.field();
  const int n = code.n();
  const int m = n - code.k();
  std::vector<int> cols(m);
  for (int i = 0; i < m; ++i) cols[i] = i;
  Poly g;
  while (true) {
    std::vector<std::vector<Poly>> minor(m, std::vector<Poly>(m));
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) minor[r][c] = code.entry_poly(r, cols[c]);
    g = poly_gcd(f, g, poly_det(f, minor));
    if (g.size() == 1) return g;
    int i = m - 1;
    while (i >= 0 && cols[i] == n - m + i) --i;
    if (i < 0) break;
    ++cols[i];
    for (int k = i + 1; k < m; ++k) cols[k] = cols[k - 1] + 1;
  }
  return g;
}

bool is_left_prime(const ConvCode& code) {
  if (code.n() == 2 && code.k() == 1 && !code.H(code.nu()).is_zero()) return resultant(code) != 0;
  return maximal_minor_gcd(code).size() == 1;
}

}  // namespace cmdp
