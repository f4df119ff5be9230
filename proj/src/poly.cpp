#include "cmdp/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace cmdp {

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int poly_degree(const Poly& a) {
  Poly t = a;
  poly_trim(t);
  return static_cast<int>(t.size()) - 1;
}

Poly poly_add(const Field& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f.add(i < a.size() ? a[i] : Value{0}, i < b.size() ? b[i] : Value{0});
  poly_trim(out);
  return out;
}

Poly poly_sub(const Field& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f.sub(i < a.size() ? a[i] : Value{0}, i < b.size() ? b[i] : Value{0});
  poly_trim(out);
  return out;
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  poly_trim(out);
  return out;
}

Poly poly_rem(const Field& f, Poly a, const Poly& b) {
  Poly d = b;
  poly_trim(d);
  if (d.empty()) throw std::domain_error("polynomial division by zero");
  poly_trim(a);
  const Value lead_inv = f.inv(d.back());
  while (a.size() >= d.size()) {
    const Value c = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, d[i]));
    poly_trim(a);
  }
  return a;
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Value inv = f.inv(a.back());
    for (auto& c : a) c = f.mul(c, inv);
  }
  return a;
}

Poly poly_det(const Field& f, const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("polynomial determinant of a non-square matrix");
  if (n == 0) return {1};
  if (n == 1) {
    Poly p = m[0][0];
    poly_trim(p);
    return p;
  }
  Poly acc;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    Poly term = poly_mul(f, m[0][c], poly_det(f, minor));
    acc = (c % 2 == 0) ? poly_add(f, acc, term) : poly_sub(f, acc, term);
  }
  return acc;
}

}  // namespace cmdp
