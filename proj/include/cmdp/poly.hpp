#pragma once

#include <vector>

#include "cmdp/gf.hpp"

namespace cmdp {

/// Little-endian univariate polynomial over a field; trimmed so that the
/// zero polynomial is empty.
using Poly = std::vector<Value>;

void poly_trim(Poly& a);
int poly_degree(const Poly& a);  // -1 for zero
Poly poly_add(const Field& f, const Poly& a, const Poly& b);
Poly poly_sub(const Field& f, const Poly& a, const Poly& b);
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);
Poly poly_rem(const Field& f, Poly a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Field& f, Poly a, Poly b);

/// Determinant of a square matrix of polynomials (cofactor expansion; the
/// matrices here are at most a few rows).
Poly poly_det(const Field& f, const std::vector<std::vector<Poly>>& m);

}  // namespace cmdp
