#include <doctest.h>

#include <random>

#include "cmdp/matrix.hpp"
#include "cmdp/poly.hpp"
#include "oracles.hpp"

using namespace cmdp;

namespace {

GfMatrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937_64& rng, double zero_rate = 0.2) {
  GfMatrix m(f, r, c);
  std::uniform_int_distribution<std::uint32_t> pick(1, f->q() - 1);
  std::bernoulli_distribution zero(zero_rate);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = zero(rng) ? 0 : static_cast<Value>(pick(rng));
  return m;
}

std::vector<std::vector<std::uint32_t>> rows_of(const GfMatrix& m) {
  std::vector<std::vector<std::uint32_t>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

}  // namespace

TEST_CASE("basic examples") {
  auto f13 = Field::make(13, 1);
  CHECK(det(GfMatrix::identity(f13, 4)) == 1);
  CHECK(rank(GfMatrix(f13, {{2, 2, 0, 0}, {1, 12, 2, 2}})) == 2);
  GfMatrix zero_col(f13, 2, 1);
  const std::vector<Value> b{0, 0};
  CHECK_FALSE(solve_unique(zero_col, b).has_value());
  const std::vector<Value> bad{1, 0};
  CHECK_THROWS_AS(solve_unique(zero_col, bad), InconsistentSystem);
  CHECK_THROWS_AS(det(GfMatrix(f13, 2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(GfMatrix(f13, {{1, 2}, {3}}), std::invalid_argument);
  CHECK_THROWS_AS(GfMatrix(f13, 1, 1).set(0, 0, 13), std::invalid_argument);
}

TEST_CASE("elimination determinant equals Laplace expansion over F5") {
  auto f = Field::make(5, 1);
  std::mt19937_64 rng(7);
  auto mul = [&](std::uint32_t a, std::uint32_t b) { return static_cast<std::uint32_t>(f->mul(a, b)); };
  auto add = [](std::uint32_t a, std::uint32_t b) { return (a + b) % 5; };
  auto neg = [](std::uint32_t a) { return (5 - a) % 5; };
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 300; ++trial) {
      const auto m = random_matrix(f, n, n, rng, 0.3);
      CHECK(det(m) == oracle::laplace(rows_of(m), mul, add, neg));
    }
}

TEST_CASE("determinant over GF(16) against Laplace with schoolbook multiplication") {
  auto f = Field::make(2, 4);
  std::mt19937_64 rng(11);
  auto mul = [&](std::uint32_t a, std::uint32_t b) { return oracle::mul(a, b, 2, f->modulus()); };
  auto add = [](std::uint32_t a, std::uint32_t b) { return a ^ b; };
  auto neg = [](std::uint32_t a) { return a; };
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_matrix(f, 4, 4, rng);
    std::vector<Value> buf(m.data().begin(), m.data().end());
    const Value expect = static_cast<Value>(oracle::laplace(rows_of(m), mul, add, neg));
    CHECK(det(m) == expect);
    CHECK(det_inplace(*f, buf, 4) == expect);
  }
}

TEST_CASE("rank, nullspace and unique solve") {
  auto f = Field::make(7, 1);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    const auto a = random_matrix(f, r, c, rng, 0.4);
    const auto ns = nullspace(a);
    CHECK(ns.size() + rank(a) == c);
    for (const auto& v : ns) {
      const auto av = a * std::span<const Value>(v);
      CHECK(std::all_of(av.begin(), av.end(), [](Value x) { return x == 0; }));
    }
    std::vector<Value> x(c);
    for (auto& v : x) v = static_cast<Value>(rng() % 7);
    const auto b = a * std::span<const Value>(x);
    const auto sol = solve_unique(a, b);
    CHECK(sol.has_value() == (rank(a) == c));
    if (sol) CHECK(*sol == x);
  }
}

TEST_CASE("per-unknown determination matches brute-force enumeration over F3") {
  auto f = Field::make(3, 1);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    const auto a = random_matrix(f, r, c, rng, 0.4);
    std::vector<Value> x(c);
    for (auto& v : x) v = static_cast<Value>(rng() % 3);
    const auto b = a * std::span<const Value>(x);
    const auto got = solve_determined(a, b);
    // every solution, by enumeration
    std::vector<std::vector<Value>> sols;
    std::vector<Value> y(c, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < c; ++i) total *= 3;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t t = idx;
      for (std::size_t i = 0; i < c; ++i) {
        y[i] = static_cast<Value>(t % 3);
        t /= 3;
      }
      if (a * std::span<const Value>(y) == b) sols.push_back(y);
    }
    for (std::size_t i = 0; i < c; ++i) {
      const bool agree = std::all_of(sols.begin(), sols.end(), [&](const auto& s) { return s[i] == sols[0][i]; });
      CHECK(got[i].has_value() == agree);
      if (got[i]) CHECK(*got[i] == x[i]);
    }
  }
}

TEST_CASE("matrix products and mixed fields") {
  auto f = Field::make(5, 1);
  GfMatrix a(f, {{1, 2}, {3, 4}});
  GfMatrix b(f, {{0, 1}, {1, 0}});
  CHECK(a * b == GfMatrix(f, {{2, 1}, {4, 3}}));
  CHECK(a * GfMatrix::identity(f, 2) == a);
  CHECK_THROWS_AS(a * GfMatrix::identity(Field::make(7, 1), 2), FieldMismatch);
  CHECK(a.block(1, 0, 1, 2) == GfMatrix(f, {{3, 4}}));
  const std::vector<std::size_t> cols{1};
  CHECK(a.select_columns(cols) == GfMatrix(f, {{2}, {4}}));
}

TEST_CASE("polynomials") {
  auto f = Field::make(5, 1);
  const Poly a{1, 1};     // 1 + z
  const Poly b{4, 0, 1};  // z^2 - 1 = (z-1)(z+1)
  CHECK(poly_gcd(*f, a, b) == Poly{1, 1});
  CHECK(poly_degree(poly_mul(*f, a, b)) == 3);
  CHECK(poly_rem(*f, b, a).empty());
  CHECK(poly_gcd(*f, Poly{2}, Poly{0, 3}) == Poly{1});
  CHECK(poly_degree(Poly{}) == -1);
  const std::vector<std::vector<Poly>> m{{a, Poly{1}}, {Poly{0, 1}, b}};
  // (1+z)(z^2-1) - z
  CHECK(poly_det(*f, m) == poly_sub(*f, poly_mul(*f, a, b), Poly{0, 1}));
}
