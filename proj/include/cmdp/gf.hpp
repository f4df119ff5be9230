#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmdp {

/// Canonical integer encoding of a field element: base-p digits are the
/// coefficients of 1, a, a^2, ... where a is the class of x modulo the modulus.
using Value = std::uint16_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Thrown when an element, matrix or code is combined with one from another field.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// GF(p^r) with q <= 2^16, backed by log/antilog tables.
///
/// Immutable after construction; share it through FieldPtr. The hot-path
/// members (add, mul, inv, ...) take raw Values and do no range checking.
class Field {
 public:
  /// Builds GF(p^r). Without a modulus the defaults are: x for r = 1,
  /// x^3+x+1, x^4+x+1 and x^7+x+1 for q = 8, 16, 128, and otherwise the
  /// irreducible monic polynomial with the smallest packed encoding.
  /// Modulus coefficients are little-endian and must be monic of degree r.
  static FieldPtr make(int p, int r, std::vector<int> modulus = {});

  /// Parses "13", "16", "2^4", "2^4/19" (modulus packed base p).
  static FieldPtr parse(std::string_view text);

  int p() const { return p_; }
  int r() const { return r_; }
  std::uint32_t q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }
  /// Modulus coefficients packed as base-p digits.
  std::uint32_t modulus_code() const { return modulus_code_; }
  /// Smallest element of multiplicative order q-1.
  Value primitive() const { return primitive_; }

  /// "p^r/modulus", e.g. "2^4/19".
  std::string to_string() const;
  /// Element as a polynomial in a (the class of x), e.g. "a^3+a+1".
  std::string render_poly(Value v, std::string_view symbol = "α") const;

  bool contains(std::uint32_t v) const { return v < q_; }
  bool same_as(const Field& other) const {
    return p_ == other.p_ && r_ == other.r_ && modulus_code_ == other.modulus_code_;
  }

  Value add(Value a, Value b) const {
    if (p_ == 2) return static_cast<Value>(a ^ b);
    if (r_ == 1) return static_cast<Value>((a + b) % p_);
    return add_digits(a, b, false);
  }
  Value sub(Value a, Value b) const {
    if (p_ == 2) return static_cast<Value>(a ^ b);
    if (r_ == 1) return static_cast<Value>((a + p_ - b) % p_);
    return add_digits(a, b, true);
  }
  Value neg(Value a) const { return sub(0, a); }
  Value mul(Value a, Value b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws std::domain_error on zero.
  Value inv(Value a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(q_ - 1) - log_[a]];
  }
  Value div(Value a, Value b) const { return mul(a, inv(b)); }
  /// Negative exponents are allowed for nonzero a; pow(0, 0) = 1.
  Value pow(Value a, std::int64_t e) const;
  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Value a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
  }
  /// primitive()^e for any integer e.
  Value exp(std::int64_t e) const;

 private:
  Field() = default;
  Value add_digits(Value a, Value b, bool subtract) const;

  int p_ = 2;
  int r_ = 1;
  std::uint32_t q_ = 2;
  std::vector<int> modulus_;
  std::uint32_t modulus_code_ = 0;
  Value primitive_ = 1;
  std::vector<Value> exp_;           // length 2(q-1), doubled to skip the reduction
  std::vector<std::uint32_t> log_;   // log_[0] unused
};

/// An element bound to its field. Arithmetic between different fields throws
/// FieldMismatch. Use the raw Field members in inner loops.
class Gf {
 public:
  Gf(FieldPtr field, std::uint32_t value);

  const FieldPtr& field() const { return field_; }
  Value value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  Gf operator+(const Gf& o) const;
  Gf operator-(const Gf& o) const;
  Gf operator-() const;
  Gf operator*(const Gf& o) const;
  Gf operator/(const Gf& o) const;
  Gf inv() const;
  Gf pow(std::int64_t e) const;

  bool operator==(const Gf& o) const { return field_->same_as(*o.field_) && value_ == o.value_; }
  bool operator!=(const Gf& o) const { return !(*this == o); }

 private:
  const Field& check(const Gf& o) const;

  FieldPtr field_;
  Value value_;
};

bool is_prime(std::uint64_t n);

}  // namespace cmdp
