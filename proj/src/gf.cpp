#include "cmdp/gf.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace cmdp {

namespace {

using Digits = std::vector<int>;

Digits to_digits(std::uint32_t v, int p, int r) {
  Digits d(r, 0);
  for (int i = 0; i < r; ++i) {
    d[i] = static_cast<int>(v % p);
    v /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, int p) {
  std::uint32_t v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + static_cast<std::uint32_t>(*it);
  return v;
}

// Product of two residues modulo a monic polynomial over GF(p). Only used to
// build the tables.
Digits mul_mod(const Digits& a, const Digits& b, const std::vector<int>& modulus, int p) {
  const int r = static_cast<int>(modulus.size()) - 1;
  std::vector<int> prod(2 * r, 0);
  for (int i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (int d = 2 * r - 1; d >= r; --d) {
    const int c = prod[d];
    if (c == 0) continue;
    for (int i = 0; i <= r; ++i) prod[d - r + i] = ((prod[d - r + i] - c * modulus[i]) % p + p) % p;
  }
  prod.resize(r);
  return prod;
}

// Remainder of f modulo monic g over GF(p); both little-endian.
std::vector<int> poly_rem(std::vector<int> f, const std::vector<int>& g, int p) {
  const int dg = static_cast<int>(g.size()) - 1;
  for (int d = static_cast<int>(f.size()) - 1; d >= dg; --d) {
    const int c = f[d];
    if (c == 0) continue;
    for (int i = 0; i <= dg; ++i) f[d - dg + i] = ((f[d - dg + i] - c * g[i]) % p + p) % p;
  }
  f.resize(std::min<std::size_t>(f.size(), dg));
  return f;
}

bool is_irreducible(const std::vector<int>& f, int p) {
  const int r = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= r; ++d) {
    std::uint32_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint32_t low = 0; low < count; ++low) {
      std::vector<int> g = to_digits(low, p, d);
      g.push_back(1);
      auto rem = poly_rem(f, g, p);
      if (std::all_of(rem.begin(), rem.end(), [](int c) { return c == 0; })) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<int> default_modulus(int p, int r) {
  if (r == 1) return {0, 1};
  if (p == 2 && r == 3) return {1, 1, 0, 1};
  if (p == 2 && r == 4) return {1, 1, 0, 0, 1};
  if (p == 2 && r == 7) return {1, 1, 0, 0, 0, 0, 0, 1};
  std::uint32_t count = 1;
  for (int i = 0; i < r; ++i) count *= p;
  for (std::uint32_t low = 0; low < count; ++low) {
    std::vector<int> f = to_digits(low, p, r);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

std::uint32_t parse_uint(std::string_view s, std::string_view what) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldPtr Field::make(int p, int r, std::vector<int> modulus) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (r < 1) throw std::invalid_argument("extension degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < r; ++i) {
    q *= static_cast<std::uint64_t>(p);
    if (q > 65536) throw std::invalid_argument("field order exceeds 2^16");
  }
  if (modulus.empty()) {
    modulus = default_modulus(p, r);
  } else {
    if (static_cast<int>(modulus.size()) != r + 1 || modulus.back() != 1)
      throw std::invalid_argument("modulus must be monic of degree " + std::to_string(r));
    for (int c : modulus)
      if (c < 0 || c >= p) throw std::invalid_argument("modulus coefficient out of range");
    if (!is_irreducible(modulus, p)) throw std::invalid_argument("modulus is reducible");
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->r_ = r;
  f->q_ = static_cast<std::uint32_t>(q);
  f->modulus_ = modulus;
  f->modulus_code_ = from_digits(modulus, p);

  const std::uint32_t order = f->q_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](const Digits& base, std::uint32_t e) {
    Digits result = to_digits(1, p, r);
    Digits b = base;
    while (e > 0) {
      if (e & 1U) result = mul_mod(result, b, modulus, p);
      b = mul_mod(b, b, modulus, p);
      e >>= 1U;
    }
    return result;
  };
  const Digits one = to_digits(1, p, r);
  std::uint32_t g = 1;
  for (; g < f->q_; ++g) {
    const Digits gd = to_digits(g, p, r);
    if (slow_pow(gd, order) != one) continue;
    bool primitive = true;
    for (auto ell : factors) {
      if (slow_pow(gd, order / ell) == one) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  f->primitive_ = static_cast<Value>(g);

  f->exp_.assign(2 * static_cast<std::size_t>(order), 0);
  f->log_.assign(f->q_, 0);
  Digits cur = one;
  const Digits gd = to_digits(g, p, r);
  for (std::uint32_t i = 0; i < order; ++i) {
    const auto v = static_cast<Value>(from_digits(cur, p));
    f->exp_[i] = v;
    f->exp_[i + order] = v;
    f->log_[v] = i;
    cur = mul_mod(cur, gd, modulus, p);
  }
  return f;
}

FieldPtr Field::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view head = text.substr(0, slash);
  const auto caret = head.find('^');
  int p = 0;
  int r = 1;
  if (caret == std::string_view::npos) {
    const std::uint32_t q = parse_uint(head, "field order");
    for (std::uint32_t d = 2; d <= q; ++d) {
      if (q % d == 0) {
        p = static_cast<int>(d);
        break;
      }
    }
    if (p == 0) throw std::invalid_argument("bad field order");
    std::uint32_t rest = q;
    r = 0;
    while (rest % p == 0) {
      rest /= p;
      ++r;
    }
    if (rest != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  } else {
    p = static_cast<int>(parse_uint(head.substr(0, caret), "characteristic"));
    r = static_cast<int>(parse_uint(head.substr(caret + 1), "extension degree"));
  }
  std::vector<int> modulus;
  if (slash != std::string_view::npos) {
    if (!is_prime(static_cast<std::uint64_t>(p)))
      throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    std::uint32_t code = parse_uint(text.substr(slash + 1), "modulus");
    while (code > 0) {
      modulus.push_back(static_cast<int>(code % p));
      code /= p;
    }
    if (modulus.empty()) throw std::invalid_argument("modulus must be nonzero");
  }
  return make(p, r, std::move(modulus));
}

std::string Field::to_string() const {
  return std::to_string(p_) + "^" + std::to_string(r_) + "/" + std::to_string(modulus_code_);
}

std::string Field::render_poly(Value v, std::string_view symbol) const {
  if (v == 0) return "0";
  const Digits d = to_digits(v, p_, r_);
  std::string out;
  for (int i = r_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]);
    out += symbol;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Value Field::add_digits(Value a, Value b, bool subtract) const {
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  std::uint32_t x = a;
  std::uint32_t y = b;
  for (int i = 0; i < r_; ++i) {
    const auto da = static_cast<int>(x % p_);
    const auto db = static_cast<int>(y % p_);
    const int s = subtract ? (da - db + p_) % p_ : (da + db) % p_;
    out += static_cast<std::uint32_t>(s) * scale;
    scale *= p_;
    x /= p_;
    y /= p_;
  }
  return static_cast<Value>(out);
}

Value Field::exp(std::int64_t e) const {
  const auto order = static_cast<std::int64_t>(q_ - 1);
  std::int64_t m = e % order;
  if (m < 0) m += order;
  return exp_[static_cast<std::size_t>(m)];
}

Value Field::pow(Value a, std::int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw std::domain_error("negative power of zero");
    return 0;
  }
  const auto order = static_cast<std::int64_t>(q_ - 1);
  std::int64_t m = (e % order) * static_cast<std::int64_t>(log_[a]) % order;
  if (m < 0) m += order;
  return exp_[static_cast<std::size_t>(m)];
}

Gf::Gf(FieldPtr field, std::uint32_t value) : field_(std::move(field)), value_(0) {
  if (!field_) throw std::invalid_argument("null field");
  if (!field_->contains(value))
    throw std::invalid_argument("value " + std::to_string(value) + " outside " + field_->to_string());
  value_ = static_cast<Value>(value);
}

const Field& Gf::check(const Gf& o) const {
  if (!field_->same_as(*o.field_))
    throw FieldMismatch("operands from " + field_->to_string() + " and " + o.field_->to_string());
  return *field_;
}

Gf Gf::operator+(const Gf& o) const { return {field_, check(o).add(value_, o.value_)}; }
Gf Gf::operator-(const Gf& o) const { return {field_, check(o).sub(value_, o.value_)}; }
Gf Gf::operator-() const { return {field_, field_->neg(value_)}; }
Gf Gf::operator*(const Gf& o) const { return {field_, check(o).mul(value_, o.value_)}; }
Gf Gf::operator/(const Gf& o) const { return {field_, check(o).div(value_, o.value_)}; }
Gf Gf::inv() const { return {field_, field_->inv(value_)}; }
Gf Gf::pow(std::int64_t e) const { return {field_, field_->pow(value_, e)}; }

}  // namespace cmdp
