#include "cmdp/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <thread>

namespace cmdp {

namespace {

void validate(const SearchSpec& spec, const CodeParams& params) {
  if (!spec.field) throw std::invalid_argument("search needs a field");
  if (spec.j < 0 || spec.j > params.L)
    throw std::invalid_argument("j = " + std::to_string(spec.j) + " outside 0.." + std::to_string(params.L));
  if (spec.normalize && params.rows() != 1) throw std::invalid_argument("normalization needs n-k = 1");
}

double space_size(const SearchSpec& spec) {
  return std::pow(static_cast<double>(spec.field->q() - 1), static_cast<double>(free_entries(spec)));
}

SearchReport blank_report(const SearchSpec& spec) {
  SearchReport rep;
  rep.field = spec.field->to_string();
  rep.n = spec.n;
  rep.k = spec.k;
  rep.delta = spec.delta;
  rep.j = spec.j;
  rep.mode = spec.mode;
  return rep;
}

void finalize(SearchReport& rep, const SearchSpec& spec, std::chrono::steady_clock::time_point start) {
  std::sort(rep.solutions.begin(), rep.solutions.end());
  rep.count = rep.solutions.size();
  rep.percentage = 100.0 * static_cast<double>(rep.count) / space_size(spec);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

CompleteChecker make_checker(const SearchSpec& spec, const CodeParams& params) {
  const bool lp = spec.require_left_prime.value_or(left_prime_check_needed(params, spec.j));
  return CompleteChecker(spec.field, params, spec.j, lp);
}

}  // namespace

int free_entries(const SearchSpec& spec) {
  const auto params = CodeParams::make(spec.n, spec.k, spec.delta);
  const int per = params.rows() * params.n;
  return spec.normalize ? params.nu * per : (params.nu + 1) * per;
}

ConvCode candidate_code(const SearchSpec& spec, const std::vector<Value>& tuple) {
  const auto params = CodeParams::make(spec.n, spec.k, spec.delta);
  const int per = params.rows() * params.n;
  if (static_cast<int>(tuple.size()) != free_entries(spec)) throw std::invalid_argument("candidate tuple has the wrong length");
  std::vector<std::vector<std::uint32_t>> high_first;
  std::size_t pos = 0;
  if (spec.normalize) high_first.emplace_back(static_cast<std::size_t>(per), 1U);
  while (pos < tuple.size()) {
    high_first.emplace_back(tuple.begin() + static_cast<std::ptrdiff_t>(pos),
                            tuple.begin() + static_cast<std::ptrdiff_t>(pos + per));
    pos += static_cast<std::size_t>(per);
  }
  return ConvCode::from_high_first(spec.field, spec.n, spec.k, spec.delta, high_first);
}

bool left_prime_check_needed(const CodeParams& params, int j) {
  if (params.delta % params.k == 0) return j < params.L - 1;
  return j < params.L;
}

CompleteChecker::CompleteChecker(FieldPtr field, const CodeParams& params, int j, bool check_left_prime)
    : field_(std::move(field)), params_(params), j_(j), check_left_prime_(check_left_prime) {
  for (int i = 0; i <= j; ++i) levels_.emplace_back(ColumnShape{ColumnSetKind::Complete, params.n, params.k, params.nu, i});
}

bool CompleteChecker::accepts(const ConvCode& code) const {
  for (int i = 0; i <= j_; ++i) {
    const GfMatrix m = partial_matrix(code, i);
    if (levels_[i].first_zero(m).first_zero) return false;
  }
  return !check_left_prime_ || is_left_prime(code);
}

SearchReport exhaustive_search(const SearchSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const auto params = CodeParams::make(spec.n, spec.k, spec.delta);
  validate(spec, params);
  const double total_d = space_size(spec);
  if (total_d > 1e8) throw TooLarge("search space of " + std::to_string(total_d) + " candidates exceeds 10^8");
  const auto total = static_cast<std::uint64_t>(std::llround(total_d));
  const int free = free_entries(spec);
  const std::uint64_t base = spec.field->q() - 1;
  const CompleteChecker checker = make_checker(spec, params);

  const unsigned threads = std::max(1U, spec.threads);
  std::vector<std::vector<std::vector<Value>>> found(threads);
  auto worker = [&](unsigned w) {
    const std::uint64_t lo = total * w / threads;
    const std::uint64_t hi = total * (w + 1) / threads;
    std::vector<Value> tuple(static_cast<std::size_t>(free));
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t x = idx;
      for (int p = free - 1; p >= 0; --p) {
        tuple[static_cast<std::size_t>(p)] = static_cast<Value>(x % base + 1);
        x /= base;
      }
      if (checker.accepts(candidate_code(spec, tuple))) found[w].push_back(tuple);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  SearchReport rep = blank_report(spec);
  rep.candidates = total;
  for (auto& part : found) rep.solutions.insert(rep.solutions.end(), part.begin(), part.end());
  finalize(rep, spec, start);
  return rep;
}

SearchReport randomized_search(const SearchSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const auto params = CodeParams::make(spec.n, spec.k, spec.delta);
  validate(spec, params);
  const int free = free_entries(spec);
  const CompleteChecker checker = make_checker(spec, params);

  std::set<std::vector<Value>> tested;
  SearchReport rep = blank_report(spec);
  rep.seed = spec.seed;
  auto test = [&](const std::vector<Value>& tuple) {
    if (!tested.insert(tuple).second) return;
    if (checker.accepts(candidate_code(spec, tuple))) rep.solutions.push_back(tuple);
  };
  for (const auto& t : spec.include) {
    for (auto v : t)
      if (v == 0 || !spec.field->contains(v)) throw std::invalid_argument("included candidates must be nonzero field elements");
    test(t);
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::uint32_t> pick(1, spec.field->q() - 1);
  std::vector<Value> tuple(static_cast<std::size_t>(free));
  for (std::uint64_t trial = 0; trial < spec.trials; ++trial) {
    for (auto& v : tuple) v = static_cast<Value>(pick(rng));
    test(tuple);
  }
  rep.candidates = tested.size();
  finalize(rep, spec, start);
  return rep;
}

SearchReport run_search(const SearchSpec& spec) {
  return spec.mode == SearchMode::Exhaustive ? exhaustive_search(spec) : randomized_search(spec);
}

FieldPtr field_f13() {
  static const FieldPtr f = Field::make(13, 1);
  return f;
}

FieldPtr field_f16() {
  static const FieldPtr f = Field::make(2, 4, {1, 1, 0, 0, 1});
  return f;
}

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

ConvCode family_code(const FieldPtr& f, const Gf& beta, const Gf& gamma, int e1, int e2, int e3) {
  if (!beta.field()->same_as(*f) || !gamma.field()->same_as(*f))
    throw FieldMismatch("family parameters must lie in " + f->to_string());
  if (beta.is_zero() || gamma.is_zero()) throw std::invalid_argument("beta and gamma must be nonzero");
  const Value b = beta.value();
  const Value g = gamma.value();
  return ConvCode::from_high_first(f, 2, 1, 2,
                                   {{b, g},
                                    {f->mul(b, f->exp(e1)), f->mul(g, f->exp(e2))},
                                    {f->mul(b, f->exp(e3)), f->mul(g, f->exp(e3))}});
}

std::vector<Value> normalized_tuple(const ConvCode& c) {
  return {c.H(1)(0, 0), c.H(1)(0, 1), c.H(0)(0, 0), c.H(0)(0, 1)};
}

}  // namespace

ConvCode family_f13(const Gf& beta, const Gf& gamma, int i1, int jj) {
  if (i1 < 0 || i1 > 11) throw std::invalid_argument("i1 must lie in 0..11");
  if (jj != 0 && jj != 1) throw std::invalid_argument("jj must be 0 or 1");
  const FieldPtr f = field_f13();
  const int i2 = mod(i1 + 6, 12);
  const int i3 = mod(2 * i1 + 1 + 6 * jj, 12);
  return family_code(f, beta, gamma, i1, i2, i3);
}

ConvCode family_f16(const Gf& beta, const Gf& gamma, int i1, int kk, int jj) {
  if (i1 < 0 || i1 > 14) throw std::invalid_argument("i1 must lie in 0..14");
  if (kk != 1 && kk != 2 && kk != 4 && kk != 8) throw std::invalid_argument("kk must be 1, 2, 4 or 8");
  if (jj != 0 && jj != 1) throw std::invalid_argument("jj must be 0 or 1");
  const FieldPtr f = field_f16();
  const int i2 = mod(i1 + 3 * kk, 15);
  const int i3 = mod(i1 + i2 - (jj == 0 ? 1 : 4) * kk, 15);
  return family_code(f, beta, gamma, i1, i2, i3);
}

std::vector<std::vector<Value>> family_tuples_f13() {
  const FieldPtr f = field_f13();
  const Gf one(f, 1);
  std::set<std::vector<Value>> out;
  for (int i1 = 0; i1 < 12; ++i1)
    for (int jj = 0; jj < 2; ++jj) out.insert(normalized_tuple(family_f13(one, one, i1, jj)));
  return {out.begin(), out.end()};
}

std::vector<std::vector<Value>> family_tuples_f16() {
  const FieldPtr f = field_f16();
  const Gf one(f, 1);
  std::set<std::vector<Value>> out;
  for (int i1 = 0; i1 < 15; ++i1)
    for (int kk : {1, 2, 4, 8})
      for (int jj = 0; jj < 2; ++jj) out.insert(normalized_tuple(family_f16(one, one, i1, kk, jj)));
  return {out.begin(), out.end()};
}

FamilyVerification verify_family(int which, unsigned threads) {
  if (which != 13 && which != 16) throw std::invalid_argument("family field must be 13 or 16");
  const FieldPtr f = which == 13 ? field_f13() : field_f16();
  FamilyVerification v;
  v.field = f->to_string();
  const auto tuples = which == 13 ? family_tuples_f13() : family_tuples_f16();
  v.family_size = tuples.size();

  SearchSpec spec;
  spec.field = f;
  spec.j = 4;
  spec.threads = threads;
  const auto rep = exhaustive_search(spec);
  v.search_count = rep.count;
  v.sets_equal = rep.solutions == tuples;

  v.members_valid = true;
  for (const auto& t : tuples)
    v.members_valid = v.members_valid && is_complete_j_mdp(candidate_code(spec, t), 4).holds;

  // Scaling the two columns by beta and gamma.
  std::set<std::vector<Value>> full;
  for (std::uint32_t b = 1; b < f->q(); ++b)
    for (std::uint32_t g = 1; g < f->q(); ++g)
      for (const auto& t : tuples) {
        const auto bv = static_cast<Value>(b);
        const auto gv = static_cast<Value>(g);
        full.insert({bv, gv, f->mul(bv, t[0]), f->mul(gv, t[1]), f->mul(bv, t[2]), f->mul(gv, t[3])});
      }
  v.full_value_count = full.size();

  const std::size_t expected = which == 13 ? 24 : 120;
  const std::size_t units = f->q() - 1;
  v.holds = v.sets_equal && v.members_valid && v.family_size == expected &&
            v.full_value_count == units * units * expected;
  return v;
}

}  // namespace cmdp
