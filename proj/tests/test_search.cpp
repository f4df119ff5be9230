#include <doctest.h>

#include <set>

#include "cmdp/search.hpp"
#include "known_codes.hpp"

using namespace cmdp;

namespace {

SearchSpec spec_for(const char* field, int j, int delta = 2) {
  SearchSpec s;
  s.field = Field::parse(field);
  s.delta = delta;
  s.j = j;
  return s;
}

// Candidate-by-candidate reference using the general property check.
std::vector<std::vector<Value>> direct_solutions(const SearchSpec& spec) {
  const auto q = spec.field->q();
  const int free = free_entries(spec);
  std::vector<std::vector<Value>> out;
  std::vector<Value> t(static_cast<std::size_t>(free), 1);
  while (true) {
    const auto code = candidate_code(spec, t);
    if (is_complete_j_mdp(code, spec.j).holds) out.push_back(t);
    int i = free - 1;
    while (i >= 0 && t[i] == q - 1) t[i--] = 1;
    if (i < 0) break;
    ++t[i];
  }
  return out;
}

ConvCode scaled(const FieldPtr& f, const std::vector<Value>& t, Value beta, Value gamma) {
  return ConvCode::from_high_first(f, 2, 1, 2,
                                   {{beta, gamma},
                                    {f->mul(beta, t[0]), f->mul(gamma, t[1])},
                                    {f->mul(beta, t[2]), f->mul(gamma, t[3])}});
}

}  // namespace

TEST_CASE("left-primeness thresholds") {
  const auto p212 = CodeParams::make(2, 1, 2);
  CHECK(left_prime_check_needed(p212, 2));
  CHECK_FALSE(left_prime_check_needed(p212, 3));
  const auto p213 = CodeParams::make(2, 1, 3);
  CHECK(left_prime_check_needed(p213, 4));
  CHECK_FALSE(left_prime_check_needed(p213, 5));
  const auto p312 = CodeParams::make(3, 1, 2);  // k | delta, L = 3
  CHECK(left_prime_check_needed(p312, 1));
  CHECK_FALSE(left_prime_check_needed(p312, 2));
}

TEST_CASE("exhaustive search agrees with the direct property check") {
  for (auto [field, j] : std::vector<std::pair<const char*, int>>{{"4", 0}, {"5", 0}, {"5", 1}, {"7", 2}, {"8", 1}, {"9", 2}}) {
    CAPTURE(field);
    CAPTURE(j);
    const auto spec = spec_for(field, j);
    const auto rep = exhaustive_search(spec);
    CHECK(rep.solutions == direct_solutions(spec));
    CHECK(rep.count == rep.solutions.size());
    const double q1 = spec.field->q() - 1.0;
    CHECK(rep.percentage == doctest::Approx(100.0 * rep.count / (q1 * q1 * q1 * q1)));
    CHECK(rep.candidates == static_cast<std::uint64_t>(q1 * q1 * q1 * q1));
    for (const auto& t : rep.solutions) {
      const auto code = candidate_code(spec, t);
      CHECK(is_left_prime(code));
      CHECK(is_complete_j_mdp(code, j).holds);
    }
  }
}

TEST_CASE("unnormalized search counts every column scaling") {
  auto spec = spec_for("5", 1);
  const auto norm = exhaustive_search(spec);
  spec.normalize = false;
  const auto full = exhaustive_search(spec);
  CHECK(full.count == norm.count * 16);
  CHECK(full.candidates == 4096);
}

TEST_CASE("threads do not change the result") {
  auto spec = spec_for("8", 2);
  const auto one = exhaustive_search(spec);
  spec.threads = 3;
  const auto three = exhaustive_search(spec);
  CHECK(one.solutions == three.solutions);
  CHECK(one.count == 126);
}

TEST_CASE("solution sets are nested in j") {
  for (const char* field : {"7", "8", "11"}) {
    std::vector<std::set<std::vector<Value>>> sets;
    for (int j = 0; j <= 4; ++j) {
      const auto rep = exhaustive_search(spec_for(field, j));
      sets.emplace_back(rep.solutions.begin(), rep.solutions.end());
    }
    for (int j = 0; j < 4; ++j) CHECK(std::includes(sets[j].begin(), sets[j].end(), sets[j + 1].begin(), sets[j + 1].end()));
  }
}

TEST_CASE("column scaling maps solutions to solutions") {
  const auto spec = spec_for("8", 2);
  const auto f = spec.field;
  const auto rep = exhaustive_search(spec);
  std::set<std::vector<Value>> sols(rep.solutions.begin(), rep.solutions.end());
  for (const auto& t : rep.solutions)
    for (Value beta = 1; beta < 8; ++beta)
      for (Value gamma = 1; gamma < 8; ++gamma) {
        const auto c = scaled(f, t, beta, gamma);
        CHECK(is_complete_j_mdp(c, 2).holds);
        // renormalize: divide each column by its leading entry, back in the solution set
        const auto back = scaled(f, {f->mul(beta, t[0]), f->mul(gamma, t[1]), f->mul(beta, t[2]), f->mul(gamma, t[3])},
                                 f->inv(beta), f->inv(gamma));
        CHECK(sols.count({back.H(1)(0, 0), back.H(1)(0, 1), back.H(0)(0, 0), back.H(0)(0, 1)}) == 1);
      }
  // normalized representatives are pairwise non-proportional
  for (std::size_t a = 0; a < rep.solutions.size(); ++a)
    for (std::size_t b = a + 1; b < rep.solutions.size(); ++b) CHECK(rep.solutions[a] != rep.solutions[b]);
}

TEST_CASE("search errors") {
  auto spec = spec_for("5", 5);
  CHECK_THROWS_AS(exhaustive_search(spec), std::invalid_argument);
  spec = spec_for("5", 0);
  spec.n = 3;
  spec.k = 1;
  CHECK_THROWS_AS(exhaustive_search(spec), std::invalid_argument);
  spec = spec_for("2^16", 0, 3);
  CHECK_THROWS_AS(exhaustive_search(spec), TooLarge);
}

TEST_CASE("randomized search") {
  auto spec = spec_for("13", 4);
  spec.mode = SearchMode::Randomized;
  spec.trials = 0;
  auto rep = run_search(spec);
  CHECK(rep.count == 0);
  CHECK(rep.candidates == 0);
  CHECK(rep.seed == std::optional<std::uint64_t>(0));

  spec.trials = 3000;
  spec.seed = 42;
  const auto a = run_search(spec);
  const auto b = run_search(spec);
  CHECK(a.solutions == b.solutions);
  CHECK(a.candidates == b.candidates);
  CHECK(a.candidates <= 3000);
  const auto all = exhaustive_search(spec_for("13", 4));
  const std::set<std::vector<Value>> universe(all.solutions.begin(), all.solutions.end());
  for (const auto& t : a.solutions) CHECK(universe.count(t) == 1);

  // supplied candidates are always evaluated
  spec.trials = 0;
  spec.include = {{12, 2, 2, 1}, {12, 2, 2, 1}, {1, 1, 1, 1}};
  rep = run_search(spec);
  CHECK(rep.candidates == 2);
  CHECK(rep.count == (universe.count({12, 2, 2, 1}) ? 1u : 0u));
  spec.include = {{0, 1, 1, 1}};
  CHECK_THROWS_AS(run_search(spec), std::invalid_argument);
}

TEST_CASE("closed-form family members") {
  auto f13 = field_f13();
  auto f16 = field_f16();
  const Gf one13(f13, 1), one16(f16, 1);
  CHECK(family_f13(one13, one13, 0, 0) == known::code(known::f13_mdp));
  CHECK(family_f16(one16, one16, 0, 1, 0) == known::code("16;2,1,2;1,1|1,8|4,4"));
  CHECK(family_f16(one16, one16, 2, 8, 1) == known::code("16;2,1,2;1,1|4,14|14,14"));
  CHECK(f16->render_poly(14) == "α^3+α^2+α");
  const auto scaled_member = family_f13(Gf(f13, 3), Gf(f13, 5), 4, 1);
  CHECK(scaled_member.H(2) == GfMatrix(f13, {{3, 5}}));
  CHECK(is_complete_j_mdp(scaled_member, 4).holds);
  CHECK_THROWS_AS(family_f13(one13, one13, 12, 0), std::invalid_argument);
  CHECK_THROWS_AS(family_f13(one13, Gf(f13, 0), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(family_f16(one16, one16, 0, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(family_f16(one13, one13, 0, 1, 0), FieldMismatch);
  CHECK(family_tuples_f13().size() == 24);
  CHECK(family_tuples_f16().size() == 120);
}

TEST_CASE("alternate parameterization of the GF(16) family") {
  // k = 1..4 with 4^j k, j = 1, 2, instead of k in {1,2,4,8}, j in {0,1}.
  // 4^2 = 1 mod 15 so offsets are {4k, k} vs {kk, 4kk}; k = 3 vs kk = 8 differ.
  auto f = field_f16();
  std::set<std::vector<Value>> table;
  for (int i1 = 0; i1 < 15; ++i1)
    for (int k = 1; k <= 4; ++k)
      for (int jj = 1; jj <= 2; ++jj) {
        const int i2 = (i1 + 3 * k) % 15;
        const int i3 = (((i1 + i2 - (jj == 1 ? 4 : 16) * k) % 15) + 15) % 15;
        table.insert({f->exp(i1), f->exp(i2), f->exp(i3), f->exp(i3)});
      }
  const auto closed = family_tuples_f16();
  const std::set<std::vector<Value>> th(closed.begin(), closed.end());
  std::size_t valid = 0;
  for (const auto& t : table) valid += is_complete_j_mdp(candidate_code(spec_for("16", 4), t), 4).holds;
  CHECK(table.size() == 120);
  CHECK(table != th);
  CHECK(valid < table.size());
}
