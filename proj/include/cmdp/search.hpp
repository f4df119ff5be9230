#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmdp/code.hpp"
#include "cmdp/gf.hpp"
#include "cmdp/minors.hpp"

namespace cmdp {

enum class SearchMode { Exhaustive, Randomized };

struct SearchSpec {
  FieldPtr field;
  int n = 2;
  int k = 1;
  int delta = 2;
  int j = 0;
  /// Fix H_nu to the all-ones row (only when n-k = 1).
  bool normalize = true;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  /// nullopt: check the resultant / minor gcd unless the minors already imply it.
  std::optional<bool> require_left_prime;
  unsigned threads = 1;
  /// Extra candidates evaluated before the random draws (randomized mode).
  std::vector<std::vector<Value>> include;
};

struct SearchReport {
  std::string field;
  int n = 0;
  int k = 0;
  int delta = 0;
  int j = 0;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t candidates = 0;
  /// Free coefficient entries of each solution, sorted. With normalization
  /// these are H_{nu-1}, ..., H_0 row-major (for (2,1,2): a, b, c, d).
  std::vector<std::vector<Value>> solutions;
  std::size_t count = 0;
  /// 100 * count / (q-1)^free_entries.
  double percentage = 0.0;
  std::optional<std::uint64_t> seed;
  double elapsed_ms = 0.0;
};

/// Number of free coefficient entries of a candidate.
int free_entries(const SearchSpec& spec);
/// The code a candidate tuple stands for.
ConvCode candidate_code(const SearchSpec& spec, const std::vector<Value>& tuple);
/// Whether left-primeness must be checked separately: the nontrivial minors
/// imply it once j >= L-1 when k | delta, and once j >= L otherwise.
bool left_prime_check_needed(const CodeParams& params, int j);

/// Fast complete j-MDP test for many candidates of one shape. Checks the
/// partial matrices for 0..j in turn so that cheap levels prune first.
class CompleteChecker {
 public:
  CompleteChecker(FieldPtr field, const CodeParams& params, int j, bool check_left_prime);
  bool accepts(const ConvCode& code) const;

 private:
  FieldPtr field_;
  CodeParams params_;
  int j_;
  bool check_left_prime_;
  std::vector<MinorChecker> levels_;
};

/// Enumerates every tuple of nonzero free entries. Throws TooLarge above 10^8 candidates.
SearchReport exhaustive_search(const SearchSpec& spec);
/// Uniform nonzero tuples, deduplicated, deterministic for a seed.
SearchReport randomized_search(const SearchSpec& spec);
SearchReport run_search(const SearchSpec& spec);

/// F13 default field and GF(16) with x^4+x+1.
FieldPtr field_f13();
FieldPtr field_f16();

/// H_2 = [b g], H_1 = [b 2^i1, g 2^i2], H_0 = [b 2^i3, g 2^i3] over F13 with
/// i2 = i1+6 and i3 = 2 i1 + 1 + 6 jj (mod 12).
ConvCode family_f13(const Gf& beta, const Gf& gamma, int i1, int jj);
/// H_2 = [b g], H_1 = [b a^i1, g a^i2], H_0 = [b a^i3, g a^i3] over F16 with
/// i2 = i1 + 3 kk and i3 = i1 + i2 - 4^jj kk (mod 15), kk in {1,2,4,8}.
ConvCode family_f16(const Gf& beta, const Gf& gamma, int i1, int kk, int jj);

struct FamilyVerification {
  std::string field;
  bool holds = false;
  std::size_t family_size = 0;       // distinct normalized (beta = gamma = 1) tuples
  std::size_t full_value_count = 0;  // distinct coefficient sextuples over all beta, gamma
  std::size_t search_count = 0;      // exhaustive j = 4 solutions
  bool sets_equal = false;
  bool members_valid = false;        // every normalized member passes the direct check
};

/// Compares the closed-form family with the exhaustive complete MDP search.
/// `which` is 13 or 16.
FamilyVerification verify_family(int which, unsigned threads = 1);

/// Normalized tuples (a, b, c, d) of a family.
std::vector<std::vector<Value>> family_tuples_f13();
std::vector<std::vector<Value>> family_tuples_f16();

}  // namespace cmdp
