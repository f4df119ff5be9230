#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmdp/code.hpp"

namespace cmdp {

/// Which structured matrix a column selection refers to.
enum class ColumnSetKind {
  Forward,   ///< sliding matrix H_j (lower block-Toeplitz)
  Reverse,   ///< reverse sliding matrix (upper block-Toeplitz, H_nu on the diagonal)
  Complete,  ///< partial parity-check matrix of width (nu+j+1)n
};

struct ColumnShape {
  ColumnSetKind kind = ColumnSetKind::Complete;
  int n = 2;
  int k = 1;
  int nu = 0;
  int j = 0;

  static ColumnShape of(const ConvCode& code, ColumnSetKind kind, int j) {
    return {kind, code.n(), code.k(), code.nu(), j};
  }
  int rows() const { return (j + 1) * (n - k); }
  int width() const { return kind == ColumnSetKind::Complete ? (nu + j + 1) * n : (j + 1) * n; }
};

/// Index conditions for a sorted, 1-based column selection of size rows():
///   Forward:  j_{s(n-k)} <= sn
///   Reverse:  j_{s(n-k)+1} > sn
///   Complete: j_{s(n-k)+1} > sn and j_{s(n-k)} <= sn + nu*n
/// each for s = 1..j.
bool satisfies_index_conditions(const ColumnShape& shape, const std::vector<int>& cols);

/// Calls `fn` for every column selection meeting the index conditions, in
/// lexicographic order. Stops early when `fn` returns false.
void for_each_nontrivial_column_set(const ColumnShape& shape, const std::function<bool(const std::vector<int>&)>& fn);
std::vector<std::vector<int>> nontrivial_column_sets(const ColumnShape& shape);

/// Boolean pattern of positions where the block structure places a
/// coefficient entry, regardless of its value.
using Support = std::vector<std::vector<bool>>;
Support structural_support(const ColumnShape& shape);
Support select_support_columns(const Support& s, const std::vector<int>& cols);

/// Size of a maximum matching between rows and columns of `s`.
std::size_t max_matching(const Support& s);
/// True iff some permutation term of the determinant avoids all structural zeros.
bool has_nontrivial_term(const Support& s);

/// Precomputed nontrivial selections for one shape; evaluates them against
/// numeric matrices of that shape.
class MinorChecker {
 public:
  explicit MinorChecker(const ColumnShape& shape);

  const ColumnShape& shape() const { return shape_; }
  std::size_t size() const { return count_; }
  std::vector<int> column_set(std::size_t i) const;

  struct Result {
    std::optional<std::size_t> first_zero;  // index into the selection list
    std::uint64_t checked = 0;
  };
  /// `m` must be rows() x width(); stops at the first vanishing minor.
  Result first_zero(const GfMatrix& m) const;
  /// Same as above on a raw row-major buffer of width() columns.
  Result first_zero(const Field& f, const Value* m) const;

 private:
  ColumnShape shape_;
  std::size_t count_ = 0;
  std::vector<std::uint16_t> cols_;  // 0-based, rows() entries per selection
};

struct PropertyReport {
  std::string property;
  int j = 0;
  bool holds = false;
  /// 1-based columns of a vanishing nontrivial minor, lexicographically first.
  std::optional<std::vector<int>> counterexample;
  std::uint64_t minors_checked = 0;
  /// Set when the check failed for a reason other than a vanishing minor.
  std::optional<std::string> reason;
  /// Column distance, for the column-distance property.
  std::optional<int> distance;
};

/// Thrown when a check is asked for on a code that does not meet its preconditions.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every forward-nontrivial full-size minor of H_j is nonzero, i.e. the j-th
/// column distance equals (n-k)(j+1)+1. Requires a left prime code.
PropertyReport is_jth_distance_maximal(const ConvCode& code, int j);
PropertyReport is_mdp(const ConvCode& code);
/// MDP and every reverse-nontrivial full-size minor of the reverse sliding matrix is nonzero.
PropertyReport is_reverse_mdp(const ConvCode& code);
/// Every nontrivial full-size minor of the width-(nu+j+1)n partial matrix is
/// nonzero and H(z) is left prime. Throws for j > L.
PropertyReport is_complete_j_mdp(const ConvCode& code, int j);
/// Largest j <= L for which the code is complete j-MDP, or -1.
int max_complete_j(const ConvCode& code);

/// Thrown when an exhaustive oracle would exceed its work bound.
class TooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact j-th column distance by enumerating the kernel of H_j: minimum
/// weight of (v_0, ..., v_j) with v_0 != 0. nullopt when no such prefix
/// exists. Throws TooLarge above 10^7 kernel vectors.
std::optional<int> column_distance_oracle(const ConvCode& code, int j);

/// (n-k)(j+1)+1.
inline int column_distance_bound(const ConvCode& code, int j) { return (code.n() - code.k()) * (j + 1) + 1; }

PropertyReport column_distance_report(const ConvCode& code, int j);

}  // namespace cmdp
