#include "cmdp/minors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmdp {

namespace {

// Checks the index conditions that mention position p (1-based) of the selection.
bool position_ok(const ColumnShape& sh, int p, int col) {
  const int m = sh.n - sh.k;
  const bool upper = sh.kind != ColumnSetKind::Reverse;  // j_{s m} <= bound
  const bool lower = sh.kind != ColumnSetKind::Forward;  // j_{s m + 1} > s n
  if (upper && p % m == 0) {
    const int s = p / m;
    if (s >= 1 && s <= sh.j) {
      const int bound = sh.kind == ColumnSetKind::Forward ? s * sh.n : s * sh.n + sh.nu * sh.n;
      if (col > bound) return false;
    }
  }
  if (lower && (p - 1) % m == 0) {
    const int s = (p - 1) / m;
    if (s >= 1 && s <= sh.j && col <= s * sh.n) return false;
  }
  return true;
}

bool structural(const ColumnShape& sh, int row, int col) {
  const int rb = row / (sh.n - sh.k);
  const int cb = col / sh.n;
  const int d = sh.kind == ColumnSetKind::Forward ? rb - cb : cb - rb;
  return d >= 0 && d <= sh.nu;
}

bool augment(const Support& s, std::size_t r, std::vector<int>& match_col, std::vector<char>& seen) {
  for (std::size_t c = 0; c < s[r].size(); ++c) {
    if (!s[r][c] || seen[c]) continue;
    seen[c] = 1;
    if (match_col[c] < 0 || augment(s, static_cast<std::size_t>(match_col[c]), match_col, seen)) {
      match_col[c] = static_cast<int>(r);
      return true;
    }
  }
  return false;
}

PropertyReport run_checker(std::string name, int j, const MinorChecker& checker, const GfMatrix& m) {
  PropertyReport rep;
  rep.property = std::move(name);
  rep.j = j;
  const auto res = checker.first_zero(m);
  rep.minors_checked = res.checked;
  rep.holds = !res.first_zero.has_value();
  if (res.first_zero) rep.counterexample = checker.column_set(*res.first_zero);
  return rep;
}

void require_left_prime(const ConvCode& code) {
  if (!is_left_prime(code)) throw PreconditionError("parity-check matrix is not left prime");
}

}  // namespace

bool satisfies_index_conditions(const ColumnShape& shape, const std::vector<int>& cols) {
  if (static_cast<int>(cols.size()) != shape.rows()) return false;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] < 1 || cols[i] > shape.width()) return false;
    if (i > 0 && cols[i] <= cols[i - 1]) return false;
    if (!position_ok(shape, static_cast<int>(i) + 1, cols[i])) return false;
  }
  return true;
}

void for_each_nontrivial_column_set(const ColumnShape& shape,
                                    const std::function<bool(const std::vector<int>&)>& fn) {
  const int m = shape.rows();
  const int w = shape.width();
  std::vector<int> cols(m);
  bool keep_going = true;
  std::function<void(int, int)> place = [&](int pos, int start) {
    if (!keep_going) return;
    if (pos == m) {
      keep_going = fn(cols);
      return;
    }
    for (int c = start; c <= w - (m - pos - 1) && keep_going; ++c) {
      if (!position_ok(shape, pos + 1, c)) continue;
      cols[pos] = c;
      place(pos + 1, c + 1);
    }
  };
  place(0, 1);
}

std::vector<std::vector<int>> nontrivial_column_sets(const ColumnShape& shape) {
  std::vector<std::vector<int>> out;
  for_each_nontrivial_column_set(shape, [&](const std::vector<int>& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

Support structural_support(const ColumnShape& shape) {
  Support s(shape.rows(), std::vector<bool>(shape.width(), false));
  for (int r = 0; r < shape.rows(); ++r)
    for (int c = 0; c < shape.width(); ++c) s[r][c] = structural(shape, r, c);
  return s;
}

Support select_support_columns(const Support& s, const std::vector<int>& cols) {
  Support out(s.size(), std::vector<bool>(cols.size(), false));
  for (std::size_t r = 0; r < s.size(); ++r)
    for (std::size_t k = 0; k < cols.size(); ++k) out[r][k] = s[r][cols[k] - 1];
  return out;
}

std::size_t max_matching(const Support& s) {
  if (s.empty()) return 0;
  std::vector<int> match_col(s.front().size(), -1);
  std::size_t size = 0;
  for (std::size_t r = 0; r < s.size(); ++r) {
    std::vector<char> seen(match_col.size(), 0);
    if (augment(s, r, match_col, seen)) ++size;
  }
  return size;
}

bool has_nontrivial_term(const Support& s) {
  for (const auto& row : s)
    if (row.size() != s.size()) throw std::invalid_argument("support must be square");
  return max_matching(s) == s.size();
}

MinorChecker::MinorChecker(const ColumnShape& shape) : shape_(shape) {
  for_each_nontrivial_column_set(shape, [&](const std::vector<int>& c) {
    for (int x : c) cols_.push_back(static_cast<std::uint16_t>(x - 1));
    ++count_;
    return true;
  });
}

std::vector<int> MinorChecker::column_set(std::size_t i) const {
  const auto m = static_cast<std::size_t>(shape_.rows());
  std::vector<int> out(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = cols_[i * m + k] + 1;
  return out;
}

MinorChecker::Result MinorChecker::first_zero(const GfMatrix& m) const {
  if (static_cast<int>(m.rows()) != shape_.rows() || static_cast<int>(m.cols()) != shape_.width())
    throw std::invalid_argument("matrix shape does not match the column-set shape");
  return first_zero(*m.field(), m.data().data());
}

MinorChecker::Result MinorChecker::first_zero(const Field& f, const Value* m) const {
  const auto rows = static_cast<std::size_t>(shape_.rows());
  const auto width = static_cast<std::size_t>(shape_.width());
  std::vector<Value> scratch(rows * rows);
  Result res;
  for (std::size_t i = 0; i < count_; ++i) {
    const std::uint16_t* sel = cols_.data() + i * rows;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < rows; ++c) scratch[r * rows + c] = m[r * width + sel[c]];
    ++res.checked;
    if (det_inplace(f, scratch, rows) == 0) {
      res.first_zero = i;
      return res;
    }
  }
  return res;
}

PropertyReport is_jth_distance_maximal(const ConvCode& code, int j) {
  if (j < 0) throw std::invalid_argument("j must be nonnegative");
  require_left_prime(code);
  MinorChecker checker(ColumnShape::of(code, ColumnSetKind::Forward, j));
  return run_checker("column-distance-maximal", j, checker, sliding_matrix(code, j));
}

PropertyReport is_mdp(const ConvCode& code) {
  auto rep = is_jth_distance_maximal(code, code.L());
  rep.property = "mdp";
  return rep;
}

PropertyReport is_reverse_mdp(const ConvCode& code) {
  auto fwd = is_mdp(code);
  fwd.property = "reverse-mdp";
  if (!fwd.holds) {
    fwd.reason = "not MDP";
    return fwd;
  }
  MinorChecker checker(ColumnShape::of(code, ColumnSetKind::Reverse, code.L()));
  auto rev = run_checker("reverse-mdp", code.L(), checker, reverse_sliding_matrix(code, code.L()));
  rev.minors_checked += fwd.minors_checked;
  return rev;
}

PropertyReport is_complete_j_mdp(const ConvCode& code, int j) {
  if (j < 0 || j > code.L())
    throw std::invalid_argument("j = " + std::to_string(j) + " outside 0.." + std::to_string(code.L()));
  MinorChecker checker(ColumnShape::of(code, ColumnSetKind::Complete, j));
  auto rep = run_checker("complete-j-mdp", j, checker, partial_matrix(code, j));
  if (rep.holds && !is_left_prime(code)) {
    rep.holds = false;
    rep.reason = "not left prime";
  }
  return rep;
}

int max_complete_j(const ConvCode& code) {
  int best = -1;
  for (int j = 0; j <= code.L(); ++j) {
    if (!is_complete_j_mdp(code, j).holds) break;
    best = j;
  }
  return best;
}

std::optional<int> column_distance_oracle(const ConvCode& code, int j) {
  if (j < 0) throw std::invalid_argument("j must be nonnegative");
  const Field& f = *code.field();
  const auto basis = nullspace(sliding_matrix(code, j));
  const std::size_t dim = basis.size();
  const double states = std::pow(static_cast<double>(f.q()), static_cast<double>(dim));
  if (states > 1e7) throw TooLarge("kernel has " + std::to_string(f.q()) + "^" + std::to_string(dim) + " vectors");
  const std::size_t len = static_cast<std::size_t>((j + 1) * code.n());
  const auto n = static_cast<std::size_t>(code.n());

  std::vector<Value> digits(dim, 0);
  std::vector<Value> v(len, 0);
  int best = std::numeric_limits<int>::max();
  while (true) {
    // Odometer step: bump the lowest digit that is not q-1, reset the ones below.
    std::size_t i = 0;
    while (i < dim && digits[i] == f.q() - 1) {
      const Value delta = f.neg(digits[i]);
      for (std::size_t t = 0; t < len; ++t) v[t] = f.add(v[t], f.mul(delta, basis[i][t]));
      digits[i] = 0;
      ++i;
    }
    if (i == dim) break;
    const Value next = static_cast<Value>(digits[i] + 1);
    const Value delta = f.sub(next, digits[i]);
    for (std::size_t t = 0; t < len; ++t) v[t] = f.add(v[t], f.mul(delta, basis[i][t]));
    digits[i] = next;

    if (std::all_of(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n), [](Value x) { return x == 0; })) continue;
    const int w = static_cast<int>(std::count_if(v.begin(), v.end(), [](Value x) { return x != 0; }));
    best = std::min(best, w);
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

PropertyReport column_distance_report(const ConvCode& code, int j) {
  PropertyReport rep;
  rep.property = "column-distance";
  rep.j = j;
  rep.distance = column_distance_oracle(code, j);
  rep.holds = rep.distance && *rep.distance == column_distance_bound(code, j);
  if (!rep.distance) rep.reason = "no codeword prefix with v_0 != 0";
  return rep;
}

}  // namespace cmdp
