#include "cmdp/erasure.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "cmdp/minors.hpp"

namespace cmdp {

std::size_t ErasurePattern::count() const { return static_cast<std::size_t>(std::count(erased.begin(), erased.end(), true)); }

ErasurePattern parse_pattern(std::string_view text, int n) {
  ErasurePattern p;
  std::vector<std::size_t> bars;
  for (char ch : text) {
    switch (ch) {
      case '.':
        p.erased.push_back(false);
        break;
      case 'x':
      case 'X':
        p.erased.push_back(true);
        break;
      case '|':
        bars.push_back(p.erased.size());
        break;
      case ' ':
      case '\t':
      case '\n':
      case '\r':
        break;
      default:
        throw std::invalid_argument(std::string("bad pattern character '") + ch + "'");
    }
  }
  if (n <= 0) n = bars.empty() ? 1 : static_cast<int>(bars.front());
  if (n <= 0) throw std::invalid_argument("pattern starts with a separator");
  for (auto b : bars)
    if (b % static_cast<std::size_t>(n) != 0) throw std::invalid_argument("separator not aligned to n");
  if (p.erased.size() % static_cast<std::size_t>(n) != 0)
    throw std::invalid_argument("pattern length is not a multiple of n");
  p.n = n;
  return p;
}

std::string render_pattern(const ErasurePattern& p) {
  std::string out;
  for (std::size_t i = 0; i < p.erased.size(); ++i) {
    if (i > 0 && i % static_cast<std::size_t>(p.n) == 0) out += '|';
    out += p.erased[i] ? 'x' : '.';
  }
  return out;
}

namespace {

template <typename T>
T parse_number(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

PatternSpec parse_pattern_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "iid") {
    const double rate = std::stod(std::string(rest));
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("erasure rate must lie in [0, 1]");
    return IidErasures{rate};
  }
  if (kind == "burst") {
    const auto c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw std::invalid_argument("burst spec is burst:<start>:<len>");
    return BurstErasures{parse_number<std::size_t>(rest.substr(0, c2)), parse_number<std::size_t>(rest.substr(c2 + 1))};
  }
  if (kind == "explicit") return ExplicitErasures{parse_pattern(rest)};
  throw std::invalid_argument("unknown pattern kind '" + std::string(kind) + "'");
}

ErasurePattern gen_pattern(const PatternSpec& spec, std::size_t length, std::uint64_t seed, int n) {
  ErasurePattern p;
  p.n = n;
  p.erased.assign(length, false);
  if (const auto* iid = std::get_if<IidErasures>(&spec)) {
    if (iid->rate < 0.0 || iid->rate > 1.0) throw std::invalid_argument("erasure rate must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < length; ++i) p.erased[i] = u(rng) < iid->rate;
  } else if (const auto* burst = std::get_if<BurstErasures>(&spec)) {
    for (std::size_t i = burst->start; i < std::min(length, burst->start + burst->length); ++i) p.erased[i] = true;
  } else {
    const auto& src = std::get<ExplicitErasures>(spec).pattern;
    if (!src.erased.empty())
      for (std::size_t i = 0; i < length; ++i) p.erased[i] = src.erased[i % src.erased.size()];
  }
  return p;
}

std::size_t ReceivedStream::erasures() const {
  return static_cast<std::size_t>(std::count(symbols.begin(), symbols.end(), std::nullopt));
}

ReceivedStream apply_pattern(std::span<const Value> codeword, const ErasurePattern& pattern, bool terminated) {
  if (codeword.size() != pattern.size()) throw std::invalid_argument("pattern and codeword lengths differ");
  ReceivedStream s;
  s.n = pattern.n;
  s.terminated = terminated;
  s.symbols.resize(codeword.size());
  for (std::size_t i = 0; i < codeword.size(); ++i)
    if (!pattern.erased[i]) s.symbols[i] = codeword[i];
  return s;
}

std::vector<int> information_positions(const ConvCode& code) {
  const int n = code.n();
  const int k = code.k();
  std::vector<int> info(k);
  for (int i = 0; i < k; ++i) info[i] = i;
  while (true) {
    std::vector<std::size_t> parity;
    for (int c = 0; c < n; ++c)
      if (std::find(info.begin(), info.end(), c) == info.end()) parity.push_back(static_cast<std::size_t>(c));
    if (det(code.H(0).select_columns(parity)) != 0) return info;
    int i = k - 1;
    while (i >= 0 && info[i] == n - k + i) --i;
    if (i < 0) break;
    ++info[i];
    for (int t = i + 1; t < k; ++t) info[t] = info[t - 1] + 1;
  }
  throw std::invalid_argument("H_0 has no invertible (n-k) x (n-k) submatrix");
}

std::vector<Value> encode_stream(const ConvCode& code, const std::vector<std::vector<Value>>& message) {
  const Field& f = *code.field();
  const int n = code.n();
  const int m = n - code.k();
  const auto info = information_positions(code);
  std::vector<std::size_t> parity;
  for (int c = 0; c < n; ++c)
    if (std::find(info.begin(), info.end(), c) == info.end()) parity.push_back(static_cast<std::size_t>(c));
  const GfMatrix h0p = code.H(0).select_columns(parity);

  std::vector<Value> out(message.size() * static_cast<std::size_t>(n), 0);
  for (std::size_t t = 0; t < message.size(); ++t) {
    if (static_cast<int>(message[t].size()) != code.k()) throw std::invalid_argument("message step must have k symbols");
    Value* vt = out.data() + t * n;
    for (int a = 0; a < code.k(); ++a) {
      if (!f.contains(message[t][a])) throw std::invalid_argument("message symbol outside the field");
      vt[info[a]] = message[t][a];
    }
    std::vector<Value> rhs(m, 0);
    for (int i = 0; i <= code.nu(); ++i) {
      if (static_cast<std::size_t>(i) > t) break;
      const Value* prev = out.data() + (t - i) * n;
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) rhs[r] = f.sub(rhs[r], f.mul(code.H(i)(r, c), prev[c]));
    }
    // prev for i = 0 contributed only the information symbols; parity entries are still zero.
    auto x = solve_unique(h0p, rhs);
    for (std::size_t p = 0; p < parity.size(); ++p) vt[parity[p]] = (*x)[p];
  }
  return out;
}

std::vector<Value> encode_polynomial(const ConvCode& code, std::span<const Value> message) {
  if (code.n() != 2 || code.k() != 1) throw std::invalid_argument("polynomial encoder needs a rate 1/2 code");
  const Field& f = *code.field();
  const std::size_t steps = message.size() + static_cast<std::size_t>(code.nu());
  std::vector<Value> out(2 * steps, 0);
  for (std::size_t t = 0; t < message.size(); ++t) {
    if (message[t] == 0) continue;
    for (int i = 0; i <= code.nu(); ++i) {
      const std::size_t u = t + static_cast<std::size_t>(i);
      out[2 * u] = f.add(out[2 * u], f.mul(code.H(i)(0, 1), message[t]));
      out[2 * u + 1] = f.sub(out[2 * u + 1], f.mul(code.H(i)(0, 0), message[t]));
    }
  }
  return out;
}

namespace {

// Parity-check matrix of the finite stream: equations t = 0..steps-1, plus
// the nu trailing ones for a terminated stream.
GfMatrix stream_parity_matrix(const ConvCode& code, std::size_t steps, bool terminated) {
  const int n = code.n();
  const int m = n - code.k();
  const std::size_t eqs = steps + (terminated ? static_cast<std::size_t>(code.nu()) : 0);
  GfMatrix a(code.field(), eqs * m, steps * n);
  for (std::size_t t = 0; t < eqs; ++t)
    for (int i = 0; i <= code.nu(); ++i) {
      if (static_cast<std::size_t>(i) > t || t - i >= steps) continue;
      a.set_block(t * m, (t - i) * n, code.H(i));
    }
  return a;
}

}  // namespace

bool satisfies_parity(const ConvCode& code, std::span<const Value> codeword, bool terminated) {
  if (codeword.size() % static_cast<std::size_t>(code.n()) != 0) return false;
  const auto a = stream_parity_matrix(code, codeword.size() / code.n(), terminated);
  const auto syn = a * codeword;
  return std::all_of(syn.begin(), syn.end(), [](Value v) { return v == 0; });
}

CodewordSampler::CodewordSampler(const ConvCode& code, std::size_t steps)
    : field_(code.field()), length_(steps * code.n()), basis_(nullspace(stream_parity_matrix(code, steps, true))) {}

std::vector<Value> CodewordSampler::sample(std::mt19937_64& rng) const {
  const Field& f = *field_;
  std::uniform_int_distribution<std::uint32_t> pick(0, f.q() - 1);
  std::vector<Value> v(length_, 0);
  for (const auto& b : basis_) {
    const auto c = static_cast<Value>(pick(rng));
    if (c == 0) continue;
    for (std::size_t t = 0; t < length_; ++t) v[t] = f.add(v[t], f.mul(c, b[t]));
  }
  return v;
}

int DecodeReport::max_delay() const {
  int d = 0;
  for (const auto& r : recovered) d = std::max(d, r.delay);
  return d;
}

namespace {

// Decoder state: current knowledge of every symbol plus the window solver.
class Workspace {
 public:
  Workspace(const ConvCode& code, const ReceivedStream& stream)
      : code_(code), f_(*code.field()), n_(code.n()), m_(code.n() - code.k()), values_(stream.symbols),
        steps_(static_cast<int>(stream.steps())), terminated_(stream.terminated) {
    if (stream.n != n_) throw std::invalid_argument("stream symbol grouping does not match the code length");
    if (stream.symbols.size() % static_cast<std::size_t>(n_) != 0)
      throw std::invalid_argument("stream length is not a multiple of n");
    for (const auto& v : values_)
      if (v && !f_.contains(*v)) throw std::invalid_argument("stream symbol outside the field");
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!values_[i]) erased_.push_back(i);
  }

  int steps() const { return steps_; }
  int nu() const { return code_.nu(); }
  int n() const { return n_; }
  // Last time index whose parity equation involves stream data.
  int last_equation() const { return terminated_ ? steps_ - 1 + code_.nu() : steps_ - 1; }

  bool unknown(int step, int comp) const {
    return step >= 0 && step < steps_ && !values_[static_cast<std::size_t>(step * n_ + comp)];
  }
  bool step_has_unknown(int step) const {
    for (int c = 0; c < n_; ++c)
      if (unknown(step, c)) return true;
    return false;
  }
  Value known(int step, int comp) const {
    if (step < 0 || step >= steps_) return 0;
    return *values_[static_cast<std::size_t>(step * n_ + comp)];
  }

  struct Solution {
    std::vector<std::size_t> unknowns;  // global symbol indices
    std::vector<std::optional<Value>> values;
    bool full_rank = false;
  };

  // Solves the equations at times a+nu..b over steps a..b.
  Solution solve(int a, int b) const {
    Solution sol;
    const int nu = code_.nu();
    for (int u = std::max(a, 0); u <= std::min(b, steps_ - 1); ++u)
      for (int c = 0; c < n_; ++c)
        if (unknown(u, c)) sol.unknowns.push_back(static_cast<std::size_t>(u * n_ + c));
    if (sol.unknowns.empty()) return sol;
    const int tau0 = std::max(a + nu, 0);
    const int tau1 = std::min(b, last_equation());
    if (tau1 < tau0) {
      sol.values.assign(sol.unknowns.size(), std::nullopt);
      return sol;
    }
    const auto eqs = static_cast<std::size_t>((tau1 - tau0 + 1) * m_);
    GfMatrix a_mat(code_.field(), eqs, sol.unknowns.size());
    std::vector<Value> rhs(eqs, 0);
    for (int tau = tau0; tau <= tau1; ++tau)
      for (int i = 0; i <= nu; ++i) {
        const int u = tau - i;
        if (u < 0 || u >= steps_) continue;
        const GfMatrix& h = code_.H(i);
        for (int c = 0; c < n_; ++c) {
          const auto global = static_cast<std::size_t>(u * n_ + c);
          if (unknown(u, c)) {
            const auto col = static_cast<std::size_t>(
                std::lower_bound(sol.unknowns.begin(), sol.unknowns.end(), global) - sol.unknowns.begin());
            for (int r = 0; r < m_; ++r) a_mat((tau - tau0) * m_ + r, col) = h(r, c);
          } else {
            const Value x = known(u, c);
            if (x == 0) continue;
            for (int r = 0; r < m_; ++r) {
              auto& y = rhs[static_cast<std::size_t>((tau - tau0) * m_ + r)];
              y = f_.sub(y, f_.mul(h(r, c), x));
            }
          }
        }
      }
    sol.values = solve_determined(a_mat, rhs);
    sol.full_rank = std::all_of(sol.values.begin(), sol.values.end(), [](const auto& v) { return v.has_value(); });
    return sol;
  }

  void assign(std::size_t global, Value v) { values_[global] = v; }

  DecodeReport finish(std::vector<RecoveredSymbol> recovered) const {
    DecodeReport rep;
    std::sort(recovered.begin(), recovered.end(), [](const auto& x, const auto& y) { return x.index < y.index; });
    rep.recovered = std::move(recovered);
    for (auto i : erased_)
      if (!values_[i]) rep.lost.push_back(i);
    rep.residual = values_;
    return rep;
  }

 private:
  const ConvCode& code_;
  const Field& f_;
  int n_;
  int m_;
  std::vector<std::optional<Value>> values_;
  int steps_;
  bool terminated_;
  std::vector<std::size_t> erased_;
};

}  // namespace

DecodeReport decode_low_delay(const ConvCode& code, const ReceivedStream& stream, int delay, bool partial, bool trace) {
  if (delay < 0) throw std::invalid_argument("delay must be nonnegative");
  Workspace ws(code, stream);
  const int nu = code.nu();
  const int n = code.n();
  std::vector<RecoveredSymbol> recovered;
  std::vector<DecodeAttempt> attempts;

  int c = -(nu + 1);
  for (int i = 0; i < ws.steps(); ++i) {
    if (!ws.step_has_unknown(i)) continue;
    bool solved = false;
    for (int j = 0; j <= delay && !solved; ++j) {
      if (i + j > ws.last_equation()) break;
      const int t = std::max(i - nu, c);
      const int s = i + j - t - nu;
      DecodeAttempt att{i, j, t, s, {}, false, false};
      if (s >= 0) {
        const auto sol = ws.solve(t, i + j);
        bool target = true;
        for (std::size_t u = 0; u < sol.unknowns.size(); ++u) {
          const int step = static_cast<int>(sol.unknowns[u]) / n;
          att.erased_columns.push_back(static_cast<int>(sol.unknowns[u]) - t * n + 1);
          if (step == i && !sol.values[u]) target = false;
        }
        att.full_rank = sol.full_rank;
        att.target_solved = target;
        if (target || partial) {
          for (std::size_t u = 0; u < sol.unknowns.size(); ++u) {
            const int step = static_cast<int>(sol.unknowns[u]) / n;
            if (step < i || !sol.values[u]) continue;
            ws.assign(sol.unknowns[u], *sol.values[u]);
            recovered.push_back({sol.unknowns[u], i + j - step});
          }
        }
        solved = target;
      }
      if (trace) attempts.push_back(std::move(att));
    }
    if (!solved) c = i;
  }
  auto rep = ws.finish(std::move(recovered));
  rep.attempts = std::move(attempts);
  return rep;
}

DecodeReport decode_windowed(const ConvCode& code, const ReceivedStream& stream, std::optional<int> max_j) {
  Workspace ws(code, stream);
  const int nu = code.nu();
  const int J = max_j ? *max_j : std::max(max_complete_j(code), 0);
  if (J < 0) throw std::invalid_argument("max_j must be nonnegative");
  std::vector<RecoveredSymbol> recovered;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int j = 0; j <= J; ++j)
      for (int a = -nu; a < ws.steps(); ++a) {
        const int b = a + nu + j;
        bool any = false;
        for (int u = std::max(a, 0); u <= std::min(b, ws.steps() - 1) && !any; ++u) any = ws.step_has_unknown(u);
        if (!any) continue;
        const auto sol = ws.solve(a, b);
        for (std::size_t u = 0; u < sol.unknowns.size(); ++u) {
          if (!sol.values[u]) continue;
          const int step = static_cast<int>(sol.unknowns[u]) / code.n();
          ws.assign(sol.unknowns[u], *sol.values[u]);
          recovered.push_back({sol.unknowns[u], std::max(0, b - step)});
          progress = true;
        }
      }
  }
  return ws.finish(std::move(recovered));
}

DecodeReport decode_schedule(const ConvCode& code, const ReceivedStream& stream, const std::vector<Window>& windows) {
  Workspace ws(code, stream);
  std::vector<RecoveredSymbol> recovered;
  for (const auto& w : windows) {
    if (w.last < w.first + code.nu()) throw std::invalid_argument("window shorter than nu+1 steps");
    const auto sol = ws.solve(w.first, w.last);
    for (std::size_t u = 0; u < sol.unknowns.size(); ++u) {
      if (!sol.values[u]) continue;
      const int step = static_cast<int>(sol.unknowns[u]) / code.n();
      ws.assign(sol.unknowns[u], *sol.values[u]);
      recovered.push_back({sol.unknowns[u], std::max(0, w.last - step)});
    }
  }
  return ws.finish(std::move(recovered));
}

DecodeReport decode_oracle(const ConvCode& code, const ReceivedStream& stream) {
  Workspace ws(code, stream);
  std::vector<RecoveredSymbol> recovered;
  const int last = std::max(ws.last_equation(), 0);
  const auto sol = ws.solve(-code.nu(), last);
  for (std::size_t u = 0; u < sol.unknowns.size(); ++u) {
    if (!sol.values[u]) continue;
    const int step = static_cast<int>(sol.unknowns[u]) / code.n();
    ws.assign(sol.unknowns[u], *sol.values[u]);
    recovered.push_back({sol.unknowns[u], std::max(0, ws.steps() - 1 - step)});
  }
  return ws.finish(std::move(recovered));
}

}  // namespace cmdp
