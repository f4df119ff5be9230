#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cmdp/code.hpp"

namespace cmdp {

/// Per-symbol erasure flags, read in groups of n per time step.
struct ErasurePattern {
  int n = 1;
  std::vector<bool> erased;

  std::size_t size() const { return erased.size(); }
  std::size_t steps() const { return erased.size() / static_cast<std::size_t>(n); }
  std::size_t count() const;
};

/// '.' received, 'x' erased; whitespace ignored; '|' separators must sit at
/// multiples of n. With n = 0 the first '|' group fixes n (1 if none).
ErasurePattern parse_pattern(std::string_view text, int n = 0);
/// Groups of n joined by '|'.
std::string render_pattern(const ErasurePattern& p);

struct IidErasures {
  double rate = 0.0;
};
struct BurstErasures {
  std::size_t start = 0;
  std::size_t length = 0;
};
struct ExplicitErasures {
  ErasurePattern pattern;
};
using PatternSpec = std::variant<IidErasures, BurstErasures, ExplicitErasures>;

/// "iid:<rate>", "burst:<start>:<len>" or "explicit:<pattern>".
PatternSpec parse_pattern_spec(std::string_view text);
/// Deterministic for a fixed seed. Explicit patterns are tiled to `length`.
ErasurePattern gen_pattern(const PatternSpec& spec, std::size_t length, std::uint64_t seed, int n = 1);

/// Received symbols; nullopt marks an erasure. A terminated stream is a whole
/// codeword of degree < steps(), so every later coefficient is known to be zero.
struct ReceivedStream {
  int n = 1;
  std::vector<std::optional<Value>> symbols;
  bool terminated = true;

  std::size_t steps() const { return symbols.size() / static_cast<std::size_t>(n); }
  std::size_t erasures() const;
};

ReceivedStream apply_pattern(std::span<const Value> codeword, const ErasurePattern& pattern, bool terminated = true);

/// Systematic encoder: k message symbols per step go to the information
/// positions, the remaining n-k are solved from sum_i H_i v_{t-i} = 0.
/// Throws if H_0 has no invertible (n-k) x (n-k) submatrix.
std::vector<Value> encode_stream(const ConvCode& code, const std::vector<std::vector<Value>>& message);
/// Information positions used by encode_stream (lexicographically first).
std::vector<int> information_positions(const ConvCode& code);
/// Rate 1/2 only: v(z) = [h_2(z) m(z), -h_1(z) m(z)], which H(z) annihilates.
/// Output has message.size() + nu steps and is terminated.
std::vector<Value> encode_polynomial(const ConvCode& code, std::span<const Value> message);

/// True iff every parity equation sum_i H_i v_{t-i} = 0 holds, for t < steps
/// and, when terminated, also for the nu trailing equations.
bool satisfies_parity(const ConvCode& code, std::span<const Value> codeword, bool terminated = true);

/// Uniform samples of codewords of degree < steps (terminated codewords).
class CodewordSampler {
 public:
  CodewordSampler(const ConvCode& code, std::size_t steps);
  std::vector<Value> sample(std::mt19937_64& rng) const;
  std::size_t dimension() const { return basis_.size(); }

 private:
  FieldPtr field_;
  std::size_t length_;
  std::vector<std::vector<Value>> basis_;
};

struct RecoveredSymbol {
  std::size_t index = 0;  // global symbol index t*n + component
  int delay = 0;          // steps between the symbol's slot and the last step its system used
};

/// One execution of the bounded-delay step-4 test.
struct DecodeAttempt {
  int i = 0;
  int j = 0;
  int t = 0;
  int s = 0;
  std::vector<int> erased_columns;  // 1-based columns of the width-(nu+s+1)n partial matrix
  bool full_rank = false;           // all erased columns independent
  bool target_solved = false;       // every erasure of v_i determined
};

struct DecodeReport {
  std::vector<RecoveredSymbol> recovered;
  std::vector<std::size_t> lost;
  std::vector<std::optional<Value>> residual;
  std::vector<DecodeAttempt> attempts;  // bounded-delay decoder with tracing only

  int max_delay() const;
  bool complete() const { return lost.empty(); }
};

/// Bounded-delay sequential decoder. Scans for the first step i with
/// erasures and grows the look-ahead j = 0..delay; each attempt solves the
/// system of the width-(nu+s+1)n partial matrix over v_t..v_{i+j} with
/// t = max(i-nu, c), s = i+j-t-nu, where c is the last step declared lost.
/// Without `partial`, v_i is only written back once all of its erasures are
/// determined; with it, each determined component is kept.
DecodeReport decode_low_delay(const ConvCode& code, const ReceivedStream& stream, int delay, bool partial = false,
                              bool trace = false);

/// Iterative sliding-window decoder: repeatedly solves every window of
/// nu+j+1 steps for j = 0..max_j (forward, backward and restart windows are
/// all of this form) until a full pass recovers nothing. max_j defaults to
/// the largest j for which the code is complete j-MDP (at least 0).
DecodeReport decode_windowed(const ConvCode& code, const ReceivedStream& stream, std::optional<int> max_j = {});

/// A window [first, last] of time steps; its system is the parity equations
/// at times first+nu .. last, so it is the width-(last-first+1)n partial matrix.
struct Window {
  int first = 0;
  int last = 0;
};

/// Solves the given windows in order, keeping every determined erasure.
/// Delay of a symbol is `last` minus its own step.
DecodeReport decode_schedule(const ConvCode& code, const ReceivedStream& stream, const std::vector<Window>& windows);

/// Solves the whole stream at once; recovers exactly the erasures whose
/// values every consistent codeword agrees on.
DecodeReport decode_oracle(const ConvCode& code, const ReceivedStream& stream);

}  // namespace cmdp
