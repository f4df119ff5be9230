#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "cmdp/code.hpp"
#include "cmdp/erasure.hpp"
#include "cmdp/io.hpp"
#include "cmdp/minors.hpp"
#include "cmdp/search.hpp"

namespace cmdp {

namespace {

struct Common {
  bool pretty = false;
  bool alpha = false;
  bool assert_true = false;
};

void print_pretty(std::ostream& out, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      print_pretty(out, v, indent + 2);
    } else if (v.is_array() && !v.empty() && (v.front().is_array() || v.front().is_object())) {
      out << pad << it.key() << ": (" << v.size() << ")\n";
      for (const auto& row : v) {
        if (row.is_object()) {
          std::string line;
          for (auto f = row.begin(); f != row.end(); ++f) line += (line.empty() ? "" : "  ") + f.key() + "=" + f.value().dump();
          out << pad << "  " << line << "\n";
        } else {
          out << pad << "  " << row.dump() << "\n";
        }
      }
    } else {
      out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(std::ostream& out, const json& j, const Common& c) {
  if (c.pretty)
    print_pretty(out, j);
  else
    out << j.dump() << "\n";
}

std::vector<Value> parse_tuple(const std::string& s, const Field& f) {
  std::vector<Value> t;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) t.push_back(element_from_json(f, json(std::stol(item))));
  return t;
}

DecodeReport run_decoder(const std::string& algo, const ConvCode& code, const ReceivedStream& s, int delay, bool partial,
                         bool trace, std::optional<int> max_j) {
  if (algo == "low-delay") return decode_low_delay(code, s, delay, partial, trace);
  if (algo == "windowed") return decode_windowed(code, s, max_j);
  if (algo == "oracle") return decode_oracle(code, s);
  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complete j-MDP convolutional codes: checks, decoding and search", "cmdp"};
  app.require_subcommand(1);
  Common common;
  int result = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--pretty", common.pretty, "Human-readable output");
    sub->add_flag("--alpha", common.alpha, "Print GF(2^r) elements as polynomials in α");
  };

  // check
  std::string code_arg;
  std::string property = "complete-j-mdp";
  std::optional<int> j_opt;
  auto* check = app.add_subcommand("check", "Check a code property");
  check->add_option("--code", code_arg, "Code file, inline JSON or compact form")->required();
  check->add_option("--property", property)
      ->check(CLI::IsMember({"complete-j-mdp", "mdp", "reverse-mdp", "column-distance"}));
  check->add_option("--j", j_opt, "Window index (default L)");
  check->add_flag("--assert", common.assert_true, "Exit 1 when the property does not hold");
  add_common(check);
  check->callback([&] {
    const ConvCode code = load_code(code_arg);
    const int j = j_opt.value_or(code.L());
    PropertyReport rep;
    try {
      if (property == "complete-j-mdp")
        rep = is_complete_j_mdp(code, j);
      else if (property == "mdp")
        rep = is_mdp(code);
      else if (property == "reverse-mdp")
        rep = is_reverse_mdp(code);
      else
        rep = column_distance_report(code, j);
    } catch (const PreconditionError& e) {
      rep.property = property;
      rep.j = property == "complete-j-mdp" || property == "column-distance" ? j : code.L();
      rep.holds = false;
      rep.reason = e.what();
    }
    emit(out, to_json(rep), common);
    if (common.assert_true && !rep.holds) result = 1;
  });

  // distance
  int dist_j = 0;
  auto* distance = app.add_subcommand("distance", "Exact column distance by kernel enumeration");
  distance->add_option("--code", code_arg)->required();
  distance->add_option("--j", dist_j)->required()->check(CLI::NonNegativeNumber);
  add_common(distance);
  distance->callback([&] {
    const ConvCode code = load_code(code_arg);
    const auto d = column_distance_oracle(code, dist_j);
    emit(out, {{"j", dist_j}, {"distance", d ? json(*d) : json(nullptr)}, {"bound", column_distance_bound(code, dist_j)}},
         common);
  });

  // decode
  std::string stream_path;
  std::string algo = "low-delay";
  int delay = 0;
  bool partial = false;
  bool trace = false;
  std::optional<int> max_j;
  auto* decode = app.add_subcommand("decode", "Decode a received stream");
  decode->add_option("--code", code_arg, "Overrides the code named in the stream file");
  decode->add_option("--stream", stream_path)->required();
  decode->add_option("--algo", algo)->check(CLI::IsMember({"low-delay", "windowed", "oracle"}));
  decode->add_option("--delay", delay, "Tolerated delay T")->check(CLI::NonNegativeNumber);
  decode->add_flag("--partial", partial, "Keep individually determined components");
  decode->add_flag("--trace", trace, "Record every low-delay attempt");
  decode->add_option("--max-j", max_j, "Largest window index for the windowed decoder")->check(CLI::NonNegativeNumber);
  add_common(decode);
  decode->callback([&] {
    StreamFile sf = load_stream(stream_path);
    if (!code_arg.empty()) {
      sf.code = load_code(code_arg);
      if (sf.code.n() != sf.stream.n) throw std::invalid_argument("code length does not match the stream");
    }
    const auto rep = run_decoder(algo, sf.code, sf.stream, delay, partial, trace, max_j);
    json j = to_json(rep, sf.code, RenderOptions{common.alpha});
    j["algo"] = algo;
    emit(out, j, common);
  });

  // simulate
  std::size_t steps = 20;
  std::string pattern = "iid:0.1";
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  auto* simulate = app.add_subcommand("simulate", "Encode, erase and decode random streams");
  simulate->add_option("--code", code_arg)->required();
  simulate->add_option("--steps", steps, "Time steps per stream")->check(CLI::PositiveNumber);
  simulate->add_option("--pattern", pattern, "iid:<rate> | burst:<start>:<len> | explicit:<pattern>");
  simulate->add_option("--seed", seed);
  simulate->add_option("--algo", algo)->check(CLI::IsMember({"low-delay", "windowed", "oracle"}));
  simulate->add_option("--delay", delay)->check(CLI::NonNegativeNumber);
  simulate->add_option("--trials", trials);
  simulate->add_flag("--partial", partial);
  simulate->add_option("--max-j", max_j)->check(CLI::NonNegativeNumber);
  add_common(simulate);
  simulate->callback([&] {
    const ConvCode code = load_code(code_arg);
    const PatternSpec spec = parse_pattern_spec(pattern);
    const CodewordSampler sampler(code, steps);
    std::mt19937_64 rng(seed);
    std::uint64_t erasures = 0, recovered = 0, lost = 0, complete = 0, mismatches = 0;
    int worst = 0;
    double delay_sum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const auto word = sampler.sample(rng);
      const auto pat = gen_pattern(spec, word.size(), rng(), code.n());
      const auto stream = apply_pattern(word, pat);
      const auto rep = run_decoder(algo, code, stream, delay, partial, false, max_j);
      erasures += stream.erasures();
      recovered += rep.recovered.size();
      lost += rep.lost.size();
      if (rep.complete()) ++complete;
      for (const auto& r : rep.recovered) {
        if (!rep.residual[r.index] || *rep.residual[r.index] != word[r.index]) ++mismatches;
        worst = std::max(worst, r.delay);
        delay_sum += r.delay;
      }
    }
    emit(out,
         {{"algo", algo},
          {"trials", trials},
          {"steps", steps},
          {"symbols", trials * steps * static_cast<std::uint64_t>(code.n())},
          {"erasures", erasures},
          {"recovered", recovered},
          {"lost", lost},
          {"complete_streams", complete},
          {"recovery_rate", erasures ? static_cast<double>(recovered) / static_cast<double>(erasures) : 1.0},
          {"max_delay", worst},
          {"mean_delay", recovered ? delay_sum / static_cast<double>(recovered) : 0.0},
          {"value_mismatches", mismatches},
          {"seed", seed}},
         common);
  });

  // search
  std::string field_arg;
  int n = 2, k = 1, delta = 2, j_search = 0;
  std::string mode = "exhaustive";
  std::string out_path;
  unsigned threads = 1;
  std::vector<std::string> includes;
  bool no_normalize = false;
  std::string left_prime = "auto";
  bool timing = false;
  bool csv = false;
  auto* search = app.add_subcommand("search", "Search for complete j-MDP codes");
  search->add_option("--field", field_arg, "p^r[/modulus]")->required();
  search->add_option("--n", n);
  search->add_option("--k", k);
  search->add_option("--delta", delta);
  search->add_option("--j", j_search)->required()->check(CLI::NonNegativeNumber);
  search->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
  search->add_option("--trials", trials);
  search->add_option("--seed", seed);
  search->add_option("--out", out_path, "Also write the report here (.csv writes the solutions only)");
  search->add_option("--threads", threads)->check(CLI::PositiveNumber);
  search->add_option("--include", includes, "Extra candidate tuple a,b,c,... (random mode)");
  search->add_flag("--no-normalize", no_normalize, "Leave H_nu free");
  search->add_option("--left-prime", left_prime)->check(CLI::IsMember({"auto", "yes", "no"}));
  search->add_flag("--timing", timing, "Include elapsed_ms");
  search->add_flag("--csv", csv, "Print solutions as CSV");
  add_common(search);
  search->callback([&] {
    SearchSpec spec;
    spec.field = Field::parse(field_arg);
    spec.n = n;
    spec.k = k;
    spec.delta = delta;
    spec.j = j_search;
    spec.normalize = !no_normalize;
    spec.mode = parse_mode(mode);
    spec.trials = trials;
    spec.seed = seed;
    spec.threads = threads;
    if (left_prime != "auto") spec.require_left_prime = left_prime == "yes";
    for (const auto& s : includes) spec.include.push_back(parse_tuple(s, *spec.field));
    if (!spec.include.empty() && spec.mode != SearchMode::Randomized)
      throw std::invalid_argument("--include only applies to random mode");
    const auto rep = run_search(spec);
    const RenderOptions opt{common.alpha};
    const json j = to_json(rep, *spec.field, opt, timing);
    if (csv)
      out << solutions_csv(rep, *spec.field, opt);
    else
      emit(out, j, common);
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw std::invalid_argument("cannot write " + out_path);
      const bool as_csv = out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv";
      f << (as_csv ? solutions_csv(rep, *spec.field, opt) : j.dump(2) + "\n");
    }
  });

  // verify-family
  int family = 13;
  auto* verify = app.add_subcommand("verify-family", "Compare a closed-form family with exhaustive search");
  verify->add_option("--field", family)->required()->check(CLI::IsMember({13, 16}));
  verify->add_option("--threads", threads)->check(CLI::PositiveNumber);
  verify->add_flag("--assert", common.assert_true);
  add_common(verify);
  verify->callback([&] {
    const auto v = verify_family(family, threads);
    emit(out, to_json(v), common);
    if (common.assert_true && !v.holds) result = 1;
  });

  // gen-pattern
  std::string spec_arg;
  std::size_t length = 0;
  int group = 1;
  auto* gen = app.add_subcommand("gen-pattern", "Generate an erasure pattern");
  gen->add_option("--spec", spec_arg)->required();
  gen->add_option("--length", length, "Number of symbols")->required();
  gen->add_option("--seed", seed);
  gen->add_option("--n", group, "Symbols per time step")->check(CLI::PositiveNumber);
  gen->callback([&] {
    if (length % static_cast<std::size_t>(group) != 0) throw std::invalid_argument("length must be a multiple of n");
    out << render_pattern(gen_pattern(parse_pattern_spec(spec_arg), length, seed, group)) << "\n";
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success&) {
    out << app.help();
    for (auto* sub : app.get_subcommands()) out << sub->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return result;
}

}  // namespace cmdp
