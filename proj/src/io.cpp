#include "cmdp/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cmdp {

namespace {

bool use_alpha(const Field& f, const RenderOptions& opt) { return opt.alpha && f.p() == 2 && f.r() > 1; }

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

long parse_long(const std::string& s, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
  return v;
}

Value checked_value(const Field& f, long v) {
  if (v < 0 || !f.contains(static_cast<std::uint32_t>(v)))
    throw std::invalid_argument("element " + std::to_string(v) + " not in " + f.to_string());
  return static_cast<Value>(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + what + ": " + e.what());
  }
}

}  // namespace

json element_json(const Field& f, Value v, const RenderOptions& opt) {
  if (use_alpha(f, opt)) return f.render_poly(v, "α");
  return v;
}

Value element_from_json(const Field& f, const json& j) {
  if (j.is_number_integer()) return checked_value(f, j.get<long>());
  if (!j.is_string()) throw std::invalid_argument("field element must be an integer or a polynomial string");
  std::string s = strip(j.get<std::string>());
  if (s.empty()) throw std::invalid_argument("empty field element");
  // α is two bytes in UTF-8; fold it and x to 'a'
  for (std::size_t pos; (pos = s.find("α")) != std::string::npos;) s.replace(pos, std::string("α").size(), "a");
  for (auto& c : s)
    if (c == 'x') c = 'a';
  Value acc = 0;
  for (const auto& term : split(s, '+')) {
    if (term.empty()) throw std::invalid_argument("bad polynomial '" + j.get<std::string>() + "'");
    const auto apos = term.find('a');
    long coef = 1;
    long e = 0;
    if (apos == std::string::npos) {
      coef = parse_long(term, "coefficient");
    } else {
      if (apos > 0) coef = parse_long(term.substr(0, apos), "coefficient");
      const std::string rest = term.substr(apos + 1);
      if (rest.empty()) {
        e = 1;
      } else {
        if (rest[0] != '^') throw std::invalid_argument("bad term '" + term + "'");
        e = parse_long(rest.substr(1), "exponent");
      }
    }
    if (coef < 0 || coef >= f.p() || e < 0 || e >= f.r()) throw std::invalid_argument("term '" + term + "' out of range");
    std::uint32_t v = static_cast<std::uint32_t>(coef);
    for (long i = 0; i < e; ++i) v *= static_cast<std::uint32_t>(f.p());
    acc = f.add(acc, static_cast<Value>(v));
  }
  return acc;
}

json code_to_json(const ConvCode& code, const RenderOptions& opt) {
  json h = json::array();
  for (const auto& coeff : code.high_first()) {
    json row = json::array();
    for (Value v : coeff) row.push_back(element_json(*code.field(), v, opt));
    h.push_back(row);
  }
  return {{"field", code.field()->to_string()}, {"n", code.n()}, {"k", code.k()}, {"delta", code.params().delta}, {"H", h}};
}

ConvCode code_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("code must be a JSON object");
  for (const char* key : {"field", "n", "k", "delta", "H"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("code is missing '") + key + "'");
  const FieldPtr f = j.at("field").is_number_integer() ? Field::parse(std::to_string(j.at("field").get<long>()))
                                                       : Field::parse(j.at("field").get<std::string>());
  std::vector<std::vector<std::uint32_t>> hf;
  for (const auto& coeff : j.at("H")) {
    if (!coeff.is_array()) throw std::invalid_argument("each coefficient must be an array");
    std::vector<std::uint32_t> row;
    for (const auto& e : coeff) row.push_back(element_from_json(*f, e));
    hf.push_back(std::move(row));
  }
  return ConvCode::from_high_first(f, j.at("n").get<int>(), j.at("k").get<int>(), j.at("delta").get<int>(), hf);
}

ConvCode parse_inline_code(std::string_view text) {
  const auto parts = split(strip(text), ';');
  if (parts.size() != 3) throw std::invalid_argument("inline code must look like 'field;n,k,delta;row|row|...'");
  const FieldPtr f = Field::parse(parts[0]);
  const auto nkd = split(parts[1], ',');
  if (nkd.size() != 3) throw std::invalid_argument("inline code needs n,k,delta");
  const int n = static_cast<int>(parse_long(nkd[0], "n"));
  const int k = static_cast<int>(parse_long(nkd[1], "k"));
  const int delta = static_cast<int>(parse_long(nkd[2], "delta"));
  std::vector<std::vector<std::uint32_t>> hf;
  for (const auto& coeff : split(parts[2], '|')) {
    std::vector<std::uint32_t> row;
    for (const auto& e : split(coeff, ',')) row.push_back(checked_value(*f, parse_long(e, "element")));
    hf.push_back(std::move(row));
  }
  return ConvCode::from_high_first(f, n, k, delta, hf);
}

std::string inline_code(const ConvCode& code) {
  std::string out = code.field()->to_string() + ";" + std::to_string(code.n()) + "," + std::to_string(code.k()) + "," +
                    std::to_string(code.params().delta) + ";";
  bool first_coeff = true;
  for (const auto& coeff : code.high_first()) {
    if (!first_coeff) out += "|";
    first_coeff = false;
    for (std::size_t i = 0; i < coeff.size(); ++i) out += (i ? "," : "") + std::to_string(coeff[i]);
  }
  return out;
}

ConvCode load_code(const std::string& arg) {
  const std::string trimmed = strip(arg);
  if (!trimmed.empty() && trimmed.front() == '{') return code_from_json(parse_json_text(arg, "inline code"));
  if (std::filesystem::is_regular_file(arg)) return code_from_json(parse_json_text(read_file(arg), arg));
  if (trimmed.find(';') != std::string::npos) return parse_inline_code(trimmed);
  throw std::invalid_argument("'" + arg + "' is neither a code file nor an inline code");
}

json stream_to_json(const ConvCode& code, const ReceivedStream& stream) {
  json sym = json::array();
  for (const auto& s : stream.symbols) sym.push_back(s ? json(*s) : json(nullptr));
  return {{"code", code_to_json(code)}, {"symbols", sym}, {"terminated", stream.terminated}};
}

StreamFile stream_from_json(const json& j) {
  if (!j.is_object() || !j.contains("code") || !j.contains("symbols"))
    throw std::invalid_argument("stream needs 'code' and 'symbols'");
  const json& c = j.at("code");
  ConvCode code = c.is_string() ? load_code(c.get<std::string>()) : code_from_json(c);
  ReceivedStream s;
  s.n = code.n();
  s.terminated = j.value("terminated", true);
  for (const auto& e : j.at("symbols")) {
    if (e.is_null())
      s.symbols.emplace_back(std::nullopt);
    else
      s.symbols.emplace_back(element_from_json(*code.field(), e));
  }
  if (s.symbols.size() % static_cast<std::size_t>(s.n) != 0)
    throw std::invalid_argument("stream length " + std::to_string(s.symbols.size()) + " is not a multiple of n");
  return {std::move(code), std::move(s)};
}

StreamFile load_stream(const std::string& path) { return stream_from_json(parse_json_text(read_file(path), path)); }

json to_json(const PropertyReport& r) {
  json out = {{"property", r.property}, {"j", r.j}, {"holds", r.holds}, {"minors_checked", r.minors_checked}};
  out["counterexample"] = r.counterexample ? json(*r.counterexample) : json(nullptr);
  out["reason"] = r.reason ? json(*r.reason) : json(nullptr);
  if (r.distance) out["distance"] = *r.distance;
  return out;
}

PropertyReport property_report_from_json(const json& j) {
  PropertyReport r;
  r.property = j.at("property").get<std::string>();
  r.j = j.at("j").get<int>();
  r.holds = j.at("holds").get<bool>();
  r.minors_checked = j.at("minors_checked").get<std::uint64_t>();
  if (j.contains("counterexample") && !j.at("counterexample").is_null())
    r.counterexample = j.at("counterexample").get<std::vector<int>>();
  if (j.contains("reason") && !j.at("reason").is_null()) r.reason = j.at("reason").get<std::string>();
  if (j.contains("distance")) r.distance = j.at("distance").get<int>();
  return r;
}

json to_json(const DecodeReport& r, const ConvCode& code, const RenderOptions& opt) {
  const auto n = static_cast<std::size_t>(code.n());
  json rec = json::array();
  for (const auto& s : r.recovered) {
    json e = {{"index", s.index}, {"step", s.index / n}, {"delay", s.delay}};
    if (s.index < r.residual.size() && r.residual[s.index]) e["value"] = element_json(*code.field(), *r.residual[s.index], opt);
    rec.push_back(e);
  }
  json residual = json::array();
  for (const auto& v : r.residual) residual.push_back(v ? element_json(*code.field(), *v, opt) : json(nullptr));
  json out = {{"recovered", rec},
              {"lost", r.lost},
              {"recovered_count", r.recovered.size()},
              {"lost_count", r.lost.size()},
              {"complete", r.complete()},
              {"max_delay", r.recovered.empty() ? json(nullptr) : json(r.max_delay())},
              {"residual", residual}};
  if (!r.attempts.empty()) {
    json att = json::array();
    for (const auto& a : r.attempts)
      att.push_back({{"i", a.i},
                     {"j", a.j},
                     {"t", a.t},
                     {"s", a.s},
                     {"erased_columns", a.erased_columns},
                     {"full_rank", a.full_rank},
                     {"target_solved", a.target_solved}});
    out["attempts"] = att;
  }
  return out;
}

DecodeReport decode_report_from_json(const json& j, const Field& f) {
  DecodeReport r;
  for (const auto& e : j.at("recovered")) r.recovered.push_back({e.at("index").get<std::size_t>(), e.at("delay").get<int>()});
  r.lost = j.at("lost").get<std::vector<std::size_t>>();
  for (const auto& v : j.at("residual"))
    r.residual.push_back(v.is_null() ? std::optional<Value>() : std::optional<Value>(element_from_json(f, v)));
  if (j.contains("attempts"))
    for (const auto& a : j.at("attempts")) {
      DecodeAttempt d;
      d.i = a.at("i").get<int>();
      d.j = a.at("j").get<int>();
      d.t = a.at("t").get<int>();
      d.s = a.at("s").get<int>();
      d.erased_columns = a.at("erased_columns").get<std::vector<int>>();
      d.full_rank = a.at("full_rank").get<bool>();
      d.target_solved = a.at("target_solved").get<bool>();
      r.attempts.push_back(std::move(d));
    }
  return r;
}

std::string mode_name(SearchMode m) { return m == SearchMode::Exhaustive ? "exhaustive" : "random"; }

SearchMode parse_mode(std::string_view s) {
  if (s == "exhaustive") return SearchMode::Exhaustive;
  if (s == "random" || s == "randomized") return SearchMode::Randomized;
  throw std::invalid_argument("unknown search mode '" + std::string(s) + "'");
}

json to_json(const SearchReport& r, const Field& f, const RenderOptions& opt, bool timing) {
  json sol = json::array();
  for (const auto& t : r.solutions) {
    json row = json::array();
    for (Value v : t) row.push_back(element_json(f, v, opt));
    sol.push_back(row);
  }
  json out = {{"field", r.field}, {"n", r.n},   {"k", r.k},
              {"delta", r.delta}, {"j", r.j},   {"mode", mode_name(r.mode)},
              {"candidates", r.candidates},     {"count", r.count},
              {"percentage", r.percentage},     {"solutions", sol}};
  if (r.seed) out["seed"] = *r.seed;
  if (timing) out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

SearchReport search_report_from_json(const json& j, const Field& f) {
  SearchReport r;
  r.field = j.at("field").get<std::string>();
  r.n = j.at("n").get<int>();
  r.k = j.at("k").get<int>();
  r.delta = j.at("delta").get<int>();
  r.j = j.at("j").get<int>();
  r.mode = parse_mode(j.at("mode").get<std::string>());
  r.candidates = j.at("candidates").get<std::uint64_t>();
  r.count = j.at("count").get<std::size_t>();
  r.percentage = j.at("percentage").get<double>();
  for (const auto& row : j.at("solutions")) {
    std::vector<Value> t;
    for (const auto& e : row) t.push_back(element_from_json(f, e));
    r.solutions.push_back(std::move(t));
  }
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

std::string solutions_csv(const SearchReport& r, const Field& f, const RenderOptions& opt) {
  std::string out;
  const std::size_t width = r.solutions.empty() ? 0 : r.solutions.front().size();
  for (std::size_t i = 0; i < width; ++i) {
    if (i) out += ",";
    out += width <= 26 ? std::string(1, static_cast<char>('a' + i)) : "e" + std::to_string(i);
  }
  out += "\n";
  for (const auto& t : r.solutions) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) out += ",";
      const json e = element_json(f, t[i], opt);
      out += e.is_string() ? e.get<std::string>() : std::to_string(e.get<int>());
    }
    out += "\n";
  }
  return out;
}

json to_json(const FamilyVerification& v) {
  return {{"field", v.field},
          {"holds", v.holds},
          {"family_size", v.family_size},
          {"full_value_count", v.full_value_count},
          {"search_count", v.search_count},
          {"sets_equal", v.sets_equal},
          {"members_valid", v.members_valid}};
}

}  // namespace cmdp
