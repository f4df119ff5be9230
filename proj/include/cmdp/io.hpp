#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cmdp/code.hpp"
#include "cmdp/erasure.hpp"
#include "cmdp/minors.hpp"
#include "cmdp/search.hpp"

namespace cmdp {

using nlohmann::json;

/// Integers by default; with `alpha`, GF(2^r) elements (r > 1) print as polynomials in α.
struct RenderOptions {
  bool alpha = false;
};

json element_json(const Field& f, Value v, const RenderOptions& opt = {});
/// Accepts an integer, or an α-polynomial string such as "a^3+a+1" / "α^2+1".
Value element_from_json(const Field& f, const json& j);

/// {"field":"p^r/modulus","n":..,"k":..,"delta":..,"H":[[H_nu row-major], ..., [H_0]]}
json code_to_json(const ConvCode& code, const RenderOptions& opt = {});
ConvCode code_from_json(const json& j);
/// Compact form "field;n,k,delta;row|row|..." with rows highest index first,
/// e.g. "13;2,1,2;1,1|1,12|2,2".
ConvCode parse_inline_code(std::string_view text);
std::string inline_code(const ConvCode& code);
/// A path to a code file, inline JSON, or the compact form.
ConvCode load_code(const std::string& arg);

/// {"code": <code object or string>, "symbols": [int|null, ...], "terminated": bool}
json stream_to_json(const ConvCode& code, const ReceivedStream& stream);
struct StreamFile {
  ConvCode code;
  ReceivedStream stream;
};
StreamFile stream_from_json(const json& j);
StreamFile load_stream(const std::string& path);

json to_json(const PropertyReport& r);
PropertyReport property_report_from_json(const json& j);

json to_json(const DecodeReport& r, const ConvCode& code, const RenderOptions& opt = {});
DecodeReport decode_report_from_json(const json& j, const Field& f);

json to_json(const SearchReport& r, const Field& f, const RenderOptions& opt = {}, bool timing = false);
SearchReport search_report_from_json(const json& j, const Field& f);
/// Header "a,b,c,..." then one solution per line.
std::string solutions_csv(const SearchReport& r, const Field& f, const RenderOptions& opt = {});

json to_json(const FamilyVerification& v);

std::string mode_name(SearchMode m);
SearchMode parse_mode(std::string_view s);

}  // namespace cmdp
