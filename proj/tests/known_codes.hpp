#pragma once

#include <string>
#include <vector>

#include "cmdp/io.hpp"

namespace known {

inline const char* f13_mdp = "13;2,1,2;1,1|1,12|2,2";
inline const char* f7_two = "7;2,1,2;1,1|1,2|5,5";
inline const char* f5_zero = "5;2,1,2;1,1|1,2|1,1";
inline const char* f5_one = "5;2,1,2;1,1|1,2|1,2";
inline const char* f8_one = "8;2,1,2;1,1|1,2|3,1";
inline const char* f8_two = "8;2,1,2;1,1|1,2|3,3";
inline const char* f13_three = "13;2,1,2;1,1|1,2|6,6";
inline const char* f16_three = "16;2,1,2;1,1|1,2|3,3";

struct F128Example {
  std::vector<std::vector<std::string>> high_first;  // H_3, H_2, H_1, H_0
  std::string resultant;
};

inline const std::vector<F128Example>& f128_examples() {
  static const std::vector<F128Example> v{
      {{{"1", "1"},
        {"a^6+a^3", "a^6+a^5+a^4+a^2+1"},
        {"a^5+a^4", "1"},
        {"a^4+a+1", "a^4+a^3+a^2+1"}},
       "a^2+a+1"},
      {{{"1", "1"},
        {"a^4+a^3", "a^5"},
        {"a^6+a^5+a^2+a", "a^4+a^3+a^2"},
        {"a^6+a^4+a^2+a+1", "a^3+a^2+a+1"}},
       "a^6+a^5+a^4+a^3+a"},
      {{{"1", "1"},
        {"a^5+a^3+a^2+1", "a^6+a^5+a^4+a+1"},
        {"a^5+a^4+a^3+a^2+a", "a^4+a^3+a+1"},
        {"a^6+a^4+a^3+a^2+1", "a^3+a"}},
       "a^5+a^4"},
      {{{"1", "1"},
        {"a^6+a^5+a^4+a+1", "a^6+a^5+a^3+a^2+a"},
        {"a^6+a^5+a^4", "a^5+a^4+a^3+a^2+1"},
        {"a^3+a+1", "a^4+a^2+1"}},
       "a^5+a^4+a^3+1"},
  };
  return v;
}

inline cmdp::ConvCode f128_code(const F128Example& e) {
  cmdp::json h = cmdp::json::array();
  for (const auto& coeff : e.high_first) h.push_back(coeff);
  return cmdp::code_from_json({{"field", "2^7/131"}, {"n", 2}, {"k", 1}, {"delta", 3}, {"H", h}});
}

inline cmdp::ConvCode code(const char* text) { return cmdp::parse_inline_code(text); }

}  // namespace known
