#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace trigraph {

// Probability arguments accept plain decimals plus the n-dependent forms
// "c/n" and "c/(n*ln(n))" (c decimal, default 1), e.g. "2/n", "1/(n*ln(n))".
inline double parse_probability(const std::string& text, int n) {
  auto strip = [](std::string s) {
    std::string out;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
  };
  const std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("parse_probability: empty");

  auto parse_coeff = [](const std::string& c) -> double {
    if (c.empty()) return 1.0;
    std::size_t pos = 0;
    double v = std::stod(c, &pos);
    if (pos != c.size()) throw std::invalid_argument("parse_probability: bad coefficient");
    return v;
  };

  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("parse_probability: bad number");
    return v;
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (n <= 2) throw std::invalid_argument("parse_probability: n-dependent form needs n");
  if (den == "n") return parse_coeff(num) / double(n);
  if (den == "(n*ln(n))") return parse_coeff(num) / (double(n) * std::log(double(n)));
  throw std::invalid_argument("parse_probability: unsupported denominator '" + den + "'");
}

}  // namespace trigraph
