#ifndef SPHAVG_RATIONAL_HPP_
#define SPHAVG_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphavg {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

inline Rational rat(long long num, long long den = 1) { return Rational(num) / Rational(den); }

// Parses "3", "-4/3" or "0.75".
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    const bool negative = text[0] == '-';
    std::string digits = text.substr(negative || text[0] == '+' ? 1 : 0, dot - (negative || text[0] == '+' ? 1 : 0)) +
                         text.substr(dot + 1);
    // cpp_int reads a leading 0 as octal
    const auto nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    if (digits.find_first_not_of("0123456789") != std::string::npos) throw std::invalid_argument("bad decimal: " + text);
    Rational den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    const Rational q = Rational(boost::multiprecision::cpp_int(digits)) / den;
    return negative ? Rational(-q) : q;
  }
  return Rational(text);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) { return q.str(); }

// Exponent in [1, inf]; stored through its reciprocal so that inf is exact.
class Exponent {
 public:
  Exponent() = default;
  static Exponent infinity() { return Exponent(Rational(0), true); }
  static Exponent from_value(const Rational& p) {
    if (p <= 0) throw std::invalid_argument("exponent must be positive");
    return Exponent(1 / p, true);
  }
  static Exponent from_reciprocal(const Rational& inv) {
    if (inv < 0) throw std::invalid_argument("reciprocal exponent must be >= 0");
    return Exponent(inv, true);
  }
  static Exponent parse(const std::string& text) {
    if (text == "inf" || text == "infinity") return infinity();
    return from_value(parse_rational(text));
  }

  bool is_infinite() const { return inv_ == 0; }
  const Rational& reciprocal() const { return inv_; }
  Rational value() const {
    if (is_infinite()) throw std::domain_error("infinite exponent has no finite value");
    return 1 / inv_;
  }
  double value_double() const { return is_infinite() ? HUGE_VAL : to_double(value()); }
  Exponent conjugate() const { return from_reciprocal(1 - inv_); }
  std::string str() const { return is_infinite() ? "inf" : to_string(value()); }

 private:
  Exponent(Rational inv, bool) : inv_(std::move(inv)) {}
  Rational inv_ = 1;
};

}  // namespace sphavg

#endif  // SPHAVG_RATIONAL_HPP_
