#include <algorithm>
#include <cctype>

#include "adsyn/abstraction.hpp"

namespace adsyn::abstraction {

namespace {

using Integer = boost::multiprecision::mpz_int;

Integer pow10(unsigned n) {
  Integer out = 1;
  for (unsigned i = 0; i < n; ++i) out *= 10;
  return out;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::Parse, "not a number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    auto strip = [](std::string_view v) { return std::string(v.substr(std::min(v.find_first_not_of('0'), v.size() - 1))); };
    const Integer n{strip(num)};
    const Integer d{strip(den)};
    if (d == 0) bad_number(text);
    Rational out = Rational(n) / Rational(d);
    return negative ? Rational(-out) : out;
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 4) bad_number(text);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  long frac = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto part = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!part.empty() && !all_digits(part)) ||
        (whole.empty() && part.empty())) {
      bad_number(text);
    }
    digits = std::string(whole) + std::string(part);
    frac = static_cast<long>(part.size());
  } else {
    if (!all_digits(s)) bad_number(text);
    digits = std::string(s);
  }
  // A leading zero would make GMP read the digits as octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  const long scale = exponent - frac;
  Rational out{Integer(digits)};
  if (scale > 0) out *= Rational(pow10(static_cast<unsigned>(scale)));
  if (scale < 0) out /= Rational(pow10(static_cast<unsigned>(-scale)));
  return negative ? Rational(-out) : out;
}

std::string to_decimal_string(const Rational& r) {
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  Integer rest = den;
  unsigned twos = 0;
  unsigned fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1) return num.str() + "/" + den.str();

  const unsigned places = std::max(twos, fives);
  Integer scaled = num * pow10(places) / den;
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.str();
  if (places > 0) {
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
  }
  return negative ? "-" + digits : digits;
}

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (hi < lo) {
    throw Error(ErrorKind::InvalidArgument, "empty interval [" + to_decimal_string(lo) + "," +
                                                to_decimal_string(hi) + "]");
  }
}

std::string to_string(const Interval& i) {
  return "[" + to_decimal_string(i.lo) + "," + to_decimal_string(i.hi) + "]";
}

std::string to_string(const Box& b) {
  std::string out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k) out += "x";
    out += to_string(b[k]);
  }
  return out;
}

bool box_contains(const Box& b, const std::vector<Rational>& point) {
  if (point.size() != b.size()) return false;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!b[k].contains(point[k])) return false;
  }
  return true;
}

}  // namespace adsyn::abstraction
