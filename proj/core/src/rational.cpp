#include "ucs/rational.hpp"

#include "ucs/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

namespace ucs {

namespace {

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_exact(std::string_view text) {
  auto fail = [&] { throw RangeError("not a decimal or fraction: '" + std::string(text) + "'"); };
  if (text.empty()) fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_exact(text.substr(0, slash));
    const auto den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) fail();
    const Integer den(std::string(den_text), 10);
    if (den == 0) fail();
    Rational r = num / Rational(den);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --exponent;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') fail();
    long e = 0;
    auto rest = text.substr(pos + 1);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), e);
    if (ec != std::errc{} || ptr != rest.data() + rest.size()) fail();
    exponent += e;
  }
  Rational r{Integer(digits, 10)};
  if (exponent > 0) {
    r *= Rational(pow10(static_cast<unsigned long>(exponent)));
  } else if (exponent < 0) {
    r /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

Rational exact_decimal(double x) {
  if (!std::isfinite(x)) throw RangeError("non-finite value has no exact decimal");
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return parse_exact(std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())));
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
  Integer r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

double log_of(const Integer& z) {
  if (z < 0) throw RangeError("logarithm of a negative integer");
  if (z == 0) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

Integer ceil_of(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer floor_of(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

}  // namespace ucs
