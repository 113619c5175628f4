#include "liftgap/rational.hpp"

#include <cctype>
#include <cmath>

#include "liftgap/error.hpp"

namespace liftgap {
namespace {

BigInt parse_integer(std::string_view text, bool allow_sign) {
  if (text.empty()) throw ParseError("empty integer in rational literal");
  std::size_t i = 0;
  if (allow_sign && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) throw ParseError("sign without digits in rational literal");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw ParseError("invalid character '" + std::string(1, text[j]) + "' in rational literal");
    }
  }
  BigInt value(std::string(text.substr(text[0] == '+' ? 1 : 0)));
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, true));
  const BigInt num = parse_integer(text.substr(0, slash), true);
  const BigInt den = parse_integer(text.substr(slash + 1), false);
  if (den == 0) throw ParseError("zero denominator in rational literal");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  const BigInt num = numerator_of(r);
  const BigInt den = denominator_of(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

Rational pow2(int e) {
  BigInt p = 1;
  p <<= (e >= 0 ? e : -e);
  if (e >= 0) return Rational(p);
  return Rational(BigInt(1), p);
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

BigInt ipow(const BigInt& base, unsigned e) {
  BigInt result = 1;
  for (unsigned i = 0; i < e; ++i) result *= base;
  return result;
}

BigInt ceil_kth_root(const BigInt& x, unsigned k) {
  if (x <= 0) return 0;
  // Floating estimate then exact correction in both directions.
  BigInt guess(static_cast<long long>(std::pow(x.convert_to<double>(), 1.0 / k)));
  if (guess < 0) guess = 0;
  while (ipow(guess, k) < x) ++guess;
  while (guess > 0 && ipow(guess - 1, k) >= x) --guess;
  return guess;
}

Rational rpow(const Rational& r, unsigned k) {
  Rational result = 1;
  for (unsigned i = 0; i < k; ++i) result *= r;
  return result;
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

BigInt common_denominator(const std::vector<Rational>& values) {
  BigInt l = 1;
  for (const auto& v : values) {
    const BigInt d = denominator_of(v);
    if (d != 1) l = boost::multiprecision::lcm(l, d);
  }
  return l;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace liftgap
