#include "msr/rational.h"

#include <cctype>
#include <cmath>

namespace msr {
namespace {

bool IsInteger(std::string_view text) {
  size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) return false;
  for (size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

mpz_class ParseInteger(std::string_view text) {
  if (!IsInteger(text)) {
    throw UsageError("not an integer: '" + std::string(text) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return mpz_class(digits, 10);
}

}  // namespace

std::string ToString(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational ParseRational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw UsageError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = ParseInteger(text.substr(0, slash));
    mpz_class den = ParseInteger(text.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    Rational out(num, den);
    out.canonicalize();
    return out;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole == "-" || whole == "+" || whole.empty()) {
      whole = "0";
    }
    if (frac.empty() || !IsInteger(frac) || frac[0] == '-' || frac[0] == '+') {
      throw UsageError("malformed decimal '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class int_part = ParseInteger(whole);
    if (int_part < 0) int_part = -int_part;
    mpz_class num = int_part * scale + mpz_class(std::string(frac), 10);
    if (negative) num = -num;
    Rational out(num, scale);
    out.canonicalize();
    return out;
  }
  return Rational(ParseInteger(text));
}

Rational FromDouble(double value) {
  if (!std::isfinite(value)) throw UsageError("non-finite number");
  Rational out;
  mpq_set_d(out.get_mpq_t(), value);
  return out;
}

Rational SqrtFloor(const Rational& value, int bits) {
  if (value < 0) throw UsageError("square root of a negative value");
  mpz_class scaled = value.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), value.get_den().get_mpz_t());
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  return Rational(root) / PowerOfTwo(bits);
}

Rational Fraction(long num, long den) {
  if (den == 0) throw UsageError("zero denominator");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational Abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational PowerOfTwo(int exponent) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), exponent < 0 ? -exponent : exponent);
  if (exponent >= 0) return Rational(p);
  return Rational(mpz_class(1), p);
}

double ToDouble(const Rational& value) { return value.get_d(); }

}  // namespace msr
