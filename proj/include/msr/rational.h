#ifndef MSR_RATIONAL_H_
#define MSR_RATIONAL_H_

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace msr {

// Every radius, distance and dual value is an exact rational.
using Rational = mpq_class;

// Thrown for malformed caller input (bad ids, bad budgets, bad files).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an algorithmic invariant fails. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// "p/q" when q != 1, otherwise "p".
std::string ToString(const Rational& value);

// Accepts "p/q", integers and plain decimals ("0.125", "-3", "2.5e-1" is
// rejected). Result is canonicalized.
Rational ParseRational(std::string_view text);

// Exact value of a finite double.
Rational FromDouble(double value);

// floor(sqrt(value) * 2^bits) / 2^bits for value >= 0.
Rational SqrtFloor(const Rational& value, int bits);

Rational Abs(const Rational& value);

// num/den in lowest terms. mpq_class(num, den) skips this step, and GMP
// arithmetic assumes canonical operands. Throws UsageError on den == 0.
Rational Fraction(long num, long den);

// 2^exponent as an exact rational (exponent may be negative).
Rational PowerOfTwo(int exponent);

double ToDouble(const Rational& value);

}  // namespace msr

#endif  // MSR_RATIONAL_H_
