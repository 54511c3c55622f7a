#ifndef MSR_TESTS_HELPERS_H_
#define MSR_TESTS_HELPERS_H_

#include <algorithm>
#include <vector>

#include "msr/oracle.h"

namespace msr::testing {

inline Rational Q(long num, long den = 1) { return Fraction(num, den); }

// Points on a line at the given integer coordinates.
inline MetricInstance LineInstance(const std::vector<long>& xs, int k, int m = 0) {
  const int n = static_cast<int>(xs.size());
  std::vector<std::optional<Rational>> d(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[static_cast<size_t>(i) * n + j] = Rational(std::abs(xs[i] - xs[j]));
  }
  return MetricInstance(n, std::move(d), k, m);
}

inline bool Contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace msr::testing

#endif  // MSR_TESTS_HELPERS_H_
