#ifndef MSR_ENVELOPE_H_
#define MSR_ENVELOPE_H_

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "msr/rational.h"

namespace msr {

// intercept + slope * x
struct Affine {
  Rational intercept;
  Rational slope;

  Rational operator()(const Rational& x) const { return intercept + slope * x; }
  friend Affine operator+(const Affine& a, const Affine& b) {
    return {a.intercept + b.intercept, a.slope + b.slope};
  }
  friend Affine operator-(const Affine& a, const Affine& b) {
    return {a.intercept - b.intercept, a.slope - b.slope};
  }
  friend Affine operator*(const Rational& c, const Affine& a) {
    return {c * a.intercept, c * a.slope};
  }
  friend bool operator==(const Affine& a, const Affine& b) {
    return a.intercept == b.intercept && a.slope == b.slope;
  }
};

std::string ToString(const Affine& f);

// Continuous piecewise-affine function on [front(breakpoints), back(breakpoints)].
// Piece q covers [breakpoints[q], breakpoints[q+1]]; `sources` records which
// input line realizes it.
struct PiecewiseAffine {
  std::vector<Rational> breakpoints;
  std::vector<Affine> pieces;
  std::vector<int> sources;

  const Rational& lo() const { return breakpoints.front(); }
  const Rational& hi() const { return breakpoints.back(); }
  // Throws UsageError outside the domain.
  Rational operator()(const Rational& x) const;
  // Index of the piece holding x; at a breakpoint the piece to its right
  // (the last piece at hi).
  int PieceAt(const Rational& x) const;
};

// Exact pointwise minimum of `lines` over [lo, hi]. Pieces never outnumber
// lines.
PiecewiseAffine LowerEnvelope(const std::vector<Affine>& lines, const Rational& lo,
                              const Rational& hi);

enum class Side { kMore, kLessEq };

struct BracketProbe {
  Rational at;
  Side side;
};

struct Bracket {
  size_t left = 0;
  size_t right = 0;
  std::vector<BracketProbe> probes;
};

// Bisection over sorted points whose first label is kMore and last is
// kLessEq. Returns adjacent indices with that same label pattern. Throws
// UsageError when the endpoint labels are wrong.
Bracket BreakpointBinarySearch(const std::vector<Rational>& points,
                               const std::function<Side(const Rational&)>& label);

}  // namespace msr

#endif  // MSR_ENVELOPE_H_
