#include "msr/envelope.h"

#include <algorithm>
#include <optional>

namespace msr {

std::string ToString(const Affine& f) {
  return ToString(f.intercept) + " + " + ToString(f.slope) + "*x";
}

int PiecewiseAffine::PieceAt(const Rational& x) const {
  if (x < lo() || x > hi()) {
    throw UsageError("point " + ToString(x) + " outside [" + ToString(lo()) + ", " +
                     ToString(hi()) + "]");
  }
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  int idx = static_cast<int>(it - breakpoints.begin()) - 1;
  return std::min(idx, static_cast<int>(pieces.size()) - 1);
}

Rational PiecewiseAffine::operator()(const Rational& x) const { return pieces[PieceAt(x)](x); }

PiecewiseAffine LowerEnvelope(const std::vector<Affine>& lines, const Rational& lo,
                              const Rational& hi) {
  if (lines.empty()) throw UsageError("lower envelope of no lines");
  if (hi < lo) throw UsageError("empty envelope domain");

  // Minimum at lo; among ties the smallest slope stays minimal to the right.
  int current = 0;
  for (int q = 1; q < static_cast<int>(lines.size()); ++q) {
    Rational a = lines[q](lo);
    Rational b = lines[current](lo);
    if (a < b || (a == b && lines[q].slope < lines[current].slope)) current = q;
  }

  PiecewiseAffine out;
  out.breakpoints.push_back(lo);
  Rational x = lo;
  while (true) {
    out.pieces.push_back(lines[current]);
    out.sources.push_back(current);
    // Next line to undercut the current one: only smaller slopes can.
    std::optional<Rational> next_x;
    int next = -1;
    for (int q = 0; q < static_cast<int>(lines.size()); ++q) {
      const Affine& c = lines[current];
      if (lines[q].slope >= c.slope) continue;
      Rational cross = (lines[q].intercept - c.intercept) / (c.slope - lines[q].slope);
      if (cross <= x) continue;
      if (!next_x || cross < *next_x ||
          (cross == *next_x && lines[q].slope < lines[next].slope)) {
        next_x = cross;
        next = q;
      }
    }
    if (!next_x || *next_x >= hi) break;
    x = *next_x;
    out.breakpoints.push_back(x);
    current = next;
  }
  out.breakpoints.push_back(hi);
  return out;
}

Bracket BreakpointBinarySearch(const std::vector<Rational>& points,
                               const std::function<Side(const Rational&)>& label) {
  if (points.size() < 2) throw UsageError("bracket search needs two points");
  Bracket out;
  auto probe = [&](size_t idx) {
    Side s = label(points[idx]);
    out.probes.push_back({points[idx], s});
    return s;
  };
  if (points.size() > 2) {
    if (probe(0) != Side::kMore) throw UsageError("first point is not labelled more");
    if (probe(points.size() - 1) != Side::kLessEq)
      throw UsageError("last point is not labelled at-most");
  }
  size_t left = 0;
  size_t right = points.size() - 1;
  while (right - left > 1) {
    size_t mid = left + (right - left) / 2;
    if (probe(mid) == Side::kMore) {
      left = mid;
    } else {
      right = mid;
    }
  }
  out.left = left;
  out.right = right;
  return out;
}

}  // namespace msr
