#include "vcmajor/interval.hpp"

#include <algorithm>
#include <cstdio>

namespace vcmajor {

Interval Interval::intersect(const Interval& other) const {
  Interval r;
  if (lo > other.lo) {
    r.lo = lo;
    r.lo_closed = lo_closed;
  } else if (other.lo > lo) {
    r.lo = other.lo;
    r.lo_closed = other.lo_closed;
  } else {
    r.lo = lo;
    r.lo_closed = lo_closed && other.lo_closed;
  }
  if (hi < other.hi) {
    r.hi = hi;
    r.hi_closed = hi_closed;
  } else if (other.hi < hi) {
    r.hi = other.hi;
    r.hi_closed = other.hi_closed;
  } else {
    r.hi = hi;
    r.hi_closed = hi_closed && other.hi_closed;
  }
  return r;
}

std::string Interval::describe() const {
  if (is_empty()) return "{}";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%c%.17g,%.17g%c", lo_closed ? '[' : '(', lo, hi,
                hi_closed ? ']' : ')');
  return buf;
}

StepFunction StepFunction::affine(double shift, double scale) const {
  StepFunction g;
  g.offset = (offset - shift) * scale;
  g.terms.reserve(terms.size());
  for (const auto& [w, i] : terms) g.terms.emplace_back(w * scale, i);
  return g;
}

}  // namespace vcmajor
