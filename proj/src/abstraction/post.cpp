#include <algorithm>

#include "adsyn/abstraction.hpp"

namespace adsyn::abstraction {

void ScalarParametricAffine::validate() const {
  if (theta_domain.size() != 3) throw Error(ErrorKind::InvalidModel, "scalar system needs 3 parameter dimensions");
}

Rational ScalarParametricAffine::step(const Rational& x, const std::vector<Rational>& theta, const Rational& u,
                                      const Rational& d) const {
  return (1 + theta[0]) * x + theta[1] * u + theta[2] + d;
}

std::vector<Interval> grid_partition(const Interval& domain, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "partition needs at least one cell");
  const Rational w = domain.width() / Rational(n);
  std::vector<Interval> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational lo = domain.lo + w * Rational(i);
    Rational hi = i + 1 == n ? domain.hi : domain.lo + w * Rational(i + 1);
    out.emplace_back(std::move(lo), std::move(hi));
  }
  return out;
}

std::vector<Box> grid_partition(const Box& domain, const std::vector<std::size_t>& counts) {
  if (counts.size() != domain.size()) throw Error(ErrorKind::InvalidArgument, "one cell count per dimension");
  std::vector<Box> out{Box{}};
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto cells = grid_partition(domain[k], counts[k]);
    std::vector<Box> next;
    next.reserve(out.size() * cells.size());
    for (const Box& prefix : out) {
      for (const Interval& c : cells) {
        Box b = prefix;
        b.push_back(c);
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Rational> quantize(const Interval& range, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "quantization needs at least one point");
  if (n == 1) return {range.lo};
  std::vector<Rational> out;
  const Rational step = range.width() / Rational(n - 1);
  for (std::size_t i = 0; i < n; ++i) out.push_back(range.lo + step * Rational(i));
  return out;
}

Interval post_box(const ScalarParametricAffine& sys, const Interval& qx, const Box& qtheta, const Rational& u) {
  // (1+θ1)·x is bilinear, so its extrema sit at the four corners; the other
  // terms are independent intervals.
  const Rational a[2] = {1 + qtheta[0].lo, 1 + qtheta[0].hi};
  const Rational x[2] = {qx.lo, qx.hi};
  Rational lo = a[0] * x[0];
  Rational hi = lo;
  for (const auto& ai : a) {
    for (const auto& xi : x) {
      Rational v = ai * xi;
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  Rational b0 = qtheta[1].lo * u;
  Rational b1 = qtheta[1].hi * u;
  if (b1 < b0) std::swap(b0, b1);
  lo += b0 + qtheta[2].lo + sys.disturbance.lo;
  hi += b1 + qtheta[2].hi + sys.disturbance.hi;
  return Interval(std::move(lo), std::move(hi));
}

}  // namespace adsyn::abstraction
