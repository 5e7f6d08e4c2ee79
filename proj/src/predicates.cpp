// Orientation and incircle tests with a floating-point filter and an exact
// fallback built on floating-point expansion arithmetic (sums of
// non-overlapping doubles whose exact total is the represented value).

#include <cmath>
#include <limits>
#include <vector>

#include "apfstat/geometry.hpp"

namespace apfstat::geometry {
namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon() / 2.0;
constexpr double kOrientBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kIncircleBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

using Expansion = std::vector<double>;

inline void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double bv = sum - a;
  const double av = sum - bv;
  err = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& prod, double& err) {
  prod = a * b;
  err = std::fma(a, b, -prod);
}

// e + b, zero components eliminated. Components stay in increasing magnitude.
Expansion grow(const Expansion& e, double b) {
  Expansion h;
  h.reserve(e.size() + 1);
  double q = b;
  for (double component : e) {
    double sum = 0.0;
    double err = 0.0;
    two_sum(q, component, sum, err);
    q = sum;
    if (err != 0.0) h.push_back(err);
  }
  if (q != 0.0 || h.empty()) h.push_back(q);
  return h;
}

Expansion add(const Expansion& e, const Expansion& f) {
  Expansion h = e;
  for (double component : f) h = grow(h, component);
  return h;
}

Expansion negate(Expansion e) {
  for (double& component : e) component = -component;
  return e;
}

Expansion scale(const Expansion& e, double b) {
  Expansion h;
  h.reserve(2 * e.size());
  for (double component : e) {
    double prod = 0.0;
    double err = 0.0;
    two_product(component, b, prod, err);
    if (err != 0.0) h = grow(h, err);
    if (prod != 0.0) h = grow(h, prod);
  }
  if (h.empty()) h.push_back(0.0);
  return h;
}

Expansion multiply(const Expansion& e, const Expansion& f) {
  Expansion h{0.0};
  for (double component : f) h = add(h, scale(e, component));
  return h;
}

// Exact a - b as a two-component expansion.
Expansion difference(double a, double b) {
  double sum = 0.0;
  double err = 0.0;
  two_sum(a, -b, sum, err);
  if (err == 0.0) return {sum};
  return {err, sum};
}

double most_significant(const Expansion& e) {
  for (auto it = e.rbegin(); it != e.rend(); ++it) {
    if (*it != 0.0) return *it;
  }
  return 0.0;
}

double orient2d_exact(const Point2& a, const Point2& b, const Point2& c) {
  const Expansion acx = difference(a.x, c.x);
  const Expansion acy = difference(a.y, c.y);
  const Expansion bcx = difference(b.x, c.x);
  const Expansion bcy = difference(b.y, c.y);
  return most_significant(
      add(multiply(acx, bcy), negate(multiply(acy, bcx))));
}

double incircle_exact(const Point2& a, const Point2& b, const Point2& c,
                      const Point2& d) {
  const Expansion adx = difference(a.x, d.x);
  const Expansion ady = difference(a.y, d.y);
  const Expansion bdx = difference(b.x, d.x);
  const Expansion bdy = difference(b.y, d.y);
  const Expansion cdx = difference(c.x, d.x);
  const Expansion cdy = difference(c.y, d.y);

  const Expansion alift = add(multiply(adx, adx), multiply(ady, ady));
  const Expansion blift = add(multiply(bdx, bdx), multiply(bdy, bdy));
  const Expansion clift = add(multiply(cdx, cdx), multiply(cdy, cdy));

  const Expansion bc = add(multiply(bdx, cdy), negate(multiply(cdx, bdy)));
  const Expansion ca = add(multiply(cdx, ady), negate(multiply(adx, cdy)));
  const Expansion ab = add(multiply(adx, bdy), negate(multiply(bdx, ady)));

  return most_significant(add(
      add(multiply(alift, bc), multiply(blift, ca)), multiply(clift, ab)));
}

}  // namespace

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  const double detleft = (a.x - c.x) * (b.y - c.y);
  const double detright = (a.y - c.y) * (b.x - c.x);
  const double det = detleft - detright;
  const double bound = kOrientBound * (std::abs(detleft) + std::abs(detright));
  if (det > bound || -det > bound) return det;
  return orient2d_exact(a, b, c);
}

double incircle(const Point2& a, const Point2& b, const Point2& c,
                const Point2& d) {
  const double adx = a.x - d.x;
  const double ady = a.y - d.y;
  const double bdx = b.x - d.x;
  const double bdy = b.y - d.y;
  const double cdx = c.x - d.x;
  const double cdy = c.y - d.y;

  const double bdxcdy = bdx * cdy;
  const double cdxbdy = cdx * bdy;
  const double alift = adx * adx + ady * ady;
  const double cdxady = cdx * ady;
  const double adxcdy = adx * cdy;
  const double blift = bdx * bdx + bdy * bdy;
  const double adxbdy = adx * bdy;
  const double bdxady = bdx * ady;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent =
      (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
      (std::abs(cdxady) + std::abs(adxcdy)) * blift +
      (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  const double bound = kIncircleBound * permanent;
  if (det > bound || -det > bound) return det;
  return incircle_exact(a, b, c, d);
}

}  // namespace apfstat::geometry
