#include "smtjsim/demag.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace smtjsim {
namespace {

// Newell's f auxiliary function, even in every argument. Singular factors
// always carry vanishing coefficients; the guards pin those terms to their
// zero limits.
double newell_f(double x, double y, double z) {
  x = std::abs(x);
  y = std::abs(y);
  z = std::abs(z);
  double x2 = x * x, y2 = y * y, z2 = z * z;
  double r = std::sqrt(x2 + y2 + z2);
  double t = 0.0;
  if (x2 + z2 > 0.0)
    t += 0.5 * y * (z2 - x2) * std::asinh(y / std::sqrt(x2 + z2));
  if (x2 + y2 > 0.0)
    t += 0.5 * z * (y2 - x2) * std::asinh(z / std::sqrt(x2 + y2));
  if (x > 0.0 && r > 0.0) t -= x * y * z * std::atan(y * z / (x * r));
  t += (1.0 / 6.0) * (2.0 * x2 - y2 - z2) * r;
  return t;
}

}  // namespace

double newell_nxx(double X, double Y, double Z, double dx, double dy,
                  double dz) {
  // 27-point second difference of f along each axis, weights (1, -2, 1).
  // The leading minus fixes the sign convention so that the self term is
  // positive and the tensor trace sums to +1 over all offsets.
  static const double w[3] = {1.0, -2.0, 1.0};
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        s += w[i] * w[j] * w[k] *
             newell_f(X + (i - 1) * dx, Y + (j - 1) * dy, Z + (k - 1) * dz);
  return -s / (4.0 * kPi * dx * dy * dz);
}

Vec3 demag_factors(const MagnetParams& params, int resolution) {
  if (!(params.major_axis > 0) || !(params.minor_axis > 0) ||
      !(params.thickness > 0))
    throw_validation("demag_factors: degenerate geometry (dimension <= 0)");
  if (resolution < 8) resolution = 8;
  int n = resolution + (resolution % 2);  // even grid keeps mirror symmetry
  const double a = params.major_axis, b = params.minor_axis,
               t = params.thickness;
  const double hx = a / n, hy = b / n;

  // Per-row inside interval [lo, hi) of the midpoint-classified ellipse.
  std::vector<int> lo(n), hi(n);
  long long n_inside = 0;
  for (int j = 0; j < n; ++j) {
    double yc = (j + 0.5) * hy - 0.5 * b;
    double rem = 1.0 - (2.0 * yc / b) * (2.0 * yc / b);
    if (rem <= 0.0) {
      lo[j] = 0;
      hi[j] = 0;
      continue;
    }
    double half = 0.5 * a * std::sqrt(rem);  // row half-width
    // inside: |xc| < half with xc = (i + 0.5) hx - a/2
    int first = static_cast<int>(std::ceil((0.5 * a - half) / hx - 0.5));
    int last = n - 1 - first;  // mirror symmetry
    if (first < 0) first = 0;
    if (last > n - 1) last = n - 1;
    if (first > last) {
      lo[j] = 0;
      hi[j] = 0;
    } else {
      lo[j] = first;
      hi[j] = last + 1;
      n_inside += hi[j] - lo[j];
    }
  }
  if (n_inside == 0)
    throw_validation("demag_factors: geometry discretizes to zero cells");

  // count(di, dj) = number of inside cell pairs at that offset; by the
  // ellipse mirror symmetries it is even in di and dj, so only the di,dj >= 0
  // quadrant is accumulated, with multiplicity 2 per strictly positive axis.
  long double sx = 0.0L, sy = 0.0L, sz = 0.0L;
  for (int dj = 0; dj < n; ++dj) {
    std::vector<long long> count(n, 0);
    for (int j = 0; j + dj < n; ++j) {
      int l1 = lo[j], h1 = hi[j];
      int l2 = lo[j + dj], h2 = hi[j + dj];
      if (h1 == l1 || h2 == l2) continue;
      // overlap(di) = |[l1,h1) ∩ [l2-di,h2-di)| for di >= 0
      int di_min = l2 - h1 + 1, di_max = h2 - l1 - 1;
      if (di_min < 0) di_min = 0;
      for (int di = di_min; di <= di_max && di < n; ++di) {
        int ov = std::min(h1, h2 - di) - std::max(l1, l2 - di);
        if (ov > 0) count[di] += ov;
      }
    }
    for (int di = 0; di < n; ++di) {
      if (count[di] == 0) continue;
      double mult = (di > 0 ? 2.0 : 1.0) * (dj > 0 ? 2.0 : 1.0);
      double X = di * hx, Y = dj * hy;
      long double wgt = static_cast<long double>(count[di]) * mult;
      sx += wgt * newell_nxx(X, Y, 0.0, hx, hy, t);
      sy += wgt * newell_nxx(Y, X, 0.0, hy, hx, t);
      sz += wgt * newell_nxx(0.0, X, Y, t, hx, hy);
    }
  }
  double inv = 1.0 / static_cast<double>(n_inside);
  return Vec3(static_cast<double>(sx) * inv, static_cast<double>(sy) * inv,
              static_cast<double>(sz) * inv);
}

}  // namespace smtjsim
