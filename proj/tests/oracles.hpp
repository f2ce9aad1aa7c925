// Test-only oracles, independent of the library's solver paths.
#ifndef MSCOV_TESTS_ORACLES_HPP
#define MSCOV_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>

namespace oracles {

// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a,
                           double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-9, int depth = 40) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Classical Marchenko-Pastur Stieltjes transform with parameters (y, s2),
// via the quadratic formula, picking the root in the upper half-plane.
inline std::complex<double> mp_stieltjes(std::complex<double> z, double y,
                                         double s2) {
  std::complex<double> a = -z * y * s2;
  std::complex<double> b = s2 - z - y * s2;
  std::complex<double> disc = std::sqrt(b * b + 4.0 * a);
  std::complex<double> r1 = (-b + disc) / (2.0 * a);
  std::complex<double> r2 = (-b - disc) / (2.0 * a);
  return r1.imag() > 0.0 ? r1 : r2;
}

// Classical MP density with parameters (y, s2), continuous part.
inline double mp_density(double u, double y, double s2) {
  double a = s2 * (1.0 - std::sqrt(y)) * (1.0 - std::sqrt(y));
  double b = s2 * (1.0 + std::sqrt(y)) * (1.0 + std::sqrt(y));
  if (u <= a || u >= b) return 0.0;
  return std::sqrt((b - u) * (u - a)) / (2.0 * M_PI * s2 * y * u);
}

// Convolution of the shifted MP density with a Cauchy kernel of scale v,
// computed by quadrature with an edge-flattening substitution
// u = a + (b - a) sin^2(theta).
inline double mp_shifted_cauchy_convolution(double x, double y, double sigma2,
                                            double p0, double v) {
  double s2 = sigma2 / p0;
  double shift = sigma2 * (1.0 - p0) / p0;
  double a = s2 * (1.0 - std::sqrt(y)) * (1.0 - std::sqrt(y));
  double b = s2 * (1.0 + std::sqrt(y)) * (1.0 + std::sqrt(y));
  double target = x + shift;  // in unshifted MP coordinates
  auto integrand = [&](double theta) {
    double st = std::sin(theta), ct = std::cos(theta);
    double u = a + (b - a) * st * st;
    double sqrt_term = (b - a) * st * ct;  // sqrt((b-u)(u-a))
    double dens_jac = sqrt_term / (2.0 * M_PI * s2 * y * u) * (b - a) * 2.0 *
                      st * ct;  // f(u) du/dtheta
    double du = target - u;
    return dens_jac * v / (M_PI * (du * du + v * v));
  };
  return integrate(integrand, 0.0, 0.5 * M_PI, 1e-10, 48);
}

}  // namespace oracles

#endif  // MSCOV_TESTS_ORACLES_HPP
