#include "mscov/limit.hpp"

#include <cmath>
#include <stdexcept>

namespace mscov {

namespace {

Complex fixed_point_map(Complex e, Complex z, const ModelMatrices& mm,
                        double y_ratio) {
  const Index d = mm.dim();
  Complex denom_scale = 1.0 + y_ratio * e;
  Complex acc(0.0, 0.0);
  for (Index i = 0; i < d; ++i) {
    Complex denom = mm.r_diag(i) / denom_scale - mm.s_diag(i) - z;
    acc += mm.r_diag(i) / denom;
  }
  return acc / static_cast<double>(d);
}

// d/de of the fixed-point map.
Complex fixed_point_map_derivative(Complex e, Complex z, const ModelMatrices& mm,
                                   double y_ratio) {
  const Index d = mm.dim();
  Complex denom_scale = 1.0 + y_ratio * e;
  Complex acc(0.0, 0.0);
  for (Index i = 0; i < d; ++i) {
    Complex denom = mm.r_diag(i) / denom_scale - mm.s_diag(i) - z;
    acc += mm.r_diag(i) * mm.r_diag(i) * y_ratio /
           (denom_scale * denom_scale * denom * denom);
  }
  return acc / static_cast<double>(d);
}

}  // namespace

FixedPointSolution solve_e_circ(Complex z, const ModelMatrices& mm, double y_ratio,
                                const SolverConfig& cfg, Complex e0) {
  if (z.imag() <= 0.0)
    throw std::domain_error("solve_e_circ: z must have Im(z) > 0");
  if (cfg.tol <= 0.0 || cfg.max_iter < 1 || cfg.damping <= 0.0 ||
      cfg.damping > 1.0)
    throw std::invalid_argument("solve_e_circ: invalid solver config");

  // default start: purely imaginary, inside the a-priori bound max(r)/Im(z)
  Complex e = (e0 == Complex(0.0, 0.0))
                  ? Complex(0.0, mm.r_diag.mean() / z.imag())
                  : e0;

  double omega = cfg.damping;
  double residual = std::numeric_limits<double>::infinity();
  int stall = 0;
  int halvings = 0;

  FixedPointSolution sol;
  sol.z = z;
  int it = 1;
  for (; it <= cfg.max_iter; ++it) {
    Complex next = fixed_point_map(e, z, mm, y_ratio);
    double picard_res = std::abs(next - e);

    // Newton step on F(e) - e = 0 once the iteration is in the basin; the
    // contraction factor can be close to 1 near the support at small Im(z).
    if (it > 2 && picard_res < 1.0) {
      Complex deriv = fixed_point_map_derivative(e, z, mm, y_ratio) - 1.0;
      if (std::abs(deriv) > 1e-30) {
        Complex newton = e - (next - e) / deriv;
        if (newton.imag() > 0.0) {
          double newton_res =
              std::abs(fixed_point_map(newton, z, mm, y_ratio) - newton);
          if (newton_res < picard_res) {
            e = newton;
            residual = newton_res;
            if (residual <= cfg.tol) break;
            continue;
          }
        }
      }
    }

    Complex damped = (1.0 - omega) * e + omega * next;
    double step = std::abs(damped - e);
    if (step >= residual) {
      if (++stall >= 50 && halvings < 6) {
        omega *= 0.5;
        ++halvings;
        stall = 0;
      }
    } else {
      stall = 0;
    }
    residual = step;
    e = damped;
    if (residual <= cfg.tol) break;
  }
  if (residual > cfg.tol) {
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "solve_e_circ: no convergence after %d iterations, residual %.3e",
                  cfg.max_iter, residual);
    throw std::runtime_error(msg);
  }
  if (e.imag() <= 0.0)
    throw std::logic_error(
        "solve_e_circ: converged to Im(e) <= 0, Stieltjes property violated");
  sol.e_circ = e;
  sol.m_circ = m_circ(z, e, mm, y_ratio);
  sol.residual = residual;
  sol.iterations = std::min(it, cfg.max_iter);
  sol.converged = true;
  return sol;
}

Complex m_circ(Complex z, Complex e, const ModelMatrices& mm, double y_ratio) {
  const Index d = mm.dim();
  Complex denom_scale = 1.0 + y_ratio * e;
  Complex acc(0.0, 0.0);
  for (Index i = 0; i < d; ++i) {
    Complex denom = mm.r_diag(i) / denom_scale - mm.s_diag(i) - z;
    if (std::abs(denom) < 1e-300)
      throw std::runtime_error("m_circ: singular resolvent denominator");
    acc += 1.0 / denom;
  }
  return acc / static_cast<double>(d);
}

Complex mp_shifted_stieltjes(Complex z, double y, double sigma2, double p0) {
  if (z.imag() <= 0.0)
    throw std::domain_error("mp_shifted_stieltjes: z must have Im(z) > 0");
  const double s2 = sigma2 / p0;
  const double shift = sigma2 * (1.0 - p0) / p0;
  Complex w = z + shift;  // evaluate the unshifted MP transform at z + shift

  // s solves  -w y s2 s^2 + (s2 - w - y s2) s - 1 = 0
  Complex a = -w * y * s2;
  Complex b = s2 - w - y * s2;
  Complex c(-1.0, 0.0);
  Complex disc = std::sqrt(b * b - 4.0 * a * c);
  Complex s1 = (-b + disc) / (2.0 * a);
  Complex s2root = (-b - disc) / (2.0 * a);
  if (s1.imag() > 0.0) return s1;
  if (s2root.imag() > 0.0) return s2root;
  throw std::logic_error("mp_shifted_stieltjes: no root in the upper half-plane");
}

double mp_point_mass(double y) { return y > 1.0 ? 1.0 - 1.0 / y : 0.0; }

double mp_shifted_density(double x, double y, double sigma2, double p0) {
  if (y <= 0.0) throw std::domain_error("mp_shifted_density: y must be > 0");
  const double s2 = sigma2 / p0;
  const double shift = sigma2 * (1.0 - p0) / p0;
  const double u = x + shift;  // coordinate of the unshifted MP law
  const double a = s2 * (1.0 - std::sqrt(y)) * (1.0 - std::sqrt(y));
  const double b = s2 * (1.0 + std::sqrt(y)) * (1.0 + std::sqrt(y));
  if (u <= a || u >= b) return 0.0;
  return std::sqrt((b - u) * (u - a)) / (2.0 * M_PI * s2 * y * u);
}

std::pair<double, double> support_edges(double y, double sigma2, double p0) {
  if (y <= 0.0) throw std::domain_error("support_edges: y must be > 0");
  const double s2 = sigma2 / p0;
  const double shift = sigma2 * (1.0 - p0) / p0;
  double lo = s2 * (1.0 - std::sqrt(y)) * (1.0 - std::sqrt(y)) - shift;
  double hi = s2 * (1.0 + std::sqrt(y)) * (1.0 + std::sqrt(y)) - shift;
  return {lo, hi};
}

double pd_threshold(double y) {
  if (y <= 0.0 || y >= 1.0)
    throw std::domain_error("pd_threshold: y must lie in (0, 1)");
  return 1.0 - (1.0 - std::sqrt(y)) * (1.0 - std::sqrt(y));
}

DensityCurve invert_to_density(const ModelMatrices& mm, double y_ratio,
                               const Vector& grid, double v,
                               const SolverConfig& cfg) {
  if (v <= 0.0) throw std::domain_error("invert_to_density: v must be > 0");
  const Index m = grid.size();
  if (m < 2) throw std::invalid_argument("invert_to_density: grid too short");
  for (Index j = 1; j < m; ++j)
    if (!(grid(j) > grid(j - 1)))
      throw std::invalid_argument("invert_to_density: grid not increasing");

  DensityCurve curve;
  curve.xs = grid;
  curve.density.resize(m);
  Complex warm(0.0, 0.0);
  for (Index j = 0; j < m; ++j) {
    Complex z(grid(j), v);
    FixedPointSolution sol;
    try {
      sol = solve_e_circ(z, mm, y_ratio, cfg, warm);
    } catch (const std::exception& err) {
      throw std::runtime_error("invert_to_density: solver failed at x = " +
                               std::to_string(grid(j)) + ": " + err.what());
    }
    warm = sol.e_circ;  // neighboring grid points have nearby solutions
    curve.density(j) = sol.m_circ.imag() / M_PI;
  }
  curve.cdf.resize(m);
  curve.cdf(0) = 0.0;
  for (Index j = 1; j < m; ++j)
    curve.cdf(j) = curve.cdf(j - 1) + 0.5 * (curve.density(j) + curve.density(j - 1)) *
                                          (grid(j) - grid(j - 1));
  return curve;
}

}  // namespace mscov
