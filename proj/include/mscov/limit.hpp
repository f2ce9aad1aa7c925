#ifndef MSCOV_LIMIT_HPP
#define MSCOV_LIMIT_HPP

#include "mscov/types.hpp"

namespace mscov {

struct SolverConfig {
  double tol = 1e-12;
  int max_iter = 10000;
  double damping = 1.0;  // in (0, 1]
};

/// Solves e = (1/d) sum_i r_i / (r_i/(1 + y e) - s_i - z) for Im(z) > 0 by
/// damped Picard iteration. Throws on non-convergence.
FixedPointSolution solve_e_circ(Complex z, const ModelMatrices& mm, double y_ratio,
                                const SolverConfig& cfg = {},
                                Complex e0 = Complex(0.0, 0.0));

/// m = (1/d) sum_i 1/(r_i/(1 + y e) - s_i - z) for a converged e at this z.
Complex m_circ(Complex z, Complex e, const ModelMatrices& mm, double y_ratio);

/// Stieltjes transform of the Marchenko-Pastur law with parameters
/// (y, sigma2/p0), shifted left by sigma2 (1 - p0)/p0. Closed form.
Complex mp_shifted_stieltjes(Complex z, double y, double sigma2, double p0);

/// Continuous part of the shifted MP density at x. The point mass
/// (1 - 1/y)+ for y > 1 is reported separately by mp_point_mass.
double mp_shifted_density(double x, double y, double sigma2, double p0);

/// Mass of the atom at -sigma2 (1 - p0)/p0 when y > 1; zero otherwise.
double mp_point_mass(double y);

/// Continuous-support endpoints of the shifted MP law:
/// a' = sigma2/p0 (1 - sqrt(y))^2 - sigma2 (1 - p0)/p0, b' analogous.
std::pair<double, double> support_edges(double y, double sigma2, double p0);

/// Positive-definiteness threshold p* = 1 - (1 - sqrt(y))^2 for 0 < y < 1.
double pd_threshold(double y);

/// Density recovery on a grid via Stieltjes inversion at height v:
/// density(x) = Im(m_circ(x + i v)) / pi, CDF by cumulative trapezoid.
DensityCurve invert_to_density(const ModelMatrices& mm, double y_ratio,
                               const Vector& grid, double v,
                               const SolverConfig& cfg = {});

}  // namespace mscov

#endif  // MSCOV_LIMIT_HPP
