#include "mscov/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mscov {

Vector symmetric_eigenvalues(const Matrix& a, double sym_tol) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("symmetric_eigenvalues: matrix not square");
  double scale = 1.0 + a.cwiseAbs().maxCoeff();
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > sym_tol * scale)
    throw std::invalid_argument("symmetric_eigenvalues: matrix not symmetric");
  if (a.rows() == 1) return Vector::Constant(1, a(0, 0));

  Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

SpectralMeasure esd(const Matrix& a) { return SpectralMeasure(symmetric_eigenvalues(a)); }

namespace {

// Reference value for the left check at an atom. When the atom sits exactly
// on a grid knot the segment ending there may encode a jump, so the value of
// the previous knot is used; otherwise continuity makes this cdf_at(x).
double ref_cdf_left(const DensityCurve& ref, double x) {
  const Index m = ref.xs.size();
  const double* b = ref.xs.data();
  Index j = std::lower_bound(b, b + m, x) - b;
  if (j < m && ref.xs(j) == x) return ref.cdf(j > 0 ? j - 1 : 0);
  return ref.cdf_at(x);
}

}  // namespace

double kolmogorov_distance(const SpectralMeasure& mu, const DensityCurve& ref) {
  // The sup of |F_emp - F_ref| over the line is attained at an atom of mu,
  // approached from the left or the right.
  double sup = 0.0;
  for (Index i = 0; i < mu.atoms(); ++i) {
    double x = mu.eigenvalues(i);
    sup = std::max(sup, std::abs(mu.cdf(x) - ref.cdf_at(x)));
    sup = std::max(sup, std::abs(mu.cdf_left(x) - ref_cdf_left(ref, x)));
  }
  return sup;
}

double kolmogorov_distance(const SpectralMeasure& mu, const SpectralMeasure& nu) {
  double sup = 0.0;
  auto probe = [&](double x) {
    sup = std::max(sup, std::abs(mu.cdf(x) - nu.cdf(x)));
    sup = std::max(sup, std::abs(mu.cdf_left(x) - nu.cdf_left(x)));
  };
  for (Index i = 0; i < mu.atoms(); ++i) probe(mu.eigenvalues(i));
  for (Index i = 0; i < nu.atoms(); ++i) probe(nu.eigenvalues(i));
  return sup;
}

namespace {

// Checks the Levy sandwich mu(x-eps)-eps <= nu(x) <= mu(x+eps)+eps for all x.
// Both sides are step functions of x; it suffices to test values and left
// limits at every discontinuity point.
bool levy_feasible(const SpectralMeasure& mu, const SpectralMeasure& nu,
                   double eps) {
  // sup_x [ mu(x-eps) - nu(x) ] <= eps
  for (Index i = 0; i < mu.atoms(); ++i) {
    double x = mu.eigenvalues(i) + eps;
    if (mu.cdf(x - eps) - nu.cdf(x) > eps) return false;
  }
  for (Index j = 0; j < nu.atoms(); ++j) {
    double x = nu.eigenvalues(j);
    if (mu.cdf_left(x - eps) - nu.cdf_left(x) > eps) return false;
  }
  // sup_x [ nu(x) - mu(x+eps) ] <= eps
  for (Index j = 0; j < nu.atoms(); ++j) {
    double x = nu.eigenvalues(j);
    if (nu.cdf(x) - mu.cdf(x + eps) > eps) return false;
  }
  for (Index i = 0; i < mu.atoms(); ++i) {
    double x = mu.eigenvalues(i) - eps;
    if (nu.cdf_left(x) - mu.cdf_left(x + eps) > eps) return false;
  }
  return true;
}

}  // namespace

double levy_distance(const SpectralMeasure& mu, const SpectralMeasure& nu) {
  double lo = 0.0, hi = 1.0;
  if (levy_feasible(mu, nu, 0.0)) return 0.0;
  while (hi - lo > 1e-9) {
    double mid = 0.5 * (lo + hi);
    if (levy_feasible(mu, nu, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Histogram histogram(const SpectralMeasure& mu, Index bins, double lo, double hi) {
  if (bins < 1) throw std::invalid_argument("histogram: need bins >= 1");
  if (std::isnan(lo)) lo = mu.eigenvalues.minCoeff();
  if (std::isnan(hi)) hi = mu.eigenvalues.maxCoeff();
  if (!(hi > lo)) {
    // degenerate range: put everything in one spot-width bin
    hi = lo + 1.0;
  }
  Histogram h;
  h.edges = Vector::LinSpaced(bins + 1, lo, hi);
  h.masses = Vector::Zero(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  const double w = 1.0 / static_cast<double>(mu.atoms());
  for (Index i = 0; i < mu.atoms(); ++i) {
    double x = mu.eigenvalues(i);
    if (x < lo || x > hi) continue;
    Index b = static_cast<Index>((x - lo) / width);
    if (b >= bins) b = bins - 1;  // right-closed last bin
    h.masses(b) += w;
  }
  return h;
}

}  // namespace mscov
