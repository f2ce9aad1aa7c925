#ifndef MSCOV_SPECTRAL_HPP
#define MSCOV_SPECTRAL_HPP

#include "mscov/types.hpp"

namespace mscov {

/// Eigenvalues of a symmetric matrix, ascending. The input is checked for
/// symmetry within `sym_tol` and then symmetrized as (A + A^T)/2.
Vector symmetric_eigenvalues(const Matrix& a, double sym_tol = 1e-9);

/// Empirical spectral distribution of a symmetric matrix.
SpectralMeasure esd(const Matrix& a);

/// Kolmogorov distance between an atomic measure and a reference CDF curve
/// (linear interpolation on the grid, extended flat outside).
double kolmogorov_distance(const SpectralMeasure& mu, const DensityCurve& ref);

/// Kolmogorov distance between two atomic measures.
double kolmogorov_distance(const SpectralMeasure& mu, const SpectralMeasure& nu);

/// Levy distance between two atomic measures, by bisection to 1e-9.
double levy_distance(const SpectralMeasure& mu, const SpectralMeasure& nu);

struct Histogram {
  Vector edges;   // bins + 1 edges, equal width
  Vector masses;  // per-bin probability mass
};

/// Equal-width histogram; the last bin is right-closed. Default range is
/// [min atom, max atom].
Histogram histogram(const SpectralMeasure& mu, Index bins,
                    double lo = std::numeric_limits<double>::quiet_NaN(),
                    double hi = std::numeric_limits<double>::quiet_NaN());

}  // namespace mscov

#endif  // MSCOV_SPECTRAL_HPP
