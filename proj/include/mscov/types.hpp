#ifndef MSCOV_TYPES_HPP
#define MSCOV_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace mscov {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MaskMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Diagonal population covariance T together with per-coordinate
/// observation probabilities p and sample size n.
struct DiagonalModel {
  Vector t_diag;  // diagonal of T, all > 0
  Vector p;       // observation probabilities, in (0, 1]
  Index n = 0;

  DiagonalModel(Vector t, Vector probs, Index n_samples)
      : t_diag(std::move(t)), p(std::move(probs)), n(n_samples) {
    if (t_diag.size() < 1 || n < 1)
      throw std::invalid_argument("DiagonalModel: need d >= 1 and n >= 1");
    if (t_diag.size() != p.size())
      throw std::invalid_argument("DiagonalModel: t_diag and p size mismatch");
    if ((t_diag.array() <= 0.0).any())
      throw std::domain_error("DiagonalModel: all t_diag entries must be > 0");
    if ((p.array() <= 0.0).any() || (p.array() > 1.0).any())
      throw std::domain_error("DiagonalModel: all p entries must lie in (0, 1]");
  }

  Index dim() const { return t_diag.size(); }
  double aspect_ratio() const {
    return static_cast<double>(dim()) / static_cast<double>(n);
  }
};

/// Diagonals of R = diag(t_i / p_i) and S = diag((1 - p_i) t_i / p_i).
/// Satisfies R - S = T componentwise.
struct ModelMatrices {
  Vector r_diag;
  Vector s_diag;

  Index dim() const { return r_diag.size(); }
  double max_r() const { return r_diag.maxCoeff(); }
};

inline ModelMatrices build_model_matrices(const DiagonalModel& model) {
  ModelMatrices mm;
  mm.r_diag = model.t_diag.array() / model.p.array();
  mm.s_diag = (1.0 - model.p.array()) * model.t_diag.array() / model.p.array();
  return mm;
}

/// Data matrix Y with its Bernoulli observation mask.
struct MaskedSample {
  Matrix y;
  MaskMatrix mask;  // entries in {0, 1}
  bool mean_known = false;

  Index dim() const { return y.rows(); }
  Index samples() const { return y.cols(); }
};

/// Empirical spectral distribution: d eigenvalue atoms, weight 1/d each.
struct SpectralMeasure {
  Vector eigenvalues;  // sorted ascending

  explicit SpectralMeasure(Vector eigs) : eigenvalues(std::move(eigs)) {
    if (eigenvalues.size() < 1)
      throw std::invalid_argument("SpectralMeasure: empty eigenvalue list");
    std::sort(eigenvalues.data(), eigenvalues.data() + eigenvalues.size());
  }

  Index atoms() const { return eigenvalues.size(); }

  /// F(x) = fraction of atoms <= x.
  double cdf(double x) const {
    const double* b = eigenvalues.data();
    const double* e = b + eigenvalues.size();
    return static_cast<double>(std::upper_bound(b, e, x) - b) /
           static_cast<double>(eigenvalues.size());
  }

  /// Left limit F(x-) = fraction of atoms < x.
  double cdf_left(double x) const {
    const double* b = eigenvalues.data();
    const double* e = b + eigenvalues.size();
    return static_cast<double>(std::lower_bound(b, e, x) - b) /
           static_cast<double>(eigenvalues.size());
  }
};

/// Converged fixed-point data at a single spectral parameter z.
struct FixedPointSolution {
  Complex z;
  Complex e_circ;
  Complex m_circ;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Sampled density and CDF curve, typically from Stieltjes inversion.
struct DensityCurve {
  Vector xs;       // strictly increasing grid
  Vector density;  // f(x) >= 0
  Vector cdf;      // nondecreasing, in [0, 1]

  /// Linear interpolation of the CDF, extended flat outside the grid.
  double cdf_at(double x) const {
    const Index m = xs.size();
    if (x <= xs(0)) return cdf(0);
    if (x >= xs(m - 1)) return cdf(m - 1);
    const double* b = xs.data();
    Index j = std::upper_bound(b, b + m, x) - b;  // xs(j-1) <= x < xs(j)
    double w = (x - xs(j - 1)) / (xs(j) - xs(j - 1));
    return cdf(j - 1) + w * (cdf(j) - cdf(j - 1));
  }
};

}  // namespace mscov

#endif  // MSCOV_TYPES_HPP
