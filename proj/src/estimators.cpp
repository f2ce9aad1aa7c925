#include "mscov/estimators.hpp"

#include <stdexcept>

namespace mscov {

namespace {

void check_mask(const MaskMatrix& mask) {
  if (((mask.array() != 0) && (mask.array() != 1)).any())
    throw std::domain_error("mask entries must be 0 or 1");
}

void symmetrize_from_lower(Matrix& a) {
  a.triangularView<Eigen::StrictlyUpper>() =
      a.triangularView<Eigen::StrictlyLower>().transpose();
}

}  // namespace

Matrix pair_counts(const MaskMatrix& mask) {
  check_mask(mask);
  Matrix m = mask.cast<double>();
  Matrix counts = m * m.transpose();
  return counts.cwiseMax(1.0);
}

Matrix estimate_t_hat(const MaskedSample& sample) {
  check_mask(sample.mask);
  const Index d = sample.dim();
  Matrix eps = sample.mask.cast<double>();
  Matrix a = sample.y.cwiseProduct(eps);  // Y o eps

  // row means over the observed entries, N_ii floored at 1
  Vector n_diag = eps.rowwise().sum().cwiseMax(1.0);
  Vector m_hat = a.rowwise().sum().cwiseQuotient(n_diag);

  Matrix counts = pair_counts(sample.mask);
  Matrix yy = a * a.transpose();            // sum over N_ij of Y_ik Y_jk
  Matrix ye = a * eps.transpose();          // (i,j) -> sum over N_ij of Y_ik
  Matrix raw_counts = eps * eps.transpose();  // #N_ij without the floor

  Matrix t_hat(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = j; i < d; ++i)
      t_hat(i, j) = (yy(i, j) - m_hat(j) * ye(i, j) - m_hat(i) * ye(j, i) +
                     m_hat(i) * m_hat(j) * raw_counts(i, j)) /
                    counts(i, j);
  symmetrize_from_lower(t_hat);
  return t_hat;
}

Matrix estimate_sigma_hat(const MaskedSample& sample) {
  if (!sample.mean_known)
    throw std::invalid_argument(
        "estimate_sigma_hat: requires mean_known (E Y = 0)");
  check_mask(sample.mask);
  Matrix a = sample.y.cwiseProduct(sample.mask.cast<double>());
  Matrix counts = pair_counts(sample.mask);
  Matrix sigma = (a * a.transpose()).cwiseQuotient(counts);
  symmetrize_from_lower(sigma);
  return sigma;
}

Matrix w_hat(const MaskMatrix& mask) {
  const double n = static_cast<double>(mask.cols());
  return n * pair_counts(mask).cwiseInverse();
}

Matrix w_det(const Vector& p, Index n) {
  if ((p.array() <= 0.0).any() || (p.array() > 1.0).any())
    throw std::domain_error("w_det: p entries must lie in (0, 1]");
  (void)n;  // E#N_ij = n p_i p_j off-diagonal, n p_i on the diagonal
  Matrix w = (p * p.transpose()).cwiseInverse();
  w.diagonal() = p.cwiseInverse();
  return w;
}

double hadamard_decomposition_check(const MaskedSample& sample) {
  check_mask(sample.mask);
  const Index n = sample.samples();
  Matrix eps = sample.mask.cast<double>();
  Matrix a = sample.y.cwiseProduct(eps);

  Vector n_diag = eps.rowwise().sum().cwiseMax(1.0);
  Vector m_hat = a.rowwise().sum().cwiseQuotient(n_diag);
  Matrix me = (m_hat.replicate(1, n)).cwiseProduct(eps);  // M_hat o eps

  Matrix wh = w_hat(sample.mask);
  Matrix recon =
      (wh.cwiseProduct(a * a.transpose()) - wh.cwiseProduct(me * a.transpose()) -
       wh.cwiseProduct(a * me.transpose()) +
       wh.cwiseProduct(me * me.transpose())) /
      static_cast<double>(n);

  return (recon - estimate_t_hat(sample)).cwiseAbs().maxCoeff();
}

}  // namespace mscov
