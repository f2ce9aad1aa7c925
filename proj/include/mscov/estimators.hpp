#ifndef MSCOV_ESTIMATORS_HPP
#define MSCOV_ESTIMATORS_HPP

#include "mscov/types.hpp"

namespace mscov {

/// Pairwise observation counts N_ij = max(1, #{k : both i and j observed at k}).
Matrix pair_counts(const MaskMatrix& mask);

/// Pairwise-complete sample covariance with per-row mean centering.
Matrix estimate_t_hat(const MaskedSample& sample);

/// Pairwise-complete second-moment estimator (no centering).
/// Requires sample.mean_known.
Matrix estimate_sigma_hat(const MaskedSample& sample);

/// Realized normalization matrix with entries n / N_ij.
Matrix w_hat(const MaskMatrix& mask);

/// Deterministic normalization: 1/(p_i p_j) off-diagonal, 1/p_i on diagonal.
Matrix w_det(const Vector& p, Index n);

/// Max abs difference between estimate_t_hat and its four-term Hadamard
/// reconstruction (1/n) W_hat o (...) built from Y o eps and the mean matrix.
double hadamard_decomposition_check(const MaskedSample& sample);

}  // namespace mscov

#endif  // MSCOV_ESTIMATORS_HPP
