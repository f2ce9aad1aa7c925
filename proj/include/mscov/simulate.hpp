#ifndef MSCOV_SIMULATE_HPP
#define MSCOV_SIMULATE_HPP

#include "mscov/rng.hpp"
#include "mscov/types.hpp"

namespace mscov {

/// d x n matrix of iid standardized entries drawn from `dist`.
Matrix gen_x(Index d, Index n, const EntryDistribution& dist, SeededRng& rng);

/// d x n Bernoulli mask; row i is iid Bernoulli(p[i]).
MaskMatrix gen_mask(const Vector& p, Index n, SeededRng& rng);

/// Sample y[i][k] = sqrt(t_i) x[i][k] + mean[i] with an independent mask.
/// X is drawn from sub-stream 0 of `seed`, the mask from sub-stream 1.
MaskedSample gen_sample(const DiagonalModel& model, const EntryDistribution& dist,
                        const Vector& mean, std::uint64_t seed);

/// Rescaled matrix z[i][k] = y[i][k] mask[i][k] / sqrt(t_i p_i).
/// Requires a centered sample (mean_known).
Matrix build_z(const MaskedSample& sample, const DiagonalModel& model);

/// Reduced matrix (1/n) R^{1/2} Z Z^T R^{1/2} - S (diagonal R, S).
Matrix build_t_bar(const Matrix& z, const ModelMatrices& mm, Index n);

}  // namespace mscov

#endif  // MSCOV_SIMULATE_HPP
