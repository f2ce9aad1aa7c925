#include "mscov/simulate.hpp"

#include <stdexcept>

namespace mscov {

Matrix gen_x(Index d, Index n, const EntryDistribution& dist, SeededRng& rng) {
  if (d < 1 || n < 1) throw std::invalid_argument("gen_x: need d, n >= 1");
  Matrix x(d, n);
  // column-major fill order is part of the determinism contract
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < d; ++i) x(i, k) = dist.sample(rng);
  return x;
}

MaskMatrix gen_mask(const Vector& p, Index n, SeededRng& rng) {
  if (n < 1) throw std::invalid_argument("gen_mask: need n >= 1");
  if ((p.array() <= 0.0).any() || (p.array() > 1.0).any())
    throw std::domain_error("gen_mask: p entries must lie in (0, 1]");
  const Index d = p.size();
  MaskMatrix mask(d, n);
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < d; ++i)
      mask(i, k) = (p(i) >= 1.0 || rng.uniform01() < p(i)) ? 1 : 0;
  return mask;
}

MaskedSample gen_sample(const DiagonalModel& model, const EntryDistribution& dist,
                        const Vector& mean, std::uint64_t seed) {
  if (mean.size() != model.dim())
    throw std::invalid_argument("gen_sample: mean dimension mismatch");
  SeededRng x_rng = SeededRng::stream(seed, 0);
  SeededRng mask_rng = SeededRng::stream(seed, 1);

  Matrix x = gen_x(model.dim(), model.n, dist, x_rng);
  Vector scale = model.t_diag.array().sqrt();

  MaskedSample sample;
  sample.y = (scale.asDiagonal() * x).colwise() + mean;
  sample.mask = gen_mask(model.p, model.n, mask_rng);
  sample.mean_known = (mean.array() == 0.0).all();
  return sample;
}

Matrix build_z(const MaskedSample& sample, const DiagonalModel& model) {
  if (!sample.mean_known)
    throw std::invalid_argument("build_z: requires a centered sample (mean_known)");
  if (sample.dim() != model.dim() || sample.samples() != model.n)
    throw std::invalid_argument("build_z: sample/model dimension mismatch");
  Vector inv_scale = (model.t_diag.array() * model.p.array()).sqrt().inverse();
  return inv_scale.asDiagonal() *
         (sample.y.array() * sample.mask.cast<double>().array()).matrix();
}

Matrix build_t_bar(const Matrix& z, const ModelMatrices& mm, Index n) {
  if (z.rows() != mm.dim() || z.cols() != n)
    throw std::invalid_argument("build_t_bar: dimension mismatch");
  Vector sqrt_r = mm.r_diag.array().sqrt();
  Matrix scaled = sqrt_r.asDiagonal() * z;
  Matrix t_bar(mm.dim(), mm.dim());
  t_bar.setZero();
  t_bar.selfadjointView<Eigen::Lower>().rankUpdate(scaled, 1.0 / static_cast<double>(n));
  t_bar.triangularView<Eigen::StrictlyUpper>() =
      t_bar.triangularView<Eigen::StrictlyLower>().transpose();
  t_bar.diagonal() -= mm.s_diag;
  return t_bar;
}

}  // namespace mscov
