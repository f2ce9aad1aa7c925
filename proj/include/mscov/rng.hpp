#ifndef MSCOV_RNG_HPP
#define MSCOV_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace mscov {

/// Deterministic seeded generator with named sub-streams.
///
/// The raw bit stream is std::mt19937_64 (its output sequence is fixed by the
/// standard, so identical seeds give identical streams on every platform).
/// All variate transforms are implemented here rather than through
/// std::*_distribution, whose output is implementation-defined.
///
/// Sub-stream convention: stream 0 drives X, stream 1 drives the mask.
/// Sub-stream seeds are derived from the master seed by splitmix64.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  /// Independent sub-stream `stream` of master seed `seed`.
  static SeededRng stream(std::uint64_t seed, std::uint64_t stream) {
    return SeededRng(splitmix64(seed ^ splitmix64(stream + 1)));
  }

  std::uint64_t next_bits() { return engine_(); }

  /// Uniform in (0, 1), 53-bit resolution, never exactly 0.
  double uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// +1 or -1 with equal probability.
  double rademacher() { return (engine_() >> 63) ? 1.0 : -1.0; }

  /// Standard normal via Box-Muller; consumes two uniforms per pair.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Uniform on (-sqrt(3), sqrt(3)): mean 0, variance 1.
  double uniform_unit_variance() {
    return (2.0 * uniform01() - 1.0) * std::sqrt(3.0);
  }

  /// Gamma(shape, 1) by Marsaglia-Tsang; shape > 0.
  double gamma(double shape) {
    if (shape < 1.0) {
      // boost: Gamma(a) = Gamma(a+1) * U^(1/a)
      double u = uniform01();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = gaussian();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Student-t with df degrees of freedom, standardized to unit variance
  /// (requires df > 2).
  double student_t_unit_variance(double df) {
    double z = gaussian();
    double chi2 = 2.0 * gamma(df / 2.0);
    double t = z / std::sqrt(chi2 / df);
    return t / std::sqrt(df / (df - 2.0));
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Entry distribution for the data matrix X; all variants are standardized
/// to mean 0 and variance 1.
struct EntryDistribution {
  enum class Kind { gaussian, rademacher, uniform, heavy_tail_t };
  Kind kind = Kind::gaussian;
  double df = 3.0;  // only for heavy_tail_t; must be > 2

  static EntryDistribution gaussian() { return {Kind::gaussian, 0.0}; }
  static EntryDistribution rademacher() { return {Kind::rademacher, 0.0}; }
  static EntryDistribution uniform() { return {Kind::uniform, 0.0}; }
  static EntryDistribution heavy_tail_t(double dof) {
    if (dof <= 2.0)
      throw std::domain_error("heavy_tail_t: df must be > 2 for unit variance");
    return {Kind::heavy_tail_t, dof};
  }

  double sample(SeededRng& rng) const {
    switch (kind) {
      case Kind::gaussian:
        return rng.gaussian();
      case Kind::rademacher:
        return rng.rademacher();
      case Kind::uniform:
        return rng.uniform_unit_variance();
      case Kind::heavy_tail_t:
        return rng.student_t_unit_variance(df);
    }
    throw std::logic_error("EntryDistribution: unknown kind");
  }
};

}  // namespace mscov

#endif  // MSCOV_RNG_HPP
