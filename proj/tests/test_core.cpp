#include "doctest.h"
#include "mscov/rng.hpp"
#include "mscov/types.hpp"

using namespace mscov;

namespace {
Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}
}  // namespace

TEST_CASE("build_model_matrices: no missingness gives R = T, S = 0") {
  DiagonalModel model(vec({1, 1}), vec({1, 1}), 10);
  ModelMatrices mm = build_model_matrices(model);
  CHECK(mm.r_diag(0) == 1.0);
  CHECK(mm.r_diag(1) == 1.0);
  CHECK(mm.s_diag(0) == 0.0);
  CHECK(mm.s_diag(1) == 0.0);
}

TEST_CASE("build_model_matrices: half observation doubles R") {
  DiagonalModel model(vec({1}), vec({0.5}), 10);
  ModelMatrices mm = build_model_matrices(model);
  CHECK(mm.r_diag(0) == doctest::Approx(2.0));
  CHECK(mm.s_diag(0) == doctest::Approx(1.0));
}

TEST_CASE("build_model_matrices: mixed probabilities") {
  DiagonalModel model(vec({2, 4}), vec({0.25, 0.8}), 10);
  ModelMatrices mm = build_model_matrices(model);
  CHECK(mm.r_diag(0) == doctest::Approx(8.0));
  CHECK(mm.r_diag(1) == doctest::Approx(5.0));
  CHECK(mm.s_diag(0) == doctest::Approx(6.0));
  CHECK(mm.s_diag(1) == doctest::Approx(1.0));
}

TEST_CASE("DiagonalModel rejects invalid probabilities and variances") {
  CHECK_THROWS_AS(DiagonalModel(vec({1}), vec({0.0}), 10), std::domain_error);
  CHECK_THROWS_AS(DiagonalModel(vec({1}), vec({1.5}), 10), std::domain_error);
  CHECK_THROWS_AS(DiagonalModel(vec({-1}), vec({0.5}), 10), std::domain_error);
  CHECK_THROWS_AS(DiagonalModel(vec({1}), vec({0.5}), 0), std::invalid_argument);
}

TEST_CASE("R - S = T componentwise for random models") {
  SeededRng rng(42);
  for (int rep = 0; rep < 100; ++rep) {
    Index d = 1 + static_cast<Index>(rng.next_bits() % 20);
    Vector t(d), p(d);
    for (Index i = 0; i < d; ++i) {
      t(i) = 0.1 + 5.0 * rng.uniform01();
      p(i) = 0.05 + 0.95 * rng.uniform01();
    }
    DiagonalModel model(t, p, 7);
    ModelMatrices mm = build_model_matrices(model);
    for (Index i = 0; i < d; ++i)
      CHECK(mm.r_diag(i) - mm.s_diag(i) ==
            doctest::Approx(t(i)).epsilon(1e-14));
  }
}

TEST_CASE("SpectralMeasure sorts atoms and exposes exact step CDF") {
  SpectralMeasure mu(vec({3, 1, 2}));
  CHECK(mu.eigenvalues(0) == 1.0);
  CHECK(mu.eigenvalues(2) == 3.0);
  CHECK(mu.atoms() == 3);
  CHECK(mu.cdf(0.5) == 0.0);
  CHECK(mu.cdf(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(mu.cdf_left(1.0) == 0.0);
  CHECK(mu.cdf(3.0) == 1.0);
}

TEST_CASE("DensityCurve CDF interpolation extends flat outside the grid") {
  DensityCurve c;
  c.xs = vec({0, 1, 2});
  c.density = vec({0.5, 0.5, 0.5});
  c.cdf = vec({0, 0.5, 1.0});
  CHECK(c.cdf_at(-5) == 0.0);
  CHECK(c.cdf_at(0.5) == doctest::Approx(0.25));
  CHECK(c.cdf_at(7) == 1.0);
}
