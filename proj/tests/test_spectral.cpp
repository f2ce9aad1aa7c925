#include "doctest.h"
#include "mscov/simulate.hpp"
#include "mscov/spectral.hpp"

using namespace mscov;

namespace {
Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Matrix random_symmetric(Index d, SeededRng& rng) {
  Matrix a(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = rng.gaussian();
  return a;
}
}  // namespace

TEST_CASE("symmetric_eigenvalues on simple matrices") {
  CHECK((symmetric_eigenvalues(Matrix::Identity(5, 5)).array() == 1.0).all());

  Matrix d3 = vec({3, -1, 2}).asDiagonal();
  Vector eigs = symmetric_eigenvalues(d3);
  CHECK(eigs(0) == doctest::Approx(-1));
  CHECK(eigs(1) == doctest::Approx(2));
  CHECK(eigs(2) == doctest::Approx(3));

  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  Vector e2 = symmetric_eigenvalues(a);
  CHECK(e2(0) == doctest::Approx(1.0));
  CHECK(e2(1) == doctest::Approx(3.0));
}

TEST_CASE("symmetric_eigenvalues rejects asymmetric input") {
  Matrix a(2, 2);
  a << 0, 1, -1, 0;
  CHECK_THROWS_AS(symmetric_eigenvalues(a), std::invalid_argument);
}

TEST_CASE("trace, Frobenius and Weyl identities on random matrices") {
  SeededRng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix a = random_symmetric(10, rng);
    Matrix b = random_symmetric(10, rng);
    Vector ea = symmetric_eigenvalues(a);
    Vector eb = symmetric_eigenvalues(b);
    Vector eab = symmetric_eigenvalues(a + b);

    CHECK(std::abs(ea.sum() - a.trace()) <= 1e-8 * (1.0 + std::abs(a.trace())));
    CHECK(std::abs(ea.squaredNorm() - a.squaredNorm()) <=
          1e-8 * (1.0 + a.squaredNorm()));

    double spec_b = eb.cwiseAbs().maxCoeff();
    for (Index k = 0; k < 10; ++k)
      CHECK(std::abs(eab(k) - ea(k)) <= spec_b + 1e-10);
  }
}

TEST_CASE("esd basics") {
  SpectralMeasure mu = esd(vec({1, 2}).asDiagonal());
  CHECK(mu.atoms() == 2);
  CHECK(mu.eigenvalues(0) == doctest::Approx(1));
  CHECK(mu.eigenvalues(1) == doctest::Approx(2));

  SpectralMeasure zero = esd(Matrix::Zero(3, 3));
  CHECK(zero.cdf(0.0) == 1.0);
  CHECK(zero.cdf_left(0.0) == 0.0);
}

TEST_CASE("seeded Wishart spectrum stays below the MP edge plus slack") {
  DiagonalModel model(Vector::Ones(50), Vector::Ones(50), 200);
  MaskedSample s = gen_sample(model, EntryDistribution::gaussian(),
                              Vector::Zero(50), 4242);
  SpectralMeasure mu = esd(s.y * s.y.transpose() / 200.0);
  double edge = (1.0 + std::sqrt(0.25)) * (1.0 + std::sqrt(0.25));
  CHECK(mu.eigenvalues.minCoeff() >= 0.0);
  CHECK(mu.eigenvalues.maxCoeff() <= edge + 0.5);
}

TEST_CASE("kolmogorov_distance against reference curves") {
  SpectralMeasure mu(vec({0.0, 1.0}));

  // measure vs its own exact step CDF on a fine grid hugging the steps
  DensityCurve self;
  self.xs = vec({-1, -1e-12, 0, 1 - 1e-12, 1, 2});
  self.density = Vector::Zero(6);
  self.cdf = vec({0, 0, 0.5, 0.5, 1.0, 1.0});
  CHECK(kolmogorov_distance(mu, self) == doctest::Approx(0.0).epsilon(1e-9));

  // single atom at 0 vs point mass at 1
  SpectralMeasure delta0(vec({0.0}));
  DensityCurve delta1;
  delta1.xs = vec({1 - 1e-12, 1});
  delta1.density = Vector::Zero(2);
  delta1.cdf = vec({0.0, 1.0});
  CHECK(kolmogorov_distance(delta0, delta1) == doctest::Approx(1.0));

  // two atoms {0, 1} vs uniform[0, 1]: sup difference is 0.5
  DensityCurve unif;
  unif.xs = vec({0, 1});
  unif.density = vec({1, 1});
  unif.cdf = vec({0, 1});
  CHECK(kolmogorov_distance(mu, unif) == doctest::Approx(0.5));
}

TEST_CASE("levy_distance basics and the d_L <= d_K inequality") {
  SpectralMeasure mu(vec({0.3, 1.7, 2.0}));
  CHECK(levy_distance(mu, mu) == 0.0);

  // two point masses at distance eps: Levy distance is eps for eps <= 1
  for (double eps : {0.1, 0.5, 0.9}) {
    SpectralMeasure a(vec({0.0}));
    SpectralMeasure b(vec({eps}));
    CHECK(levy_distance(a, b) == doctest::Approx(eps).epsilon(1e-6));
  }

  SeededRng rng(21);
  for (int rep = 0; rep < 25; ++rep) {
    Index d = 1 + static_cast<Index>(rng.next_bits() % 12);
    Vector ea(d), eb(d);
    for (Index i = 0; i < d; ++i) {
      ea(i) = 3.0 * rng.gaussian();
      eb(i) = 3.0 * rng.gaussian();
    }
    SpectralMeasure a(ea), b(eb);
    double dl = levy_distance(a, b);
    double dk = kolmogorov_distance(a, b);
    CHECK(dl <= dk + 1e-8);
  }
}

TEST_CASE("histogram masses and the right-closed last bin") {
  SpectralMeasure mu(vec({0.0, 1.0}));
  Histogram h = histogram(mu, 2, 0.0, 1.0);
  CHECK(h.masses(0) == doctest::Approx(0.5));
  CHECK(h.masses(1) == doctest::Approx(0.5));

  SpectralMeasure same(vec({2.0, 2.0, 2.0}));
  Histogram hs = histogram(same, 4, 0.0, 4.0);
  CHECK(hs.masses.sum() == doctest::Approx(1.0));
  CHECK((hs.masses.array() > 0).count() == 1);
}

TEST_CASE("histogram matches a counting-loop oracle on a seeded case") {
  SeededRng rng(2718);
  Vector eigs(40);
  for (Index i = 0; i < 40; ++i) eigs(i) = rng.gaussian();
  SpectralMeasure mu(eigs);
  const Index bins = 7;
  const double lo = -3.0, hi = 3.0;
  Histogram h = histogram(mu, bins, lo, hi);

  Vector oracle = Vector::Zero(bins);
  const double width = (hi - lo) / bins;
  for (Index i = 0; i < 40; ++i) {
    double x = mu.eigenvalues(i);
    if (x < lo || x > hi) continue;
    Index b = std::min<Index>(bins - 1, static_cast<Index>((x - lo) / width));
    oracle(b) += 1.0 / 40.0;
  }
  CHECK((h.masses - oracle).cwiseAbs().maxCoeff() == 0.0);
}
