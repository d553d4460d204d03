#include <gtest/gtest.h>

#include <cmath>

#include "astar/geometry.hpp"
#include "support.hpp"

using namespace astar;
namespace t = astar::testing;

namespace {

const double r2 = std::sqrt(2.0);

ComplexMatrix e12() { return ComplexMatrix::from_rows({{0, 1}, {0, 0}}); }
ComplexMatrix e21() { return ComplexMatrix::from_rows({{0, 0}, {1, 0}}); }
ComplexMatrix selfadjoint_example() { return ComplexMatrix::from_rows({{0, 0.5}, {1, 0}}); }
Weight diag21() { return validate_weight(ComplexMatrix::diagonal({2.0, 1.0})); }
Weight eye(std::size_t n) { return validate_weight(ComplexMatrix::identity(n)); }

void expect_certificate(const ParallelResult& r) {
  ASSERT_TRUE(r.parallel);
  const double tol = 1e-5 * (1.0 + r.norm_x * r.norm_y);
  EXPECT_LE(r.cert.residual_pairing, tol);
  EXPECT_LE(r.cert.residual_x, tol);
  EXPECT_LE(r.cert.residual_y, tol);
}

void expect_theta_witnesses(const OrthoResult& r) {
  ASSERT_TRUE(r.orthogonal);
  ASSERT_EQ(r.theta_witnesses.size(), 64u);
  for (const auto& tw : r.theta_witnesses) {
    EXPECT_LE(tw.residual_x, 1e-5);
    EXPECT_GE(tw.signed_real, -1e-5) << "theta " << tw.theta;
  }
}

}  // namespace

TEST(IsParallel, SelfIsParallel) {
  std::mt19937_64 rng(1);
  const Weight w = t::random_weight(3, rng);
  const ComplexMatrix x = t::random_matrix(3, rng);
  const ParallelResult r = is_parallel(w, 0.4, x, x);
  EXPECT_TRUE(r.parallel);
  EXPECT_NEAR(std::abs(r.mu - 1.0), 0.0, 1e-9);
  EXPECT_LE(r.defect, 1e-9);
  expect_certificate(r);
}

TEST(IsParallel, NormaloidWithIdentity) {
  for (double l : {0.0, 0.3, 1.0}) {
    const ParallelResult r = is_parallel(diag21(), l, selfadjoint_example(), ComplexMatrix::identity(2));
    EXPECT_TRUE(r.parallel) << l;
    EXPECT_NEAR(std::abs(r.mu - 1.0), 0.0, 1e-8);
    expect_certificate(r);
    EXPECT_NEAR(al_norm_of_sum(diag21(), l, selfadjoint_example(), ComplexMatrix::identity(2), r.mu).value,
                1.0 + 1.0 / r2, 1e-9);
  }
}

TEST(IsParallel, OrthogonalProjectionsAreNot) {
  const ParallelResult r = is_parallel(eye(2), 1.0, ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0}));
  EXPECT_FALSE(r.parallel);
  EXPECT_NEAR(r.defect, 1.0, 1e-9);
}

TEST(IsParallel, ZeroIsParallelToEverything) {
  EXPECT_TRUE(is_parallel(diag21(), 0.5, ComplexMatrix(2), e12()).parallel);
  EXPECT_TRUE(is_parallel(diag21(), 0.5, e12(), ComplexMatrix(2)).parallel);
}

TEST(IsVradParallel, Examples) {
  std::mt19937_64 rng(2);
  const Weight w = t::random_weight(2, rng);
  const ComplexMatrix x = t::random_matrix(2, rng);
  EXPECT_TRUE(is_vrad_parallel(w, x, x).parallel);
  EXPECT_TRUE(is_vrad_parallel(diag21(), selfadjoint_example(), ComplexMatrix::identity(2)).parallel);
  // x + y is the swap matrix with numerical radius 1 = 1/2 + 1/2.
  const ParallelResult r = is_vrad_parallel(eye(2), e12(), e21());
  EXPECT_TRUE(r.parallel);
  EXPECT_NEAR(std::abs(r.mu - 1.0), 0.0, 1e-8);
  expect_certificate(r);
}

TEST(IsParallel, HandMadeCertificateConfirmed) {
  // x = diag(2, i/2), y = diag(3i, 1): the state e1 gives pairing conj(2) * 3i
  // = conj(mu) * 2 * 3 with mu = -i.
  const ComplexMatrix x = ComplexMatrix::from_rows({{2, 0}, {0, Complex(0, 0.5)}});
  const ComplexMatrix y = ComplexMatrix::from_rows({{Complex(0, 3), 0}, {0, 1}});
  const StateWitness s = state_from_unit_vector(eye(2), {1.0, 0.0});
  for (double l : {0.0, 0.6, 1.0}) {
    EXPECT_LE(std::abs(state_pairing(eye(2), l, x, y, s) - std::conj(Complex(0, -1)) * 6.0), 1e-15);
    const ParallelResult r = is_parallel(eye(2), l, x, y);
    EXPECT_TRUE(r.parallel);
    EXPECT_NEAR(std::abs(r.mu - Complex(0, -1)), 0.0, 1e-8);
  }
}

TEST(IsOrthogonal, Examples) {
  for (double l : {0.0, 0.5, 1.0}) {
    const OrthoResult r = is_orthogonal(eye(2), l, ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0}));
    EXPECT_TRUE(r.orthogonal);
    EXPECT_NEAR(r.min_value, 1.0, 1e-12);
    EXPECT_EQ(r.argmin_xi, Complex{});
    expect_theta_witnesses(r);
  }
  std::mt19937_64 rng(3);
  const Weight w = t::random_weight(3, rng);
  const ComplexMatrix x = t::random_matrix(3, rng);
  const OrthoResult self = is_orthogonal(w, 0.3, x, x);
  EXPECT_FALSE(self.orthogonal);
  EXPECT_NEAR(std::abs(self.argmin_xi + 1.0), 0.0, 1e-6);
  EXPECT_LE(self.min_value, 1e-6 * self.norm_x);
}

TEST(IsOrthogonal, WeightedNilpotents) {
  // a = diag(2, 1), lambda = 1: reduced elements sqrt2 e12 and e21 / sqrt2.
  // ||sqrt2 e12 + xi e21 / sqrt2|| = max(sqrt2, |xi| / sqrt2) >= sqrt2.
  const OrthoResult r = is_orthogonal(diag21(), 1.0, e12(), e21());
  EXPECT_TRUE(r.orthogonal);
  EXPECT_NEAR(r.min_value, r2, 1e-9);
  expect_theta_witnesses(r);
}

TEST(IsOrthogonal, ZeroCases) {
  EXPECT_TRUE(is_orthogonal(diag21(), 0.5, ComplexMatrix(2), e12()).orthogonal);
  EXPECT_TRUE(is_orthogonal(diag21(), 0.5, e12(), ComplexMatrix(2)).orthogonal);
}

TEST(VradPositiveOrthogonality, Examples) {
  const Weight id = eye(2);
  const PositiveOrthoResult r1 = vrad_positive_orthogonality(id, ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0}));
  ASSERT_TRUE(r1.orthogonal);
  EXPECT_MATRIX_NEAR(ComplexMatrix::diagonal({1.0, 0.0}), r1.witness->h, 1e-14);
  EXPECT_FALSE(vrad_positive_orthogonality(id, ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::identity(2)).orthogonal);
  const Weight w = diag21();
  EXPECT_TRUE(vrad_positive_orthogonality(w, w.inv_a() * ComplexMatrix::diagonal({1.0, 0.0}),
                                          w.inv_a() * ComplexMatrix::diagonal({0.0, 1.0}))
                  .orthogonal);
  EXPECT_THROW(vrad_positive_orthogonality(w, selfadjoint_example(), w.inv_a()), Error);
}

TEST(VradPositiveOrthogonality, AgreesWithGeneralPathAtLambdaZero) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 8; ++k) {
    const std::size_t n = 2 + k % 2;
    const Weight w = t::random_weight(n, rng);
    const ComplexMatrix u = t::random_unitary(n, rng);
    // a-positive elements with known top eigenspaces in reduced form.
    std::vector<double> dx(n), dy(n);
    for (std::size_t i = 0; i < n; ++i) {
      dx[i] = i == 0 ? 2.0 : gen::uniform(rng, 0.0, 1.0);
      dy[i] = gen::uniform(rng, 0.1, 1.0);
    }
    if (k % 2 == 0) dy[0] = 0.0;  // kernel of y contains the top vector of x
    const ComplexMatrix xr = u * ComplexMatrix::diagonal(dx) * u.adjoint();
    const ComplexMatrix yr = u * ComplexMatrix::diagonal(dy) * u.adjoint();
    const ComplexMatrix x = t::unreduce(w, xr);
    const ComplexMatrix y = t::unreduce(w, yr);
    const bool positive = vrad_positive_orthogonality(w, x, y).orthogonal;
    EXPECT_EQ(positive, k % 2 == 0);
    EXPECT_EQ(positive, is_orthogonal(w, 0.0, x, y).orthogonal);
  }
}

TEST(ParallelismImpliesOrthogonality, Examples) {
  std::mt19937_64 rng(5);
  const Weight w = t::random_weight(2, rng);
  const ComplexMatrix x = t::random_matrix(2, rng);
  const ParallelOrthoReport same = parallelism_implies_orthogonality_check(w, 0.5, x, x);
  EXPECT_TRUE(same.holds);
  EXPECT_TRUE(same.z.is_zero());

  const ParallelOrthoReport r =
      parallelism_implies_orthogonality_check(diag21(), 0.7, selfadjoint_example(), ComplexMatrix::identity(2));
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.defect1, 1e-5);
  EXPECT_LE(r.defect2, 1e-5);
  EXPECT_MATRIX_NEAR(selfadjoint_example() - (1.0 / r2) * ComplexMatrix::identity(2), r.z, 1e-9);

  EXPECT_THROW(parallelism_implies_orthogonality_check(eye(2), 1.0, ComplexMatrix::diagonal({1.0, 0.0}),
                                                       ComplexMatrix::diagonal({0.0, 1.0})),
               Error);
}

TEST(ParallelismImpliesOrthogonality, ConstructedPairsWithComplexMu) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 6; ++k) {
    const Weight w = t::random_weight(2 + k % 2, rng);
    const auto [x, y] = gen::parallel_pair(w, rng);
    const double l = gen::uniform(rng, 0.0, 1.0);
    const ParallelOrthoReport r = parallelism_implies_orthogonality_check(w, l, x, y);
    EXPECT_TRUE(r.holds);
    EXPECT_LE(std::max(r.defect1, r.defect2), 1e-5);
  }
}

TEST(NormaloidEquivalences, Examples) {
  std::mt19937_64 rng(7);
  const ComplexMatrix h = t::random_hermitian(3, rng);
  const NormaloidReport a = normaloid_equivalences(eye(3), 0.4, h);
  EXPECT_TRUE(a.parallel_to_identity && a.normaloid && a.parallel_to_adjoint);
  const NormaloidReport b = normaloid_equivalences(diag21(), 0.4, e12());
  EXPECT_FALSE(b.parallel_to_identity || b.normaloid || b.parallel_to_adjoint);
  EXPECT_NEAR(b.numradius, r2 / 2.0, 1e-12);
  EXPECT_NEAR(b.norm_a, r2, 1e-12);
  const NormaloidReport c = normaloid_equivalences(diag21(), 0.9, ComplexMatrix::identity(2));
  EXPECT_TRUE(c.parallel_to_identity && c.normaloid && c.parallel_to_adjoint);
}

// Properties on random and constructed pairs.

TEST(GeometryProperties, ParallelSymmetryWithConjugateMu) {
  std::mt19937_64 rng(301);
  for (int k = 0; k < 6; ++k) {
    const Weight w = t::random_weight(2 + k % 2, rng);
    const auto [x, y] = k % 2 ? gen::parallel_pair(w, rng) : std::pair{t::random_matrix(w.size(), rng), t::random_matrix(w.size(), rng)};
    const double l = gen::uniform(rng, 0.0, 1.0);
    const ParallelResult xy = is_parallel(w, l, x, y);
    const ParallelResult yx = is_parallel(w, l, y, x);
    EXPECT_EQ(xy.parallel, yx.parallel);
    EXPECT_EQ(xy.parallel, k % 2 == 1);
    if (xy.parallel) {
      EXPECT_NEAR(std::abs(yx.mu - std::conj(xy.mu)), 0.0, 1e-6);
      expect_certificate(xy);
    }
  }
}

TEST(GeometryProperties, ConstructedOrthogonalPairsCarryWitnesses) {
  std::mt19937_64 rng(302);
  for (int k = 0; k < 6; ++k) {
    const Weight w = t::random_weight(2 + k % 3, rng);
    const auto [x, y] = gen::orthogonal_pair(w, rng);
    const double l = gen::uniform(rng, 0.0, 1.0);
    const OrthoResult r = is_orthogonal(w, l, x, y);
    expect_theta_witnesses(r);
    EXPECT_LE(r.min_value, r.norm_x + 1e-9);
    EXPECT_TRUE(r.warnings.empty());
  }
}

TEST(GeometryProperties, HomogeneityAndAdjointStability) {
  std::mt19937_64 rng(303);
  for (int k = 0; k < 6; ++k) {
    const Weight w = t::random_weight(2, rng);
    const auto [x, y] = k % 2 ? gen::orthogonal_pair(w, rng) : gen::parallel_pair(w, rng);
    const double l = gen::uniform(rng, 0.0, 1.0);
    const bool par = is_parallel(w, l, x, y).parallel;
    const bool orth = is_orthogonal(w, l, x, y).orthogonal;
    EXPECT_EQ(par, k % 2 == 0);
    EXPECT_EQ(orth, k % 2 == 1);
    EXPECT_EQ(par, is_parallel(w, l, -2.5 * x, 0.3 * y).parallel);
    EXPECT_EQ(par, is_parallel(w, l, a_adjoint(w, x), a_adjoint(w, y)).parallel);
    EXPECT_EQ(orth, is_orthogonal(w, l, Complex(0.3, -2.0) * x, Complex(-1.0, 4.0) * y).orthogonal);
    EXPECT_EQ(orth, is_orthogonal(w, l, a_adjoint(w, x), a_adjoint(w, y)).orthogonal);
  }
}

TEST(GeometryProperties, NormaloidPairsParallelForAllLambda) {
  std::mt19937_64 rng(304);
  int tested = 0;
  for (int k = 0; k < 10 && tested < 3; ++k) {
    const Weight w = t::random_weight(2, rng);
    const ComplexMatrix x = gen::normaloid(w, rng);
    const ComplexMatrix y = gen::normaloid(w, rng);
    if (!is_vrad_parallel(w, x, y).parallel) continue;
    ++tested;
    for (double l : {0.25, 0.75, 1.0}) EXPECT_TRUE(is_parallel(w, l, x, y).parallel);
  }
  // Commuting normal elements sharing the top eigenvector are v-parallel.
  const Weight w = diag21();
  const ComplexMatrix x = t::unreduce(w, ComplexMatrix::diagonal({3.0, 1.0}));
  const ComplexMatrix y = t::unreduce(w, ComplexMatrix::diagonal({2.0, -1.0}));
  ASSERT_TRUE(is_vrad_parallel(w, x, y).parallel);
  for (double l : {0.25, 0.75, 1.0}) EXPECT_TRUE(is_parallel(w, l, x, y).parallel);
}

TEST(GeometryProperties, SpecialLambdasAgreeWithGeneralPath) {
  // At lambda = 1 the pairing is phi(x* a y); at lambda = 0 it is
  // conj(phi(ax)) phi(ay).
  std::mt19937_64 rng(305);
  const Weight w = t::random_weight(3, rng);
  const auto [x, y] = gen::orthogonal_pair(w, rng);
  for (double l : {0.0, 1.0}) {
    const OrthoResult r = is_orthogonal(w, l, x, y);
    ASSERT_TRUE(r.orthogonal);
    for (const auto& tw : r.theta_witnesses) {
      const Complex special = l == 1.0 ? tw.witness.evaluate(x.adjoint() * w.a() * y)
                                       : std::conj(tw.witness.evaluate(w.a() * x)) * tw.witness.evaluate(w.a() * y);
      EXPECT_NEAR((std::polar(1.0, tw.theta) * special).real(), tw.signed_real, 1e-9);
      EXPECT_NEAR(std::abs(special - state_pairing(w, l, x, y, tw.witness)), 0.0, 1e-12);
    }
  }
}
