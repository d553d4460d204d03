#include <gtest/gtest.h>

#include <cmath>

#include "astar/weight.hpp"
#include "support.hpp"

using namespace astar;
namespace t = astar::testing;

namespace {

const double r2 = std::sqrt(2.0);

ComplexMatrix e12() { return ComplexMatrix::from_rows({{0, 1}, {0, 0}}); }
ComplexMatrix selfadjoint_example() { return ComplexMatrix::from_rows({{0, 0.5}, {1, 0}}); }
Weight diag21() { return validate_weight(ComplexMatrix::diagonal({2.0, 1.0})); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ValidateWeight, Diag21) {
  const Weight w = diag21();
  EXPECT_DOUBLE_EQ(w.min_eig(), 1.0);
  EXPECT_DOUBLE_EQ(w.max_eig(), 2.0);
  EXPECT_MATRIX_NEAR(ComplexMatrix::diagonal({r2, 1.0}), w.sqrt_a(), 1e-15);
  EXPECT_MATRIX_NEAR(ComplexMatrix::diagonal({1.0 / r2, 1.0}), w.inv_sqrt_a(), 1e-15);
  EXPECT_MATRIX_NEAR(ComplexMatrix::diagonal({0.5, 1.0}), w.inv_a(), 1e-15);
  EXPECT_TRUE(w.warnings().empty());
}

TEST(ValidateWeight, Identity) {
  const Weight w = validate_weight(ComplexMatrix::identity(3));
  EXPECT_MATRIX_NEAR(ComplexMatrix::identity(3), w.sqrt_a(), 1e-15);
  EXPECT_MATRIX_NEAR(ComplexMatrix::identity(3), w.inv_a(), 1e-15);
}

TEST(ValidateWeight, Rejections) {
  EXPECT_EQ(code_of([] { validate_weight(ComplexMatrix::diagonal({1.0, 1e-12})); }), ErrorCode::NotPositiveDefinite);
  EXPECT_EQ(code_of([] { validate_weight(ComplexMatrix::diagonal({1.0, -1.0})); }), ErrorCode::NotPositiveDefinite);
  EXPECT_EQ(code_of([] { validate_weight(e12()); }), ErrorCode::NotHermitian);
}

TEST(ValidateWeight, IllConditionedWarns) {
  const Weight w = validate_weight(ComplexMatrix::diagonal({1.0, 1e-11}), 1e-12);
  ASSERT_EQ(w.warnings().size(), 1u);
}

TEST(Reduce, Examples) {
  const Weight w = diag21();
  EXPECT_MATRIX_NEAR(ComplexMatrix::from_rows({{0, r2}, {0, 0}}), reduce(w, e12()), 1e-15);
  const ComplexMatrix y = reduce(w, selfadjoint_example());
  EXPECT_MATRIX_NEAR(ComplexMatrix::from_rows({{0, 1 / r2}, {1 / r2, 0}}), y, 1e-15);
  const ComplexMatrix x = ComplexMatrix::from_rows({{1, Complex(2, 1)}, {3, -4}});
  EXPECT_MATRIX_NEAR(x, reduce(validate_weight(ComplexMatrix::identity(2)), x), 0.0);
  EXPECT_EQ(code_of([&] { reduce(w, ComplexMatrix::identity(3)); }), ErrorCode::DimensionMismatch);
}

TEST(AAdjoint, Examples) {
  const Weight w = diag21();
  EXPECT_MATRIX_NEAR(ComplexMatrix::from_rows({{0, 0}, {2, 0}}), a_adjoint(w, e12()), 1e-15);
  EXPECT_MATRIX_NEAR(selfadjoint_example(), a_adjoint(w, selfadjoint_example()), 1e-15);
  const ComplexMatrix x = ComplexMatrix::from_rows({{1, Complex(2, 1)}, {3, Complex(0, -4)}});
  EXPECT_MATRIX_NEAR(x.adjoint(), a_adjoint(validate_weight(ComplexMatrix::identity(2)), x), 1e-15);
}

TEST(Predicates, Examples) {
  const Weight w = diag21();
  const Weight id = validate_weight(ComplexMatrix::identity(2));
  EXPECT_TRUE(is_a_selfadjoint(w, selfadjoint_example()));
  EXPECT_FALSE(is_a_selfadjoint(id, e12()));
  EXPECT_TRUE(is_a_selfadjoint(w, ComplexMatrix(2)));
  EXPECT_TRUE(is_a_positive(w, w.inv_a()));
  EXPECT_FALSE(is_a_positive(w, selfadjoint_example()));
  EXPECT_TRUE(is_a_positive(w, ComplexMatrix(2)));
}

TEST(StateFromUnitVector, Examples) {
  const Weight id = validate_weight(ComplexMatrix::identity(2));
  const StateWitness s1 = state_from_unit_vector(id, {1.0, 0.0});
  EXPECT_MATRIX_NEAR(ComplexMatrix::diagonal({1.0, 0.0}), s1.h, 0.0);
  const ComplexMatrix z = ComplexMatrix::from_rows({{Complex(3, 1), 2}, {5, 7}});
  EXPECT_EQ(s1.evaluate(z), Complex(3, 1));

  const Weight w = diag21();
  const StateWitness s2 = state_from_unit_vector(w, {1.0, 0.0});
  EXPECT_MATRIX_NEAR(ComplexMatrix::diagonal({0.5, 0.0}), s2.h, 1e-15);
  EXPECT_NEAR(s2.trace_ha, 1.0, 1e-15);
  const StateWitness s3 = state_from_unit_vector(w, {0.0, 1.0});
  EXPECT_MATRIX_NEAR(ComplexMatrix::diagonal({0.0, 1.0}), s3.h, 1e-15);
  EXPECT_NEAR(s3.trace_ha, 1.0, 1e-15);

  EXPECT_EQ(code_of([&] { state_from_unit_vector(w, {1.0, 1.0}); }), ErrorCode::NotUnitVector);
}

TEST(StateFromUnitVector, PhaseFixed) {
  const Weight id = validate_weight(ComplexMatrix::identity(2));
  const Complex ph = std::polar(1.0, 0.7);
  const StateWitness s = state_from_unit_vector(id, {ph * 0.6, ph * 0.8});
  EXPECT_EQ(s.u[0].imag(), 0.0);
  EXPECT_NEAR(s.u[0].real(), 0.6, 1e-15);
  EXPECT_NEAR(std::abs(s.u[1] - 0.8), 0.0, 1e-15);
}

// Properties on random weights.

TEST(WeightProperties, AdjointIdentityAndInvolution) {
  std::mt19937_64 rng(101);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 6;
    const Weight w = t::random_weight(n, rng, 0.05, 20.0);
    const ComplexMatrix x = t::random_matrix(n, rng);
    const ComplexMatrix s = a_adjoint(w, x);
    EXPECT_LE((w.a() * s - x.adjoint() * w.a()).frobenius_norm(), 1e-9 * w.condition() * x.frobenius_norm());
    EXPECT_LE((a_adjoint(w, s) - x).frobenius_norm(), 1e-8);
  }
}

TEST(WeightProperties, ReductionIsMultiplicative) {
  std::mt19937_64 rng(102);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 6;
    const Weight w = t::random_weight(n, rng);
    const ComplexMatrix x = t::random_matrix(n, rng);
    const ComplexMatrix z = t::random_matrix(n, rng);
    EXPECT_LE((reduce(w, x * z) - reduce(w, x) * reduce(w, z)).frobenius_norm(), 1e-9 * (1.0 + (x * z).frobenius_norm()));
  }
}

TEST(WeightProperties, SelfadjointConstructionsAndAdjointFixedPoints) {
  std::mt19937_64 rng(103);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 1 + k % 5;
    const Weight w = t::random_weight(n, rng);
    const ComplexMatrix x = gen::a_selfadjoint(w, rng);
    EXPECT_TRUE(is_a_selfadjoint(w, x));
    EXPECT_LE(rel_distance(a_adjoint(w, x), x), 1e-10);
    const ComplexMatrix p = w.inv_a() * t::psd_from(t::random_matrix(n, rng));
    EXPECT_TRUE(is_a_positive(w, p));
    // x = x1 + i x2 with a-selfadjoint parts.
    const ComplexMatrix g = t::random_matrix(n, rng);
    const ComplexMatrix gs = a_adjoint(w, g);
    const ComplexMatrix x1 = 0.5 * (g + gs);
    const ComplexMatrix x2 = Complex(0.0, -0.5) * (g - gs);
    EXPECT_TRUE(is_a_selfadjoint(w, x1, 1e-9));
    EXPECT_TRUE(is_a_selfadjoint(w, x2, 1e-9));
    EXPECT_LE(rel_distance(x1 + Complex(0.0, 1.0) * x2, g), 1e-12);
  }
}

TEST(WeightProperties, StatesArePositiveNormalizedAndCauchySchwarz) {
  std::mt19937_64 rng(104);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 5;
    const Weight w = t::random_weight(n, rng);
    const StateWitness s = state_from_unit_vector(w, t::random_unit(n, rng));
    EXPECT_NEAR(s.trace_ha, 1.0, 1e-10);
    EXPECT_NEAR(s.evaluate(w.a()).real(), 1.0, 1e-10);
    const ComplexMatrix p = t::psd_from(t::random_matrix(n, rng));
    EXPECT_GE(s.evaluate(p).real(), -1e-10);
    EXPECT_NEAR(s.evaluate(p).imag(), 0.0, 1e-10 * (1.0 + p.frobenius_norm()));

    const Vector h_vec = w.inv_sqrt_a() * std::span<const Complex>(s.u);
    const ComplexMatrix z = t::random_matrix(n, rng);
    EXPECT_LE(std::abs(s.evaluate(z) - quadratic_form(z, h_vec)), 1e-10 * (1.0 + z.frobenius_norm()));

    const ComplexMatrix x = t::random_matrix(n, rng);
    const ComplexMatrix y = t::random_matrix(n, rng);
    const Complex xy = s.evaluate(x.adjoint() * w.a() * y);
    const double xx = s.evaluate(x.adjoint() * w.a() * x).real();
    const double yy = s.evaluate(y.adjoint() * w.a() * y).real();
    EXPECT_LE(std::norm(xy), xx * yy + 1e-8);
  }
}
