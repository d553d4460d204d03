#ifndef ASTAR_TESTS_SUPPORT_HPP
#define ASTAR_TESTS_SUPPORT_HPP

#include <gtest/gtest.h>

#include "astar/generators.hpp"

namespace astar::testing {

using gen::random_hermitian;
using gen::random_matrix;
using gen::random_unit;
using gen::random_unitary;
using gen::random_weight;
using gen::random_weight_matrix;
using gen::unreduce;

inline ComplexMatrix psd_from(const ComplexMatrix& b) { return (b * b.adjoint()).hermitian_part(); }

}  // namespace astar::testing

#define EXPECT_MATRIX_NEAR(expected, actual, tol)                                             \
  do {                                                                                        \
    const auto& e_ = (expected);                                                              \
    const auto& a_ = (actual);                                                                \
    ASSERT_EQ(e_.size(), a_.size());                                                          \
    for (std::size_t i_ = 0; i_ < e_.size(); ++i_)                                            \
      for (std::size_t j_ = 0; j_ < e_.size(); ++j_) {                                        \
        EXPECT_NEAR(e_(i_, j_).real(), a_(i_, j_).real(), tol) << "at " << i_ << "," << j_;   \
        EXPECT_NEAR(e_(i_, j_).imag(), a_(i_, j_).imag(), tol) << "at " << i_ << "," << j_;   \
      }                                                                                       \
  } while (0)

#endif  // ASTAR_TESTS_SUPPORT_HPP
