#ifndef ASTAR_WEIGHT_HPP
#define ASTAR_WEIGHT_HPP

#include <cmath>
#include <string>
#include <vector>

#include "astar/linalg.hpp"
#include "astar/matrix.hpp"

namespace astar {

inline constexpr double default_eps_pd = 1e-8;
inline constexpr double default_tol = 1e-8;
inline constexpr double condition_warning = 1e10;

/// A validated positive invertible weight a together with its cached
/// functional calculus. Immutable after construction.
class Weight {
 public:
  const ComplexMatrix& a() const noexcept { return a_; }
  const ComplexMatrix& sqrt_a() const noexcept { return sqrt_a_; }
  const ComplexMatrix& inv_sqrt_a() const noexcept { return inv_sqrt_a_; }
  const ComplexMatrix& inv_a() const noexcept { return inv_a_; }
  double min_eig() const noexcept { return min_eig_; }
  double max_eig() const noexcept { return max_eig_; }
  double eps_pd() const noexcept { return eps_pd_; }
  double condition() const noexcept { return max_eig_ / min_eig_; }
  std::size_t size() const noexcept { return a_.size(); }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  friend Weight validate_weight(const ComplexMatrix& a, double eps_pd);

 private:
  Weight() = default;

  ComplexMatrix a_, sqrt_a_, inv_sqrt_a_, inv_a_;
  double min_eig_ = 1.0;
  double max_eig_ = 1.0;
  double eps_pd_ = default_eps_pd;
  std::vector<std::string> warnings_;
};

/// Checks that a is Hermitian with smallest eigenvalue above eps_pd and
/// builds a^{1/2}, a^{-1/2} and a^{-1} from one eigendecomposition.
inline Weight validate_weight(const ComplexMatrix& a, double eps_pd = default_eps_pd) {
  if (!linalg::is_hermitian(a)) throw Error(ErrorCode::NotHermitian, "weight is not Hermitian");
  const HermEig eig = herm_eig(a);
  if (eig.min() <= eps_pd) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "weight has eigenvalue " + std::to_string(eig.min()) + " <= eps_pd");
  }
  Weight w;
  w.a_ = a.hermitian_part();
  w.sqrt_a_ = linalg::spectral_map(eig, [](double l) { return std::sqrt(l); });
  w.inv_sqrt_a_ = linalg::spectral_map(eig, [](double l) { return 1.0 / std::sqrt(l); });
  w.inv_a_ = linalg::spectral_map(eig, [](double l) { return 1.0 / l; });
  w.min_eig_ = eig.min();
  w.max_eig_ = eig.max();
  w.eps_pd_ = eps_pd;
  if (w.condition() > condition_warning) {
    w.warnings_.push_back("weight condition number " + std::to_string(w.condition()) + " exceeds 1e10");
  }
  return w;
}

inline void require_dims(const Weight& w, const ComplexMatrix& x) {
  if (x.size() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "weight is " + std::to_string(w.size()) + "x" + std::to_string(w.size()) + ", element is " +
                    std::to_string(x.size()) + "x" + std::to_string(x.size()));
  }
}

/// y = a^{1/2} x a^{-1/2}. Every weighted quantity of x equals the
/// corresponding unweighted quantity of y on the standard unit sphere.
inline ComplexMatrix reduce(const Weight& w, const ComplexMatrix& x) {
  require_dims(w, x);
  return w.sqrt_a() * x * w.inv_sqrt_a();
}

/// The unique x# with a x# = x* a, i.e. a^{-1} x* a.
inline ComplexMatrix a_adjoint(const Weight& w, const ComplexMatrix& x) {
  require_dims(w, x);
  return w.inv_a() * x.adjoint() * w.a();
}

inline bool is_a_selfadjoint(const Weight& w, const ComplexMatrix& x, double tol = default_tol) {
  require_dims(w, x);
  const ComplexMatrix ax = w.a() * x;
  return (ax - x.adjoint() * w.a()).frobenius_norm() <= tol * (1.0 + ax.frobenius_norm());
}

/// a x is Hermitian within tol and its smallest eigenvalue is >= -tol.
inline bool is_a_positive(const Weight& w, const ComplexMatrix& x, double tol = default_tol) {
  if (!is_a_selfadjoint(w, x, tol)) return false;
  const ComplexMatrix ax = (w.a() * x).hermitian_part();
  return herm_eig(ax).min() >= -tol;
}

/// A vector state phi(z) = Tr(h z) in S_a, h = (a^{-1/2} u)(a^{-1/2} u)*.
struct StateWitness {
  ComplexMatrix h;
  Vector u;
  double trace_ha = 0.0;

  /// phi(z) = Tr(h z)
  Complex evaluate(const ComplexMatrix& z) const {
    h.require_same(z);
    Complex s{};
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += h(i, j) * z(j, i);
    return s;
  }
};

inline constexpr double unit_vector_tol = 1e-10;

inline StateWitness state_from_unit_vector(const Weight& w, Vector u) {
  if (u.size() != w.size()) throw Error(ErrorCode::DimensionMismatch, "state vector length mismatch");
  if (std::abs(norm2(u) - 1.0) > unit_vector_tol) {
    throw Error(ErrorCode::NotUnitVector, "||u|| = " + std::to_string(norm2(u)));
  }
  fix_phase(u);
  const Vector hv = w.inv_sqrt_a() * u;
  StateWitness s{outer(hv, hv), std::move(u), 0.0};
  s.trace_ha = s.evaluate(w.a()).real();
  return s;
}

}  // namespace astar

#endif  // ASTAR_WEIGHT_HPP
