#ifndef ASTAR_LINALG_HPP
#define ASTAR_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "astar/matrix.hpp"

namespace astar {

/// Spectral decomposition H = V diag(eigenvalues) V* of a Hermitian matrix.
/// Eigenvalues are ascending; columns of V are the matching unit eigenvectors.
struct HermEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  Vector vector(std::size_t k) const { return column(eigenvectors, k); }
  Vector top_vector() const { return vector(eigenvalues.size() - 1); }
};

namespace linalg {

inline constexpr double hermitian_tol = 1e-10;
inline constexpr double jacobi_rel_threshold = 1e-14;
inline constexpr int jacobi_max_sweeps = 100;
inline constexpr double psd_clamp = 1e-10;

inline bool is_hermitian(const ComplexMatrix& h, double tol = hermitian_tol) {
  return (h - h.adjoint()).frobenius_norm() <= tol * (1.0 + h.frobenius_norm());
}

/// V diag(f(eigenvalues)) V*.
inline ComplexMatrix spectral_map(const HermEig& eig, const std::function<double(double)>& f) {
  const auto& v = eig.eigenvectors;
  const std::size_t n = v.size();
  ComplexMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = v(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(v(j, k));
    }
  }
  return r;
}

}  // namespace linalg

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary and then applies the real symmetric Jacobi rotation. Sweeps stop
/// once the off-diagonal Frobenius norm drops below 1e-14 ||H||_F.
/// Degenerate eigenvalues keep their sweep order (stable sort), and every
/// eigenvector is phase-fixed so its first non-negligible entry is real
/// positive; equal input bits give equal output bits.
inline HermEig herm_eig(const ComplexMatrix& h) {
  if (!linalg::is_hermitian(h)) throw Error(ErrorCode::NotHermitian, "herm_eig input is not Hermitian");
  const std::size_t n = h.size();
  ComplexMatrix a = h.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = scale == 0.0 || n == 1;
  for (int sweep = 0; !converged && sweep < linalg::jacobi_max_sweeps; ++sweep) {
    if (off_norm() <= linalg::jacobi_rel_threshold * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = D R with D = diag(1, conj(phase)) on (p, q) and R = [[c, s], [-s, c]].
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // a <- a J
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // a <- J* a
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // v <- v J
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        a(p, q) = Complex{};
        a(q, p) = Complex{};
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (!converged && off_norm() > linalg::jacobi_rel_threshold * scale) {
    throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEig out{std::vector<double>(n), ComplexMatrix(n)};
  Vector col(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, order[k]);
    fix_phase(col);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = col[i];
  }
  return out;
}

/// Positive square root of a psd matrix. Eigenvalues in (-1e-10, 0) are
/// treated as zero; anything more negative is rejected.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& p) {
  const HermEig eig = herm_eig(p);
  if (eig.min() < -linalg::psd_clamp) {
    throw Error(ErrorCode::NotPsd, "eigenvalue " + std::to_string(eig.min()) + " below -1e-10");
  }
  return linalg::spectral_map(eig, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
}

/// Inverse of a Hermitian positive definite matrix whose smallest eigenvalue
/// exceeds eps_pd.
inline ComplexMatrix herm_inverse(const ComplexMatrix& p, double eps_pd) {
  const HermEig eig = herm_eig(p);
  if (eig.min() <= eps_pd) {
    throw Error(ErrorCode::NotInvertible, "smallest eigenvalue " + std::to_string(eig.min()) + " <= eps_pd");
  }
  return linalg::spectral_map(eig, [](double l) { return 1.0 / l; });
}

}  // namespace astar

#endif  // ASTAR_LINALG_HPP
