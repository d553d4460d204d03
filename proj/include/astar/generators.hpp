#ifndef ASTAR_GENERATORS_HPP
#define ASTAR_GENERATORS_HPP

// Random instances with known structure, for property tests and the
// acceptance runner. Structured elements are built in reduced coordinates
// and pulled back through x = a^{-1/2} y a^{1/2}.

#include <cmath>
#include <random>
#include <utility>

#include "astar/linalg.hpp"
#include "astar/weight.hpp"

namespace astar::gen {

inline Complex gaussian(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  ComplexMatrix m(n);
  for (auto& z : m.entries()) z = gaussian(rng, scale);
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  return random_matrix(n, rng).hermitian_part();
}

inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
  return herm_eig(random_hermitian(n, rng)).eigenvectors;
}

inline Vector random_unit(std::size_t n, std::mt19937_64& rng) {
  Vector v(n);
  for (auto& z : v) z = gaussian(rng);
  const double r = norm2(v);
  for (auto& z : v) z /= r;
  return v;
}

/// Positive definite matrix with spectrum drawn from [lo, hi].
inline ComplexMatrix random_weight_matrix(std::size_t n, std::mt19937_64& rng, double lo = 0.3, double hi = 4.0) {
  std::vector<double> d(n);
  for (auto& v : d) v = uniform(rng, lo, hi);
  const ComplexMatrix q = random_unitary(n, rng);
  return (q * ComplexMatrix::diagonal(d) * q.adjoint()).hermitian_part();
}

inline Weight random_weight(std::size_t n, std::mt19937_64& rng, double lo = 0.3, double hi = 4.0) {
  return validate_weight(random_weight_matrix(n, rng, lo, hi));
}

inline ComplexMatrix unreduce(const Weight& w, const ComplexMatrix& y) { return w.inv_sqrt_a() * y * w.sqrt_a(); }

inline double spectral_norm(const ComplexMatrix& m) {
  return std::sqrt(std::max(0.0, herm_eig((m.adjoint() * m).hermitian_part()).max()));
}

/// U [[alpha, 0], [0, B]] U* with ||B|| = ratio |alpha| for an
/// (n-1) x (n-1) random B; u1 = U e1 is then the only norming vector for
/// every lambda when ratio < 1/2.
inline ComplexMatrix peaked(const ComplexMatrix& u, Complex alpha, double ratio, std::mt19937_64& rng) {
  const std::size_t n = u.size();
  ComplexMatrix m(n);
  m(0, 0) = alpha;
  if (n > 1) {
    const ComplexMatrix b = random_matrix(n - 1, rng);
    const double scale = ratio * std::abs(alpha) / spectral_norm(b);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j) m(i, j) = scale * b(i - 1, j - 1);
  }
  return u * m * u.adjoint();
}

/// A pair parallel for every lambda: both reduced elements peak on the same
/// vector u1.
inline std::pair<ComplexMatrix, ComplexMatrix> parallel_pair(const Weight& w, std::mt19937_64& rng) {
  const std::size_t n = w.size();
  const ComplexMatrix u = random_unitary(n, rng);
  const Complex alpha = std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 6.283185307179586));
  const Complex beta = std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 6.283185307179586));
  const ComplexMatrix x = peaked(u, alpha, uniform(rng, 0.1, 0.45), rng);
  const ComplexMatrix y = peaked(u, beta, uniform(rng, 0.1, 0.45), rng);
  return {unreduce(w, x), unreduce(w, y)};
}

/// A pair orthogonal for every lambda: x peaks on u1 alone and u1* y u1 = 0,
/// so the pairing at the unique norming state vanishes.
inline std::pair<ComplexMatrix, ComplexMatrix> orthogonal_pair(const Weight& w, std::mt19937_64& rng) {
  const std::size_t n = w.size();
  const ComplexMatrix u = random_unitary(n, rng);
  const Complex alpha = std::polar(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 6.283185307179586));
  const ComplexMatrix x = peaked(u, alpha, uniform(rng, 0.1, 0.45), rng);
  ComplexMatrix m = random_matrix(n, rng);
  m(0, 0) = Complex{};
  return {unreduce(w, x), unreduce(w, u * m * u.adjoint())};
}

/// a-normaloid element: the reduced element is normal.
inline ComplexMatrix normaloid(const Weight& w, std::mt19937_64& rng) {
  const std::size_t n = w.size();
  const ComplexMatrix u = random_unitary(n, rng);
  ComplexMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = gaussian(rng);
  return unreduce(w, u * d * u.adjoint());
}

/// a-selfadjoint element a^{-1} H.
inline ComplexMatrix a_selfadjoint(const Weight& w, std::mt19937_64& rng) {
  return w.inv_a() * random_hermitian(w.size(), rng);
}

}  // namespace astar::gen

#endif  // ASTAR_GENERATORS_HPP
