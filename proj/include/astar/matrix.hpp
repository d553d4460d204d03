#ifndef ASTAR_MATRIX_HPP
#define ASTAR_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "astar/error.hpp"

namespace astar {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense square complex matrix, row-major.
///
/// Elements of the matrix algebra M_n(C) for 1 <= n <= 64. All entries are
/// required to be finite; construction from non-finite data throws.
class ComplexMatrix {
 public:
  static constexpr std::size_t max_dim = 64;

  ComplexMatrix() : n_(1), data_(1, Complex{}) {}

  explicit ComplexMatrix(std::size_t n) : n_(n), data_(check_dim(n) * n, Complex{}) {}

  ComplexMatrix(std::size_t n, std::vector<Complex> entries) : n_(n), data_(std::move(entries)) {
    check_dim(n);
    if (data_.size() != n * n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "expected " + std::to_string(n * n) + " entries, got " + std::to_string(data_.size()));
    }
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
      }
    }
  }

  /// Row-by-row literal, e.g. from_rows({{0, 1}, {0, 0}}).
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t n = rows.size();
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (const auto& row : rows) {
      if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "rows must form a square matrix");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(n, std::move(entries));
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  std::size_t size() const noexcept { return n_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  ComplexMatrix hermitian_part() const {
    ComplexMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return r;
  }

  double frobenius_norm() const noexcept {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  Complex trace() const noexcept {
    Complex t{};
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const noexcept {
    for (const auto& z : data_)
      if (z != Complex{}) return false;
    return true;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix l, const ComplexMatrix& r) { return l += r; }
  friend ComplexMatrix operator-(ComplexMatrix l, const ComplexMatrix& r) { return l -= r; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= Complex(s); }

  friend ComplexMatrix operator*(const ComplexMatrix& l, const ComplexMatrix& r) {
    l.require_same(r);
    const std::size_t n = l.n_;
    ComplexMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex lik = l(i, k);
        if (lik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) p(i, j) += lik * r(k, j);
      }
    return p;
  }

  friend Vector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
    if (v.size() != m.n_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    Vector out(m.n_);
    for (std::size_t i = 0; i < m.n_; ++i) {
      Complex s{};
      for (std::size_t j = 0; j < m.n_; ++j) s += m(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  void require_same(const ComplexMatrix& o) const {
    if (o.n_ != n_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "dimension " + std::to_string(n_) + " vs " + std::to_string(o.n_));
    }
  }

 private:
  static std::size_t check_dim(std::size_t n) {
    if (n < 1 || n > max_dim) {
      throw Error(ErrorCode::InvalidArgument, "dimension must lie in [1, 64], got " + std::to_string(n));
    }
    return n;
  }

  std::size_t n_;
  std::vector<Complex> data_;
};

/// u* v (conjugate-linear in the first argument).
inline Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  Complex s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

inline double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// u* M u
inline Complex quadratic_form(const ComplexMatrix& m, std::span<const Complex> u) {
  const Vector mu = m * u;
  return inner(u, mu);
}

/// u v*
inline ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexMatrix r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

inline Vector column(const ComplexMatrix& m, std::size_t j) {
  Vector c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) c[i] = m(i, j);
  return c;
}

/// Multiplies v by a unit phase so that its first entry with modulus above
/// `floor` is real and positive.
inline void fix_phase(std::span<Complex> v, double floor = 1e-12) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double r = std::abs(v[k]);
    if (r > floor) {
      const Complex rot = std::conj(v[k]) / r;
      for (auto& w : v) w *= rot;
      v[k] = r;
      return;
    }
  }
}

/// Relative Frobenius distance ||l - r||_F / (1 + ||r||_F).
inline double rel_distance(const ComplexMatrix& l, const ComplexMatrix& r) {
  return (l - r).frobenius_norm() / (1.0 + r.frobenius_norm());
}

}  // namespace astar

#endif  // ASTAR_MATRIX_HPP
