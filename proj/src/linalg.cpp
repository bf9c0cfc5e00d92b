#include "qspeed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qspeed/errors.hpp"

namespace qspeed {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw InvalidArgument("ComplexMatrix: dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw InvalidArgument("ComplexMatrix: rows must form a square matrix");
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
    ++r;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("outer: dimension mismatch");
  ComplexMatrix m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> v) { return outer(v, v); }

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(*this);
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw InvalidArgument("matrix sum: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw InvalidArgument("matrix difference: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("matrix product: dimension mismatch");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.dim() != v.size()) throw InvalidArgument("matrix-vector product: dimension mismatch");
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

ComplexVector HermitianEigenSystem::eigenvector(std::size_t k) const {
  ComplexVector v(dim());
  for (std::size_t i = 0; i < dim(); ++i) v[i] = eigenvectors(i, k);
  return v;
}

ComplexMatrix HermitianEigenSystem::reconstruct() const {
  ComplexMatrix m(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    const auto v = eigenvector(k);
    m += ComplexMatrix::projector(v) * Complex(eigenvalues[k]);
  }
  return m;
}

double max_hermitian_deviation(const ComplexMatrix& m) {
  double dev = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  return dev;
}

bool hermitian_check(const ComplexMatrix& m, double tol) {
  return max_hermitian_deviation(m) <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Applies the unitary J acting on the (p, q) plane,
//   J = [[c, s e^{i phi}], [-s e^{-i phi}, c]],
// as A <- J^dagger A J and V <- V J. The rotation angle is chosen so that the
// (p, q) entry of the result vanishes.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex phase = apq / g;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * g);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex s_up = s * phase;             // J(p, q)
  const Complex s_down = -s * std::conj(phase);  // J(q, p)
  const std::size_t n = a.dim();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp + s_down * akq;
    a(k, q) = s_up * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(s_down) * aqk;
    a(q, k) = std::conj(s_up) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp + s_down * vkq;
    v(k, q) = s_up * vkp + c * vkq;
  }
}

}  // namespace

HermitianEigenSystem eigh(const ComplexMatrix& m, double herm_tol) {
  if (!m.is_finite()) throw InvalidArgument("eigh: matrix has non-finite entries");
  const double dev = max_hermitian_deviation(m);
  if (dev > herm_tol)
    throw InvalidArgument("eigh: matrix is not Hermitian (deviation " + std::to_string(dev) + ")");

  const std::size_t n = m.dim();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = jacobi_off_tol * a.frobenius_norm();

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > jacobi_max_sweeps)
      throw ConvergenceFailure("eigh: Jacobi iteration did not converge in " +
                               std::to_string(jacobi_max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigenSystem es{std::vector<double>(n), ComplexMatrix(n), false};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    es.eigenvalues[k] = a(src, src).real();

    // Gauge: the first component within a hair of the maximal magnitude is made real-positive.
    double vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) vmax = std::max(vmax, std::abs(v(i, src)));
    std::size_t lead = 0;
    while (std::abs(v(lead, src)) < vmax * (1.0 - 1e-12)) ++lead;
    const Complex phase = std::conj(v(lead, src)) / std::abs(v(lead, src));
    for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, k) = v(i, src) * phase;
    es.eigenvectors(lead, k) = std::abs(v(lead, src));
  }
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (es.eigenvalues[k + 1] - es.eigenvalues[k] < eig_degeneracy_tol) es.degenerate = true;
  return es;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("hs_inner: dimension mismatch");
  Complex s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::conj(da[i]) * db[i];
  return s;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t ia = 0; ia < na; ++ia)
    for (std::size_t ja = 0; ja < na; ++ja)
      for (std::size_t ib = 0; ib < nb; ++ib)
        for (std::size_t jb = 0; jb < nb; ++jb)
          out(ia * nb + ib, ja * nb + jb) = a(ia, ja) * b(ib, jb);
  return out;
}

ComplexVector tensor(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

Complex vdot(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("vdot: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) { return std::sqrt(vdot(v, v).real()); }

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexVector ket_excited() { return {1.0, 0.0}; }
ComplexVector ket_ground() { return {0.0, 1.0}; }

}  // namespace qspeed
