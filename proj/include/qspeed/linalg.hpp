#pragma once

// Dense complex linear algebra for operators on small Hilbert spaces (dim <= 8).
//
// Basis convention used throughout the library: single-qubit index 0 is the
// excited state |1>, index 1 the ground state |0>, so sigma_z = diag(1, -1).
// Multi-qubit indices follow the Kronecker convention (row a*dimB + b), which
// puts |11> first and |00> last for two qubits.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qspeed {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double default_herm_tol = 1e-10;
inline constexpr double eig_degeneracy_tol = 1e-9;
inline constexpr double jacobi_off_tol = 1e-14;
inline constexpr int jacobi_max_sweeps = 100;

class ComplexMatrix {
 public:
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);
  /// |v><v|
  static ComplexMatrix projector(std::span<const Complex> v);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// Largest entry magnitude.
  double max_abs() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// Spectral decomposition sum_k p_k |Phi_k><Phi_k|, eigenvalues ascending.
struct HermitianEigenSystem {
  std::vector<double> eigenvalues;
  /// Column k pairs with eigenvalues[k].
  ComplexMatrix eigenvectors;
  /// Some adjacent pair of eigenvalues lies within eig_degeneracy_tol.
  bool degenerate = false;

  std::size_t dim() const { return eigenvalues.size(); }
  ComplexVector eigenvector(std::size_t k) const;
  ComplexMatrix reconstruct() const;
};

double max_hermitian_deviation(const ComplexMatrix& m);
bool hermitian_check(const ComplexMatrix& m, double tol = default_herm_tol);
/// (M + M^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Cyclic complex Jacobi rotations. Eigenvectors are gauge-fixed so that their
/// largest-magnitude component is real and positive.
/// Throws InvalidArgument for non-Hermitian input, ConvergenceFailure after
/// jacobi_max_sweeps sweeps.
HermitianEigenSystem eigh(const ComplexMatrix& m, double herm_tol = default_herm_tol);

/// Hilbert-Schmidt inner product tr(A^dagger B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, row index a*dimB + b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor(std::span<const Complex> a, std::span<const Complex> b);

/// <a|b>
Complex vdot(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Single-qubit kets in the library's basis order.
ComplexVector ket_excited();
ComplexVector ket_ground();

}  // namespace qspeed
