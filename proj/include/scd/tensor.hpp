#pragma once

// Dense complex linear algebra for the small operators used throughout:
// two qubits, two qutrits, three qubits. Nothing here is meant to scale
// beyond ~64x64.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "scd/rng.hpp"

namespace scd {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;
using Dims = std::vector<std::size_t>;

std::size_t product(const Dims& dims);

/// Row-major dense square matrix with optional tensor-factor structure.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim, Dims subsystem_dims = {});
  ComplexMatrix(std::size_t dim, std::initializer_list<cplx> row_major, Dims subsystem_dims = {});

  static ComplexMatrix identity(std::size_t dim, Dims subsystem_dims = {});
  static ComplexMatrix diagonal(std::span<const double> diag, Dims subsystem_dims = {});
  static ComplexMatrix outer(std::span<const cplx> ket, Dims subsystem_dims = {});

  std::size_t dim() const noexcept { return dim_; }
  const Dims& subsystem_dims() const noexcept { return dims_; }
  void set_subsystem_dims(Dims dims);

  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }
  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  cplx trace() const;
  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  /// max |A - A^dagger| over entries
  double hermiticity_defect() const;
  double max_abs() const;

 private:
  std::size_t dim_ = 0;
  Dims dims_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
CVector operator*(const ComplexMatrix& a, std::span<const cplx> v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// <u|v>
cplx inner(std::span<const cplx> u, std::span<const cplx> v);
double norm(std::span<const cplx> v);
/// <v|A|v>
cplx expectation(const ComplexMatrix& a, std::span<const cplx> v);
/// tr(A B) without forming the product
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
CVector kron(std::span<const cplx> a, std::span<const cplx> b);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix id();
}  // namespace pauli

/// Spin-j operators in the |j, m> basis ordered m = j, j-1, ..., -j; d = 2j + 1.
struct SpinOperators {
  ComplexMatrix x, y, z;
};
SpinOperators spin_operators(std::size_t d);

/// Place `op` on site `site` of a register with local dimensions `dims`.
ComplexMatrix embed(const ComplexMatrix& op, std::size_t site, const Dims& dims);
/// Place a two-site operator `a (x) b` on sites i < j (or any i != j).
ComplexMatrix embed_pair(const ComplexMatrix& a, std::size_t i, const ComplexMatrix& b, std::size_t j,
                         const Dims& dims);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns
};

/// Cyclic complex Jacobi. Throws std::invalid_argument for non-Hermitian input.
Spectrum hermitian_eig(const ComplexMatrix& a);
/// Eigenvalues only; same solver, skips accumulating the vectors.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

ComplexMatrix spectral_function(const ComplexMatrix& a, const std::function<double(double)>& f);
ComplexMatrix spectral_function(const Spectrum& s, const std::function<double(double)>& f);

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t subsystem);
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<std::size_t>& keep);

/// Haar unitary from a complex Ginibre matrix orthonormalized column by column.
ComplexMatrix haar_unitary(std::size_t d, Rng& rng);

ComplexMatrix random_hermitian(std::size_t d, Rng& rng);

cplx determinant(ComplexMatrix a);

}  // namespace scd
