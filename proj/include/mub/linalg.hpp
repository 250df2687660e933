#pragma once

// Complex dense matrices and floating-point MU predicates. Used for sanity
// checks of canonical matrices and candidate constellations; exact work
// happens in mub::poly.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mub::linalg {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;
using VectorGroup = std::vector<Vector>;

inline constexpr double kUnitTolerance = 1e-12;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const Complex> entries() const { return entries_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& other) const;
  Vector column(std::size_t c) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix identity_matrix(std::size_t d);
// (j,k) -> omega^{jk} / sqrt(d), omega = exp(2 pi i / d).
ComplexMatrix fourier_matrix(std::size_t d);
// The 6x6 spectral matrix, entries omega^{e_jk} / sqrt(6) with omega = exp(2 pi i / 3).
ComplexMatrix spectral_matrix();
// Exponent table e_jk of the spectral matrix.
const std::array<std::array<int, 6>, 6>& spectral_exponents();

// max |(M^dagger M - I)_jk|
double unitarity_defect(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol = kUnitTolerance);

VectorGroup columns(const ComplexMatrix& m);

struct VectorSet {
  std::size_t dimension = 0;
  std::vector<VectorGroup> groups;

  // Throws unless every vector has the set's dimension and unit norm.
  void validate(double tol = kUnitTolerance) const;
};

Complex inner(std::span<const Complex> u, std::span<const Complex> v);

enum class PairMode {
  Cross,      // max | |<u|v>|^2 - 1/d | over all (u, v) in a x b
  SameGroup,  // max |<a_i|b_j>|^2 over i != j (orthogonality residual)
};

double mu_residual(const VectorGroup& a, const VectorGroup& b, std::size_t d,
                   PairMode mode = PairMode::Cross);

}  // namespace mub::linalg
