#include "mub/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mub::linalg {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("matrix entry count " + std::to_string(entries_.size()) +
                                " != " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
  ComplexMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = (*this)(r, k);
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  }
  return out;
}

Vector ComplexMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

ComplexMatrix identity_matrix(std::size_t d) {
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix fourier_matrix(std::size_t d) {
  if (d == 0) throw std::invalid_argument("invalid dimension 0 for Fourier matrix");
  ComplexMatrix m(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      // Reduce jk mod d first so the angle stays in [0, 2 pi).
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) /
                           static_cast<double>(d);
      m(j, k) = std::polar(scale, angle);
    }
  }
  return m;
}

const std::array<std::array<int, 6>, 6>& spectral_exponents() {
  static const std::array<std::array<int, 6>, 6> table{{
      {0, 0, 0, 0, 0, 0},
      {0, 0, 1, 1, 2, 2},
      {0, 1, 0, 2, 2, 1},
      {0, 1, 2, 0, 1, 2},
      {0, 2, 2, 1, 0, 1},
      {0, 2, 1, 2, 1, 0},
  }};
  return table;
}

ComplexMatrix spectral_matrix() {
  ComplexMatrix m(6, 6);
  const double scale = 1.0 / std::sqrt(6.0);
  const auto& e = spectral_exponents();
  for (std::size_t j = 0; j < 6; ++j) {
    for (std::size_t k = 0; k < 6; ++k) {
      m(j, k) = std::polar(scale, 2.0 * std::numbers::pi * e[j][k] / 3.0);
    }
  }
  return m;
}

double unitarity_defect(const ComplexMatrix& m) {
  const ComplexMatrix g = m.adjoint() * m;
  double worst = 0.0;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      const Complex target = r == c ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g(r, c) - target));
    }
  }
  return worst;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && unitarity_defect(m) <= tol;
}

VectorGroup columns(const ComplexMatrix& m) {
  VectorGroup g;
  g.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) g.push_back(m.column(c));
  return g;
}

void VectorSet::validate(double tol) const {
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t vi = 0; vi < groups[gi].size(); ++vi) {
      const auto& v = groups[gi][vi];
      if (v.size() != dimension) {
        throw std::invalid_argument("vector " + std::to_string(vi) + " of group " +
                                    std::to_string(gi) + " has wrong dimension");
      }
      double norm2 = 0.0;
      for (const auto& z : v) norm2 += std::norm(z);
      if (std::abs(std::sqrt(norm2) - 1.0) > tol) {
        throw std::invalid_argument("vector " + std::to_string(vi) + " of group " +
                                    std::to_string(gi) + " is not normalised");
      }
    }
  }
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner product dimension mismatch");
  Complex s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
  return s;
}

double mu_residual(const VectorGroup& a, const VectorGroup& b, std::size_t d,
                   PairMode mode) {
  auto check = [d](const VectorGroup& g) {
    for (const auto& v : g) {
      if (v.size() != d) throw std::invalid_argument("vector dimension does not match d");
    }
  };
  check(a);
  check(b);
  const double target = 1.0 / static_cast<double>(d);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double overlap = std::norm(inner(a[i], b[j]));
      if (mode == PairMode::Cross) {
        worst = std::max(worst, std::abs(overlap - target));
      } else if (i != j) {
        worst = std::max(worst, overlap);
      }
    }
  }
  return worst;
}

}  // namespace mub::linalg
