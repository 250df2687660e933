#pragma once

#include <cmath>
#include <stdexcept>

#include "mub/poly.hpp"

namespace mub::poly {

// Element a + b*sqrt(k) of the quadratic field Q(sqrt(k)), k a fixed
// non-square integer. Enough ring structure to evaluate polynomials exactly
// at points such as (sqrt(3) - 1) / 2.
class QuadraticSurd {
 public:
  QuadraticSurd(const BigRational& a = 0, const BigRational& b = 0, long radicand = 3)
      : a_(a), b_(b), k_(radicand) {}

  const BigRational& rational_part() const { return a_; }
  const BigRational& surd_part() const { return b_; }
  long radicand() const { return k_; }

  double to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(k_));
  }

  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
    const long k = merge(x, y);
    return {x.a_ + y.a_, x.b_ + y.b_, k};
  }
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) {
    const long k = merge(x, y);
    return {x.a_ - y.a_, x.b_ - y.b_, k};
  }
  friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
    const long k = merge(x, y);
    return {x.a_ * y.a_ + BigRational(k) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, k};
  }
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.k_ == y.k_);
  }

 private:
  // A pure rational carries no radicand information; adopt the other side's.
  static long merge(const QuadraticSurd& x, const QuadraticSurd& y) {
    if (x.b_ == 0) return y.k_;
    if (y.b_ == 0) return x.k_;
    if (x.k_ != y.k_) throw std::invalid_argument("mixing different quadratic fields");
    return x.k_;
  }

  BigRational a_;
  BigRational b_;
  long k_;
};

}  // namespace mub::poly
