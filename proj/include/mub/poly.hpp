#pragma once

// Exact multivariate polynomials over the rationals.
//
// Variables are indexed 0..n-1; names are attached by callers. A Polynomial
// stores its terms sorted strictly decreasing under its MonomialOrder and
// never holds a zero coefficient.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mub::poly {

using BigRational = mpq_class;

// Canonical num/den (gcd removed, positive denominator). Throws on den == 0.
BigRational make_rational(const mpz_class& num, const mpz_class& den);

enum class MonomialOrder { Lex, GradedLex, GradedRevLex };

std::string_view to_string(MonomialOrder order);
MonomialOrder parse_order(std::string_view name);

class Monomial {
 public:
  using Exponent = std::uint16_t;

  Monomial() = default;
  explicit Monomial(std::size_t num_vars);
  explicit Monomial(std::vector<Exponent> exponents);

  static Monomial variable(std::size_t num_vars, std::size_t index,
                           Exponent power = 1);

  std::size_t num_vars() const { return exps_.size(); }
  unsigned degree() const { return degree_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  std::span<const Exponent> exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  // Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const;

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }

 private:
  std::vector<Exponent> exps_;
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// Three-way comparison under `order`: negative, zero or positive.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

struct Term {
  Monomial monomial;
  BigRational coeff;
};

class Polynomial {
 public:
  explicit Polynomial(std::size_t num_vars = 0,
                      MonomialOrder order = MonomialOrder::GradedRevLex);

  static Polynomial constant(std::size_t num_vars, const BigRational& c,
                             MonomialOrder order = MonomialOrder::GradedRevLex);
  static Polynomial variable(std::size_t num_vars, std::size_t index,
                             MonomialOrder order = MonomialOrder::GradedRevLex);
  // Combines like terms, drops zeros and sorts.
  static Polynomial from_terms(std::size_t num_vars, std::vector<Term> terms,
                               MonomialOrder order = MonomialOrder::GradedRevLex);

  std::size_t num_vars() const { return n_; }
  MonomialOrder order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
  }
  // -1 for the zero polynomial.
  int degree() const;

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  const BigRational& leading_coeff() const { return leading_term().coeff; }

  // Coefficient of `m`, zero when absent.
  BigRational coefficient(const Monomial& m) const;

  Polynomial with_order(MonomialOrder order) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& q) const;
  Polynomial operator-(const Polynomial& q) const;
  Polynomial operator*(const Polynomial& q) const;
  Polynomial& operator+=(const Polynomial& q) { return *this = *this + q; }
  Polynomial& operator-=(const Polynomial& q) { return *this = *this - q; }
  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  Polynomial scale(const BigRational& c) const;
  Polynomial mul_term(const Monomial& m, const BigRational& c) const;
  // this - c*m*g, computed by a single merge.
  Polynomial sub_mul_term(const Monomial& m, const BigRational& c,
                          const Polynomial& g) const;
  Polynomial pow(unsigned e) const;

  // gcd of numerators over lcm of denominators, sign of the leading term.
  BigRational content() const;
  // Integer coefficients, gcd 1, positive leading coefficient.
  Polynomial primitive() const;
  Polynomial monic() const;

  BigRational evaluate(std::span<const BigRational> point) const;
  double evaluate(std::span<const double> point) const;

  // Evaluation in any commutative ring constructible from BigRational.
  template <class Ring>
  Ring evaluate_in(std::span<const Ring> point) const;

  bool operator==(const Polynomial& q) const;

  // Names default to x0, x1, ...
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void check_compatible(const Polynomial& q) const;
  void check_point_size(std::size_t size) const;

  std::size_t n_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

struct DivisionResult {
  Polynomial remainder;
  std::vector<Polynomial> quotients;
};

// Multivariate division: p = sum(quotients[i] * divisors[i]) + remainder, with
// no remainder term divisible by any divisor's leading monomial. Divisors are
// tried in list order.
DivisionResult normal_form(const Polynomial& p,
                           std::span<const Polynomial> divisors,
                           MonomialOrder order);

template <class Ring>
Ring Polynomial::evaluate_in(std::span<const Ring> point) const {
  check_point_size(point.size());
  Ring total{BigRational(0)};
  for (const auto& t : terms_) {
    Ring value{t.coeff};
    for (std::size_t i = 0; i < n_; ++i) {
      for (unsigned e = 0; e < t.monomial[i]; ++e) value = value * point[i];
    }
    total = total + value;
  }
  return total;
}

}  // namespace mub::poly
