#include "mub/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mub::poly {

BigRational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string_view to_string(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::Lex: return "lex";
    case MonomialOrder::GradedLex: return "grlex";
    case MonomialOrder::GradedRevLex: return "grevlex";
  }
  return "?";
}

MonomialOrder parse_order(std::string_view name) {
  if (name == "lex") return MonomialOrder::Lex;
  if (name == "grlex") return MonomialOrder::GradedLex;
  if (name == "grevlex") return MonomialOrder::GradedRevLex;
  throw std::invalid_argument("unknown monomial order '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}

Monomial::Monomial(std::vector<Exponent> exponents) : exps_(std::move(exponents)) {
  for (auto e : exps_) degree_ += e;
}

Monomial Monomial::variable(std::size_t num_vars, std::size_t index,
                            Exponent power) {
  if (index >= num_vars) throw std::out_of_range("variable index out of range");
  Monomial m(num_vars);
  m.exps_[index] = power;
  m.degree_ = power;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  std::vector<Exponent> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
  return Monomial(std::move(e));
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  std::vector<Exponent> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (divisor.exps_[i] > exps_[i]) throw std::invalid_argument("monomial does not divide");
    e[i] = static_cast<Exponent>(exps_[i] - divisor.exps_[i]);
  }
  return Monomial(std::move(e));
}

Monomial Monomial::operator*(const Monomial& other) const {
  std::vector<Exponent> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = static_cast<Exponent>(exps_[i] + other.exps_[i]);
  }
  return Monomial(std::move(e));
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto e : m.exponents()) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  const std::size_t n = a.num_vars();
  if (order != MonomialOrder::Lex && a.degree() != b.degree()) {
    return a.degree() < b.degree() ? -1 : 1;
  }
  if (order == MonomialOrder::GradedRevLex) {
    for (std::size_t i = n; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::size_t num_vars, MonomialOrder order)
    : n_(num_vars), order_(order) {}

Polynomial Polynomial::constant(std::size_t num_vars, const BigRational& c,
                                MonomialOrder order) {
  return from_terms(num_vars, {{Monomial(num_vars), c}}, order);
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index,
                                MonomialOrder order) {
  Polynomial p(num_vars, order);
  p.terms_.push_back({Monomial::variable(num_vars, index), BigRational(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t num_vars, std::vector<Term> terms,
                                  MonomialOrder order) {
  std::unordered_map<Monomial, BigRational, MonomialHash> acc;
  acc.reserve(terms.size());
  for (auto& t : terms) {
    if (t.monomial.num_vars() != num_vars) {
      throw std::invalid_argument("term has wrong number of variables");
    }
    if (t.coeff.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    t.coeff.canonicalize();  // callers may pass e.g. mpq_class(6, 4)
    auto [it, inserted] = acc.try_emplace(std::move(t.monomial), t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  Polynomial p(num_vars, order);
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) p.terms_.push_back({m, c});
  }
  std::sort(p.terms_.begin(), p.terms_.end(), [order](const Term& a, const Term& b) {
    return compare(a.monomial, b.monomial, order) > 0;
  });
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial.degree()));
  return d;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
  return terms_.front();
}

BigRational Polynomial::coefficient(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (t.monomial == m) return t.coeff;
  }
  return BigRational(0);
}

Polynomial Polynomial::with_order(MonomialOrder order) const {
  if (order == order_) return *this;
  Polynomial p = *this;
  p.order_ = order;
  std::sort(p.terms_.begin(), p.terms_.end(), [order](const Term& a, const Term& b) {
    return compare(a.monomial, b.monomial, order) > 0;
  });
  return p;
}

void Polynomial::check_compatible(const Polynomial& q) const {
  if (q.n_ != n_) {
    throw std::invalid_argument("polynomial variable counts differ (" +
                                std::to_string(n_) + " vs " + std::to_string(q.n_) + ")");
  }
}

void Polynomial::check_point_size(std::size_t size) const {
  if (size != n_) {
    throw std::invalid_argument("evaluation point has " + std::to_string(size) +
                                " coordinates, polynomial has " + std::to_string(n_) +
                                " variables");
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::operator+(const Polynomial& q) const {
  check_compatible(q);
  return sub_mul_term(Monomial(n_), BigRational(-1), q);
}

Polynomial Polynomial::operator-(const Polynomial& q) const {
  check_compatible(q);
  return sub_mul_term(Monomial(n_), BigRational(1), q);
}

Polynomial Polynomial::operator*(const Polynomial& q) const {
  check_compatible(q);
  std::unordered_map<Monomial, BigRational, MonomialHash> acc;
  acc.reserve(terms_.size() * q.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : q.terms_) {
      BigRational c = a.coeff * b.coeff;
      auto [it, inserted] = acc.try_emplace(a.monomial * b.monomial, c);
      if (!inserted) it->second += c;
    }
  }
  Polynomial p(n_, order_);
  p.terms_.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) p.terms_.push_back({m, c});
  }
  const auto order = order_;
  std::sort(p.terms_.begin(), p.terms_.end(), [order](const Term& x, const Term& y) {
    return compare(x.monomial, y.monomial, order) > 0;
  });
  return p;
}

Polynomial Polynomial::scale(const BigRational& c) const {
  if (c == 0) return Polynomial(n_, order_);
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::mul_term(const Monomial& m, const BigRational& c) const {
  if (c == 0) return Polynomial(n_, order_);
  Polynomial p(n_, order_);
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, t.coeff * c});
  return p;
}

Polynomial Polynomial::sub_mul_term(const Monomial& m, const BigRational& c,
                                    const Polynomial& g) const {
  check_compatible(g);
  const bool other_order = g.order_ != order_;
  const Polynomial& gg = other_order ? g.with_order(order_) : g;
  if (other_order) return sub_mul_term(m, c, gg);
  Polynomial out(n_, order_);
  out.terms_.reserve(terms_.size() + gg.terms_.size());
  std::size_t i = 0, j = 0;
  const auto& a = terms_;
  const auto& b = gg.terms_;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.terms_.push_back(a[i++]);
      continue;
    }
    Monomial mb = b[j].monomial * m;
    if (i == a.size()) {
      out.terms_.push_back({std::move(mb), -c * b[j].coeff});
      ++j;
      continue;
    }
    const int cmp = compare(a[i].monomial, mb, order_);
    if (cmp > 0) {
      out.terms_.push_back(a[i++]);
    } else if (cmp < 0) {
      out.terms_.push_back({std::move(mb), -c * b[j].coeff});
      ++j;
    } else {
      BigRational v = a[i].coeff - c * b[j].coeff;
      if (v != 0) out.terms_.push_back({std::move(mb), std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(n_, BigRational(1), order_);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

BigRational Polynomial::content() const {
  if (terms_.empty()) return BigRational(1);
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  BigRational c = make_rational(num_gcd, den_lcm);
  if (terms_.front().coeff < 0) c = -c;
  return c;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  return scale(1 / content());
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scale(1 / leading_coeff());
}

BigRational Polynomial::evaluate(std::span<const BigRational> point) const {
  return evaluate_in<BigRational>(point);
}

double Polynomial::evaluate(std::span<const double> point) const {
  check_point_size(point.size());
  double total = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (std::size_t i = 0; i < n_; ++i) {
      for (unsigned e = 0; e < t.monomial[i]; ++e) v *= point[i];
    }
    total += v;
  }
  return total;
}

bool Polynomial::operator==(const Polynomial& q) const {
  if (n_ != q.n_) return false;
  const Polynomial& qq = q.order_ == order_ ? q : q.with_order(order_);
  if (terms_.size() != qq.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].monomial == qq.terms_[i].monomial) ||
        terms_[i].coeff != qq.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    BigRational c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    const bool unit = c == 1;
    if (!unit || t.monomial.is_one()) os << c.get_str();
    bool need_star = !unit;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto e = t.monomial[i];
      if (e == 0) continue;
      if (need_star) os << "*";
      if (i < names.size()) {
        os << names[i];
      } else {
        os << "x" << i;
      }
      if (e > 1) os << "^" << e;
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

// ----------------------------------------------------------- normal_form

DivisionResult normal_form(const Polynomial& p, std::span<const Polynomial> divisors,
                           MonomialOrder order) {
  if (divisors.empty()) throw std::invalid_argument("normal_form needs at least one divisor");
  std::vector<Polynomial> divs;
  divs.reserve(divisors.size());
  for (const auto& d : divisors) {
    if (d.is_zero()) throw std::invalid_argument("normal_form: zero divisor polynomial");
    if (d.num_vars() != p.num_vars()) {
      throw std::invalid_argument("normal_form: divisor variable count differs");
    }
    divs.push_back(d.with_order(order));
  }
  const std::size_t n = p.num_vars();
  DivisionResult result{Polynomial(n, order), {}};
  result.quotients.assign(divs.size(), Polynomial(n, order));
  std::vector<Term> remainder_terms;

  Polynomial rest = p.with_order(order);
  while (!rest.is_zero()) {
    const Term lt = rest.leading_term();
    bool reduced = false;
    for (std::size_t i = 0; i < divs.size(); ++i) {
      const Term& dl = divs[i].leading_term();
      if (!dl.monomial.divides(lt.monomial)) continue;
      const Monomial q = lt.monomial.quotient(dl.monomial);
      const BigRational c = lt.coeff / dl.coeff;
      result.quotients[i] += Polynomial::from_terms(n, {{q, c}}, order);
      rest = rest.sub_mul_term(q, c, divs[i]);
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder_terms.push_back(lt);
      rest = rest.sub_mul_term(Monomial(n), BigRational(1),
                               Polynomial::from_terms(n, {lt}, order));
    }
  }
  // Terms leave `rest` in decreasing order, so this is already sorted.
  result.remainder = Polynomial::from_terms(n, std::move(remainder_terms), order);
  return result;
}

}  // namespace mub::poly
