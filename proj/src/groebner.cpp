#include "mub/groebner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace mub::groebner {

using poly::BigRational;
using poly::Monomial;
using poly::Term;

namespace {

std::size_t estimate_bytes(const Polynomial& p) {
  std::size_t bytes = sizeof(Polynomial);
  for (const auto& t : p.terms()) {
    bytes += sizeof(Term) + t.monomial.num_vars() * sizeof(Monomial::Exponent);
    bytes += (mpz_size(t.coeff.get_num_mpz_t()) + mpz_size(t.coeff.get_den_mpz_t())) *
             sizeof(mp_limb_t);
  }
  return bytes;
}

struct Element {
  Polynomial p;
  std::vector<Polynomial> cof;  // empty unless tracking
};

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Engine {
 public:
  Engine(std::size_t num_vars, std::size_t num_gens, MonomialOrder order, const Options& opts)
      : n_(num_vars), m_(num_gens), order_(order), opts_(opts) {}

  BuchbergerResult run(std::span<const Polynomial> gens) {
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Element e{gens[j].with_order(order_), {}};
      if (opts_.track_cofactors) {
        e.cof.assign(m_, Polynomial(n_, order_));
        e.cof[j] = Polynomial::constant(n_, BigRational(1), order_);
      }
      normalise(e);
      if (e.p.is_constant()) return trivial(e);
      if (auto r = add(std::move(e))) return std::move(*r);
    }

    while (!pending_.empty()) {
      auto best = std::min_element(pending_.begin(), pending_.end(),
                                   [this](const Pair& a, const Pair& b) {
                                     const int c = poly::compare(a.lcm, b.lcm, order_);
                                     if (c != 0) return c < 0;
                                     return std::tie(a.j, a.i) < std::tie(b.j, b.i);
                                   });
      const Pair pair = *best;
      pending_.erase(best);
      pending_keys_.erase({pair.i, pair.j});

      const auto& gi = basis_[pair.i].p;
      const auto& gj = basis_[pair.j].p;
      if (gi.leading_monomial().coprime(gj.leading_monomial())) {
        ++stats_.skipped_coprime;
        continue;
      }
      if (chain_criterion(pair)) {
        ++stats_.skipped_chain;
        continue;
      }
      if (stats_.spairs_reduced >= opts_.limits.max_pairs) return exceeded("max_pairs");
      ++stats_.spairs_reduced;

      Element s = s_polynomial(pair);
      reduce(s);
      if (s.p.is_zero()) {
        ++stats_.zero_reductions;
        continue;
      }
      normalise(s);
      if (s.p.is_constant()) return trivial(s);
      if (auto r = add(std::move(s))) return std::move(*r);
    }
    return finish();
  }

 private:
  void normalise(Element& e) {
    if (e.p.is_zero()) return;
    const BigRational inv = 1 / e.p.content();
    e.p = e.p.scale(inv);
    for (auto& c : e.cof) c = c.scale(inv);
  }

  std::optional<BuchbergerResult> add(Element e) {
    const unsigned deg = static_cast<unsigned>(e.p.degree());
    stats_.max_degree = std::max(stats_.max_degree, deg);
    stats_.memory_estimate_bytes += estimate_bytes(e.p);
    for (const auto& c : e.cof) stats_.memory_estimate_bytes += estimate_bytes(c);
    const std::size_t t = basis_.size();
    const Monomial& lm = e.p.leading_monomial();
    for (std::size_t i = 0; i < t; ++i) {
      pending_.push_back({i, t, basis_[i].p.leading_monomial().lcm(lm)});
      pending_keys_.insert({i, t});
      ++stats_.pairs_created;
    }
    basis_.push_back(std::move(e));
    stats_.peak_basis_size = std::max(stats_.peak_basis_size, basis_.size());
    if (deg > opts_.limits.max_degree) return exceeded("max_degree");
    if (stats_.memory_estimate_bytes > opts_.limits.max_memory_bytes) return exceeded("max_memory");
    return std::nullopt;
  }

  bool chain_criterion(const Pair& pair) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (!basis_[k].p.leading_monomial().divides(pair.lcm)) continue;
      const auto ik = std::minmax(pair.i, k);
      const auto jk = std::minmax(pair.j, k);
      if (!pending_keys_.contains({ik.first, ik.second}) &&
          !pending_keys_.contains({jk.first, jk.second})) {
        return true;
      }
    }
    return false;
  }

  Element s_polynomial(const Pair& pair) const {
    const Element& a = basis_[pair.i];
    const Element& b = basis_[pair.j];
    const Monomial qa = pair.lcm.quotient(a.p.leading_monomial());
    const Monomial qb = pair.lcm.quotient(b.p.leading_monomial());
    const BigRational ca = 1 / a.p.leading_coeff();
    const BigRational cb = 1 / b.p.leading_coeff();
    Element s{a.p.mul_term(qa, ca).sub_mul_term(qb, cb, b.p), {}};
    if (opts_.track_cofactors) {
      s.cof.resize(m_, Polynomial(n_, order_));
      for (std::size_t l = 0; l < m_; ++l) {
        s.cof[l] = a.cof[l].mul_term(qa, ca).sub_mul_term(qb, cb, b.cof[l]);
      }
    }
    return s;
  }

  // Full reduction of e.p (every term) modulo the current basis.
  void reduce(Element& e) {
    std::vector<Term> rest;
    while (!e.p.is_zero()) {
      const Term lt = e.p.leading_term();
      const Element* divisor = nullptr;
      for (const auto& g : basis_) {
        if (g.p.leading_monomial().divides(lt.monomial)) {
          divisor = &g;
          break;
        }
      }
      if (divisor == nullptr) {
        rest.push_back(lt);
        e.p = e.p.sub_mul_term(Monomial(n_), BigRational(1),
                               Polynomial::from_terms(n_, {lt}, order_));
        continue;
      }
      const Monomial q = lt.monomial.quotient(divisor->p.leading_monomial());
      const BigRational c = lt.coeff / divisor->p.leading_coeff();
      e.p = e.p.sub_mul_term(q, c, divisor->p);
      for (std::size_t l = 0; l < e.cof.size(); ++l) {
        e.cof[l] = e.cof[l].sub_mul_term(q, c, divisor->cof[l]);
      }
      ++stats_.reductions;
    }
    e.p = Polynomial::from_terms(n_, std::move(rest), order_);
  }

  BuchbergerResult trivial(const Element& unit) {
    GroebnerBasis gb{{Polynomial::constant(n_, BigRational(1), order_)}, order_, stats_};
    BuchbergerResult result{std::move(gb), std::nullopt};
    if (opts_.track_cofactors) {
      const BigRational inv = 1 / unit.p.leading_coeff();
      std::vector<Polynomial> cof;
      cof.reserve(m_);
      for (const auto& c : unit.cof) cof.push_back(c.scale(inv));
      result.trace = Trace{m_, std::move(cof)};
    }
    return result;
  }

  BuchbergerResult exceeded(const char* which) {
    BuchbergerResult result{ResourceExceeded{which, stats_}, std::nullopt};
    if (opts_.track_cofactors) result.trace = Trace{m_, std::nullopt};
    return result;
  }

  BuchbergerResult finish() {
    // Minimal basis: drop elements whose leading monomial is divisible by
    // another's (earliest survives among equal leading monomials).
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Monomial& lm = basis_[i].p.leading_monomial();
      bool redundant = false;
      for (std::size_t k = 0; k < basis_.size() && !redundant; ++k) {
        if (k == i) continue;
        const Monomial& other = basis_[k].p.leading_monomial();
        if (other.divides(lm) && (!(other == lm) || k < i)) redundant = true;
      }
      if (!redundant) minimal.push_back(basis_[i].p.monic());
    }
    // Inter-reduce tails.
    std::vector<Polynomial> reduced;
    reduced.reserve(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Polynomial> others;
      for (std::size_t k = 0; k < minimal.size(); ++k) {
        if (k != i) others.push_back(minimal[k]);
      }
      const Term lt = minimal[i].leading_term();
      Polynomial tail = minimal[i].sub_mul_term(Monomial(n_), BigRational(1),
                                                Polynomial::from_terms(n_, {lt}, order_));
      if (!others.empty() && !tail.is_zero()) {
        tail = poly::normal_form(tail, others, order_).remainder;
      }
      reduced.push_back(tail + Polynomial::from_terms(n_, {lt}, order_));
    }
    const auto order = order_;
    std::sort(reduced.begin(), reduced.end(), [order](const Polynomial& a, const Polynomial& b) {
      return poly::compare(a.leading_monomial(), b.leading_monomial(), order) < 0;
    });
    BuchbergerResult result{GroebnerBasis{std::move(reduced), order_, stats_}, std::nullopt};
    if (opts_.track_cofactors) result.trace = Trace{m_, std::nullopt};
    return result;
  }

  std::size_t n_;
  std::size_t m_;
  MonomialOrder order_;
  Options opts_;
  Stats stats_;
  std::vector<Element> basis_;
  std::vector<Pair> pending_;
  std::set<std::pair<std::size_t, std::size_t>> pending_keys_;
};

}  // namespace

BuchbergerResult buchberger(std::span<const Polynomial> gens, MonomialOrder order,
                            const Options& options) {
  if (gens.empty()) throw std::invalid_argument("buchberger needs at least one generator");
  const std::size_t n = gens.front().num_vars();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].num_vars() != n) {
      throw std::invalid_argument("generators have different variable counts");
    }
    if (gens[j].is_zero()) {
      throw std::invalid_argument("generator " + std::to_string(j) + " is the zero polynomial");
    }
  }
  Engine engine(n, gens.size(), order, options);
  return engine.run(gens);
}

bool is_trivial(const GroebnerBasis& basis) {
  return basis.generators.size() == 1 && basis.generators[0].is_constant() &&
         !basis.generators[0].is_zero();
}

bool verify_certificate(std::span<const Polynomial> polys, const Certificate& cert) {
  if (polys.size() != cert.cofactors.size()) {
    throw std::invalid_argument("certificate has " + std::to_string(cert.cofactors.size()) +
                                " cofactors for " + std::to_string(polys.size()) +
                                " polynomials");
  }
  if (polys.empty()) return false;
  const std::size_t n = polys.front().num_vars();
  const auto order = polys.front().order();
  Polynomial sum(n, order);
  for (std::size_t j = 0; j < polys.size(); ++j) sum += cert.cofactors[j] * polys[j];
  return sum == Polynomial::constant(n, BigRational(1), order);
}

Certificate extract_certificate(const Trace& trace) {
  if (!trace.unit_cofactors) {
    throw std::invalid_argument("ideal is not trivial (or cofactors were not tracked)");
  }
  return Certificate{*trace.unit_cofactors};
}

}  // namespace mub::groebner
