#include "mub/json_io.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mub::io {

namespace {

// NaN and infinities have no JSON literal; they become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vector_ref(const constellation::VectorRef& r) { return {{"set", r.set}, {"index", r.index}}; }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

mpz_class big_integer(const json& j) {
  if (j.is_number_integer()) return mpz_class(j.dump());
  if (!j.is_string()) throw std::invalid_argument("integer must be a decimal string");
  mpz_class z;
  if (z.set_str(j.get<std::string>(), 10) != 0) {
    throw std::invalid_argument("bad integer \"" + j.get<std::string>() + "\"");
  }
  return z;
}

}  // namespace

json to_json(const poly::Polynomial& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    std::vector<unsigned> exps(t.monomial.exponents().begin(), t.monomial.exponents().end());
    terms.push_back({{"exp", exps},
                     {"num", t.coeff.get_num().get_str()},
                     {"den", t.coeff.get_den().get_str()}});
  }
  return {{"n", p.num_vars()}, {"terms", terms}};
}

poly::Polynomial polynomial_from_json(const json& j, poly::MonomialOrder order) {
  const auto& nj = require(j, "n");
  if (!nj.is_number_unsigned()) throw std::invalid_argument("\"n\" must be a non-negative integer");
  const auto n = nj.get<std::size_t>();
  const auto& tj = require(j, "terms");
  if (!tj.is_array()) throw std::invalid_argument("\"terms\" must be an array");
  std::vector<poly::Term> terms;
  for (const auto& t : tj) {
    const auto& ej = require(t, "exp");
    if (!ej.is_array() || ej.size() != n) {
      throw std::invalid_argument("exponent vector must have length " + std::to_string(n));
    }
    std::vector<poly::Monomial::Exponent> exps;
    for (const auto& e : ej) {
      if (!e.is_number_unsigned()) throw std::invalid_argument("exponents must be non-negative");
      exps.push_back(e.get<poly::Monomial::Exponent>());
    }
    const mpz_class num = big_integer(require(t, "num"));
    const mpz_class den = t.contains("den") ? big_integer(t.at("den")) : mpz_class(1);
    if (den == 0) throw std::invalid_argument("zero denominator");
    terms.push_back({poly::Monomial(std::move(exps)), poly::make_rational(num, den)});
  }
  return poly::Polynomial::from_terms(n, std::move(terms), order);
}

json to_json(const linalg::ComplexMatrix& m) {
  std::vector<double> re, im;
  for (const auto& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

linalg::ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = require(j, "rows").get<std::size_t>();
  const auto cols = require(j, "cols").get<std::size_t>();
  const auto re = require(j, "re").get<std::vector<double>>();
  const auto im = j.contains("im") ? j.at("im").get<std::vector<double>>()
                                   : std::vector<double>(re.size(), 0.0);
  if (re.size() != rows * cols || im.size() != rows * cols) {
    throw std::invalid_argument("matrix data does not match rows x cols");
  }
  std::vector<linalg::Complex> entries(rows * cols);
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k] = {re[k], im[k]};
  return linalg::ComplexMatrix(rows, cols, std::move(entries));
}

json to_json(const constellation::ConstellationSpec& spec) {
  return {{"d", spec.d}, {"sizes", spec.sizes}, {"label", spec.label()}};
}

json to_json(const constellation::ConstellationCounts& c) {
  return {{"free_vectors", c.s},         {"phases", c.num_phases}, {"real_variables", c.num_real_vars},
          {"equations", c.n_eq},         {"quartic", c.n_quartic}, {"modulus", c.n_modulus}};
}

json to_json(const constellation::PolynomialSystem& sys) {
  json out;
  out["name"] = sys.name;
  out["dimension"] = sys.dimension;
  if (sys.spec) {
    out["spec"] = to_json(*sys.spec);
    out["counts"] = to_json(constellation::describe(*sys.spec));
  } else {
    out["spec"] = nullptr;
    std::size_t modulus = 0;
    for (const auto& p : sys.polys) modulus += p.condition.role == constellation::Role::Modulus;
    out["counts"] = {{"real_variables", sys.num_vars()},
                     {"equations", sys.polys.size()},
                     {"modulus", modulus}};
  }
  json vars = json::array();
  for (const auto& v : sys.variables) {
    vars.push_back({{"name", v.name},
                    {"vector", v.vector},
                    {"component", v.component},
                    {"part", std::string(constellation::to_string(v.part))}});
  }
  out["variables"] = vars;
  json polys = json::array();
  for (const auto& p : sys.polys) {
    json entry = to_json(p.poly);
    json cond = {{"role", std::string(constellation::to_string(p.condition.role))},
                 {"a", vector_ref(p.condition.a)}};
    if (p.condition.role == constellation::Role::Modulus) {
      cond["component"] = p.condition.component;
    } else {
      cond["b"] = vector_ref(p.condition.b);
    }
    entry["condition"] = cond;
    entry["text"] = p.poly.to_string(sys.variable_names());
    polys.push_back(entry);
  }
  out["polys"] = polys;
  return out;
}

json to_json(const groebner::Stats& s) {
  return {{"pairs_created", s.pairs_created},
          {"spairs_reduced", s.spairs_reduced},
          {"skipped_coprime", s.skipped_coprime},
          {"skipped_chain", s.skipped_chain},
          {"reductions", s.reductions},
          {"zero_reductions", s.zero_reductions},
          {"max_degree", s.max_degree},
          {"peak_basis_size", s.peak_basis_size},
          {"memory_estimate_bytes", s.memory_estimate_bytes}};
}

json to_json(const groebner::GroebnerBasis& basis) {
  json gens = json::array();
  for (const auto& g : basis.generators) gens.push_back(to_json(g));
  return {{"order", std::string(poly::to_string(basis.order))},
          {"trivial", groebner::is_trivial(basis)},
          {"generators", gens},
          {"stats", to_json(basis.stats)}};
}

json certificate_to_json(std::span<const poly::Polynomial> polys, const groebner::Certificate& cert) {
  if (polys.size() != cert.cofactors.size()) {
    throw std::invalid_argument("certificate and polynomial list differ in length");
  }
  json p = json::array(), r = json::array();
  for (const auto& q : polys) p.push_back(to_json(q));
  for (const auto& q : cert.cofactors) r.push_back(to_json(q));
  return {{"n", polys.empty() ? 0 : polys.front().num_vars()}, {"polys", p}, {"cofactors", r}};
}

CertificateFile certificate_from_json(const json& j) {
  CertificateFile out;
  const auto& p = require(j, "polys");
  const auto& r = require(j, "cofactors");
  if (!p.is_array() || !r.is_array()) throw std::invalid_argument("polys and cofactors must be arrays");
  for (const auto& q : p) out.polys.push_back(polynomial_from_json(q));
  for (const auto& q : r) out.cert.cofactors.push_back(polynomial_from_json(q));
  if (out.polys.size() != out.cert.cofactors.size()) {
    throw std::invalid_argument("certificate and polynomial list differ in length");
  }
  return out;
}

json to_json(const gridsearch::ExclusionReport& rep) {
  json witnesses = json::array();
  for (const auto& w : rep.witnesses) {
    witnesses.push_back({{"cell", w.cell}, {"indices", w.indices}, {"angles", w.angles}});
  }
  json bounds = json::array();
  for (const auto& b : rep.bounds) {
    bounds.push_back({{"role", std::string(constellation::to_string(b.condition.role))},
                      {"a", vector_ref(b.a)},
                      {"b", vector_ref(b.b)},
                      {"bound", b.bound}});
  }
  return {{"constellation", rep.constellation},
          {"resolutions", rep.resolutions},
          {"total_cells", rep.total_cells},
          {"surviving", rep.surviving},
          {"verdict", gridsearch::to_string(rep.verdict)},
          {"witnesses", witnesses},
          {"bounds", bounds},
          {"wall_seconds", rep.wall_seconds}};
}

json to_json(const lasserre::LevelRecord& lv) {
  json out = {{"r", lv.r},
              {"decision_variables", lv.num_decisions},
              {"matrix_size", lv.matrix_size},
              {"equalities", lv.num_equalities},
              {"bound", number(lv.bound)},
              {"dual_bound", number(lv.dual_bound)},
              {"status", sdpsolve::to_string(lv.status)},
              {"gap", number(lv.gap)},
              {"absolute_gap", number(lv.absolute_gap)},
              {"iterations", lv.iterations},
              {"wall_seconds", lv.wall_seconds},
              {"certifies", lv.certifies},
              {"message", lv.message}};
  if (lv.candidate) {
    out["candidate"] = *lv.candidate;
    out["candidate_residual"] = number(lv.candidate_residual);
    out["extraction"] = lv.extraction;
  }
  return out;
}

json to_json(const lasserre::HierarchyResult& res) {
  json levels = json::array();
  for (const auto& lv : res.levels) levels.push_back(to_json(lv));
  json out = {{"levels", levels},
              {"verdict", lasserre::to_string(res.verdict)},
              {"threshold", res.threshold}};
  out["decisive_order"] = res.decisive_order ? json(*res.decisive_order) : json(nullptr);
  if (res.verdict == lasserre::Verdict::Found) {
    out["point"] = res.point;
    out["residuals"] = res.residuals;
  }
  return out;
}

}  // namespace mub::io
