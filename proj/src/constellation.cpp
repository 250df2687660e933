#include "mub/constellation.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "mub/linalg.hpp"

namespace mub::constellation {

using poly::MonomialOrder;

void ConstellationSpec::validate() const {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  if (sizes.size() < 2) throw std::invalid_argument("a constellation needs at least two sets");
  if (sizes.front() != d - 1) {
    throw std::invalid_argument("first set size must be d-1 = " + std::to_string(d - 1));
  }
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || sizes[i] > d - 1) {
      throw std::invalid_argument("set size " + std::to_string(sizes[i]) +
                                  " out of range 1.." + std::to_string(d - 1));
    }
  }
}

std::string ConstellationSpec::label() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
  os << "}_" << d;
  return os.str();
}

ConstellationSpec ConstellationSpec::parse(unsigned d, std::string_view csv) {
  ConstellationSpec spec{d, {}};
  while (!csv.empty()) {
    const auto comma = csv.find(',');
    const auto field = csv.substr(0, comma);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
      throw std::invalid_argument("malformed set size '" + std::string(field) + "'");
    }
    spec.sizes.push_back(v);
    if (comma == std::string_view::npos) break;
    csv.remove_prefix(comma + 1);
  }
  spec.validate();
  return spec;
}

ConstellationCounts describe(const ConstellationSpec& spec) {
  spec.validate();
  ConstellationCounts c;
  std::size_t total = 0;
  std::size_t squares = 0;
  for (std::size_t i = 1; i < spec.sizes.size(); ++i) {
    total += spec.sizes[i];
    squares += static_cast<std::size_t>(spec.sizes[i]) * spec.sizes[i];
  }
  c.s = total - 1;
  c.num_phases = c.s * (spec.d - 1);
  c.num_real_vars = 2 * c.num_phases;
  c.n_modulus = c.num_phases;
  // (s+1)(s-1) = s^2 - 1; s may be 0 for {d-1, 1}.
  c.n_eq = (c.s * c.s + squares - 1) / 2 + c.n_modulus;
  c.n_quartic = c.n_eq - c.n_modulus;
  return c;
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Modulus: return "modulus";
    case Role::Orthogonality: return "orthogonality";
    case Role::Unbiasedness: return "unbiasedness";
  }
  return "?";
}

std::string_view to_string(Part part) {
  switch (part) {
    case Part::Real: return "re";
    case Part::Imag: return "im";
    case Part::EisensteinA: return "eisenstein_a";
    case Part::EisensteinB: return "eisenstein_b";
  }
  return "?";
}

std::vector<Polynomial> PolynomialSystem::polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.poly);
  return out;
}

std::vector<std::string> PolynomialSystem::variable_names() const {
  std::vector<std::string> out;
  out.reserve(variables.size());
  for (const auto& v : variables) out.push_back(v.name);
  return out;
}

namespace {

// A complex-valued polynomial expression re + im*unit, where unit is i
// (Cartesian) or omega_6 (Eisenstein, omega^2 = omega - 1).
struct ComplexForm {
  Polynomial re;
  Polynomial im;
};

enum class Coordinates { Cartesian, Eisenstein };

ComplexForm conj(const ComplexForm& z, Coordinates coords) {
  if (coords == Coordinates::Cartesian) return {z.re, -z.im};
  // conj(a + b w) = a + b (1 - w)
  return {z.re + z.im, -z.im};
}

ComplexForm mul(const ComplexForm& z, const ComplexForm& w, Coordinates coords) {
  if (coords == Coordinates::Cartesian) {
    return {z.re * w.re - z.im * w.im, z.re * w.im + z.im * w.re};
  }
  // (a + b w)(c + d w) = (ac - bd) + (ad + bc + bd) w
  const Polynomial bd = z.im * w.im;
  return {z.re * w.re - bd, z.re * w.im + z.im * w.re + bd};
}

ComplexForm add(const ComplexForm& z, const ComplexForm& w) {
  return {z.re + w.re, z.im + w.im};
}

Polynomial norm2(const ComplexForm& z, Coordinates coords) {
  if (coords == Coordinates::Cartesian) return z.re * z.re + z.im * z.im;
  return z.re * z.re + z.re * z.im + z.im * z.im;
}

// Components 0..d-1 of one vector, unnormalised (first entry 1).
using VectorForm = std::vector<ComplexForm>;

ComplexForm scaled_inner(const VectorForm& u, const VectorForm& v, Coordinates coords) {
  ComplexForm s = mul(conj(u[0], coords), v[0], coords);
  for (std::size_t k = 1; k < u.size(); ++k) s = add(s, mul(conj(u[k], coords), v[k], coords));
  return s;
}

ComplexForm constant_form(std::size_t n, long re, long im, MonomialOrder order) {
  return {Polynomial::constant(n, BigRational(re), order),
          Polynomial::constant(n, BigRational(im), order)};
}

VectorForm free_vector(std::size_t n, unsigned d, std::size_t first_slot,
                       MonomialOrder order) {
  VectorForm v;
  v.push_back(constant_form(n, 1, 0, order));
  for (unsigned k = 1; k < d; ++k) {
    const std::size_t slot = first_slot + 2 * (k - 1);
    v.push_back({Polynomial::variable(n, slot, order), Polynomial::variable(n, slot + 1, order)});
  }
  return v;
}

std::string slot_name(unsigned d, unsigned vector, unsigned component, Part part) {
  const char* prefix = part == Part::Real          ? "x"
                       : part == Part::Imag        ? "y"
                       : part == Part::EisensteinA ? "a"
                                                   : "b";
  std::string name = prefix + std::to_string(vector + 1);
  if (d > 2) name += "_" + std::to_string(component);
  return name;
}

void add_modulus_constraints(PolynomialSystem& sys, Coordinates coords,
                             MonomialOrder order) {
  const std::size_t n = sys.num_vars();
  for (const auto& info : sys.vectors) {
    if (!info.free) continue;
    for (unsigned k = 1; k < sys.dimension; ++k) {
      const std::size_t slot = info.first_slot + 2 * (k - 1);
      const ComplexForm z{Polynomial::variable(n, slot, order),
                          Polynomial::variable(n, slot + 1, order)};
      Polynomial p = norm2(z, coords) - Polynomial::constant(n, BigRational(1), order);
      sys.polys.push_back({std::move(p), {Role::Modulus, info.ref, {}, k}});
    }
  }
}

}  // namespace

PolynomialSystem build_system(const ConstellationSpec& spec, MonomialOrder order) {
  const auto counts = describe(spec);
  const unsigned d = spec.d;
  PolynomialSystem sys;
  sys.name = spec.label();
  sys.spec = spec;
  sys.dimension = d;

  unsigned free_ordinal = 0;
  for (unsigned set = 1; set < spec.sizes.size(); ++set) {
    for (unsigned idx = 0; idx < spec.sizes[set]; ++idx) {
      VectorInfo info{{set, idx}, !(set == 1 && idx == 0), sys.variables.size()};
      if (info.free) {
        for (unsigned k = 1; k < d; ++k) {
          sys.variables.push_back({free_ordinal, k, Part::Real, slot_name(d, free_ordinal, k, Part::Real)});
          sys.variables.push_back({free_ordinal, k, Part::Imag, slot_name(d, free_ordinal, k, Part::Imag)});
        }
        ++free_ordinal;
      }
      sys.vectors.push_back(info);
    }
  }
  const std::size_t n = sys.num_vars();

  std::vector<VectorForm> forms;
  for (const auto& info : sys.vectors) {
    if (info.free) {
      forms.push_back(free_vector(n, d, info.first_slot, order));
    } else {
      forms.emplace_back(d, constant_form(n, 1, 0, order));
    }
  }

  add_modulus_constraints(sys, Coordinates::Cartesian, order);
  const Polynomial dconst = Polynomial::constant(n, BigRational(d), order);
  for (std::size_t i = 0; i < sys.vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < sys.vectors.size(); ++j) {
      const auto& a = sys.vectors[i].ref;
      const auto& b = sys.vectors[j].ref;
      const ComplexForm s = scaled_inner(forms[i], forms[j], Coordinates::Cartesian);
      if (a.set != b.set) {
        sys.polys.push_back({norm2(s, Coordinates::Cartesian) - dconst,
                             {Role::Unbiasedness, a, b, 0}});
      } else {
        sys.polys.push_back({norm2(s, Coordinates::Cartesian), {Role::Orthogonality, a, b, 0}});
        sys.polys.push_back({s.re * s.re - s.im * s.im, {Role::Orthogonality, a, b, 0}});
      }
    }
  }

  if (sys.num_vars() != counts.num_real_vars || sys.polys.size() != counts.n_eq) {
    throw std::logic_error("generated system does not match constellation counts");
  }
  return sys;
}

PolynomialSystem build_spectral_pair_system(bool reduced, MonomialOrder order) {
  constexpr unsigned d = 6;
  PolynomialSystem sys;
  sys.name = reduced ? "spectral-pair-reduced" : "spectral-pair";
  sys.dimension = d;
  for (unsigned v = 0; v < 2; ++v) {
    sys.vectors.push_back({{2, v}, true, sys.variables.size()});
    for (unsigned k = 1; k < d; ++k) {
      sys.variables.push_back({v, k, Part::EisensteinA, slot_name(d, v, k, Part::EisensteinA)});
      sys.variables.push_back({v, k, Part::EisensteinB, slot_name(d, v, k, Part::EisensteinB)});
    }
  }
  const std::size_t n = sys.num_vars();
  add_modulus_constraints(sys, Coordinates::Eisenstein, order);

  // omega^e as a + b*omega.
  static constexpr int kPowA[6] = {1, 0, -1, -1, 0, 1};
  static constexpr int kPowB[6] = {0, 1, 1, 0, -1, -1};
  const auto& exps = linalg::spectral_exponents();
  std::vector<VectorForm> free_forms;
  for (const auto& info : sys.vectors) free_forms.push_back(free_vector(n, d, info.first_slot, order));

  const Polynomial six = Polynomial::constant(n, BigRational(6), order);
  const unsigned columns = reduced ? d - 1 : d;
  for (unsigned col = 0; col < columns; ++col) {
    VectorForm s_col;
    for (unsigned m = 0; m < d; ++m) {
      // Entries of S are cube roots of unity: omega_3^e = omega_6^(2e).
      const int e = (2 * exps[m][col]) % 6;
      s_col.push_back(constant_form(n, kPowA[e], kPowB[e], order));
    }
    for (std::size_t v = 0; v < free_forms.size(); ++v) {
      const ComplexForm s = scaled_inner(s_col, free_forms[v], Coordinates::Eisenstein);
      sys.polys.push_back({norm2(s, Coordinates::Eisenstein) - six,
                           {Role::Unbiasedness, {1, col}, sys.vectors[v].ref, 0}});
    }
  }
  const ComplexForm uv = scaled_inner(free_forms[0], free_forms[1], Coordinates::Eisenstein);
  sys.polys.push_back({norm2(uv, Coordinates::Eisenstein),
                       {Role::Orthogonality, sys.vectors[0].ref, sys.vectors[1].ref, 0}});
  return sys;
}

std::vector<BigRational> evaluate_system(const PolynomialSystem& sys,
                                         std::span<const BigRational> point) {
  if (point.size() != sys.num_vars()) {
    throw std::invalid_argument("point has " + std::to_string(point.size()) +
                                " coordinates, system has " + std::to_string(sys.num_vars()));
  }
  std::vector<BigRational> out;
  out.reserve(sys.polys.size());
  for (const auto& p : sys.polys) out.push_back(p.poly.evaluate(point));
  return out;
}

std::vector<double> evaluate_system(const PolynomialSystem& sys,
                                    std::span<const double> point) {
  if (point.size() != sys.num_vars()) {
    throw std::invalid_argument("point has " + std::to_string(point.size()) +
                                " coordinates, system has " + std::to_string(sys.num_vars()));
  }
  std::vector<double> out;
  out.reserve(sys.polys.size());
  for (const auto& p : sys.polys) out.push_back(p.poly.evaluate(point));
  return out;
}

}  // namespace mub::constellation
