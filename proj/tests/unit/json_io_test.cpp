#include "mub/json_io.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mub::io {
namespace {

using poly::BigRational;
using poly::Polynomial;

Polynomial random_polynomial(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> exp(0, 3), coeff(-50, 50), den(1, 9), count(0, 6);
  std::vector<poly::Term> terms;
  const int k = count(rng);
  for (int t = 0; t < k; ++t) {
    std::vector<poly::Monomial::Exponent> e(n);
    for (auto& x : e) x = static_cast<poly::Monomial::Exponent>(exp(rng));
    terms.push_back({poly::Monomial(e), BigRational(coeff(rng), den(rng))});
  }
  return Polynomial::from_terms(n, std::move(terms));
}

TEST(PolynomialJsonTest, Layout) {
  // 3 x0^2 - 1/2
  const auto p = Polynomial::from_terms(
      2, {{poly::Monomial({2, 0}), BigRational(3)}, {poly::Monomial({0, 0}), BigRational(-1, 2)}});
  const auto j = to_json(p);
  EXPECT_EQ(j.at("n"), 2);
  ASSERT_EQ(j.at("terms").size(), 2u);
  EXPECT_EQ(j.at("terms")[0].at("exp"), json::array({2, 0}));
  EXPECT_EQ(j.at("terms")[0].at("num"), "3");
  EXPECT_EQ(j.at("terms")[0].at("den"), "1");
  EXPECT_EQ(j.at("terms")[1].at("num"), "-1");
  EXPECT_EQ(j.at("terms")[1].at("den"), "2");
}

TEST(PolynomialJsonTest, RoundTrip) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_polynomial(rng, 3);
    EXPECT_EQ(polynomial_from_json(json::parse(to_json(p).dump())), p);
  }
}

TEST(PolynomialJsonTest, BigIntegersAreStrings) {
  const BigRational big =
      poly::make_rational(mpz_class("123456789012345678901234567890"), mpz_class("1000000000000000000000000000001"));
  const auto p = Polynomial::constant(1, big);
  const auto j = to_json(p);
  EXPECT_EQ(j.at("terms")[0].at("num"), "123456789012345678901234567890");
  EXPECT_EQ(j.at("terms")[0].at("den"), "1000000000000000000000000000001");
  EXPECT_EQ(polynomial_from_json(j), p);
}

TEST(PolynomialJsonTest, Malformed) {
  EXPECT_THROW(polynomial_from_json(json::parse(R"({"terms": []})")), std::invalid_argument);
  EXPECT_THROW(polynomial_from_json(json::parse(R"({"n": 2, "terms": [{"exp": [1], "num": "1"}]})")),
               std::invalid_argument);
  EXPECT_THROW(
      polynomial_from_json(json::parse(R"({"n": 1, "terms": [{"exp": [1], "num": "x", "den": "1"}]})")),
      std::invalid_argument);
  EXPECT_THROW(
      polynomial_from_json(json::parse(R"({"n": 1, "terms": [{"exp": [1], "num": "1", "den": "0"}]})")),
      std::invalid_argument);
}

TEST(MatrixJsonTest, RoundTripRowMajor) {
  const auto s = linalg::spectral_matrix();
  const auto j = to_json(s);
  EXPECT_EQ(j.at("rows"), 6);
  EXPECT_EQ(j.at("re").size(), 36u);
  EXPECT_DOUBLE_EQ(j.at("re")[1].get<double>(), s(0, 1).real());
  EXPECT_DOUBLE_EQ(j.at("im")[8].get<double>(), s(1, 2).imag());
  const auto back = matrix_from_json(json::parse(j.dump()));
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t c = 0; c < 6; ++c) EXPECT_EQ(back(r, c), s(r, c));
  }
  EXPECT_THROW(matrix_from_json(json::parse(R"({"rows":2,"cols":2,"re":[1,2,3]})")),
               std::invalid_argument);
}

TEST(SystemJsonTest, QubitSystem) {
  const auto sys = constellation::build_system({2, {1, 1, 1, 1}});
  const auto j = to_json(sys);
  EXPECT_EQ(j.at("spec").at("d"), 2);
  EXPECT_EQ(j.at("spec").at("sizes"), json::array({1, 1, 1, 1}));
  EXPECT_EQ(j.at("variables").size(), 4u);
  ASSERT_EQ(j.at("polys").size(), 5u);
  EXPECT_EQ(j.at("polys")[0].at("condition").at("role"), "modulus");
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(polynomial_from_json(j.at("polys")[k]), sys.polys[k].poly);
  }
}

TEST(CertificateJsonTest, RoundTripVerifies) {
  const auto polys = constellation::build_system({2, {1, 1, 1, 1}}).polynomials();
  groebner::Options opt;
  opt.track_cofactors = true;
  const auto res = groebner::buchberger(polys, poly::MonomialOrder::GradedRevLex, opt);
  ASSERT_TRUE(res.done());
  ASSERT_TRUE(res.trace.has_value());
  const auto cert = groebner::extract_certificate(*res.trace);
  const auto file = certificate_from_json(json::parse(certificate_to_json(polys, cert).dump()));
  EXPECT_TRUE(groebner::verify_certificate(file.polys, file.cert));
  EXPECT_EQ(file.polys, polys);
}

TEST(ReportJsonTest, GridAndHierarchy) {
  const auto rep = gridsearch::exclusion_check_qubit(4);
  const auto jg = to_json(rep);
  EXPECT_EQ(jg.at("verdict"), "survivors_exist");
  EXPECT_EQ(jg.at("surviving"), 9);

  lasserre::HierarchyOptions opt;
  const auto res = lasserre::run_hierarchy(constellation::build_system({2, {1, 1, 1}}), opt);
  const auto jh = to_json(res);
  EXPECT_EQ(jh.at("verdict"), "found");
  EXPECT_EQ(jh.at("point").size(), 2u);
  EXPECT_EQ(jh.at("levels")[0].at("status"), "optimal");
}

}  // namespace
}  // namespace mub::io
