#include <doctest.h>

#include "hardylab/io.hpp"
#include "hardylab/rng.hpp"
#include "hardylab/suites.hpp"

using namespace hardylab;
using io::json;

TEST_CASE("series literals round-trip bit-exactly") {
    Rng rng(55);
    Eigen::VectorXcd c(16);
    for (int i = 0; i < 16; ++i) c(i) = rng.cnormal() * std::pow(10.0, rng.uniform(-12, 8));
    const TruncatedSeries f(c, Field::Complex);
    const std::string text = io::series_to_json(f).dump();
    const TruncatedSeries back = io::series_from_json(json::parse(text));
    CHECK(back.field() == Field::Complex);
    CHECK(back.order() == 16);
    for (int i = 0; i < 16; ++i) CHECK(back.coeff(i) == f.coeff(i));
    CHECK(back.spill() == 0.0);  // freshly parsed input carries no spill
    // serialization is stable
    CHECK(io::series_to_json(back).dump() == text);
}

TEST_CASE("real series serialize coefficients as plain numbers") {
    const auto f = TruncatedSeries::from_list({1.5, -2.25}, 4);
    const json j = io::series_to_json(f);
    CHECK(j.at("field") == "real");
    CHECK(j.at("coeffs").at(0).is_number());
    const TruncatedSeries back = io::series_from_json(j);
    CHECK(back.field() == Field::Real);
    CHECK((back - f).norm() == 0.0);
    // complex literals parse as [re, im] pairs
    const json cj = {{"field", "complex"}, {"order", 2}, {"coeffs", {{0.0, 1.0}, {2.0, 0.0}}}};
    CHECK(io::series_from_json(cj).coeff(0) == Complex(0, 1));
}

TEST_CASE("series parsing validates shape") {
    const json bad = {{"field", "real"}, {"order", 3}, {"coeffs", {1.0}}};
    CHECK_THROWS_AS(io::series_from_json(bad), DimensionMismatchError);
    const json badf = {{"field", "rational"}, {"order", 1}, {"coeffs", {1.0}}};
    CHECK_THROWS_AS(io::series_from_json(badf), DomainError);
}

TEST_CASE("blaschke specs round-trip and validate") {
    BlaschkeSpec spec;
    spec.zeros = {Complex(0.25, -0.125)};
    spec.front = Complex(0, 1);
    spec.monomial_order = 2;
    const json j = io::blaschke_to_json(spec);
    const BlaschkeSpec back = io::blaschke_from_json(j);
    CHECK(back.zeros == spec.zeros);
    CHECK(back.front == spec.front);
    CHECK(back.monomial_order == 2);

    json bad = j;
    bad["zeros"].push_back(json::array({1.5, 0.0}));
    CHECK_THROWS_AS(io::blaschke_from_json(bad), DomainError);
}

TEST_CASE("subspace serialization re-verifies orthonormality on load") {
    const Subspace s = random_subspace(8, 24, 4, Field::Complex);
    const json j = io::subspace_to_json(s);
    const Subspace back = io::subspace_from_json(j);
    CHECK(projector_distance(back, s) == 0.0);
    CHECK(back.field() == Field::Complex);

    json corrupt = j;
    corrupt["basis"][1][0] = json::array({0.5, 0.5});
    CHECK_THROWS_AS(io::subspace_from_json(corrupt), InvariantViolation);
}

TEST_CASE("laurent symbols round-trip") {
    LaurentSymbol s{2, Eigen::VectorXcd::Zero(5)};
    s.coeffs(0) = Complex(1, 0);
    s.coeffs(2) = Complex(-0.25, 0.5);
    const LaurentSymbol back = io::symbol_from_json(io::symbol_to_json(s));
    CHECK(back.half_width == 2);
    CHECK(back.coeff(-2) == Complex(1, 0));
    CHECK(back.coeff(0) == Complex(-0.25, 0.5));
    CHECK(back.coeff(5) == Complex(0, 0));

    json bad = io::symbol_to_json(s);
    bad["half_width"] = 3;
    CHECK_THROWS_AS(io::symbol_from_json(bad), DimensionMismatchError);
}

TEST_CASE("certificates carry the stable field names") {
    suites::SuiteConfig cfg;
    cfg.order = 32;
    cfg.trials = 2;
    const auto certs = suites::run_suite("lemma1", cfg);
    REQUIRE(certs.size() == 2);
    const json j = certs[0].to_json();
    for (const char* key : {"suite", "index", "statement", "pass", "residuals",
                            "tolerances", "instance"})
        CHECK(j.contains(key));
    CHECK(j.at("pass").is_boolean());
}

TEST_CASE("suite registry") {
    CHECK(suites::is_suite_name("lemma1"));
    CHECK(suites::is_suite_name("theta-psi"));
    CHECK_FALSE(suites::is_suite_name("nosuch"));
    CHECK_THROWS_AS(suites::run_suite("nosuch", suites::SuiteConfig{}), DomainError);
    CHECK(suites::suite_names().size() == 8);
}

TEST_CASE("identical configs reproduce identical certificates") {
    suites::SuiteConfig cfg;
    cfg.order = 32;
    cfg.trials = 3;
    cfg.seed = 99;
    const auto a = suites::run_suite("lemma2", cfg);
    const auto b = suites::run_suite("lemma2", cfg);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].to_json().dump() == b[i].to_json().dump());
}
