#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "schurkernel/transform.hpp"

using schur::Complex;
using schur::SchurSequence;
using schur::TaylorCoefficients;

namespace {

TaylorCoefficients coeffs(std::vector<Complex> v) { return TaylorCoefficients{std::move(v)}; }

}  // namespace

TEST_CASE("schur algorithm on (1+z)/2") {
    std::vector<Complex> c(12, Complex(0.0, 0.0));
    c[0] = c[1] = Complex(0.5, 0.0);
    const auto seq = schur::taylor_to_schur(coeffs(c));
    REQUIRE(seq.is_open());
    REQUIRE(seq.size() == 12);
    const auto expected = oracle::half_one_plus_z(12);
    for (std::size_t j = 0; j < seq.size(); ++j) {
        CHECK(std::abs(seq.gamma(j) - expected[j]) < 1e-12);
    }
}

TEST_CASE("schur algorithm on 1/(2-z)") {
    std::vector<Complex> c(12);
    for (std::size_t n = 0; n < c.size(); ++n) {
        c[n] = Complex(std::pow(2.0, -(static_cast<double>(n) + 1.0)), 0.0);
    }
    const auto seq = schur::taylor_to_schur(coeffs(c));
    REQUIRE(seq.is_open());
    const auto expected = oracle::one_over_two_minus_z(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
        CHECK(std::abs(seq.gamma(j) - expected[j]) < 1e-12);
    }
}

TEST_CASE("schur algorithm on (1+z^2)/2") {
    std::vector<Complex> c(11, Complex(0.0, 0.0));
    c[0] = c[2] = Complex(0.5, 0.0);
    const auto seq = schur::taylor_to_schur(coeffs(c));
    REQUIRE(seq.is_open());
    const auto expected = oracle::half_one_plus_z2(seq.size());
    for (std::size_t j = 0; j < seq.size(); ++j) {
        CHECK(std::abs(seq.gamma(j) - expected[j]) < 1e-12);
    }
}

TEST_CASE("schur algorithm terminates on a monomial") {
    std::vector<Complex> c(6, Complex(0.0, 0.0));
    c[3] = Complex(0.0, 1.0);  // theta = i z^3
    const auto seq = schur::taylor_to_schur(coeffs(c));
    REQUIRE(!seq.is_open());
    REQUIRE(seq.size() == 4);
    CHECK(seq.gamma(0) == Complex(0.0, 0.0));
    CHECK(seq.gamma(2) == Complex(0.0, 0.0));
    CHECK(std::abs(seq.gamma(3) - Complex(0.0, 1.0)) < 1e-14);
}

TEST_CASE("non-Schur sections are rejected with the failing index") {
    try {
        schur::taylor_to_schur(coeffs({Complex(0.9, 0.0), Complex(0.9, 0.0)}));
        FAIL("expected non_schur_error");
    } catch (const schur::non_schur_error& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("schur_to_taylor on paper examples") {
    {
        const auto seq = SchurSequence::open(oracle::half_one_plus_z(5));
        const auto c = schur::schur_to_taylor(seq, 3);
        REQUIRE(c.c.size() == 3);
        CHECK(std::abs(c.c[0] - Complex(0.5, 0.0)) < 1e-12);
        CHECK(std::abs(c.c[1] - Complex(0.5, 0.0)) < 1e-12);
        CHECK(std::abs(c.c[2]) < 1e-12);
    }
    {
        const auto seq = SchurSequence::open({Complex(0.3, -0.4)});
        const auto c = schur::schur_to_taylor(seq, 1);
        CHECK(c.c[0] == Complex(0.3, -0.4));
    }
    {
        const auto seq = SchurSequence::terminated(
            {Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(-1.0, 0.0)});
        const auto c = schur::schur_to_taylor(seq, 3);
        CHECK(std::abs(c.c[0]) < 1e-14);
        CHECK(std::abs(c.c[1]) < 1e-14);
        CHECK(std::abs(c.c[2] - Complex(-1.0, 0.0)) < 1e-14);
    }
    CHECK_THROWS_AS(
        schur::schur_to_taylor(SchurSequence::open({Complex(0.5, 0.0)}), 2),
        schur::domain_error);
}

TEST_CASE("roundtrip schur -> taylor -> schur") {
    oracle::SequenceGen gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto params = gen.draw(1 + trial % 15, 0.9, 1.0);
        const auto seq = SchurSequence::open(params);
        const auto c = schur::schur_to_taylor(seq, static_cast<int>(seq.size()));
        const auto back = schur::taylor_to_schur(c);
        REQUIRE(back.size() >= seq.size());
        for (std::size_t j = 0; j < seq.size(); ++j) {
            CHECK(std::abs(back.gamma(j) - seq.gamma(j)) < 1e-8);
        }
    }
}

TEST_CASE("roundtrip for finite Blaschke products") {
    oracle::SequenceGen gen(9);
    std::uniform_real_distribution<double> phase(0.0, 6.28318);
    for (int degree = 1; degree <= 6; ++degree) {
        auto params = gen.draw(static_cast<std::size_t>(degree), 0.7, 1.0);
        const double t = phase(gen.rng);
        params.emplace_back(std::cos(t), std::sin(t));
        const auto seq = SchurSequence::terminated(params);
        const auto c = schur::schur_to_taylor(seq, static_cast<int>(seq.size()));
        const auto back = schur::taylor_to_schur(c, 1e-8);
        REQUIRE(!back.is_open());
        REQUIRE(back.size() == seq.size());
        for (std::size_t j = 0; j < seq.size(); ++j) {
            CHECK(std::abs(back.gamma(j) - seq.gamma(j)) < 1e-8);
        }
    }
}

TEST_CASE("schur parameter locality") {
    // c_0..c_n determine gamma_0..gamma_n: changing c_{n+1} leaves them alone
    std::vector<Complex> c{Complex(0.4, 0.1), Complex(-0.2, 0.3), Complex(0.1, 0.0),
                           Complex(0.05, -0.02)};
    const auto base = schur::taylor_to_schur(coeffs(c));
    auto modified = c;
    modified[3] = Complex(-0.3, 0.25);
    const auto changed = schur::taylor_to_schur(coeffs(modified));
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(base.gamma(j) - changed.gamma(j)) < 1e-15);
    }
}

TEST_CASE("moment recursion") {
    {
        const auto m = schur::taylor_to_moments(coeffs({Complex(0.0, 0.0), Complex(0.0, 0.0)}));
        CHECK(m.s[0] == Complex(0.0, 0.0));
        CHECK(m.s[1] == Complex(0.0, 0.0));
    }
    {
        // point mass at t = 1: c = (1, 0, 0, ...) gives s = (1, 1, 1, ...)
        const auto m = schur::taylor_to_moments(
            coeffs({Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)}));
        for (const auto& s : m.s) CHECK(std::abs(s - Complex(1.0, 0.0)) < 1e-14);
    }
    {
        const auto m = schur::taylor_to_moments(
            coeffs({Complex(0.5, 0.0), Complex(0.5, 0.0), Complex(0.0, 0.0)}));
        CHECK(std::abs(m.s[0] - Complex(0.5, 0.0)) < 1e-14);
        CHECK(std::abs(m.s[1] - Complex(0.75, 0.0)) < 1e-14);
        // s_3 = c_0 s_2 + c_1 s_1 + c_2 = 3/8 + 1/4 = 5/8 (cross-checked
        // against the Caratheodory expansion of (2+z+z^2)/(2-z-z^2))
        CHECK(std::abs(m.s[2] - Complex(0.625, 0.0)) < 1e-14);
    }
}

TEST_CASE("caratheodory coefficients") {
    {
        const auto phi = schur::caratheodory_coefficients(schur::MomentSequence{{}});
        REQUIRE(phi.size() == 1);
        CHECK(phi[0] == Complex(1.0, 0.0));
    }
    {
        const auto phi = schur::caratheodory_coefficients(
            schur::MomentSequence{{Complex(0.5, 0.0), Complex(0.75, 0.0)}});
        CHECK(phi[0] == Complex(1.0, 0.0));
        CHECK(phi[1] == Complex(1.0, 0.0));
        CHECK(phi[2] == Complex(1.5, 0.0));
    }
    {
        const auto phi = schur::caratheodory_coefficients(schur::MomentSequence{
            {Complex(1.0, 0.0), Complex(1.0, 0.0), Complex(1.0, 0.0)}});
        CHECK(phi[0] == Complex(1.0, 0.0));
        for (std::size_t k = 1; k < phi.size(); ++k) CHECK(phi[k] == Complex(2.0, 0.0));
    }
}
