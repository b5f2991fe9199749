#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "schurkernel/core.hpp"

using schur::Complex;
using schur::SchurSequence;

TEST_CASE("defect values") {
    CHECK(schur::defect(Complex(0.0, 0.0)) == 1.0);
    CHECK(schur::defect(Complex(2.0 / 3.0, 0.0)) ==
          doctest::Approx(std::sqrt(5.0) / 3.0).epsilon(1e-14));
    CHECK(schur::defect(Complex(1.0, 0.0)) == 0.0);
    CHECK_THROWS_AS(schur::defect(Complex(1.5, 0.0)), schur::domain_error);
}

TEST_CASE("sequence validation") {
    CHECK_NOTHROW(SchurSequence::open({Complex(0.5, 0.0), Complex(-0.3, 0.2)}));
    CHECK_THROWS_AS(SchurSequence::open({Complex(1.0, 0.0)}), schur::domain_error);
    CHECK_THROWS_AS(SchurSequence::open({Complex(1.2, 0.0)}), schur::non_schur_error);

    CHECK_NOTHROW(SchurSequence::terminated({Complex(0.5, 0.0), Complex(0.0, 1.0)}));
    CHECK_THROWS_AS(SchurSequence::terminated({Complex(0.5, 0.0)}), schur::domain_error);
    // interior unimodular entry
    CHECK_THROWS_AS(
        SchurSequence::terminated({Complex(1.0, 0.0), Complex(0.5, 0.0), Complex(1.0, 0.0)}),
        schur::domain_error);
}

TEST_CASE("tail products basics") {
    const auto zero = SchurSequence::open(
        {Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0)});
    const auto t = schur::tail_products(zero);
    REQUIRE(t.pi.size() == 4);
    for (double v : t.pi) CHECK(v == 1.0);

    CHECK_THROWS_AS(
        schur::tail_products(SchurSequence::terminated({Complex(1.0, 0.0)})),
        schur::domain_error);
}

TEST_CASE("tail products telescoping limits") {
    // gamma_j = 2/(2j+1): Pi_1^2 -> 1/3
    {
        const std::size_t n = 2001;
        const auto seq = SchurSequence::open(oracle::half_one_plus_z(n));
        const auto t = schur::tail_products(seq);
        const double pi1sq = t.pi[1] * t.pi[1];
        CHECK(std::abs(pi1sq - oracle::half_one_plus_z_pi1_squared(n)) < 1e-12);
        CHECK(std::abs(pi1sq - 1.0 / 3.0) < 1e-3);
    }
    // gamma_j = 1/(j+2): Pi_1^2 -> 2/3
    {
        const std::size_t n = 2001;
        const auto seq = SchurSequence::open(oracle::one_over_two_minus_z(n));
        const auto t = schur::tail_products(seq);
        const double pi1sq = t.pi[1] * t.pi[1];
        CHECK(std::abs(pi1sq - oracle::one_over_two_minus_z_pi1_squared(n)) < 1e-12);
        CHECK(std::abs(pi1sq - 2.0 / 3.0) < 1e-3);
    }
    // tail gamma_j = 1/(j+1), j >= 1: Pi_1^2 -> 1/2
    {
        const std::size_t n = 2001;
        const auto seq = SchurSequence::open(oracle::alpha_one_family(n));
        const auto t = schur::tail_products(seq);
        const double pi1sq = t.pi[1] * t.pi[1];
        CHECK(std::abs(pi1sq - oracle::alpha_one_family_pi1_squared(n)) < 1e-12);
        CHECK(std::abs(pi1sq - 0.5) < 1e-3);
    }
}

TEST_CASE("shift") {
    const auto seq = SchurSequence::open(
        {Complex(0.5, 0.0), Complex(2.0 / 3.0, 0.0), Complex(0.4, 0.0)});
    const auto w = schur::shift(seq, 1);
    REQUIRE(w.size() == 2);
    CHECK(w.gamma(0) == Complex(2.0 / 3.0, 0.0));
    CHECK(w.gamma(1) == Complex(0.4, 0.0));

    CHECK(schur::shift(seq, 0).params() == seq.params());

    const auto past_end = schur::shift(seq, 7);
    CHECK(past_end.size() == 0);
    CHECK(past_end.gamma(0) == Complex(0.0, 0.0));  // zero-tail policy

    const auto two = schur::shift(seq, 2);
    REQUIRE(two.size() == 1);
    CHECK(two.gamma(0) == Complex(0.4, 0.0));

    // shifting a terminated sequence keeps the terminal unimodular entry
    const auto blaschke = SchurSequence::terminated(
        {Complex(0.5, 0.0), Complex(0.2, 0.0), Complex(0.0, 1.0)});
    const auto shifted = schur::shift(blaschke, 1);
    CHECK(!shifted.is_open());
    REQUIRE(shifted.size() == 2);
    CHECK(shifted.gamma(1) == Complex(0.0, 1.0));
}

TEST_CASE("shift consistency of tail products") {
    oracle::SequenceGen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto params = gen.draw(12, 0.8, 0.9);
        const auto seq = SchurSequence::open(params);
        const auto t = schur::tail_products(seq);
        const auto ts = schur::tail_products(schur::shift(seq, 1));
        for (std::size_t k = 0; k < ts.pi.size(); ++k) {
            // same multiplication order: exact equality
            CHECK(ts.pi[k] == t.pi[k + 1]);
        }
        CHECK(std::abs(t.pi[0] - seq.d(0) * t.pi[1]) < 1e-15);
    }
}
