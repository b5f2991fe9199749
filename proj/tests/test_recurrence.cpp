#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>

#include "oracles.hpp"
#include "schurkernel/kernel.hpp"
#include "schurkernel/recurrence.hpp"

using schur::Complex;
using schur::RecurrenceLaw;
using schur::SchurSequence;

TEST_CASE("extract_law on the rank-1 paper sequence") {
    const auto seq = SchurSequence::open(oracle::half_one_plus_z(2001));
    const auto law = schur::extract_law(seq, 1);
    REQUIRE(law.order == 1);
    REQUIRE(law.lambda.size() == 1);
    CHECK(std::abs(law.lambda(0) - Complex(1.0 / 3.0, 0.0)) < 1e-3);
}

TEST_CASE("extract_law on the rank-2 interleaved sequence") {
    const auto seq = SchurSequence::open(oracle::half_one_plus_z2(2001));
    const auto law = schur::extract_law(seq, 2);
    REQUIRE(law.lambda.size() == 2);
    CHECK(std::abs(law.lambda(0) - Complex(1.0 / 3.0, 0.0)) < 1e-3);
    CHECK(std::abs(law.lambda(1)) < 1e-3);
}

TEST_CASE("extract_law on the alpha=1 family") {
    // gamma = (1/2, 1/2, 1/3, 1/4, ...): lambda = alpha/(alpha+1) = 1/2
    const auto law = schur::extract_law(
        SchurSequence::open(oracle::alpha_one_family(2001)), 1);
    CHECK(std::abs(law.lambda(0) - Complex(0.5, 0.0)) < 1e-3);
}

TEST_CASE("extract_law on the rotated rank-1 family") {
    // gamma_0 = e^{i sigma} w, gamma_n = e^{i(sigma + n beta)}/(alpha + n):
    // lambda = e^{i beta} alpha/(alpha + 1)
    const double sigma = 0.7, beta = 0.4, alpha = 2.0;
    const Complex w(0.3, 0.2);
    std::vector<Complex> params(1501);
    params[0] = std::polar(1.0, sigma) * w;
    for (std::size_t n = 1; n < params.size(); ++n) {
        params[n] = std::polar(1.0 / (alpha + static_cast<double>(n)),
                               sigma + static_cast<double>(n) * beta);
    }
    const auto law = schur::extract_law(SchurSequence::open(params), 1);
    const Complex expected = std::polar(alpha / (alpha + 1.0), beta);
    CHECK(std::abs(law.lambda(0) - expected) < 1e-3);

    // the closed-form iteration regenerates the family from its first terms
    const auto out = schur::rank1_extend(params[0], params[1], expected, 40);
    for (std::size_t n = 0; n < out.seq.size(); ++n) {
        CHECK(std::abs(out.seq.gamma(n) - params[n]) < 1e-12);
    }
}

TEST_CASE("extract_law on 1/(2-z)") {
    // the paper's stated lambda = 2/3 for (1/2, 1/3, 1/4, ...)
    const auto law = schur::extract_law(
        SchurSequence::open(oracle::one_over_two_minus_z(2001)), 1);
    CHECK(std::abs(law.lambda(0) - Complex(2.0 / 3.0, 0.0)) < 1e-3);
}

TEST_CASE("extract_law rejects an ambiguous kernel") {
    // rank 1, asking for order 2: two-dimensional kernel
    const auto seq = SchurSequence::open(oracle::half_one_plus_z(600));
    CHECK_THROWS_AS(schur::extract_law(seq, 2), schur::kernel_error);
}

TEST_CASE("extend reproduces the rank-1 sequence") {
    RecurrenceLaw law;
    law.order = 1;
    law.lambda = Eigen::VectorXcd::Constant(1, Complex(1.0 / 3.0, 0.0));
    law.p = Eigen::VectorXcd(2);
    const double d1 = std::sqrt(5.0) / 3.0;
    law.p << -law.lambda(0) / d1, Complex(1.0, 0.0);

    const auto prefix = SchurSequence::open({Complex(0.5, 0.0), Complex(2.0 / 3.0, 0.0)});
    const auto out = schur::extend(prefix, law, 20);
    REQUIRE(out.size() == 22);
    const auto expected = oracle::half_one_plus_z(out.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        CHECK(std::abs(out.gamma(n) - expected[n]) < 1e-12);
    }
}

TEST_CASE("extend reproduces the rank-2 sequence") {
    RecurrenceLaw law;
    law.order = 2;
    law.lambda = Eigen::VectorXcd(2);
    law.lambda << Complex(1.0 / 3.0, 0.0), Complex(0.0, 0.0);

    const auto prefix = SchurSequence::open(
        {Complex(0.5, 0.0), Complex(0.0, 0.0), Complex(2.0 / 3.0, 0.0)});
    const auto out = schur::extend(prefix, law, 20);
    const auto expected = oracle::half_one_plus_z2(out.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
        CHECK(std::abs(out.gamma(n) - expected[n]) < 1e-12);
    }
}

TEST_CASE("extend with zero lambda appends zeros") {
    RecurrenceLaw law;
    law.order = 1;
    law.lambda = Eigen::VectorXcd::Zero(1);
    const auto prefix = SchurSequence::open({Complex(0.4, 0.0), Complex(0.3, 0.0)});
    const auto out = schur::extend(prefix, law, 5);
    for (std::size_t n = 2; n < out.size(); ++n) {
        CHECK(out.gamma(n) == Complex(0.0, 0.0));
    }
}

TEST_CASE("extend aborts when the law leaves the disk") {
    RecurrenceLaw law;
    law.order = 1;
    law.lambda = Eigen::VectorXcd::Constant(1, Complex(0.9, 0.0));
    const auto prefix = SchurSequence::open({Complex(0.5, 0.0), Complex(2.0 / 3.0, 0.0)});
    CHECK_THROWS_AS(schur::extend(prefix, law, 30), schur::extension_error);
}

TEST_CASE("rank1_extend") {
    {
        const auto out = schur::rank1_extend(Complex(0.5, 0.0), Complex(2.0 / 3.0, 0.0),
                                             Complex(1.0 / 3.0, 0.0), 50);
        REQUIRE(out.seq.size() == 52);
        const auto expected = oracle::half_one_plus_z(out.seq.size());
        for (std::size_t n = 0; n < out.seq.size(); ++n) {
            CHECK(std::abs(out.seq.gamma(n) - expected[n]) < 1e-12);
        }
        CHECK(out.max_bound_violation <= 1e-12);
    }
    {
        // alpha = 1 family: gamma_1 = 1/2, lambda = 1/2 gives 1/3, 1/4, ...
        const auto out = schur::rank1_extend(Complex(0.5, 0.0), Complex(0.5, 0.0),
                                             Complex(0.5, 0.0), 30);
        for (std::size_t n = 1; n < out.seq.size(); ++n) {
            CHECK(std::abs(out.seq.gamma(n) -
                           Complex(1.0 / (static_cast<double>(n) + 1.0), 0.0)) < 1e-12);
        }
    }
    {
        // 1/(2-z): gamma_1 = 1/3, lambda = 2/3 (boundary of (5.72)) gives
        // 1/4, 1/5, ...
        const auto out = schur::rank1_extend(Complex(0.5, 0.0), Complex(1.0 / 3.0, 0.0),
                                             Complex(2.0 / 3.0, 0.0), 30);
        const auto expected = oracle::one_over_two_minus_z(out.seq.size());
        for (std::size_t n = 0; n < out.seq.size(); ++n) {
            CHECK(std::abs(out.seq.gamma(n) - expected[n]) < 1e-12);
        }
    }
    {
        // boundary |lambda| = 1 - |gamma_1| stays inside the disk
        const auto out = schur::rank1_extend(Complex(0.0, 0.0), Complex(0.5, 0.0),
                                             Complex(0.5, 0.0), 50);
        for (std::size_t n = 0; n < out.seq.size(); ++n) {
            CHECK(std::abs(out.seq.gamma(n)) < 1.0);
        }
        CHECK(out.max_bound_violation <= 1e-12);
    }
    CHECK_THROWS_AS(schur::rank1_extend(Complex(0.0, 0.0), Complex(2.0 / 3.0, 0.0),
                                        Complex(0.9, 0.0), 5),
                    schur::domain_error);
}

TEST_CASE("verify_law residuals") {
    {
        // zero law on the zero sequence
        RecurrenceLaw law;
        law.order = 1;
        law.lambda = Eigen::VectorXcd::Zero(1);
        const auto seq = SchurSequence::open(std::vector<Complex>(6, Complex(0.0, 0.0)));
        const auto res = schur::verify_law(seq, law);
        CHECK(res.energy == 0.0);
        CHECK(res.recurrence == 0.0);
    }
    {
        // an exactly extended sequence satisfies its own law to roundoff
        const auto out = schur::rank1_extend(Complex(0.2, 0.0), Complex(0.5, 0.0),
                                             Complex(0.3, 0.0), 300);
        schur::RecurrenceLaw law;
        law.order = 1;
        law.lambda = Eigen::VectorXcd::Constant(1, Complex(0.3, 0.0));
        const auto res = schur::verify_law(out.seq, law);
        CHECK(res.recurrence < 1e-12);
    }
    {
        const auto seq = SchurSequence::open(oracle::half_one_plus_z(2001));
        const auto law = schur::extract_law(seq, 1);
        const auto res = schur::verify_law(seq, law);
        CHECK(res.energy < 1e-8);

        // rank-1 special case (the quadratic-root form)
        const auto pi = schur::tail_products(seq);
        const double pi1sq = pi.at(1) * pi.at(1);
        const double g1sq = std::norm(seq.gamma(1));
        const double lamsq = std::norm(law.lambda(0));
        CHECK(std::abs(pi1sq * (1.0 - g1sq - pi1sq) - lamsq * (1.0 - pi1sq)) < 1e-9);
        // quadratic root identity: x^2 - x(1 - |g1|^2 + |lambda|^2) + |lambda|^2 = 0
        CHECK(std::abs(pi1sq * pi1sq - pi1sq * (1.0 - g1sq + lamsq) + lamsq) < 1e-9);
    }
}

TEST_CASE("extension/extraction roundtrip") {
    oracle::SequenceGen gen(131);
    // rank-1 laws built from random in-disk data
    for (int trial = 0; trial < 5; ++trial) {
        std::uniform_real_distribution<double> mag(0.2, 0.6);
        std::uniform_real_distribution<double> phase(0.0, 6.28318);
        const double g1 = mag(gen.rng);
        const double lam_mag = std::min(0.9 * (1.0 - g1), mag(gen.rng));
        const double t = phase(gen.rng);
        const Complex lambda(lam_mag * std::cos(t), lam_mag * std::sin(t));
        if (std::abs(lambda) < 0.05) continue;

        const auto out = schur::rank1_extend(Complex(0.3, 0.1), Complex(g1, 0.0),
                                             lambda, 400);
        const auto law = schur::extract_law(out.seq, 1);
        CHECK(std::abs(law.lambda(0) - lambda) < 1e-8);
    }
}

TEST_CASE("rank-2 extension/extraction roundtrip") {
    schur::RecurrenceLaw law;
    law.order = 2;
    law.lambda = Eigen::VectorXcd(2);
    law.lambda << Complex(0.28, 0.05), Complex(0.1, -0.04);
    const auto prefix = SchurSequence::open(
        {Complex(0.3, 0.0), Complex(0.1, 0.2), Complex(0.45, -0.1)});
    const auto out = schur::extend(prefix, law, 700);
    const auto recovered = schur::extract_law(out, 2);
    CHECK((recovered.lambda - law.lambda).norm() < 1e-8);
}

TEST_CASE("kernel basis structure for r above the rank") {
    // rank-1 sequence, r = 3: ker A_4 has dimension 3 spanned by shifted
    // images of p under products of adjoint M matrices
    const auto out = schur::rank1_extend(Complex(0.2, 0.0), Complex(0.5, 0.0),
                                         Complex(0.25, 0.0), 800);
    const auto& seq = out.seq;
    const auto law = schur::extract_law(seq, 1);

    const int n0 = 1;
    const int r = 3;
    std::vector<Eigen::VectorXcd> tilde;
    tilde.push_back(law.p);
    for (int j = 1; j <= r - n0; ++j) {
        const auto m =
            schur::m_matrix(schur::shift(seq, static_cast<std::size_t>(j - 1)), n0 + 1);
        tilde.push_back(m.adjoint() * tilde.back());
    }
    const auto a = schur::a_matrix(seq, r + 1);
    Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(r + 1, r - n0 + 1);
    for (int j = 0; j <= r - n0; ++j) {
        basis.block(j, j, n0 + 2 - 1, 1) = tilde[static_cast<std::size_t>(j)];
        CHECK((a * basis.col(j)).norm() < 1e-6 * basis.col(j).norm());
    }
    // linear independence
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(basis);
    CHECK(svd.singularValues().minCoeff() > 1e-6);
}

TEST_CASE("lm5.18 constant vector solves the shifted systems") {
    // rank-1: a is constant across shifts; (I - L^* L) a = b / Pi_{n0+j+1}
    const auto out = schur::rank1_extend(Complex(0.3, 0.0), Complex(0.5, 0.0),
                                         Complex(0.3, 0.0), 1500);
    const auto& seq = out.seq;
    const auto law = schur::extract_law(seq, 1);
    const auto pi = schur::tail_products(seq);

    const int n0 = 1;
    // kernel vector (v, 1): a = L_{n0}(gamma)^{-1} v / Pi_{n0+1}
    const auto l0 = schur::l_matrix(seq, n0);
    const Eigen::VectorXcd a_vec =
        l0.triangularView<Eigen::Lower>().solve(law.p.head(n0)) / pi.at(n0 + 1);
    CHECK(std::abs(a_vec(0)) > 1e-12);  // a_1 != 0

    for (int j = 0; j <= 3; ++j) {
        const auto tail = schur::shift(seq, static_cast<std::size_t>(j));
        const auto l = schur::l_matrix(tail, n0);
        const auto table = schur::l_table(tail, n0);
        // b_{n0}(W^j gamma) = Pi_{n0+j+1} col(conj L_{n0}(W^{j+1}), ..., conj L_1(W^{n0+j}))
        Eigen::VectorXcd b(n0);
        for (int i = 1; i <= n0; ++i) {
            b(i - 1) = pi.at(static_cast<std::size_t>(n0 + j + 1)) *
                       std::conj(table.at(static_cast<std::size_t>(i),
                                          static_cast<std::size_t>(n0 + 1 - i)));
        }
        const Eigen::VectorXcd lhs =
            (Eigen::MatrixXcd::Identity(n0, n0) - l.adjoint() * l) * a_vec;
        const Eigen::VectorXcd rhs = b / pi.at(static_cast<std::size_t>(n0 + j + 1));
        CHECK((lhs - rhs).norm() < 1e-6);
    }
}

TEST_CASE("rank-1 regeneration via the w function") {
    // thm5.19 (2b) at n0 = 1: gamma_m = w(W^m gamma) with
    // w(gamma') = -gamma'_1 / (a_1 Pi'^2_1)
    const auto out = schur::rank1_extend(Complex(0.4, 0.0), Complex(0.45, 0.0),
                                         Complex(0.35, 0.0), 1200);
    const auto& seq = out.seq;
    const auto law = schur::extract_law(seq, 1);
    const auto pi = schur::tail_products(seq);
    const double pi1sq = pi.at(1) * pi.at(1);
    const Complex a1 = -law.lambda(0) / pi1sq;

    for (std::size_t m = 1; m <= 6; ++m) {
        const double pim = pi.at(m + 1);
        const Complex w = -seq.gamma(m + 1) / (a1 * pim * pim);
        CHECK(std::abs(seq.gamma(m) - w) < 1e-9);
    }
}
