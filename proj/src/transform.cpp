#include "schurkernel/transform.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace schur {

SchurSequence taylor_to_schur(const TaylorCoefficients& c, double tol_unit) {
    if (c.c.empty()) throw domain_error("taylor_to_schur: empty coefficient list");

    std::vector<Complex> theta = c.c;
    std::vector<Complex> gamma;
    gamma.reserve(theta.size());

    for (std::size_t j = 0;; ++j) {
        const Complex g = theta[0];
        const double mag = std::abs(g);
        if (mag > 1.0 + tol_unit) {
            throw non_schur_error(
                "not a Schur function section: |gamma_" + std::to_string(j) +
                    "| = " + std::to_string(mag),
                j);
        }
        gamma.push_back(g);
        if (mag >= 1.0 - tol_unit) {
            return SchurSequence::terminated(std::move(gamma), tol_unit);
        }
        if (theta.size() <= 1) break;

        // one Schur step, dropping one order
        const std::size_t len = theta.size() - 1;
        std::vector<Complex> quotient(len);
        const Complex cg = std::conj(g);
        const double den0 = 1.0 - std::norm(g);  // 1 - conj(g) theta(0), real
        for (std::size_t i = 0; i < len; ++i) {
            Complex acc = theta[i + 1];  // (theta - g)/zeta
            for (std::size_t k = 1; k <= i; ++k) {
                acc -= (-cg * theta[k]) * quotient[i - k];
            }
            quotient[i] = acc / den0;
        }
        theta = std::move(quotient);
    }
    return SchurSequence::open(std::move(gamma), tol_unit);
}

TaylorCoefficients schur_to_taylor(const SchurSequence& seq, int n_terms) {
    if (n_terms < 1) throw domain_error("schur_to_taylor: n_terms must be positive");
    if (static_cast<std::size_t>(n_terms) > seq.size()) {
        throw domain_error("schur_to_taylor: n_terms exceeds available parameters");
    }

    TaylorCoefficients out;
    out.c.resize(static_cast<std::size_t>(n_terms));
    out.c[0] = seq.gamma(0);
    if (n_terms == 1) return out;

    // block size: exact degree for terminated sequences, n_terms otherwise
    const int m = seq.is_open() ? n_terms : static_cast<int>(seq.size()) - 1;
    if (m == 0) {
        // constant unimodular function: all higher coefficients vanish
        for (int n = 1; n < n_terms; ++n) out.c[static_cast<std::size_t>(n)] = 0.0;
        return out;
    }

    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 1; k <= m; ++k) {
        const Complex gk = seq.gamma(static_cast<std::size_t>(k));
        double prod = 1.0;
        for (int n = k; n >= 1; --n) {
            t(n - 1, k - 1) =
                -std::conj(seq.gamma(static_cast<std::size_t>(n - 1))) * gk * prod;
            prod *= seq.d(static_cast<std::size_t>(n - 1));
        }
        if (k < m) t(k, k - 1) = seq.d(static_cast<std::size_t>(k));
    }

    Eigen::RowVectorXcd g_row(m);
    double dprod = seq.d(0);
    for (int k = 1; k <= m; ++k) {
        g_row(k - 1) = seq.gamma(static_cast<std::size_t>(k)) * dprod;
        dprod *= seq.d(static_cast<std::size_t>(k));
    }

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
    v(0) = seq.d(0);  // F column
    for (int n = 1; n < n_terms; ++n) {
        out.c[static_cast<std::size_t>(n)] = g_row * v;
        if (n + 1 < n_terms) v = (t * v).eval();
    }
    return out;
}

MomentSequence taylor_to_moments(const TaylorCoefficients& c) {
    MomentSequence m;
    const std::size_t n = c.c.size();
    m.s.resize(n);
    for (std::size_t k = 1; k <= n; ++k) {
        Complex acc = c.c[k - 1];  // the c_{n-1} term (s_0 = 1)
        for (std::size_t i = 1; i < k; ++i) {
            acc += c.c[i - 1] * m.s[k - i - 1];
        }
        m.s[k - 1] = acc;
    }
    return m;
}

std::vector<Complex> caratheodory_coefficients(const MomentSequence& s) {
    std::vector<Complex> phi;
    phi.reserve(s.s.size() + 1);
    phi.emplace_back(1.0, 0.0);
    for (const Complex& v : s.s) phi.push_back(2.0 * v);
    return phi;
}

}  // namespace schur
