#include "schurkernel/kernel.hpp"

#include <cmath>

namespace schur {

namespace {

void require_open(const SchurSequence& seq, const char* what) {
    if (!seq.is_open()) {
        throw domain_error(std::string(what) + ": sequence must be open");
    }
}

}  // namespace

LTable l_table(const SchurSequence& seq, int n_max) {
    require_open(seq, "l_table");
    if (n_max < 0) throw domain_error("l_table: n_max must be nonnegative");
    const Eigen::Index rows = static_cast<Eigen::Index>(seq.size()) + 1;
    const Eigen::Index cols = n_max + 1;

    LTable table;
    table.values.setZero(rows, cols);
    table.values.col(0).setOnes();

    // L_n(W^m gamma) = L_n(W^{m+1} gamma)
    //                  - conj(gamma_{m+n}) sum_{j<n} gamma_{m+j} L_j(W^m gamma)
    for (Eigen::Index m = rows - 2; m >= 0; --m) {
        for (Eigen::Index n = 1; n < cols; ++n) {
            Complex acc(0.0, 0.0);
            for (Eigen::Index j = 0; j < n; ++j) {
                acc += seq.gamma(static_cast<std::size_t>(m + j)) * table.values(m, j);
            }
            table.values(m, n) =
                table.values(m + 1, n) -
                std::conj(seq.gamma(static_cast<std::size_t>(m + n))) * acc;
        }
    }
    return table;
}

Complex q_value(const SchurSequence& seq) {
    require_open(seq, "q_value");
    if (seq.size() == 0) return Complex(0.0, 0.0);
    const LTable table = l_table(seq, static_cast<int>(seq.size()) - 1);
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < seq.size(); ++j) {
        acc += seq.gamma(j) * table.at(0, j);
    }
    return -acc;
}

std::vector<Complex> q_values(const SchurSequence& seq) {
    require_open(seq, "q_values");
    const std::size_t n = seq.size();
    std::vector<Complex> q(n + 1, Complex(0.0, 0.0));
    if (n == 0) return q;
    const LTable table = l_table(seq, static_cast<int>(n) - 1);
    for (std::size_t m = 0; m < n; ++m) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; m + j < n; ++j) {
            acc += seq.gamma(m + j) * table.at(m, j);
        }
        q[m] = -acc;
    }
    return q;
}

Eigen::MatrixXcd hankel_q(const SchurSequence& seq, int n) {
    require_open(seq, "hankel_q");
    if (n < 1) throw domain_error("hankel_q: n must be positive");
    const std::vector<Complex> q = q_values(seq);
    auto q_at = [&](std::size_t m) {
        return m < q.size() ? q[m] : Complex(0.0, 0.0);
    };
    Eigen::MatrixXcd h(n, n);
    for (int s = 1; s <= 2 * n - 1; ++s) {
        const Complex value = q_at(static_cast<std::size_t>(s));
        for (int i = std::max(1, s - n + 1); i <= std::min(n, s); ++i) {
            h(i - 1, s - i) = value;  // entry (i, j) with i + j - 1 = s
        }
    }
    return h;
}

Eigen::MatrixXcd l_matrix(const SchurSequence& seq, int n) {
    require_open(seq, "l_matrix");
    if (n < 1) throw domain_error("l_matrix: depth must be positive");
    const TailProducts pi = tail_products(seq);
    const LTable table = l_table(seq, n - 1);
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= k; ++j) {
            l(k - 1, j - 1) = pi.at(static_cast<std::size_t>(k)) *
                              table.at(static_cast<std::size_t>(j),
                                       static_cast<std::size_t>(k - j));
        }
    }
    return l;
}

Eigen::MatrixXcd m_matrix(const SchurSequence& seq, int n) {
    require_open(seq, "m_matrix");
    if (n < 1) throw domain_error("m_matrix: depth must be positive");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        m(k - 1, k - 1) = seq.d(static_cast<std::size_t>(k));
        const Complex cg = std::conj(seq.gamma(static_cast<std::size_t>(k)));
        double prod = 1.0;
        for (int j = k - 1; j >= 1; --j) {
            // prod = prod_{i=j+1}^{k-1} D_{gamma_i}
            m(k - 1, j - 1) = -seq.gamma(static_cast<std::size_t>(j)) * prod * cg;
            prod *= seq.d(static_cast<std::size_t>(j));
        }
    }
    return m;
}

Eigen::VectorXcd eta_vector(const SchurSequence& seq, int n) {
    if (n < 1) throw domain_error("eta_vector: depth must be positive");
    Eigen::VectorXcd eta(n);
    double prod = 1.0;
    for (int k = 1; k <= n; ++k) {
        eta(k - 1) = std::conj(seq.gamma(static_cast<std::size_t>(k))) * prod;
        prod *= seq.d(static_cast<std::size_t>(k));
    }
    return eta;
}

Eigen::VectorXcd lambda_vector(const SchurSequence& seq, int n) {
    if (n < 1) throw domain_error("lambda_vector: depth must be positive");
    Eigen::VectorXcd lam(n);
    lam(0) = std::conj(seq.gamma(1));
    double inv = 1.0;
    for (int k = 2; k <= n; ++k) {
        const double dk = seq.d(static_cast<std::size_t>(k));
        if (dk == 0.0) throw domain_error("lambda_vector: unimodular parameter");
        inv /= dk;
        lam(k - 1) = std::conj(seq.gamma(static_cast<std::size_t>(k))) * inv;
    }
    return lam;
}

Eigen::MatrixXcd a_matrix(const SchurSequence& seq, int n) {
    const Eigen::MatrixXcd l = l_matrix(seq, n);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n) - l * l.adjoint();
    // symmetrize away roundoff
    a = (a + a.adjoint().eval()) / 2.0;
    return a;
}

std::vector<double> leading_minors(const Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    std::vector<double> sigma(static_cast<std::size_t>(n) + 1, 0.0);
    sigma[0] = 1.0;

    double scale = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        scale = std::max(scale, std::abs(std::real(a(i, i))));
    }
    const double pivot_floor = 1e-14 * scale;

    Eigen::MatrixXcd w = a;
    double running = 1.0;
    bool degenerate = false;
    for (Eigen::Index m = 0; m < n; ++m) {
        if (!degenerate) {
            const double piv = std::real(w(m, m));
            if (!std::isfinite(piv) || std::abs(piv) < pivot_floor) {
                degenerate = true;
            } else {
                running *= piv;
                sigma[static_cast<std::size_t>(m) + 1] = running;
                for (Eigen::Index r = m + 1; r < n; ++r) {
                    const Complex f = w(r, m) / piv;
                    w.row(r).segment(m + 1, n - m - 1) -=
                        f * w.row(m).segment(m + 1, n - m - 1);
                }
                continue;
            }
        }
        sigma[static_cast<std::size_t>(m) + 1] = std::real(
            a.topLeftCorner(m + 1, m + 1).fullPivLu().determinant());
    }
    return sigma;
}

KernelBundle build_bundle(const SchurSequence& seq, int n) {
    require_open(seq, "build_bundle");
    if (n < 1) throw domain_error("build_bundle: depth must be positive");
    KernelBundle b;
    b.depth = n;
    b.l_mat = l_matrix(seq, n);
    b.m_mat = m_matrix(seq, n);
    b.eta = eta_vector(seq, n);
    b.a_mat = Eigen::MatrixXcd::Identity(n, n) - b.l_mat * b.l_mat.adjoint();
    b.a_mat = ((b.a_mat + b.a_mat.adjoint().eval()) / 2.0).eval();
    b.sigma = leading_minors(b.a_mat);
    return b;
}

SmallestEigen smallest_eigenpair(const Eigen::MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    if (es.info() != Eigen::Success) {
        throw kernel_error("eigendecomposition failed");
    }
    SmallestEigen out;
    out.lambda_min = es.eigenvalues()(0);
    out.lambda_next = a.rows() > 1 ? es.eigenvalues()(1) : out.lambda_min;
    out.vec = es.eigenvectors().col(0);
    return out;
}

}  // namespace schur
