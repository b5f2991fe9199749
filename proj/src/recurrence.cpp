#include "schurkernel/recurrence.hpp"

#include <cmath>

#include "schurkernel/kernel.hpp"

namespace schur {

KernelVectorResult kernel_vector(const Eigen::MatrixXcd& a, const Tolerances& tol) {
    const SmallestEigen eig = smallest_eigenpair(a);
    const double lam_min = std::max(eig.lambda_min, 0.0);
    const double tiny = 1e-15 * std::max(1.0, std::abs(eig.lambda_next));
    if (eig.lambda_next < tol.sep * std::max(lam_min, tiny)) {
        throw kernel_error("ambiguous kernel: smallest eigenvalues " +
                           std::to_string(eig.lambda_min) + " and " +
                           std::to_string(eig.lambda_next) + " not separated");
    }
    const Eigen::Index last = eig.vec.size() - 1;
    const double last_mag = std::abs(eig.vec(last));
    if (last_mag < 1e-8) {
        throw kernel_error("inconsistent rank: kernel vector has vanishing last coordinate");
    }
    KernelVectorResult out;
    out.vec = eig.vec / eig.vec(last);
    out.lambda_min = eig.lambda_min;
    out.lambda_next = eig.lambda_next;
    out.residual = (a * out.vec).norm() / out.vec.norm();
    if (out.residual > tol.kernel) {
        throw kernel_error("kernel residual " + std::to_string(out.residual) +
                           " exceeds tolerance");
    }
    return out;
}

RecurrenceLaw extract_law(const SchurSequence& seq, int r, const Tolerances& tol) {
    if (!seq.is_open()) throw domain_error("extract_law: sequence must be open");
    if (r < 1) throw domain_error("extract_law: order must be positive");

    const KernelVectorResult kv = kernel_vector(a_matrix(seq, r + 1), tol);

    double dprod = 1.0;
    for (int k = 1; k <= r; ++k) dprod *= seq.d(static_cast<std::size_t>(k));

    RecurrenceLaw law;
    law.order = r;
    law.p = kv.vec;
    law.lambda = -dprod * kv.vec.head(r);
    return law;
}

namespace {

// lower-triangular solve against M_r(W^j gamma) built on the fly
void solve_m_inplace(const SchurSequence& seq, std::size_t shift_by, int r,
                     Eigen::VectorXcd& x) {
    const SchurSequence s = shift(seq, shift_by);
    const Eigen::MatrixXcd m = m_matrix(s, r);
    x = m.triangularView<Eigen::Lower>().solve(x);
}

Eigen::VectorXcd accumulated_inverse_product(const SchurSequence& seq, int r,
                                             const Eigen::VectorXcd& lambda,
                                             std::size_t n) {
    // [prod_{j=0}^{n-r-1} M_r^{-1}(W^j gamma)] lambda, applied left to right
    Eigen::VectorXcd u = lambda;
    for (std::size_t j = 0; j + static_cast<std::size_t>(r) < n; ++j) {
        solve_m_inplace(seq, j, r, u);
    }
    return u;
}

}  // namespace

SchurSequence extend(const SchurSequence& prefix, const RecurrenceLaw& law,
                     int count, const Tolerances& tol, int refresh_every) {
    if (!prefix.is_open()) throw domain_error("extend: prefix must be open");
    const int r = law.order;
    if (r < 1 || law.lambda.size() != r) throw domain_error("extend: malformed law");
    if (prefix.size() < static_cast<std::size_t>(r) + 1) {
        throw domain_error("extend: prefix shorter than order + 1");
    }

    std::vector<Complex> g = prefix.params();
    std::size_t n = g.size() - 1;

    auto current = [&]() { return SchurSequence::open(g); };

    double dprod = 1.0;  // prod_{s=1}^{n} D_{gamma_s}
    for (std::size_t s = 1; s <= n; ++s) dprod *= defect(g[s]);

    Eigen::VectorXcd u = accumulated_inverse_product(current(), r, law.lambda, n);
    int since_refresh = 0;

    for (int step = 0; step < count; ++step) {
        // tail scaling prod_{k=n-r+1}^{n} D^{-1} and the inner product with eta_r
        double tail_inv = 1.0;
        for (std::size_t k = n - static_cast<std::size_t>(r) + 1; k <= n; ++k) {
            tail_inv /= defect(g[k]);
        }
        Complex acc(0.0, 0.0);
        double eprod = 1.0;  // prod of defects inside eta
        for (int k = 1; k <= r; ++k) {
            const Complex gk = g[n - static_cast<std::size_t>(r) + static_cast<std::size_t>(k)];
            // conj(eta_k) = gamma_{n-r+k} * prod_{j<k} D
            acc += gk * eprod * u(k - 1);
            eprod *= defect(gk);
        }
        const Complex next = acc * tail_inv / dprod;

        if (std::abs(next) >= 1.0 - tol.margin) {
            throw extension_error("law/prefix inconsistent: parameter left the disk at step " +
                                      std::to_string(n + 1),
                                  n + 1);
        }

        g.push_back(next);
        ++n;
        dprod *= defect(next);

        ++since_refresh;
        if (since_refresh >= refresh_every) {
            u = accumulated_inverse_product(current(), r, law.lambda, n);
            since_refresh = 0;
        } else {
            solve_m_inplace(current(), n - static_cast<std::size_t>(r) - 1, r, u);
        }
    }
    return SchurSequence::open(std::move(g));
}

Rank1Extension rank1_extend(Complex gamma0, Complex gamma1, Complex lambda,
                            int count) {
    const double a1 = std::abs(gamma1);
    if (a1 == 0.0 || a1 >= 1.0) {
        throw domain_error("rank1_extend: gamma_1 must be nonzero and inside the disk");
    }
    const double al = std::abs(lambda);
    if (al <= 0.0 || al > 1.0 - a1 + 1e-15) {
        throw domain_error("rank1_extend: lambda must satisfy 0 < |lambda| <= 1 - |gamma_1|");
    }

    std::vector<Complex> g{gamma0, gamma1};
    double prod = 1.0;  // prod_{j=1}^{m} (1 - |gamma_j|^2)
    double worst = 0.0;
    for (int m = 1; m <= count; ++m) {
        prod *= 1.0 - std::norm(g[static_cast<std::size_t>(m)]);
        const Complex next = lambda * g[static_cast<std::size_t>(m)] / prod;
        const double bound = a1 / (1.0 + m * a1);
        worst = std::max(worst, std::abs(next) - bound);
        g.push_back(next);
    }
    Rank1Extension out{SchurSequence::open(std::move(g)), std::max(worst, 0.0)};
    return out;
}

LawResiduals verify_law(const SchurSequence& seq, const RecurrenceLaw& law) {
    if (!seq.is_open()) throw domain_error("verify_law: sequence must be open");
    const int r = law.order;
    LawResiduals out;
    if (r < 1) return out;

    // energy identity
    const TailProducts pi = tail_products(seq);
    double dsq = 1.0;
    for (int k = 1; k <= r; ++k) {
        dsq *= 1.0 - std::norm(seq.gamma(static_cast<std::size_t>(k)));
    }
    const Eigen::MatrixXcd l = l_matrix(seq, r);
    const Eigen::VectorXcd x = l.triangularView<Eigen::Lower>().solve(law.lambda);
    const double pi1 = pi.at(1);
    out.energy = std::abs(dsq - pi1 * pi1 -
                          (x.squaredNorm() - law.lambda.squaredNorm()));

    // orthogonality defect of (p, [prod M_{r+1}(W^k gamma)] eta_{r+1}(W^{n-r} gamma))
    const std::size_t n_params = seq.size();
    if (n_params >= static_cast<std::size_t>(r) + 2) {
        Eigen::VectorXcd p(r + 1);
        double dinv = 1.0;
        for (int k = 1; k <= r; ++k) dinv *= seq.d(static_cast<std::size_t>(k));
        p.head(r) = -law.lambda / dinv;
        p(r) = Complex(1.0, 0.0);

        Eigen::MatrixXcd right = Eigen::MatrixXcd::Identity(r + 1, r + 1);
        double worst = 0.0;
        for (std::size_t n = static_cast<std::size_t>(r); n + 2 <= n_params; ++n) {
            const SchurSequence tail = shift(seq, n - static_cast<std::size_t>(r));
            const Eigen::VectorXcd eta = eta_vector(tail, r + 1);
            const Complex defect_ip = (right * eta).dot(p);
            worst = std::max(worst, std::abs(defect_ip));
            right = (right * m_matrix(tail, r + 1)).eval();
        }
        out.recurrence = worst;
    }
    return out;
}

}  // namespace schur
