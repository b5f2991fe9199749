#include "schurkernel/colligation.hpp"

#include <cmath>

#include "schurkernel/kernel.hpp"
#include "schurkernel/recurrence.hpp"

namespace schur {

namespace {

// upper-Hessenberg T_F block: diagonal -conj(gamma_{k-1}) gamma_k,
// subdiagonal D_{gamma_k}, above-diagonal
// -conj(gamma_{n-1}) gamma_k prod_{j=n}^{k-1} D_{gamma_j}
Eigen::MatrixXcd t_f_block(const SchurSequence& seq, int m) {
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
    return t;
}

Eigen::RowVectorXcd g_section(const SchurSequence& seq, int m) {
    Eigen::RowVectorXcd g(m);
    double dprod = seq.d(0);
    for (int k = 1; k <= m; ++k) {
        g(k - 1) = seq.gamma(static_cast<std::size_t>(k)) * dprod;
        dprod *= seq.d(static_cast<std::size_t>(k));
    }
    return g;
}

}  // namespace

Eigen::MatrixXcd ColligationModel::assembled() const {
    const Eigen::Index n = t.rows();
    Eigen::MatrixXcd y(n + 1, n + 1);
    y.topLeftCorner(n, n) = t;
    y.topRightCorner(n, 1) = f;
    y.bottomLeftCorner(1, n) = g;
    y(n, n) = s;
    return y;
}

ColligationModel build_model(const SchurSequence& seq, int size) {
    return build_model(seq, size,
                       seq.is_open() ? ModelRegime::gamma_l2
                                     : ModelRegime::finite_blaschke);
}

ColligationModel build_model(const SchurSequence& seq, int size, ModelRegime regime) {
    // degree-0 Blaschke products (unimodular constants) have an empty state
    // space; every other regime needs at least one state
    if (size < 0 || (size == 0 && regime != ModelRegime::finite_blaschke)) {
        throw domain_error("build_model: size must be positive");
    }

    ColligationModel model;
    model.regime = regime;
    model.s = seq.gamma(0);

    switch (regime) {
        case ModelRegime::finite_blaschke: {
            if (seq.is_open()) {
                throw domain_error("build_model: finite_blaschke needs a terminated sequence");
            }
            const int degree = static_cast<int>(seq.size()) - 1;
            if (degree != size) {
                throw domain_error("build_model: finite_blaschke needs size == degree");
            }
            model.model_size = degree;
            model.t = t_f_block(seq, degree);
            model.f = Eigen::VectorXcd::Zero(degree);
            if (degree > 0) model.f(0) = seq.d(0);
            model.g = g_section(seq, degree);
            return model;
        }
        case ModelRegime::divergent: {
            if (!seq.is_open()) {
                throw domain_error("build_model: divergent regime needs an open sequence");
            }
            model.model_size = size;
            model.t = t_f_block(seq, size);
            model.f = Eigen::VectorXcd::Zero(size);
            model.f(0) = seq.d(0);
            model.g = g_section(seq, size);
            return model;
        }
        case ModelRegime::gamma_l2: {
            if (!seq.is_open()) {
                throw domain_error("build_model: gamma_l2 regime needs an open sequence");
            }
            model.model_size = size;
            model.shift_size = size;
            const TailProducts pi = tail_products(seq);

            Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(2 * size, 2 * size);
            t.topLeftCorner(size, size) = t_f_block(seq, size);
            // coupling column: row k gets -conj(gamma_{k-1}) Pi_k
            for (int k = 1; k <= size; ++k) {
                t(k - 1, size) = -std::conj(seq.gamma(static_cast<std::size_t>(k - 1))) *
                                 pi.at(static_cast<std::size_t>(k));
            }
            // coshift block
            for (int k = 1; k < size; ++k) {
                t(size + k - 1, size + k) = 1.0;
            }
            model.t = std::move(t);

            model.f = Eigen::VectorXcd::Zero(2 * size);
            model.f(0) = seq.d(0);

            model.g = Eigen::RowVectorXcd::Zero(2 * size);
            model.g.head(size) = g_section(seq, size);
            model.g(size) = pi.at(0);
            return model;
        }
    }
    throw domain_error("build_model: unknown regime");
}

double interior_unitarity_defect(const ColligationModel& model) {
    const Eigen::MatrixXcd y = model.assembled();
    const Eigen::Index n = y.rows();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);

    auto masked_norm = [&](Eigen::MatrixXcd d, Eigen::Index k) {
        d.row(k).setZero();
        d.col(k).setZero();
        return d.norm();
    };

    switch (model.regime) {
        case ModelRegime::finite_blaschke:
            return std::max((y.adjoint() * y - eye).norm(),
                            (y * y.adjoint() - eye).norm());
        case ModelRegime::divergent:
            return masked_norm(y.adjoint() * y - eye, model.model_size - 1);
        case ModelRegime::gamma_l2: {
            const double iso =
                masked_norm(y.adjoint() * y - eye, model.model_size - 1);
            const double coiso = masked_norm(
                y * y.adjoint() - eye, model.model_size + model.shift_size - 1);
            return std::max(iso, coiso);
        }
    }
    return 0.0;
}

TaylorCoefficients characteristic_taylor(const ColligationModel& model, int n_terms) {
    if (n_terms < 1) throw domain_error("characteristic_taylor: n_terms must be positive");
    if (model.regime != ModelRegime::finite_blaschke && n_terms > model.model_size) {
        throw domain_error("characteristic_taylor: n_terms exceeds model size");
    }
    TaylorCoefficients out;
    out.c.resize(static_cast<std::size_t>(n_terms));
    out.c[0] = model.s;
    if (n_terms == 1 || model.t.rows() == 0) {
        for (int n = 1; n < n_terms; ++n) out.c[static_cast<std::size_t>(n)] = 0.0;
        return out;
    }
    Eigen::VectorXcd v = model.f;
    for (int n = 1; n < n_terms; ++n) {
        out.c[static_cast<std::size_t>(n)] = model.g * v;
        if (n + 1 < n_terms) v = (model.t * v).eval();
    }
    return out;
}

Eigen::MatrixXcd ggt_isometry(const SchurSequence& seq, int size) {
    if (!seq.is_open()) throw domain_error("ggt_isometry: sequence must be open");
    if (size < 1) throw domain_error("ggt_isometry: size must be positive");

    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(size, size);
    // first row: gamma_0, D_0 gamma_1, ..., prod_{k=0}^{j-2} D_k gamma_{j-1}
    {
        double prod = 1.0;
        for (int j = 1; j <= size; ++j) {
            u(0, j - 1) = prod * seq.gamma(static_cast<std::size_t>(j - 1));
            prod *= seq.d(static_cast<std::size_t>(j - 1));
        }
    }
    for (int i = 2; i <= size; ++i) {
        u(i - 1, i - 2) = seq.d(static_cast<std::size_t>(i - 2));
        const Complex cg = std::conj(seq.gamma(static_cast<std::size_t>(i - 2)));
        double prod = 1.0;
        for (int j = i; j <= size; ++j) {
            u(i - 1, j - 1) = -cg * prod * seq.gamma(static_cast<std::size_t>(j - 1));
            prod *= seq.d(static_cast<std::size_t>(j - 1));
        }
    }
    return u;
}

Eigen::MatrixXcd ggt_rotation_product(const SchurSequence& seq, int size) {
    if (!seq.is_open()) throw domain_error("ggt_rotation_product: sequence must be open");
    if (size < 1) throw domain_error("ggt_rotation_product: size must be positive");

    // work one row/column larger so every rotation that can touch the
    // leading block is applied
    const int n = size + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
    for (int j = 0; j + 1 < n; ++j) {
        const Complex g = seq.gamma(static_cast<std::size_t>(j));
        const double d = seq.d(static_cast<std::size_t>(j));
        // right-multiply by I ⊕ [[g, d], [d, -conj(g)]] ⊕ I at position j
        for (int r = 0; r < n; ++r) {
            const Complex a = m(r, j);
            const Complex b = m(r, j + 1);
            m(r, j) = a * g + b * d;
            m(r, j + 1) = a * d - b * std::conj(g);
        }
    }
    return m.topLeftCorner(size, size);
}

MomentSequence naimark_moments(const ColligationModel& model, int count) {
    if (count < 0) throw domain_error("naimark_moments: count must be nonnegative");
    if (model.regime != ModelRegime::finite_blaschke && count > model.model_size) {
        throw domain_error("naimark_moments: truncation too small for requested moments");
    }
    const Eigen::MatrixXcd y = model.assembled();
    const Eigen::Index last = y.rows() - 1;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(y.rows());
    v(last) = 1.0;
    MomentSequence out;
    out.s.reserve(static_cast<std::size_t>(count));
    for (int n = 1; n <= count; ++n) {
        v = (y * v).eval();
        out.s.push_back(v(last));
    }
    return out;
}

namespace {

TGFMatrix assemble_t_gf(const SchurSequence& seq, int m, Eigen::VectorXcd alpha) {
    Eigen::MatrixXcd t = t_f_block(seq, m);
    const Complex gm = seq.gamma(static_cast<std::size_t>(m));
    const double dm = seq.d(static_cast<std::size_t>(m));
    double prod = 1.0;  // prod_{j=k}^{m-1} D_{gamma_j}, empty for k = m
    for (int k = m; k >= 1; --k) {
        t(k - 1, m - 1) =
            -std::conj(seq.gamma(static_cast<std::size_t>(k - 1))) * prod * gm -
            dm * alpha(k - 1);
        prod *= seq.d(static_cast<std::size_t>(k - 1));
    }
    TGFMatrix out;
    out.t = std::move(t);
    out.alpha = std::move(alpha);
    return out;
}

}  // namespace

TGFMatrix t_gf_matrix(const SchurSequence& seq, int m, const Tolerances& tol) {
    if (!seq.is_open()) throw domain_error("t_gf_matrix: sequence must be open");
    if (m < 1) throw domain_error("t_gf_matrix: m must be positive");
    const KernelVectorResult kv = kernel_vector(a_matrix(seq, m + 1), tol);
    return assemble_t_gf(seq, m, kv.vec.head(m));
}

TGFMatrix t_gf_matrix(const SchurSequence& seq, int m, const Eigen::VectorXcd& alpha) {
    if (!seq.is_open()) throw domain_error("t_gf_matrix: sequence must be open");
    if (m < 1 || alpha.size() != m) throw domain_error("t_gf_matrix: malformed alpha");
    return assemble_t_gf(seq, m, alpha);
}

}  // namespace schur
