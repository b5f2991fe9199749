#include "schurkernel/core.hpp"

#include <cmath>

namespace schur {

double defect(Complex g, double tol_unit) {
    const double m2 = std::norm(g);
    if (m2 > (1.0 + tol_unit) * (1.0 + tol_unit)) {
        throw domain_error("defect: parameter modulus exceeds 1");
    }
    return m2 >= 1.0 ? 0.0 : std::sqrt(1.0 - m2);
}

SchurSequence::SchurSequence(std::vector<Complex> params, SequenceStatus status,
                             double tol_unit)
    : params_(std::move(params)), status_(status) {
    const std::size_t n = params_.size();
    if (status_ == SequenceStatus::terminated && n == 0) {
        throw domain_error("terminated sequence needs at least one parameter");
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double a = std::abs(params_[j]);
        if (a > 1.0 + tol_unit) {
            throw non_schur_error("parameter modulus exceeds 1 at index " +
                                      std::to_string(j),
                                  j);
        }
        const bool unimodular = a >= 1.0 - tol_unit;
        const bool last = (j + 1 == n);
        if (status_ == SequenceStatus::open && unimodular) {
            throw domain_error("open sequence has unimodular parameter at index " +
                               std::to_string(j));
        }
        if (status_ == SequenceStatus::terminated) {
            if (last && !unimodular) {
                throw domain_error("terminated sequence must end with |gamma_N| = 1");
            }
            if (!last && unimodular) {
                throw domain_error(
                    "terminated sequence has interior unimodular parameter at index " +
                    std::to_string(j));
            }
        }
    }
}

double SchurSequence::d(std::size_t j) const {
    if (j >= params_.size()) return 1.0;
    const double m2 = std::norm(params_[j]);
    return m2 >= 1.0 ? 0.0 : std::sqrt(1.0 - m2);
}

TailProducts tail_products(const SchurSequence& seq) {
    if (!seq.is_open()) {
        throw domain_error("tail_products: terminated sequence has zero tail products");
    }
    const std::size_t n = seq.size();
    TailProducts t;
    t.pi.assign(n + 1, 1.0);
    // right-to-left so that Pi_k = D_{gamma_k} * Pi_{k+1} holds exactly
    for (std::size_t k = n; k-- > 0;) {
        t.pi[k] = seq.d(k) * t.pi[k + 1];
    }
    return t;
}

SchurSequence shift(const SchurSequence& seq, std::size_t m) {
    if (m == 0) return seq;
    std::vector<Complex> tail;
    if (m < seq.size()) {
        tail.assign(seq.params().begin() + static_cast<std::ptrdiff_t>(m),
                    seq.params().end());
    }
    if (!seq.is_open() && !tail.empty()) {
        return SchurSequence::terminated(std::move(tail));
    }
    return SchurSequence::open(std::move(tail));
}

}  // namespace schur
