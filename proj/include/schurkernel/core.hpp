#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurkernel/config.hpp"

namespace schur {

using Complex = std::complex<double>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition or sequence-status violation (wrong status, bad depth, ...).
struct domain_error : error {
    using error::error;
};

/// A Taylor section that cannot come from a Schur function; carries the
/// index of the offending parameter.
struct non_schur_error : error {
    non_schur_error(const std::string& msg, std::size_t index)
        : error(msg), index(index) {}
    std::size_t index;
};

/// Kernel extraction failed (ambiguous eigenvalue separation, vanishing last
/// coordinate, or residual above tolerance).
struct kernel_error : error {
    using error::error;
};

/// A sequence extension produced a parameter outside the unit disk; carries
/// the step index of the failure.
struct extension_error : error {
    extension_error(const std::string& msg, std::size_t step)
        : error(msg), step(step) {}
    std::size_t step;
};

enum class SequenceStatus { open, terminated };

/// sqrt(1 - |g|^2); throws if |g| > 1 + tol_unit. Values within tol_unit of
/// the circle clamp to 0.
double defect(Complex g, double tol_unit = default_tolerances().unit);

/// A finite Schur parameter sequence gamma_0..gamma_N with an implicit zero
/// tail. Open sequences keep every parameter strictly inside the disk;
/// terminated sequences end with a unimodular parameter (the finite
/// Blaschke case). Immutable after construction.
class SchurSequence {
public:
    /// empty open sequence: the zero function
    SchurSequence() = default;

    SchurSequence(std::vector<Complex> params, SequenceStatus status,
                  double tol_unit = default_tolerances().unit);

    static SchurSequence open(std::vector<Complex> params,
                              double tol_unit = default_tolerances().unit) {
        return SchurSequence(std::move(params), SequenceStatus::open, tol_unit);
    }
    static SchurSequence terminated(std::vector<Complex> params,
                                    double tol_unit = default_tolerances().unit) {
        return SchurSequence(std::move(params), SequenceStatus::terminated, tol_unit);
    }

    SequenceStatus status() const { return status_; }
    bool is_open() const { return status_ == SequenceStatus::open; }

    /// number of stored parameters (N + 1)
    std::size_t size() const { return params_.size(); }

    /// gamma_j under the zero-tail policy: 0 for j > N
    Complex gamma(std::size_t j) const {
        return j < params_.size() ? params_[j] : Complex(0.0, 0.0);
    }

    /// D_{gamma_j} = sqrt(1 - |gamma_j|^2), 1 beyond the stored range
    double d(std::size_t j) const;

    const std::vector<Complex>& params() const { return params_; }

private:
    std::vector<Complex> params_;
    SequenceStatus status_ = SequenceStatus::open;
};

/// Tail products Pi_k = prod_{j=k}^{N} D_{gamma_j}, k = 0..N+1, Pi_{N+1} = 1.
struct TailProducts {
    std::vector<double> pi;

    /// Pi_k, extended by 1 beyond the stored range
    double at(std::size_t k) const { return k < pi.size() ? pi[k] : 1.0; }
};

/// Cumulative right-to-left tail products of an open sequence.
TailProducts tail_products(const SchurSequence& seq);

/// Coshift W^m: drops the first m parameters. May yield the empty (zero)
/// sequence.
SchurSequence shift(const SchurSequence& seq, std::size_t m);

/// Taylor coefficients c_0..c_N of a Schur function section.
struct TaylorCoefficients {
    std::vector<Complex> c;
};

/// Moments s_1..s_N of the associated probability measure; s_0 = 1 is
/// implicit.
struct MomentSequence {
    std::vector<Complex> s;
};

}  // namespace schur
