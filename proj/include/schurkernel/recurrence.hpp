#pragma once

#include <Eigen/Dense>

#include "schurkernel/config.hpp"
#include "schurkernel/core.hpp"

namespace schur {

/// An extracted S-recurrence law: the kernel vector p of A_{r+1} normalized
/// to p_0 = 1 (stored with its last coordinate equal to 1) and the derived
/// vector lambda = -(prod_{k=1}^r D_{gamma_k}) (p_r, ..., p_1).
struct RecurrenceLaw {
    int order = 0;
    Eigen::VectorXcd p;       // r+1 coordinates, last = 1
    Eigen::VectorXcd lambda;  // r coordinates
};

/// Diagnostics of a kernel extraction (also reused by the colligation
/// module for the T_GF alpha vector).
struct KernelVectorResult {
    Eigen::VectorXcd vec;   // normalized, last coordinate 1
    double lambda_min = 0.0;
    double lambda_next = 0.0;
    double residual = 0.0;  // ||A vec|| / ||vec||
};

/// Kernel vector of A_{r+1}(gamma) from the smallest eigenpair; throws
/// kernel_error when the smallest eigenvalue is not separated from the next
/// one by tol.sep, when the last coordinate (numerically) vanishes, or when
/// the normalized residual exceeds tol.kernel.
KernelVectorResult kernel_vector(const Eigen::MatrixXcd& a,
                                 const Tolerances& tol = default_tolerances());

/// Reads the recurrence law of a rank-r sequence off ker A_{r+1}(gamma).
RecurrenceLaw extract_law(const SchurSequence& seq, int r,
                          const Tolerances& tol = default_tolerances());

/// Appends `count` parameters to `prefix` by iterating the recurrence
/// gamma_{n+1} = (prod_s D_{gamma_s}^{-1}) <[prod M_r^{-1}] lambda,
/// (prod D^{-1}) eta_r(W^{n-r} gamma)>. The accumulated product of inverse
/// M matrices is refreshed from scratch every `refresh_every` steps.
SchurSequence extend(const SchurSequence& prefix, const RecurrenceLaw& law,
                     int count, const Tolerances& tol = default_tolerances(),
                     int refresh_every = 64);

struct Rank1Extension {
    SchurSequence seq;
    /// largest observed excess of |gamma_{m+1}| over |gamma_1| / (1 + m |gamma_1|)
    double max_bound_violation = 0.0;
};

/// Closed-form rank-1 iteration gamma_{m+1} = lambda gamma_m /
/// prod_{j=1}^m (1 - |gamma_j|^2); requires gamma_1 != 0 and
/// 0 < |lambda| <= 1 - |gamma_1|.
Rank1Extension rank1_extend(Complex gamma0, Complex gamma1, Complex lambda,
                            int count);

struct LawResiduals {
    double energy = 0.0;
    double recurrence = 0.0;
};

/// Residuals certifying a law against a sequence: the energy identity
/// prod_{k=1}^r (1-|gamma_k|^2) - Pi_1^2 = lambda^* ((L_r^{-1})^* L_r^{-1} - I) lambda
/// and the maximal orthogonality defect of the recurrence condition.
LawResiduals verify_law(const SchurSequence& seq, const RecurrenceLaw& law);

}  // namespace schur
