#pragma once

#include <Eigen/Dense>

#include <vector>

#include "schurkernel/core.hpp"

namespace schur {

/// Table of L-function values L[m][n] = L_n(W^m gamma) for 0 <= m <= N+1 and
/// 0 <= n <= n_max, filled by the backward recurrence. L_0 = 1 everywhere;
/// the zero-tail row m = N+1 vanishes for n >= 1.
struct LTable {
    Eigen::MatrixXcd values;  // (N+2) x (n_max+1)

    Complex at(std::size_t m, std::size_t n) const {
        if (static_cast<Eigen::Index>(n) >= values.cols()) {
            throw domain_error("LTable: order beyond table");
        }
        if (static_cast<Eigen::Index>(m) >= values.rows()) {
            return n == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        }
        return values(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    }
};

/// Fills the L-table backward in the shift index m, increasing in the order
/// n at fixed m. Cost O(N * n_max^2).
LTable l_table(const SchurSequence& seq, int n_max);

/// Q(gamma) = -sum_j gamma_j L_j(gamma).
Complex q_value(const SchurSequence& seq);

/// Q(W^m gamma) for m = 0..size; entries beyond the stored parameters are 0.
std::vector<Complex> q_values(const SchurSequence& seq);

/// Hankel matrix with entries Q(W^{i+j-1} gamma), i, j = 1..n. Anti-diagonals
/// share one Q evaluation.
Eigen::MatrixXcd hankel_q(const SchurSequence& seq, int n);

/// Lower-triangular L_n(gamma): entry (k, j) = Pi_k L_{k-j}(W^j gamma) for
/// j <= k (1-based), diagonal Pi_1..Pi_n.
Eigen::MatrixXcd l_matrix(const SchurSequence& seq, int n);

/// Lower-triangular M_n(gamma): diagonal D_{gamma_k}, entry (k, j) for j < k
/// equal to -gamma_j (prod_{i=j+1}^{k-1} D_{gamma_i}) conj(gamma_k).
Eigen::MatrixXcd m_matrix(const SchurSequence& seq, int n);

/// Defect vector eta_n(gamma) with k-th entry
/// conj(gamma_k) prod_{j=1}^{k-1} D_{gamma_j}.
Eigen::VectorXcd eta_vector(const SchurSequence& seq, int n);

/// Lambda_n(gamma): first entry conj(gamma_1), k-th entry
/// conj(gamma_k) prod_{j=2}^{k} D_{gamma_j}^{-1} for k >= 2.
Eigen::VectorXcd lambda_vector(const SchurSequence& seq, int n);

/// Gram defect A_n(gamma) = I - L_n L_n^*.
Eigen::MatrixXcd a_matrix(const SchurSequence& seq, int n);

/// Leading principal minors sigma_0..sigma_n of a Hermitian matrix, via an
/// unpivoted LDL^T sweep; switches to direct determinants once a pivot
/// degenerates.
std::vector<double> leading_minors(const Eigen::MatrixXcd& a);

/// The matrices and determinants of one truncation depth, built in one pass.
struct KernelBundle {
    int depth = 0;
    Eigen::MatrixXcd l_mat;      // L_n(gamma)
    Eigen::MatrixXcd m_mat;      // M_n(gamma)
    Eigen::VectorXcd eta;        // eta_n(gamma)
    Eigen::MatrixXcd a_mat;      // A_n(gamma)
    std::vector<double> sigma;   // sigma_0..sigma_n
};

KernelBundle build_bundle(const SchurSequence& seq, int n);

/// Smallest-eigenpair data of a Hermitian matrix, for kernel extraction.
struct SmallestEigen {
    double lambda_min = 0.0;
    double lambda_next = 0.0;
    Eigen::VectorXcd vec;  // unit eigenvector for lambda_min
};

SmallestEigen smallest_eigenpair(const Eigen::MatrixXcd& a);

}  // namespace schur
