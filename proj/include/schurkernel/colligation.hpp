#pragma once

#include <Eigen/Dense>

#include "schurkernel/config.hpp"
#include "schurkernel/core.hpp"

namespace schur {

enum class ModelRegime {
    gamma_l2,         // two-block model with coshift part and coupling column
    divergent,        // pure T_F model (divergent parameter energy)
    finite_blaschke,  // exact n x n model of a degree-n Blaschke product
};

/// Truncated matrices of the operator model. For the gamma_l2 regime T is
/// the 2x2 block [[T_F, R~], [0, V~_T]] of size 2*model_size; for the other
/// regimes T = T_F. The assembled colligation matrix is
/// Y = [[T, F], [G, S]].
struct ColligationModel {
    ModelRegime regime = ModelRegime::gamma_l2;
    Eigen::MatrixXcd t;
    Eigen::VectorXcd f;
    Eigen::RowVectorXcd g;
    Complex s{0.0, 0.0};
    int model_size = 0;  // truncation depth of the T_F block
    int shift_size = 0;  // coshift block depth (gamma_l2 only)

    Eigen::MatrixXcd assembled() const;
};

/// Builds the model for `seq` at truncation depth `size`. Terminated
/// sequences must satisfy degree == size and produce the exact unitary
/// model; open sequences default to the gamma_l2 regime.
ColligationModel build_model(const SchurSequence& seq, int size);

/// Same, with the regime forced (open sequences only for gamma_l2 and
/// divergent; terminated only for finite_blaschke).
ColligationModel build_model(const SchurSequence& seq, int size, ModelRegime regime);

/// Unitarity defect away from the rows/columns touched by truncation: the
/// full ||Y^*Y - I|| for exact finite Blaschke models, otherwise the Gram
/// defects with the truncation boundary masked out. The divergent regime
/// checks only the isometry direction (its coisometry half genuinely needs
/// the coshift part).
double interior_unitarity_defect(const ColligationModel& model);

/// c_0 = S, c_n = G T^{n-1} F by iterated matrix-vector products.
TaylorCoefficients characteristic_taylor(const ColligationModel& model, int n_terms);

/// Leading size x size block of the GGT matrix: Hessenberg with first row
/// gamma_0, D_{gamma_0} gamma_1, ... and subdiagonal D_{gamma_k}.
Eigen::MatrixXcd ggt_isometry(const SchurSequence& seq, int size);

/// The same block assembled as the ordered product of embedded elementary
/// rotations [[gamma_j, D_j], [D_j, -conj(gamma_j)]]; cross-validation route.
Eigen::MatrixXcd ggt_rotation_product(const SchurSequence& seq, int size);

/// Moments s_n = corner entry of Y^n, n = 1..count.
MomentSequence naimark_moments(const ColligationModel& model, int count);

/// The m x m matrix of the compressed operator on the defect overlap space:
/// the leading T_F block with its last column replaced using the kernel
/// vector alpha of A_{m+1}(gamma).
struct TGFMatrix {
    Eigen::MatrixXcd t;
    Eigen::VectorXcd alpha;  // m coordinates, kernel vector scaled to last = 1
};

/// alpha extracted numerically from ker A_{m+1}(gamma).
TGFMatrix t_gf_matrix(const SchurSequence& seq, int m,
                      const Tolerances& tol = default_tolerances());

/// alpha supplied by the caller (e.g. from a known recurrence law).
TGFMatrix t_gf_matrix(const SchurSequence& seq, int m,
                      const Eigen::VectorXcd& alpha);

}  // namespace schur
