#pragma once

namespace schur {

/// All numeric decision thresholds in one place. Every verdict that depends
/// on one of these echoes the value it actually used, so reports stay
/// auditable. Fields named after the decision they gate.
struct Tolerances {
    /// |gamma| may exceed 1 by at most this much before the input is rejected;
    /// 1 - |gamma| below this classifies the parameter as unimodular.
    double unit = 1e-12;
    /// smallest-eigenvalue threshold for positive-semidefiniteness checks
    double psd = 1e-10;
    /// relative cutoff deciding "sigma_n = 0" (scaled by sigma_{n-1})
    double sigma = 1e-8;
    /// residual bound for ||A_{r+1} p|| when a recurrence vector is extracted
    double kernel = 1e-3;
    /// required ratio between the two smallest eigenvalues of A_{r+1}
    double sep = 100.0;
    /// floor for the monotone determinant ratios in the level scan
    double level = 1e-3;
    /// nilpotency gate for ||T_GF^m|| in the polynomial test
    double nilp = 1e-3;
    /// abort margin before an extended parameter reaches the unit circle
    double margin = 1e-10;
    /// relative residual for range membership in the psd criterion
    double range = 1e-6;
    /// sigma floor below which rationality stays Undetermined instead of No
    double rational_floor = 1e-4;
    /// sigma_min(L_n) below this value is reported as a decaying profile
    double hs_decay = 0.05;
    /// stabilization window |s_n - s_{n-5}| for the Helson-Szego verdict
    double hs_stab = 1e-3;
};

/// Default depths used by the CLI when the input document does not override
/// them.
struct Depths {
    int n_max = 30;
    int m_max = 5;
    int model_size = 64;
    int extension_count = 20;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace schur
