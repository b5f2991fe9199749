#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schurkernel/config.hpp"
#include "schurkernel/core.hpp"

namespace schur {

enum class Verdict3 { yes, no, undetermined };

/// Rank verdict from the sigma profile: Finite(n0) when sigma_{n0} is
/// relatively positive and sigma_{n0+1} relatively zero, otherwise
/// AtLeast(n_max).
struct RankVerdict {
    bool finite = false;
    int n0 = 0;        // rank when finite, scanned depth otherwise
    double tol_sigma = 0.0;
    std::vector<double> sigma;  // sigma_0..sigma_{n_max+1}
};

RankVerdict rank_of(const SchurSequence& seq, int n_max, double tol_sigma);

struct RationalVerdict {
    Verdict3 verdict = Verdict3::undetermined;
    std::string reason;
    std::optional<int> rank;
};

RationalVerdict is_rational(const SchurSequence& seq, int n_max,
                            const Tolerances& tol = default_tolerances());

/// Trace of the level scan: per shift m, the monotone ratio sequence
/// r_n(m) = prod_{j=0}^n (1-|gamma_{m+j}|^2) sigma_n(W^{m+1}) / sigma_n(W^m).
struct LevelTrace {
    std::optional<int> level;
    bool via_rank_route = false;     // finite rank: level from rank equality
    std::vector<std::vector<double>> ratios;  // ratios[m][n-1]
    std::vector<int> depth_reached;  // last usable n per shift
};

LevelTrace level_estimate(const SchurSequence& seq, int n_max, int m_max,
                          const Tolerances& tol = default_tolerances());

/// Least c with [[A_n(W^{m+1}), Lambda_n(W^m)], [Lambda^*, c]] >= 0, via the
/// pseudo-inverse with spectral cutoff. Infeasibility is a result.
struct PsdResult {
    bool feasible = false;
    double c_min = 0.0;
    double out_of_range_residual = 0.0;
};

PsdResult psd_criterion(const SchurSequence& seq, int m, int n,
                        const Tolerances& tol = default_tolerances());

struct HelsonSzegoReport {
    double strong_szego_sum = 0.0;              // sum k |gamma_k|^2
    double double_product = 0.0;                // prod_k prod_{j>=k} D^2
    std::vector<double> sigma_min_profile;      // sigma_min(L_n), n = 1..n_max
    std::vector<double> lower_bound_profile;    // prod_{k<=n} prod_{j>=k} D
    std::vector<double> a_max_profile;          // lambda_max(A_n)
    Verdict3 verdict = Verdict3::undetermined;
};

HelsonSzegoReport helson_szego(const SchurSequence& seq, int n_max,
                               const Tolerances& tol = default_tolerances());

struct PolynomialVerdict {
    int degree = 0;
    double nilpotency_residual = 0.0;
};

std::optional<PolynomialVerdict> polynomial_type(
    const SchurSequence& seq, int n_max,
    const Tolerances& tol = default_tolerances());

/// Everything the classify CLI reports, with the evidence behind it.
struct ClassificationReport {
    RankVerdict rank;
    RationalVerdict rational;
    LevelTrace level;
    std::optional<PolynomialVerdict> polynomial;
    std::optional<HelsonSzegoReport> helson;  // open sequences only
    Tolerances tolerances;
    int n_max = 0;
    int m_max = 0;
};

ClassificationReport classify(const SchurSequence& seq, int n_max, int m_max,
                              const Tolerances& tol = default_tolerances());

}  // namespace schur
