#include "schurkernel/classify.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "schurkernel/colligation.hpp"
#include "schurkernel/kernel.hpp"

namespace schur {

namespace {

// a genuine sigma_{n0+1} = 0 shows up as a cliff in the consecutive ratios,
// not as the smooth geometric decay every profile eventually has; require
// both the relative zero-test and the ratio drop. Returns -1 when no rank
// is detected within the scanned range.
int rank_from_sigma(const std::vector<double>& sigma, int n_max, double tol_sigma) {
    constexpr double kResolvable = 1e-250;
    for (int n0 = 0; n0 <= n_max; ++n0) {
        const double prev = n0 == 0 ? 1.0 : sigma[static_cast<std::size_t>(n0 - 1)];
        const double here = sigma[static_cast<std::size_t>(n0)];
        const double next = sigma[static_cast<std::size_t>(n0 + 1)];
        if (here < kResolvable) break;  // below double resolution; stop scanning
        const bool relatively_zero = std::abs(next) <= tol_sigma * here;
        const bool ratio_cliff = std::abs(next) * prev <= tol_sigma * here * here;
        if (here > tol_sigma * prev && relatively_zero && ratio_cliff) {
            return n0;
        }
    }
    return -1;
}

}  // namespace

RankVerdict rank_of(const SchurSequence& seq, int n_max, double tol_sigma) {
    if (!seq.is_open()) {
        throw domain_error("rank_of: terminated sequences are rational by construction");
    }
    if (n_max < 0) throw domain_error("rank_of: n_max must be nonnegative");

    RankVerdict v;
    v.tol_sigma = tol_sigma;
    v.sigma = build_bundle(seq, n_max + 1).sigma;
    const int n0 = rank_from_sigma(v.sigma, n_max, tol_sigma);
    v.finite = n0 >= 0;
    v.n0 = v.finite ? n0 : n_max;
    return v;
}

RationalVerdict is_rational(const SchurSequence& seq, int n_max,
                            const Tolerances& tol) {
    RationalVerdict out;
    if (!seq.is_open()) {
        out.verdict = Verdict3::yes;
        out.reason = "finite Blaschke product of degree " +
                     std::to_string(seq.size() - 1);
        out.rank = static_cast<int>(seq.size()) - 1;
        return out;
    }
    const RankVerdict rank = rank_of(seq, n_max, tol.sigma);
    if (rank.finite) {
        out.verdict = Verdict3::yes;
        out.reason = "rank " + std::to_string(rank.n0) +
                     ", block of a Blaschke-Potapov product with " +
                     std::to_string(rank.n0) + " factors";
        out.rank = rank.n0;
        return out;
    }
    const double sigma_last = rank.sigma[static_cast<std::size_t>(n_max)];
    if (sigma_last >= tol.rational_floor) {
        out.verdict = Verdict3::no;
        out.reason = "sigma stays above " + std::to_string(tol.rational_floor) +
                     " through depth " + std::to_string(n_max) +
                     " (finite depth cannot refute rationality)";
        return out;
    }
    out.verdict = Verdict3::undetermined;
    out.reason = "sigma profile decays without a detected zero at depth " +
                 std::to_string(n_max);
    return out;
}

LevelTrace level_estimate(const SchurSequence& seq, int n_max, int m_max,
                          const Tolerances& tol) {
    if (!seq.is_open()) throw domain_error("level_estimate: sequence must be open");
    if (n_max < 1 || m_max < 0) throw domain_error("level_estimate: bad depths");

    constexpr double kUnderflow = 1e-12;

    LevelTrace trace;
    std::vector<std::vector<double>> sigmas;  // sigma profile of W^m gamma
    sigmas.reserve(static_cast<std::size_t>(m_max) + 2);
    for (int m = 0; m <= m_max + 1; ++m) {
        sigmas.push_back(build_bundle(shift(seq, static_cast<std::size_t>(m)),
                                      n_max)
                             .sigma);
    }

    bool any_underflow = false;
    for (int m = 0; m <= m_max; ++m) {
        const auto& sa = sigmas[static_cast<std::size_t>(m)];
        const auto& sb = sigmas[static_cast<std::size_t>(m) + 1];
        std::vector<double> ratios;
        int depth = 0;
        double dprod = 1.0 - std::norm(seq.gamma(static_cast<std::size_t>(m)));
        for (int n = 1; n <= n_max; ++n) {
            dprod *= 1.0 - std::norm(seq.gamma(static_cast<std::size_t>(m + n)));
            if (sa[static_cast<std::size_t>(n)] <= kUnderflow ||
                sb[static_cast<std::size_t>(n)] <= kUnderflow) {
                any_underflow = true;
                break;
            }
            ratios.push_back(dprod * sb[static_cast<std::size_t>(n)] /
                             sa[static_cast<std::size_t>(n)]);
            depth = n;
        }
        trace.ratios.push_back(std::move(ratios));
        trace.depth_reached.push_back(depth);
    }

    if (!any_underflow) {
        for (int m = 0; m <= m_max; ++m) {
            const auto& r = trace.ratios[static_cast<std::size_t>(m)];
            if (!r.empty() && r.back() > tol.level) {
                trace.level = m;
                return trace;
            }
        }
        return trace;  // no level found in range
    }

    // sigma underflow means finite rank: compare ranks of consecutive shifts
    // instead (the ratio limits degenerate to 0/0 there).
    trace.via_rank_route = true;
    std::vector<int> ranks(static_cast<std::size_t>(m_max) + 2, 0);
    for (int m = 0; m <= m_max + 1; ++m) {
        const int rk = rank_from_sigma(sigmas[static_cast<std::size_t>(m)],
                                       n_max - 1, tol.sigma);
        ranks[static_cast<std::size_t>(m)] = rk >= 0 ? rk : n_max;
    }
    for (int m = 0; m <= m_max; ++m) {
        if (ranks[static_cast<std::size_t>(m)] ==
            ranks[static_cast<std::size_t>(m) + 1]) {
            trace.level = m;
            return trace;
        }
    }
    return trace;
}

PsdResult psd_criterion(const SchurSequence& seq, int m, int n,
                        const Tolerances& tol) {
    if (!seq.is_open()) throw domain_error("psd_criterion: sequence must be open");
    if (m < 0 || n < 1) throw domain_error("psd_criterion: bad arguments");

    const Eigen::VectorXcd lam =
        lambda_vector(shift(seq, static_cast<std::size_t>(m)), n);
    const Eigen::MatrixXcd a =
        a_matrix(shift(seq, static_cast<std::size_t>(m) + 1), n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    const double lam_max = std::max(es.eigenvalues().maxCoeff(), 0.0);
    const double cutoff = std::max(tol.psd * std::max(lam_max, 1.0), 1e-300);

    PsdResult out;
    double resid2 = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const Complex coef = es.eigenvectors().col(i).dot(lam);
        const double w = std::norm(coef);
        if (es.eigenvalues()(i) <= cutoff) {
            resid2 += w;
        } else {
            out.c_min += w / es.eigenvalues()(i);
        }
    }
    out.out_of_range_residual = std::sqrt(resid2);
    const double scale = std::max(lam.norm(), 1e-300);
    out.feasible = out.out_of_range_residual <= tol.range * scale;
    return out;
}

HelsonSzegoReport helson_szego(const SchurSequence& seq, int n_max,
                               const Tolerances& tol) {
    if (!seq.is_open()) {
        throw domain_error("helson_szego: inner functions are out of scope");
    }
    if (n_max < 1) throw domain_error("helson_szego: n_max must be positive");

    HelsonSzegoReport rep;
    const std::size_t n_params = seq.size();
    for (std::size_t k = 1; k < n_params; ++k) {
        rep.strong_szego_sum += static_cast<double>(k) * std::norm(seq.gamma(k));
    }
    // prod_{k>=1} prod_{j>=k} D^2 = prod_j D_j^{2 min(j, ...)}; here every
    // factor D_j^2 appears j times (full truncated double product)
    rep.double_product = 1.0;
    for (std::size_t j = 1; j < n_params; ++j) {
        rep.double_product *= std::pow(1.0 - std::norm(seq.gamma(j)),
                                       static_cast<double>(j));
    }

    for (int n = 1; n <= n_max; ++n) {
        const Eigen::MatrixXcd l = l_matrix(seq, n);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(l);
        rep.sigma_min_profile.push_back(svd.singularValues().minCoeff());

        double bound = 1.0;
        for (std::size_t j = 1; j < n_params; ++j) {
            const double mult = std::min<double>(static_cast<double>(j), n);
            bound *= std::pow(seq.d(j), mult);
        }
        rep.lower_bound_profile.push_back(bound);

        const Eigen::MatrixXcd a = a_matrix(seq, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
        rep.a_max_profile.push_back(es.eigenvalues().maxCoeff());
    }

    const double last = rep.sigma_min_profile.back();
    const int window = std::min(5, n_max / 2);
    const double drift =
        window > 0
            ? std::abs(last - rep.sigma_min_profile[static_cast<std::size_t>(
                                  n_max - 1 - window)])
            : 0.0;
    if (last < tol.hs_decay) {
        rep.verdict = Verdict3::no;
    } else if (drift < tol.hs_stab) {
        rep.verdict = Verdict3::yes;
    } else {
        rep.verdict = Verdict3::undetermined;
    }
    return rep;
}

std::optional<PolynomialVerdict> polynomial_type(const SchurSequence& seq,
                                                 int n_max,
                                                 const Tolerances& tol) {
    if (!seq.is_open()) {
        const std::size_t deg = seq.size() - 1;
        for (std::size_t j = 0; j < deg; ++j) {
            if (std::abs(seq.gamma(j)) > tol.unit) return std::nullopt;
        }
        return PolynomialVerdict{static_cast<int>(deg), 0.0};
    }

    const RankVerdict rank = rank_of(seq, n_max, tol.sigma);
    if (!rank.finite) return std::nullopt;
    if (rank.n0 == 0) return PolynomialVerdict{0, 0.0};  // constant function

    const int m = rank.n0;
    Eigen::MatrixXcd t;
    try {
        t = t_gf_matrix(seq, m, tol).t;
    } catch (const kernel_error&) {
        return std::nullopt;
    }

    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(m, m);
    for (int i = 0; i < m - 1; ++i) power = (power * t).eval();
    const double norm_m1 = power.operatorNorm();  // ||T^{m-1}||
    power = (power * t).eval();
    const double norm_m = power.operatorNorm();  // ||T^m||

    if (norm_m <= tol.nilp && norm_m1 > tol.nilp) {
        return PolynomialVerdict{m, norm_m};
    }
    return std::nullopt;
}

ClassificationReport classify(const SchurSequence& seq, int n_max, int m_max,
                              const Tolerances& tol) {
    ClassificationReport rep;
    rep.tolerances = tol;
    rep.n_max = n_max;
    rep.m_max = m_max;
    rep.rational = is_rational(seq, n_max, tol);
    if (seq.is_open()) {
        rep.rank = rank_of(seq, n_max, tol.sigma);
        rep.level = level_estimate(seq, n_max, m_max, tol);
        rep.helson = helson_szego(seq, n_max, tol);
    } else {
        rep.rank.finite = true;
        rep.rank.n0 = static_cast<int>(seq.size()) - 1;
        rep.rank.tol_sigma = tol.sigma;
    }
    rep.polynomial = polynomial_type(seq, n_max, tol);
    return rep;
}

}  // namespace schur
