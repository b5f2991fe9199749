#include "schurkernel/report.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "schurkernel/colligation.hpp"
#include "schurkernel/kernel.hpp"
#include "schurkernel/recurrence.hpp"
#include "schurkernel/transform.hpp"

namespace schur {

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

json complex_list_to_json(const std::vector<Complex>& v) {
    json arr = json::array();
    for (const Complex& z : v) arr.push_back(complex_to_json(z));
    return arr;
}

std::vector<Complex> complex_list_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) {
        throw domain_error("field '" + field + "' must be an array of [re, im] pairs");
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    std::size_t i = 0;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw domain_error("field '" + field + "' entry " + std::to_string(i) +
                               " is not a [re, im] pair");
        }
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
        ++i;
    }
    return out;
}

void apply_options(const json& opts, Tolerances& tol, Depths& depths) {
    if (!opts.is_object()) {
        throw domain_error("'options' must be a JSON object");
    }
    static const char* known[] = {"tol_unit",   "tol_psd",    "tol_sigma",
                                  "tol_kernel", "tol_sep",    "tol_level",
                                  "tol_nilp",   "tol_margin", "tol_range",
                                  "n_max",      "m_max",      "model_size",
                                  "extension_count"};
    for (const auto& [key, value] : opts.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw domain_error("unknown option '" + key + "'");
    }
    auto positive = [&](const char* name) -> std::optional<double> {
        if (!opts.contains(name)) return std::nullopt;
        const double v = opts.at(name).get<double>();
        if (!(v > 0.0)) {
            throw domain_error(std::string("option '") + name + "' must be positive");
        }
        return v;
    };
    if (auto v = positive("tol_unit")) tol.unit = *v;
    if (auto v = positive("tol_psd")) tol.psd = *v;
    if (auto v = positive("tol_sigma")) tol.sigma = *v;
    if (auto v = positive("tol_kernel")) tol.kernel = *v;
    if (auto v = positive("tol_sep")) tol.sep = *v;
    if (auto v = positive("tol_level")) tol.level = *v;
    if (auto v = positive("tol_nilp")) tol.nilp = *v;
    if (auto v = positive("tol_margin")) tol.margin = *v;
    if (auto v = positive("tol_range")) tol.range = *v;
    if (auto v = positive("n_max")) depths.n_max = static_cast<int>(*v);
    if (auto v = positive("m_max")) depths.m_max = static_cast<int>(*v);
    if (auto v = positive("model_size")) depths.model_size = static_cast<int>(*v);
    if (auto v = positive("extension_count")) depths.extension_count = static_cast<int>(*v);
}

namespace {

json verdict_to_json(Verdict3 v) {
    switch (v) {
        case Verdict3::yes: return "yes";
        case Verdict3::no: return "no";
        default: return "undetermined";
    }
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
    // row-major array of [re, im] pairs
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json echo_input(const InputDocument& doc) {
    json echo;
    if (doc.schur_parameters) {
        echo["schur_parameters"] = complex_list_to_json(*doc.schur_parameters);
    }
    if (doc.taylor_coefficients) {
        echo["taylor_coefficients"] = complex_list_to_json(*doc.taylor_coefficients);
    }
    if (doc.terminated) echo["status"] = "terminated";
    return echo;
}

json report_shell(const InputDocument& doc) {
    json rep;
    rep["version"] = kVersion;
    rep["input"] = echo_input(doc);
    rep["config"] = tolerances_to_json(doc.tolerances);
    rep["config"]["n_max"] = doc.depths.n_max;
    rep["config"]["m_max"] = doc.depths.m_max;
    rep["config"]["model_size"] = doc.depths.model_size;
    rep["config"]["extension_count"] = doc.depths.extension_count;
    return rep;
}

}  // namespace

InputDocument parse_input(const json& doc, const Tolerances& baseline_tol,
                          const Depths& baseline_depths) {
    if (!doc.is_object()) throw domain_error("input document must be a JSON object");
    InputDocument out;
    out.tolerances = baseline_tol;
    out.depths = baseline_depths;
    const bool has_schur = doc.contains("schur_parameters");
    const bool has_taylor = doc.contains("taylor_coefficients");
    if (has_schur == has_taylor) {
        throw domain_error(
            "exactly one of 'schur_parameters' and 'taylor_coefficients' must be present");
    }
    if (has_schur) {
        out.schur_parameters =
            complex_list_from_json(doc.at("schur_parameters"), "schur_parameters");
        if (out.schur_parameters->empty()) {
            throw domain_error("'schur_parameters' must not be empty");
        }
    } else {
        out.taylor_coefficients =
            complex_list_from_json(doc.at("taylor_coefficients"), "taylor_coefficients");
        if (out.taylor_coefficients->empty()) {
            throw domain_error("'taylor_coefficients' must not be empty");
        }
    }
    if (doc.contains("status")) {
        const std::string s = doc.at("status").get<std::string>();
        if (s != "terminated") {
            throw domain_error("field 'status' may only be \"terminated\"");
        }
        if (!has_schur) {
            throw domain_error("'status' applies to schur_parameters input only");
        }
        out.terminated = true;
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "schur_parameters" && key != "taylor_coefficients" &&
            key != "status" && key != "options") {
            throw domain_error("unknown field '" + key + "'");
        }
    }
    if (doc.contains("options")) {
        apply_options(doc.at("options"), out.tolerances, out.depths);
    }
    return out;
}

SchurSequence input_sequence(const InputDocument& doc) {
    if (doc.schur_parameters) {
        return SchurSequence(*doc.schur_parameters,
                             doc.terminated ? SequenceStatus::terminated
                                            : SequenceStatus::open,
                             doc.tolerances.unit);
    }
    return taylor_to_schur(TaylorCoefficients{*doc.taylor_coefficients},
                           doc.tolerances.unit);
}

json tolerances_to_json(const Tolerances& t) {
    json j;
    j["tol_unit"] = t.unit;
    j["tol_psd"] = t.psd;
    j["tol_sigma"] = t.sigma;
    j["tol_kernel"] = t.kernel;
    j["tol_sep"] = t.sep;
    j["tol_level"] = t.level;
    j["tol_nilp"] = t.nilp;
    j["tol_margin"] = t.margin;
    j["tol_range"] = t.range;
    return j;
}

json classification_to_json(const ClassificationReport& rep) {
    json j;
    json rank;
    rank["kind"] = rep.rank.finite ? "finite" : "at_least";
    rank["value"] = rep.rank.n0;
    rank["sigma_profile"] = rep.rank.sigma;
    rank["tol_sigma"] = rep.rank.tol_sigma;
    j["rank"] = std::move(rank);

    json rational;
    rational["verdict"] = verdict_to_json(rep.rational.verdict);
    rational["reason"] = rep.rational.reason;
    if (rep.rational.rank) rational["rank"] = *rep.rational.rank;
    j["rational"] = std::move(rational);

    json level;
    if (rep.level.level) {
        level["value"] = *rep.level.level;
    } else {
        level["value"] = nullptr;
    }
    level["via_rank_route"] = rep.level.via_rank_route;
    level["ratio_trace"] = rep.level.ratios;
    j["level"] = std::move(level);

    if (rep.polynomial) {
        json poly;
        poly["degree"] = rep.polynomial->degree;
        poly["nilpotency_residual"] = rep.polynomial->nilpotency_residual;
        j["polynomial"] = std::move(poly);
    } else {
        j["polynomial"] = nullptr;
    }

    if (rep.helson) {
        json hs;
        hs["strong_szego_sum"] = rep.helson->strong_szego_sum;
        hs["double_product"] = rep.helson->double_product;
        hs["sigma_min_profile"] = rep.helson->sigma_min_profile;
        hs["lower_bound_profile"] = rep.helson->lower_bound_profile;
        hs["a_max_profile"] = rep.helson->a_max_profile;
        hs["verdict"] = verdict_to_json(rep.helson->verdict);
        j["helson_szego"] = std::move(hs);
    }
    return j;
}

json build_convert_report(const InputDocument& doc, const std::string& to) {
    if (to != "all" && to != "schur" && to != "taylor" && to != "moments" &&
        to != "caratheodory") {
        throw domain_error("unknown conversion target '" + to + "'");
    }
    json rep = report_shell(doc);
    const SchurSequence seq = input_sequence(doc);

    if (to == "all" || to == "schur") {
        json s;
        s["parameters"] = complex_list_to_json(seq.params());
        s["status"] = seq.is_open() ? "open" : "terminated";
        rep["schur"] = std::move(s);
    }

    TaylorCoefficients taylor;
    if (doc.taylor_coefficients) {
        taylor.c = *doc.taylor_coefficients;
    } else {
        taylor = schur_to_taylor(seq, static_cast<int>(seq.size()));
    }
    if (to == "all" || to == "taylor") {
        rep["taylor"] = complex_list_to_json(taylor.c);
    }
    const MomentSequence moments = taylor_to_moments(taylor);
    if (to == "all" || to == "moments") {
        rep["moments"] = complex_list_to_json(moments.s);
    }
    if (to == "all" || to == "caratheodory") {
        rep["caratheodory"] = complex_list_to_json(caratheodory_coefficients(moments));
    }
    return rep;
}

json build_classify_report(const InputDocument& doc) {
    json rep = report_shell(doc);
    const SchurSequence seq = input_sequence(doc);
    const ClassificationReport c =
        classify(seq, doc.depths.n_max, doc.depths.m_max, doc.tolerances);
    rep["classification"] = classification_to_json(c);
    return rep;
}

json build_extend_report(const InputDocument& doc, int order, int count,
                         const std::optional<std::vector<Complex>>& lambda) {
    json rep = report_shell(doc);
    const SchurSequence seq = input_sequence(doc);
    if (!seq.is_open()) throw domain_error("extend: sequence must be open");

    RecurrenceLaw law;
    if (lambda) {
        if (static_cast<int>(lambda->size()) != order) {
            throw domain_error("lambda length must equal the order");
        }
        law.order = order;
        law.lambda = Eigen::Map<const Eigen::VectorXcd>(
            lambda->data(), static_cast<Eigen::Index>(lambda->size()));
        double dinv = 1.0;
        for (int k = 1; k <= order; ++k) dinv *= seq.d(static_cast<std::size_t>(k));
        law.p = Eigen::VectorXcd(order + 1);
        law.p.head(order) = -law.lambda / dinv;
        law.p(order) = Complex(1.0, 0.0);
    } else {
        law = extract_law(seq, order, doc.tolerances);
    }

    const SchurSequence extended = extend(seq, law, count, doc.tolerances);
    const LawResiduals residuals = verify_law(extended, law);

    json out;
    out["order"] = law.order;
    std::vector<Complex> lam(law.lambda.data(), law.lambda.data() + law.lambda.size());
    out["lambda"] = complex_list_to_json(lam);
    out["lambda_source"] = lambda ? "explicit" : "extracted";
    out["extended_parameters"] = complex_list_to_json(extended.params());
    out["appended_count"] = count;
    out["energy_residual"] = residuals.energy;
    out["recurrence_residual"] = residuals.recurrence;
    rep["extension"] = std::move(out);
    return rep;
}

json build_model_report(const InputDocument& doc, const std::string& regime_name) {
    json rep = report_shell(doc);
    const SchurSequence seq = input_sequence(doc);

    ColligationModel model;
    if (regime_name == "auto") {
        const int size = seq.is_open() ? doc.depths.model_size
                                       : static_cast<int>(seq.size()) - 1;
        model = build_model(seq, std::max(size, 1));
    } else if (regime_name == "gamma_l2" || regime_name == "divergent") {
        const ModelRegime r = regime_name == "gamma_l2" ? ModelRegime::gamma_l2
                                                        : ModelRegime::divergent;
        model = build_model(seq, doc.depths.model_size, r);
    } else if (regime_name == "finite_blaschke") {
        model = build_model(seq, static_cast<int>(seq.size()) - 1,
                            ModelRegime::finite_blaschke);
    } else {
        throw domain_error("unknown regime '" + regime_name + "'");
    }

    const Eigen::MatrixXcd y = model.assembled();
    const double unitarity =
        (y.adjoint() * y - Eigen::MatrixXcd::Identity(y.rows(), y.cols())).norm();
    const double interior = interior_unitarity_defect(model);

    json out;
    switch (model.regime) {
        case ModelRegime::gamma_l2: out["regime"] = "gamma_l2"; break;
        case ModelRegime::divergent: out["regime"] = "divergent"; break;
        case ModelRegime::finite_blaschke: out["regime"] = "finite_blaschke"; break;
    }
    out["model_size"] = model.model_size;
    out["shift_size"] = model.shift_size;
    out["T"] = matrix_to_json(model.t);
    out["F"] = matrix_to_json(model.f);
    out["G"] = matrix_to_json(model.g);
    out["S"] = complex_to_json(model.s);
    out["unitarity_defect"] = unitarity;
    out["interior_unitarity_defect"] = interior;

    // the finite Blaschke model is exact, so any moment count is valid there
    const int n_moments = model.regime == ModelRegime::finite_blaschke
                              ? 16
                              : std::min<int>(model.model_size, 16);
    if (n_moments > 0) {
        out["moments"] = complex_list_to_json(naimark_moments(model, n_moments).s);
    }
    rep["model"] = std::move(out);
    return rep;
}

json build_kernel_profile_report(const InputDocument& doc) {
    json rep = report_shell(doc);
    const SchurSequence seq = input_sequence(doc);
    if (!seq.is_open()) {
        throw domain_error("kernel-profile: sequence must be open");
    }
    const int n = doc.depths.n_max;
    const KernelBundle bundle = build_bundle(seq, n);
    const TailProducts pi = tail_products(seq);

    json out;
    out["depth"] = n;
    json pis = json::array();
    for (std::size_t k = 0; k <= std::min<std::size_t>(seq.size(), 64); ++k) {
        pis.push_back(pi.at(k));
    }
    out["tail_products"] = std::move(pis);
    out["sigma"] = bundle.sigma;
    out["L"] = matrix_to_json(bundle.l_mat);
    out["M"] = matrix_to_json(bundle.m_mat);
    json eta = json::array();
    for (Eigen::Index i = 0; i < bundle.eta.size(); ++i) {
        eta.push_back(complex_to_json(bundle.eta(i)));
    }
    out["eta"] = std::move(eta);
    out["A"] = matrix_to_json(bundle.a_mat);

    const HelsonSzegoReport hs = helson_szego(seq, n, doc.tolerances);
    out["sigma_min_profile"] = hs.sigma_min_profile;
    out["strong_szego_sum"] = hs.strong_szego_sum;
    out["double_product"] = hs.double_product;
    rep["kernel_profile"] = std::move(out);
    return rep;
}

}  // namespace schur
