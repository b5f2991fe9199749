#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

#include "schurkernel/classify.hpp"
#include "schurkernel/core.hpp"

namespace schur {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "schurkernel 0.1.0";

/// Parsed input document: exactly one of the two payloads, an optional
/// terminated flag, and option overrides.
struct InputDocument {
    std::optional<std::vector<Complex>> schur_parameters;
    std::optional<std::vector<Complex>> taylor_coefficients;
    bool terminated = false;
    Tolerances tolerances;
    Depths depths;
};

/// Parses and validates an input document; throws domain_error with a
/// field diagnostic on schema violations. The baselines seed the tolerance
/// and depth values before the document's own options are applied.
InputDocument parse_input(const json& doc,
                          const Tolerances& baseline_tol = default_tolerances(),
                          const Depths& baseline_depths = Depths{});

/// Applies an "options" object onto tolerance/depth values; rejects unknown
/// keys and nonpositive values.
void apply_options(const json& opts, Tolerances& tol, Depths& depths);

/// The SchurSequence named by the document (running the Schur algorithm on
/// Taylor input when needed).
SchurSequence input_sequence(const InputDocument& doc);

struct ReportOptions {
    bool seed_free = false;  // drop environment-dependent fields (paths)
    bool timing = false;     // include wall-clock timing
};

json complex_to_json(const Complex& z);
json complex_list_to_json(const std::vector<Complex>& v);
std::vector<Complex> complex_list_from_json(const json& j, const std::string& field);

/// Report builders for the CLI subcommands. Each returns the full
/// ReportDocument body (without the outer timing field, which the CLI adds
/// when requested).
json build_convert_report(const InputDocument& doc, const std::string& to);
json build_classify_report(const InputDocument& doc);
json build_extend_report(const InputDocument& doc, int order, int count,
                         const std::optional<std::vector<Complex>>& lambda);
json build_model_report(const InputDocument& doc, const std::string& regime);
json build_kernel_profile_report(const InputDocument& doc);

json tolerances_to_json(const Tolerances& t);
json classification_to_json(const ClassificationReport& rep);

}  // namespace schur
