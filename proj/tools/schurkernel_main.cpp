#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "schurkernel/report.hpp"

namespace {

using schur::json;

// exit codes: 0 success, 2 input validation, 3 numeric verdict failure,
// 4 internal tolerance breach
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitTolerance = 4;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schur::domain_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw schur::domain_error("parse error in '" + path + "': " + e.what());
    }
}

struct CommonOptions {
    std::string input_path;
    std::string output_path;
    std::optional<int> n_max;
    std::optional<int> m_max;
    std::optional<int> model_size;
    std::optional<double> tol_sigma;
    bool seed_free = false;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("input", opts.input_path, "input JSON document")->required();
    cmd->add_option("-o,--output", opts.output_path, "write the report here (default stdout)");
    cmd->add_option("--n-max", opts.n_max, "truncation depth for profiles");
    cmd->add_option("--m-max", opts.m_max, "largest shift in the level scan");
    cmd->add_option("--model-size", opts.model_size, "colligation truncation depth");
    cmd->add_option("--tol-sigma", opts.tol_sigma, "relative sigma-zero cutoff");
    cmd->add_flag("--seed-free", opts.seed_free,
                  "omit environment-dependent fields (input path) from the report");
    cmd->add_flag("--timing", opts.timing, "include wall-clock timing in the report");
}

schur::InputDocument load_input(const CommonOptions& opts) {
    // layering: defaults < SCHURKERNEL_CONFIG < document options < CLI flags
    schur::Tolerances tol;
    schur::Depths depths;
    if (const char* cfg = std::getenv("SCHURKERNEL_CONFIG")) {
        const json cfg_doc = load_json_file(cfg);
        if (cfg_doc.contains("options")) {
            schur::apply_options(cfg_doc.at("options"), tol, depths);
        }
    }
    schur::InputDocument input =
        schur::parse_input(load_json_file(opts.input_path), tol, depths);

    if (opts.n_max) input.depths.n_max = *opts.n_max;
    if (opts.m_max) input.depths.m_max = *opts.m_max;
    if (opts.model_size) input.depths.model_size = *opts.model_size;
    if (opts.tol_sigma) input.tolerances.sigma = *opts.tol_sigma;
    return input;
}

void emit(const CommonOptions& opts, json report,
          std::chrono::steady_clock::time_point started) {
    if (!opts.seed_free) report["input_path"] = opts.input_path;
    if (opts.timing) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        report["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    const std::string text = report.dump(2) + "\n";
    if (opts.output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output_path);
        if (!out) throw schur::domain_error("cannot write '" + opts.output_path + "'");
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schur parameter sequence analysis"};
    app.require_subcommand(1);

    CommonOptions convert_opts, classify_opts, extend_opts, model_opts, kernel_opts;
    std::string convert_to = "all";
    int extend_order = 1;
    int extend_count = 0;
    std::string lambda_path;
    std::string model_regime = "auto";

    CLI::App* convert = app.add_subcommand("convert", "taylor/schur/moment conversions");
    add_common(convert, convert_opts);
    convert->add_option("--to", convert_to,
                        "conversion target: all|schur|taylor|moments|caratheodory");

    CLI::App* classify = app.add_subcommand("classify", "full classification report");
    add_common(classify, classify_opts);

    CLI::App* extend = app.add_subcommand("extend", "extend a sequence by its recurrence law");
    add_common(extend, extend_opts);
    extend->add_option("--order", extend_order, "recurrence order r")->required();
    extend->add_option("--count", extend_count, "number of parameters to append");
    extend->add_option("--lambda", lambda_path, "JSON file with an explicit lambda vector");

    CLI::App* model = app.add_subcommand("model", "dump the truncated colligation model");
    add_common(model, model_opts);
    model->add_option("--regime", model_regime,
                      "auto|gamma_l2|divergent|finite_blaschke");

    CLI::App* kernel = app.add_subcommand("kernel-profile", "kernel matrices and profiles");
    add_common(kernel, kernel_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        if (convert->parsed()) {
            const auto input = load_input(convert_opts);
            emit(convert_opts, schur::build_convert_report(input, convert_to), started);
        } else if (classify->parsed()) {
            const auto input = load_input(classify_opts);
            emit(classify_opts, schur::build_classify_report(input), started);
        } else if (extend->parsed()) {
            const auto input = load_input(extend_opts);
            std::optional<std::vector<schur::Complex>> lambda;
            if (!lambda_path.empty()) {
                lambda = schur::complex_list_from_json(load_json_file(lambda_path),
                                                       "lambda");
            }
            const int count = extend_count > 0 ? extend_count
                                               : input.depths.extension_count;
            emit(extend_opts,
                 schur::build_extend_report(input, extend_order, count, lambda),
                 started);
        } else if (model->parsed()) {
            const auto input = load_input(model_opts);
            emit(model_opts, schur::build_model_report(input, model_regime), started);
        } else if (kernel->parsed()) {
            const auto input = load_input(kernel_opts);
            emit(kernel_opts, schur::build_kernel_profile_report(input), started);
        }
    } catch (const schur::non_schur_error& e) {
        std::cerr << "error: " << e.what() << " (index " << e.index << ")\n";
        return kExitNumeric;
    } catch (const schur::extension_error& e) {
        std::cerr << "error: " << e.what() << " (step " << e.step << ")\n";
        return kExitNumeric;
    } catch (const schur::kernel_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTolerance;
    } catch (const schur::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
