// radns command-line driver: thresholds | check | run | mms

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radns/config.hpp"
#include "radns/io.hpp"
#include "radns/params.hpp"
#include "radns/runner.hpp"
#include "radns/verification.hpp"

namespace {

std::string fmt10(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

int cmd_thresholds() {
    const double k1 = radns::critical_k_2d();
    const double k2 = radns::critical_k_3d();
    const double res1 = ((k1 - 6.0) * k1 + 8.0) * k1 - 4.0;
    const double res2 = ((2.0 * k2 - 9.0) * k2 + 10.0) * k2 - 4.0;
    std::cout << "k1 = " << fmt10(k1) << "   (cubic residual " << fmt10(res1) << ")\n";
    std::cout << "k2 = " << fmt10(k2) << "   (cubic residual " << fmt10(res2) << ")\n";
    std::cout << "alpha_min_2d = " << fmt10(radns::alpha_min_2d()) << "\n";
    std::cout << "alpha_min_2d_weighted = " << fmt10(radns::alpha_min_2d_weighted()) << "\n";
    std::cout << "alpha_min_3d = " << fmt10(radns::alpha_min_3d()) << "\n";
    return 0;
}

nlohmann::json report_json(const radns::AdmissibilityReport& rep) {
    return {
        {"admissible", rep.admissible},
        {"regime", radns::to_string(rep.regime)},
        {"alpha_lower", rep.alpha_lower},
        {"alpha_upper", rep.alpha_upper},
        {"gamma_lower", rep.gamma_lower},
        {"gamma_upper",
         std::isinf(rep.gamma_upper) ? nlohmann::json("inf") : nlohmann::json(rep.gamma_upper)},
        {"violated_conditions", rep.violated_conditions},
        {"notes", rep.notes},
    };
}

int cmd_check(const std::string& path, bool as_json) {
    const radns::RunConfig cfg = radns::load_config(path);
    const radns::AdmissibilityReport rep = radns::check_config_admissibility(cfg);
    if (as_json) {
        std::cout << report_json(rep).dump(2) << "\n";
    } else {
        std::cout << "regime: " << radns::to_string(rep.regime) << "\n";
        std::cout << "admissible: " << (rep.admissible ? "true" : "false") << "\n";
        std::cout << "alpha window: (" << fmt10(rep.alpha_lower) << ", "
                  << fmt10(rep.alpha_upper) << ")\n";
        std::cout << "gamma window: (" << fmt10(rep.gamma_lower) << ", "
                  << (std::isinf(rep.gamma_upper) ? "inf" : fmt10(rep.gamma_upper)) << ")\n";
        for (const auto& v : rep.violated_conditions) std::cout << "violated: " << v << "\n";
        for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
    }
    if (rep.admissible || cfg.policy == radns::AdmissibilityPolicy::warn) return 0;
    return 1;
}

int cmd_run(const std::string& path) {
    radns::RunConfig cfg = radns::load_config(path);
    if (const char* dir = std::getenv("RADNS_OUTPUT_DIR")) cfg.output_dir = dir;

    const radns::RunResult result = radns::run(cfg);
    const std::string manifest = radns::write_run_artifacts(cfg, result, cfg.output_dir);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "steps: " << result.steps << "\n";
    std::cout << "samples: " << result.samples.size() << "\n";
    std::cout << "density range: [" << radns::format17(result.global_min_rho) << ", "
              << radns::format17(result.global_max_rho) << "]\n";
    std::cout << "manifest: " << manifest << "\n";
    if (result.status != radns::RunStatus::completed) {
        std::cerr << "run stopped at step " << *result.failing_step << "\n";
        return 1;
    }
    return 0;
}

int cmd_mms(const std::string& scheme_name, std::vector<int> sizes, const std::string& out) {
    radns::SchemeConfig scheme;
    if (scheme_name == "upwind1") scheme.advection = radns::Advection::upwind1;
    else if (scheme_name == "muscl-minmod") scheme.advection = radns::Advection::muscl_minmod;
    else throw CLI::ValidationError("--scheme must be upwind1 or muscl-minmod");

    const radns::ManufacturedCase c = radns::builtin_manufactured_case();
    const radns::ConvergenceStudy study = radns::convergence_study(c, scheme, sizes);

    std::string csv = "n_cells,rho_l2_error,u_l2_error,rho_order,u_order\n";
    for (std::size_t i = 0; i < study.sizes.size(); ++i) {
        csv += std::to_string(study.sizes[i]) + "," + radns::format17(study.rho_errors[i]) +
               "," + radns::format17(study.u_errors[i]);
        csv += (i + 1 == study.sizes.size())
                   ? "," + radns::format17(study.rho_order) + "," +
                         radns::format17(study.u_order) + "\n"
                   : ",,\n";
    }
    std::cout << csv;
    if (!out.empty()) radns::write_file(out, csv);

    if (study.exact) {
        std::cout << "orders: exact (errors at round-off)\n";
        return 0;
    }
    if (!study.monotone) {
        std::cerr << "errors are not monotone; orders unreliable\n";
        return 1;
    }
    const radns::OrderBand band = radns::contracted_order_band(scheme.advection);
    const bool ok = study.rho_order >= band.lo && study.rho_order <= band.hi &&
                    study.u_order >= band.lo && study.u_order <= band.hi;
    std::cout << "observed orders: rho " << fmt10(study.rho_order) << ", u "
              << fmt10(study.u_order) << "; contracted band [" << band.lo << ", " << band.hi
              << "] -> " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial compressible Navier-Stokes simulator (degenerate viscosity)"};
    app.require_subcommand(1);

    auto* thresholds = app.add_subcommand(
        "thresholds", "print the exact admissibility thresholds and their defining residuals");

    std::string check_path;
    bool check_json = false;
    auto* check = app.add_subcommand("check", "validate a config against the theorem windows");
    check->add_option("config", check_path, "config file")->required();
    check->add_flag("--json", check_json, "emit the report as JSON");

    std::string run_path;
    auto* run = app.add_subcommand("run", "integrate a configured problem and write artifacts");
    run->add_option("config", run_path, "config file")->required();

    std::string mms_scheme = "muscl-minmod";
    std::vector<int> mms_sizes{128, 256, 512};
    std::string mms_out;
    auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
    mms->add_option("--scheme", mms_scheme, "upwind1 | muscl-minmod");
    mms->add_option("--sizes", mms_sizes, "grid sizes, refinement factor 2")->delimiter(',');
    mms->add_option("--out", mms_out, "also write the convergence CSV here");

    try {
        app.parse(argc, argv);
        if (thresholds->parsed()) return cmd_thresholds();
        if (check->parsed()) return cmd_check(check_path, check_json);
        if (run->parsed()) return cmd_run(run_path);
        if (mms->parsed()) return cmd_mms(mms_scheme, mms_sizes, mms_out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
