#include "radns/runner.hpp"

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include <json.hpp>

namespace radns {

RunResult run(const RunConfig& cfg) {
    validate(cfg.model);
    validate(cfg.scheme);
    const RadialGrid grid = build_grid(cfg.n_cells, cfg.r_max, cfg.model.dim);

    RunResult result;
    try {
        result.admissibility = check_config_admissibility(cfg);
    } catch (const std::invalid_argument& e) {
        result.warnings.push_back(std::string("no theorem coverage: ") + e.what());
    }
    if (result.admissibility && !result.admissibility->admissible) {
        std::string what = "parameters outside the admissibility window:";
        for (const auto& v : result.admissibility->violated_conditions) what += " " + v;
        if (cfg.policy == AdmissibilityPolicy::enforce) throw std::invalid_argument(what);
        result.warnings.push_back(what + " (continuing, policy = warn)");
    }

    FluidState state = make_initial_data(cfg.initial, grid, cfg.model, cfg.regime,
                                         &result.warnings);
    result.global_min_rho = state.rho.minCoeff();
    result.global_max_rho = state.rho.maxCoeff();

    auto sample = [&](const FluidState& prev, const FluidState& now, double dt,
                      double contamination) {
        SampleRow row;
        row.diag = sample_all(prev, now, grid, cfg.model, cfg.diagnostics);
        row.dt = dt;
        row.boundary_contamination = contamination;
        result.samples.push_back(std::move(row));
    };

    sample(state, state, 0.0, 0.0);
    result.snapshots.push_back(state);

    const double cadence = cfg.snapshot_every > 0.0 ? cfg.snapshot_every : cfg.t_end;
    double next_due = cadence;
    const double t_eps = 1e-12 * cfg.t_end;

    FluidState prev = state;
    while (state.time < cfg.t_end - t_eps) {
        double dt_request;
        if (cfg.fixed_dt) {
            dt_request = *cfg.fixed_dt;
        } else {
            const auto [adv, visc] = stable_dt(state, grid, cfg.model);
            const bool exp_visc =
                cfg.scheme.viscous_treatment == ViscousTreatment::explicit_euler;
            dt_request = exp_visc ? std::min(cfg.scheme.cfl_number * adv,
                                             cfg.scheme.viscous_safety * visc)
                                  : cfg.scheme.cfl_number * adv;
        }
        dt_request = std::min(dt_request, cfg.t_end - state.time);

        StepResult r = step(state, grid, cfg.model, cfg.scheme, dt_request);
        ++result.steps;
        if (!r.report.step_accepted) {
            ++result.rejected_steps;
            result.failing_step = result.steps;
            result.status = RunStatus::rejected;
            result.warnings.push_back("step " + std::to_string(result.steps) +
                                      " rejected: density lost positivity (min candidate rho " +
                                      format17(r.report.min_rho) + ")");
            break;
        }
        prev = state;
        state = r.state;
        result.global_min_rho = std::min(result.global_min_rho, r.report.min_rho);
        result.global_max_rho = std::max(result.global_max_rho, r.report.max_rho);
        result.outer_mass_outflow += r.report.outer_mass_flux;

        const bool final_step = state.time >= cfg.t_end - t_eps;
        if (state.time >= next_due - t_eps || final_step) {
            sample(prev, state, r.report.dt_used, r.report.boundary_contamination);
            result.snapshots.push_back(state);
            while (next_due <= state.time + t_eps) next_due += cadence;
        }
    }
    return result;
}

std::string write_run_artifacts(const RunConfig& cfg, const RunResult& result,
                                const std::string& output_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    const RadialGrid grid = build_grid(cfg.n_cells, cfg.r_max, cfg.model.dim);

    nlohmann::json outputs = nlohmann::json::object();

    const std::string csv = diagnostics_csv(result.samples, cfg.diagnostics);
    write_file((fs::path(output_dir) / "diagnostics.csv").string(), csv);
    outputs["diagnostics.csv"] = git_blob_sha1(csv);

    for (std::size_t i = 0; i < result.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snapshot_%06zu.txt", i);
        const std::string text = snapshot_text(result.snapshots[i], grid, cfg.model);
        write_file((fs::path(output_dir) / name).string(), text);
        outputs[name] = git_blob_sha1(text);
    }

    nlohmann::json manifest;
    manifest["format"] = "radns-manifest-1";
    manifest["config"] = serialize_config(cfg);
    if (result.admissibility) {
        const AdmissibilityReport& a = *result.admissibility;
        manifest["admissibility"] = {
            {"admissible", a.admissible},
            {"regime", to_string(a.regime)},
            {"alpha_lower", a.alpha_lower},
            {"alpha_upper", a.alpha_upper},
            {"gamma_lower", a.gamma_lower},
            {"gamma_upper", std::isinf(a.gamma_upper) ? nlohmann::json("inf")
                                                      : nlohmann::json(a.gamma_upper)},
            {"violated_conditions", a.violated_conditions},
            {"notes", a.notes},
        };
    } else {
        manifest["admissibility"] = nullptr;
    }
    manifest["status"] = result.status == RunStatus::completed ? "completed" : "rejected";
    if (result.failing_step) manifest["failing_step"] = *result.failing_step;
    manifest["steps"] = result.steps;
    manifest["rejected_steps"] = result.rejected_steps;
    manifest["global_min_rho"] = result.global_min_rho;
    manifest["global_max_rho"] = result.global_max_rho;
    manifest["outer_mass_outflow"] = result.outer_mass_outflow;
    manifest["warnings"] = result.warnings;
    manifest["outputs"] = outputs;

    const std::string manifest_path = (fs::path(output_dir) / "manifest.json").string();
    write_file(manifest_path, manifest.dump(2) + "\n");
    return manifest_path;
}

}  // namespace radns
