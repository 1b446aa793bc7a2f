#include <complex>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shellspec/config.hpp"
#include "shellspec/errors.hpp"
#include "shellspec/runner.hpp"
#include "shellspec/version.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> n_u, n_v;
    std::optional<double> m, lambda, eps, mu;
    std::optional<double> area;
    std::string ft;
    std::vector<double> xi;
    std::optional<double> r_trunc;
    std::optional<int> n_radial;
};

void add_common(CLI::App* cmd, Overrides& ov)
{
    cmd->add_option("--config", ov.config_path, "experiment config (JSON, one experiment per file)");
    cmd->add_option("--out", ov.output_dir, "output directory (overrides config)");
    cmd->add_option("--seed", ov.seed, "seed override");
    cmd->add_option("--nu", ov.n_u, "grid points in u (override)");
    cmd->add_option("--nv", ov.n_v, "grid points in v (override)");
    cmd->add_option("--m", ov.m, "mass (override)");
    cmd->add_option("--lambda", ov.lambda, "spectral parameter (override)");
    cmd->add_option("--eps", ov.eps, "electrostatic strength (override)");
    cmd->add_option("--mu", ov.mu, "Lorentz strength (override)");
}

shellspec::ExperimentConfig assemble_config(const std::string& task, const Overrides& ov)
{
    shellspec::ExperimentConfig cfg;
    if (!ov.config_path.empty()) cfg = shellspec::ExperimentConfig::from_file(ov.config_path);
    if (!cfg.task.empty() && cfg.task != task)
        throw shellspec::ValidationError("config task '" + cfg.task +
                                         "' does not match subcommand '" + task + "'");
    cfg.task = task;
    if (!ov.output_dir.empty()) cfg.output_dir = ov.output_dir;
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.n_u) cfg.disc.n_u = *ov.n_u;
    if (ov.n_v) cfg.disc.n_v = *ov.n_v;
    if (ov.m) cfg.physics.m = *ov.m;
    if (ov.lambda) cfg.physics.lambda = *ov.lambda;
    if (ov.eps) cfg.coupling.eps = *ov.eps;
    if (ov.mu) cfg.coupling.mu = *ov.mu;
    if (!ov.ft.empty()) cfg.oracle.ft = ov.ft;
    if (ov.xi.size() == 2) {
        cfg.oracle.xi[0] = ov.xi[0];
        cfg.oracle.xi[1] = ov.xi[1];
    }
    if (ov.r_trunc) cfg.oracle.r_trunc = *ov.r_trunc;
    if (ov.n_radial) cfg.oracle.n_radial = *ov.n_radial;
    if (ov.area) cfg.minimize_area = *ov.area;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Boundary-integral spectra of Dirac shell interactions"};
    app.set_version_flag("--version", shellspec::kVersion);
    app.require_subcommand(1);

    Overrides ov;
    std::string task;
    for (const char* name : {"geometry", "predict", "assemble-check", "spectrum",
                             "sweep", "oracle", "minimize-torus"}) {
        CLI::App* cmd = app.add_subcommand(name);
        add_common(cmd, ov);
        if (std::string(name) == "oracle") {
            cmd->add_option("--ft", ov.ft, "flat-transform kernel id");
            cmd->add_option("--xi", ov.xi, "frequency (two reals)")->expected(2);
            cmd->add_option("--rtrunc", ov.r_trunc, "truncation radius");
            cmd->add_option("--n", ov.n_radial, "radial quadrature points");
        }
        if (std::string(name) == "minimize-torus")
            cmd->add_option("--area", ov.area, "fixed surface area");
        cmd->callback([&task, name] { task = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        shellspec::run(assemble_config(task, ov));
        return 0;
    } catch (const shellspec::ValidationError& ex) {
        nlohmann::ordered_json err{{"error", ex.what()}, {"kind", "validation"}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const shellspec::NumericalError& ex) {
        nlohmann::ordered_json err{{"error", ex.what()}, {"kind", "numerical"}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        nlohmann::ordered_json err{{"error", ex.what()}, {"kind", "internal"}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
