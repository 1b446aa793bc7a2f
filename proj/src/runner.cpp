#include "shellspec/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "shellspec/assembly.hpp"
#include "shellspec/errors.hpp"
#include "shellspec/geometry.hpp"
#include "shellspec/oracle.hpp"
#include "shellspec/spectra.hpp"
#include "shellspec/surface_grid.hpp"
#include "shellspec/version.hpp"

namespace shellspec {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_file_atomic(const fs::path& path, const std::string& contents)
{
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
        if (!out) throw ValidationError("cannot write " + tmp.string());
        out << contents;
        if (!out) throw NumericalError("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

namespace {

std::string csv_preamble(const ExperimentConfig& cfg)
{
    std::ostringstream os;
    os << "# " << kVersion << "\n";
    os << "# config " << cfg.to_json().dump() << "\n";
    return os.str();
}

ordered_json json_with_provenance(const ExperimentConfig& cfg)
{
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = cfg.to_json();
    return j;
}

/// JSON has no infinities; intervals serialize them as "-inf"/"inf".
ordered_json interval_json(double lo, double hi)
{
    ordered_json j = ordered_json::array();
    if (std::isinf(lo)) j.push_back(lo < 0 ? "-inf" : "inf");
    else j.push_back(lo);
    if (std::isinf(hi)) j.push_back(hi < 0 ? "-inf" : "inf");
    else j.push_back(hi);
    return j;
}

PatchRule patch_rule(const ExperimentConfig& cfg)
{
    PatchRule rule;
    rule.radius_mult = cfg.disc.patch_radius_mult;
    rule.n_radial = cfg.disc.patch_n_radial;
    rule.n_angular = cfg.disc.patch_n_angular;
    return rule;
}

void run_geometry(const ExperimentConfig& cfg, const fs::path& out_dir)
{
    const auto chart = make_chart(cfg.surface);
    const SurfaceGrid grid = build_grid(chart, cfg.disc.n_u, cfg.disc.n_v);
    const double area = surface_area(grid);

    ordered_json j = json_with_provenance(cfg);
    j["family"] = family_name(chart->family());
    j["params"] = cfg.to_json()["surface"];
    j["area"] = area;
    j["genus"] = chart->genus();
    j["a_sigma"] = a_sigma(*chart);
    j["gauss_bonnet"] = gauss_bonnet(grid);
    j["euler_target"] = 2.0 * std::numbers::pi * (2.0 - 2.0 * chart->genus());
    j["willmore"] = willmore_energy(grid);
    if (chart->genus() >= 1)
        j["a_sigma_lower_bound"] = a_sigma_lower_bound(area, chart->genus());
    else
        j["a_sigma_lower_bound"] = nullptr;
    write_file_atomic(out_dir / "geometry.json", j.dump(2) + "\n");
}

void run_predict(const ExperimentConfig& cfg, const fs::path& out_dir)
{
    const auto chart = make_chart(cfg.surface);
    const CouplingParams c(cfg.coupling.eps, cfg.coupling.mu);
    const double a = a_sigma(*chart);
    const Interval J = predict_interval_J(a, cfg.physics.m, c);

    ordered_json j = json_with_provenance(cfg);
    j["m"] = cfg.physics.m;
    j["eps"] = c.eps;
    j["mu"] = c.mu;
    j["A_sigma"] = a;
    j["J"] = interval_json(J.lo, J.hi);
    const double am = std::abs(cfg.physics.m);
    j["spec_H0"] = ordered_json::array(
        {interval_json(-std::numeric_limits<double>::infinity(), -am),
         interval_json(am, std::numeric_limits<double>::infinity())});
    write_file_atomic(out_dir / "prediction.json", j.dump(2) + "\n");
}

void run_assemble_check(const ExperimentConfig& cfg, const fs::path& out_dir)
{
    const auto chart = make_chart(cfg.surface);
    const PhysParams p(cfg.physics.m, cfg.physics.lambda.value_or(0.0));
    std::vector<std::array<int, 2>> ladder = cfg.disc.ladder;
    if (ladder.empty())
        ladder = {{16, 32}, {22, 46}, {32, 64}};

    std::ostringstream os;
    os << csv_preamble(cfg);
    os << "N,pri_residual,wk_residual\n";
    for (const auto& rung : ladder) {
        auto grid = std::make_shared<SurfaceGrid>(build_grid(chart, rung[0], rung[1]));
        const IdentityResiduals res = check_identities(grid, p, patch_rule(cfg));
        os << grid->size() << "," << format_double(res.pri) << ","
           << format_double(res.wk) << "\n";
    }
    write_file_atomic(out_dir / "residuals.csv", os.str());
}

void run_spectrum(const ExperimentConfig& cfg, const fs::path& out_dir)
{
    const auto chart = make_chart(cfg.surface);
    const PhysParams p(cfg.physics.m, cfg.physics.lambda.value_or(0.0));
    const CouplingParams c(cfg.coupling.eps, cfg.coupling.mu);
    auto grid = std::make_shared<SurfaceGrid>(build_grid(chart, cfg.disc.n_u, cfg.disc.n_v));

    if (cfg.dump_operators) {
        assemble_K(grid, p, patch_rule(cfg)).save(out_dir / "op_K.shsp");
        assemble_W(grid, p, patch_rule(cfg)).save(out_dir / "op_W.shsp");
        assemble_Z(grid, p, patch_rule(cfg)).save(out_dir / "op_Z.shsp");
    }

    const SpectralReport report =
        shifted_R_spectrum(grid, p, c, patch_rule(cfg), cfg.cluster_delta);

    std::ostringstream os;
    os << csv_preamble(cfg);
    os << "index,re,im\n";
    for (std::size_t k = 0; k < report.eigenvalues.size(); ++k)
        os << k << "," << format_double(report.eigenvalues[k].real()) << ","
           << format_double(report.eigenvalues[k].imag()) << "\n";
    write_file_atomic(out_dir / "spectrum.csv", os.str());

    ordered_json j = json_with_provenance(cfg);
    j["predicted_J"] = interval_json(report.predicted_J.lo, report.predicted_J.hi);
    j["delta"] = report.delta;
    j["eigenvalue_count"] = report.eigenvalues.size();
    j["fraction_within_delta"] = report.stats.fraction_within_delta;
    j["max_gap_inside"] = report.stats.max_gap_inside;
    j["max_empty_window"] = report.stats.max_empty_window;
    j["outlier_count"] = report.stats.outliers.size();
    j["max_abs_imag"] = report.max_abs_imag;
    j["imag_warning"] = report.imag_warning;
    write_file_atomic(out_dir / "spectrum_report.json", j.dump(2) + "\n");
}

void run_sweep(const ExperimentConfig& cfg, const fs::path& out_dir)
{
    const auto chart = make_chart(cfg.surface);
    const CouplingParams c(cfg.coupling.eps, cfg.coupling.mu);
    auto grid = std::make_shared<SurfaceGrid>(build_grid(chart, cfg.disc.n_u, cfg.disc.n_v));
    const SweepReport report = sweep_S_min_singular(
        grid, cfg.physics.m, sweep_lambdas(cfg), c, patch_rule(cfg), cfg.sweep_threshold);

    std::ostringstream os;
    os << csv_preamble(cfg);
    os << "lambda,sigma_min,pivot_branch\n";
    for (const auto& pt : report.points)
        os << format_double(pt.lambda) << "," << format_double(pt.sigma_min) << ","
           << pt.pivot_branch << "\n";
    write_file_atomic(out_dir / "sweep.csv", os.str());

    ordered_json j = json_with_provenance(cfg);
    j["threshold"] = report.threshold;
    j["flagged"] = report.flagged;
    ordered_json failures = ordered_json::array();
    for (const auto& pt : report.points)
        if (pt.failed) failures.push_back({{"lambda", pt.lambda}, {"error", pt.note}});
    j["failures"] = failures;
    write_file_atomic(out_dir / "sweep_report.json", j.dump(2) + "\n");
}

void run_oracle(const ExperimentConfig& cfg, const fs::path& out_dir)
{
    std::ostringstream os;
    os << csv_preamble(cfg);
    os << "id,xi1,xi2,predicted_re,predicted_im,measured_re,measured_im,rel_err\n";
    auto emit = [&os](const std::string& id, double x1, double x2,
                      std::complex<double> predicted, std::complex<double> measured) {
        const double rel = std::abs(measured - predicted) /
                           std::max(std::abs(predicted), 1e-9);
        os << id << "," << format_double(x1) << "," << format_double(x2) << ","
           << format_double(predicted.real()) << "," << format_double(predicted.imag())
           << "," << format_double(measured.real()) << ","
           << format_double(measured.imag()) << "," << format_double(rel) << "\n";
    };

    if (cfg.oracle.mode == "symbols") {
        const auto chart = make_chart(cfg.surface);
        const PhysParams p(cfg.physics.m, cfg.physics.lambda.value_or(0.0));
        const auto samples =
            symbol_check_suite(*chart, p, cfg.oracle.symbol_points, cfg.seed);
        for (const auto& s : samples)
            emit(s.id, s.xi1, s.xi2, s.predicted, s.measured);
    } else if (!cfg.oracle.ft.empty()) {
        const FtKernel id = ft_kernel_from_name(cfg.oracle.ft);
        const double x1 = cfg.oracle.xi[0], x2 = cfg.oracle.xi[1];
        const double r = cfg.oracle.r_trunc > 0 ? cfg.oracle.r_trunc
                                                : 160.0 / std::hypot(x1, x2);
        emit(ft_kernel_name(id), x1, x2, ft_predicted(id, x1, x2),
             ft_pv_kernel(id, x1, x2, r, cfg.oracle.n_radial));
    } else {
        static const double xis[10][2] = {{1, 0},  {0, 1},   {2, 0},     {0, 2},
                                          {1, 1},  {1, -1},  {2, 1},     {-1, 2},
                                          {0.5, 0}, {0.6, 0.8}};
        for (const FtKernel id : {FtKernel::coulomb, FtKernel::riesz_1,
                                  FtKernel::riesz_2, FtKernel::mixed_t1t2})
            for (const auto& xi : xis) {
                const double r = 160.0 / std::hypot(xi[0], xi[1]);
                emit(ft_kernel_name(id), xi[0], xi[1], ft_predicted(id, xi[0], xi[1]),
                     ft_pv_kernel(id, xi[0], xi[1], r, cfg.oracle.n_radial));
            }
    }
    write_file_atomic(out_dir / "oracle.csv", os.str());
}

void run_minimize_torus(const ExperimentConfig& cfg, const fs::path& out_dir)
{
    const TorusMinimum best = minimize_torus_a_sigma(cfg.minimize_area);
    // Clifford aspect sqrt(2) at the same area, for comparison
    const double s = std::sqrt(cfg.minimize_area / (4.0 * std::numbers::pi * std::numbers::pi));
    const double clifford =
        std::pow(std::sqrt(2.0), 1.5) / (std::sqrt(2.0) - 1.0) / s;

    ordered_json j = json_with_provenance(cfg);
    j["area"] = cfg.minimize_area;
    j["aspect"] = best.aspect;
    j["R"] = best.major;
    j["r"] = best.minor;
    j["A_min"] = best.a_min;
    j["clifford_value"] = clifford;
    j["lower_bound"] = a_sigma_lower_bound(cfg.minimize_area, 1);
    write_file_atomic(out_dir / "minimize_torus.json", j.dump(2) + "\n");
}

} // namespace

void run(const ExperimentConfig& cfg)
{
    cfg.validate();
    const fs::path out_dir = cfg.output_dir;
    fs::create_directories(out_dir);

    if (cfg.task == "geometry") run_geometry(cfg, out_dir);
    else if (cfg.task == "predict") run_predict(cfg, out_dir);
    else if (cfg.task == "assemble-check") run_assemble_check(cfg, out_dir);
    else if (cfg.task == "spectrum") run_spectrum(cfg, out_dir);
    else if (cfg.task == "sweep") run_sweep(cfg, out_dir);
    else if (cfg.task == "oracle") run_oracle(cfg, out_dir);
    else if (cfg.task == "minimize-torus") run_minimize_torus(cfg, out_dir);
    else throw ValidationError("unknown task: " + cfg.task);
}

} // namespace shellspec
