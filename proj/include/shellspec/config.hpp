#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "shellspec/chart.hpp"

namespace shellspec {

struct SurfaceConfig {
    std::string family = "sphere";
    double radius = 1.0;                      // sphere
    double a = 1.0, b = 1.0, c = 1.0;         // ellipsoid
    double torus_major = 2.0, torus_minor = 1.0;
    std::vector<double> rho_cos, rho_sin, z_cos, z_sin;  // revolution
};

struct PhysicsConfig {
    double m = 1.0;
    std::optional<double> lambda;
    std::vector<double> lambda_grid;
};

struct CouplingConfig {
    double eps = 2.0;
    double mu = 0.0;
};

struct DiscretizationConfig {
    int n_u = 16;
    int n_v = 32;
    double patch_radius_mult = 4.0;
    int patch_n_radial = 8;
    int patch_n_angular = 16;
    std::vector<std::array<int, 2>> ladder;  // (n_u, n_v) rungs for assemble-check
};

struct OracleConfig {
    std::string mode = "ft";  // "ft" or "symbols"
    std::string ft;           // single kernel id; empty = canonical table
    std::array<double, 2> xi{1.0, 0.0};
    double r_trunc = 0.0;     // 0 = auto (160/|xi|)
    int n_radial = 1024;
    int symbol_points = 4;
};

/// One experiment per file. Everything that affects the run is in here;
/// identical config + seed reproduces byte-identical outputs.
struct ExperimentConfig {
    std::string task;
    SurfaceConfig surface;
    PhysicsConfig physics;
    CouplingConfig coupling;
    DiscretizationConfig disc;
    OracleConfig oracle;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    double sweep_threshold = 1e-2;
    double cluster_delta = -1.0;  // <= 0: default 0.05 * (1 + |J|)
    double minimize_area = 39.47841760435743;  // 4 pi^2
    bool dump_operators = false;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::ordered_json to_json() const;

    /// Task-specific precondition checks; throws ValidationError.
    void validate() const;
};

std::shared_ptr<const Chart> make_chart(const SurfaceConfig& surface);

/// Expands physics.lambda_grid (or an explicit list) to the sweep lambdas.
std::vector<double> sweep_lambdas(const ExperimentConfig& config);

} // namespace shellspec
