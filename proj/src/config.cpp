#include "shellspec/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "shellspec/errors.hpp"
#include "shellspec/kernels.hpp"

namespace shellspec {

using nlohmann::json;

namespace {

template <typename T>
void read(const json& j, const char* key, T& out)
{
    if (j.contains(key)) out = j.at(key).get<T>();
}

void read_surface(const json& j, SurfaceConfig& s)
{
    read(j, "family", s.family);
    read(j, "radius", s.radius);
    read(j, "a", s.a);
    read(j, "b", s.b);
    read(j, "c", s.c);
    read(j, "R", s.torus_major);
    read(j, "r", s.torus_minor);
    read(j, "rho_cos", s.rho_cos);
    read(j, "rho_sin", s.rho_sin);
    read(j, "z_cos", s.z_cos);
    read(j, "z_sin", s.z_sin);
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j)
{
    ExperimentConfig cfg;
    read(j, "task", cfg.task);
    if (j.contains("surface")) read_surface(j.at("surface"), cfg.surface);
    if (j.contains("physics")) {
        const json& p = j.at("physics");
        read(p, "m", cfg.physics.m);
        if (p.contains("lambda")) cfg.physics.lambda = p.at("lambda").get<double>();
        if (p.contains("lambda_grid")) {
            const json& g = p.at("lambda_grid");
            if (g.is_array()) {
                cfg.physics.lambda_grid = g.get<std::vector<double>>();
            } else {
                const double lo = g.at("min").get<double>();
                const double hi = g.at("max").get<double>();
                const int count = g.at("count").get<int>();
                if (count < 0) throw ValidationError("lambda_grid.count must be >= 0");
                for (int k = 0; k < count; ++k)
                    cfg.physics.lambda_grid.push_back(
                        count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
            }
        }
    }
    if (j.contains("coupling")) {
        read(j.at("coupling"), "eps", cfg.coupling.eps);
        read(j.at("coupling"), "mu", cfg.coupling.mu);
    }
    if (j.contains("discretization")) {
        const json& d = j.at("discretization");
        read(d, "n_u", cfg.disc.n_u);
        read(d, "n_v", cfg.disc.n_v);
        read(d, "patch_radius_mult", cfg.disc.patch_radius_mult);
        read(d, "patch_n_radial", cfg.disc.patch_n_radial);
        read(d, "patch_n_angular", cfg.disc.patch_n_angular);
        if (d.contains("ladder"))
            for (const auto& rung : d.at("ladder"))
                cfg.disc.ladder.push_back({rung.at(0).get<int>(), rung.at(1).get<int>()});
    }
    if (j.contains("oracle")) {
        const json& o = j.at("oracle");
        read(o, "mode", cfg.oracle.mode);
        read(o, "ft", cfg.oracle.ft);
        if (o.contains("xi")) {
            cfg.oracle.xi[0] = o.at("xi").at(0).get<double>();
            cfg.oracle.xi[1] = o.at("xi").at(1).get<double>();
        }
        read(o, "r_trunc", cfg.oracle.r_trunc);
        read(o, "n_radial", cfg.oracle.n_radial);
        read(o, "symbol_points", cfg.oracle.symbol_points);
    }
    read(j, "output_dir", cfg.output_dir);
    read(j, "seed", cfg.seed);
    read(j, "sweep_threshold", cfg.sweep_threshold);
    read(j, "cluster_delta", cfg.cluster_delta);
    if (j.contains("minimize")) read(j.at("minimize"), "area", cfg.minimize_area);
    read(j, "dump_operators", cfg.dump_operators);
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw ValidationError(std::string("config parse error: ") + ex.what());
    }
    return from_json(j);
}

nlohmann::ordered_json ExperimentConfig::to_json() const
{
    nlohmann::ordered_json j;
    j["task"] = task;
    nlohmann::ordered_json s;
    s["family"] = surface.family;
    if (surface.family == "sphere") {
        s["radius"] = surface.radius;
    } else if (surface.family == "ellipsoid") {
        s["a"] = surface.a;
        s["b"] = surface.b;
        s["c"] = surface.c;
    } else if (surface.family == "torus") {
        s["R"] = surface.torus_major;
        s["r"] = surface.torus_minor;
    } else {
        s["rho_cos"] = surface.rho_cos;
        s["rho_sin"] = surface.rho_sin;
        s["z_cos"] = surface.z_cos;
        s["z_sin"] = surface.z_sin;
    }
    j["surface"] = s;
    nlohmann::ordered_json p;
    p["m"] = physics.m;
    if (physics.lambda) p["lambda"] = *physics.lambda;
    if (!physics.lambda_grid.empty()) p["lambda_grid"] = physics.lambda_grid;
    j["physics"] = p;
    j["coupling"] = {{"eps", coupling.eps}, {"mu", coupling.mu}};
    nlohmann::ordered_json d;
    d["n_u"] = disc.n_u;
    d["n_v"] = disc.n_v;
    d["patch_radius_mult"] = disc.patch_radius_mult;
    d["patch_n_radial"] = disc.patch_n_radial;
    d["patch_n_angular"] = disc.patch_n_angular;
    if (!disc.ladder.empty()) {
        nlohmann::ordered_json rungs = nlohmann::ordered_json::array();
        for (const auto& r : disc.ladder) rungs.push_back({r[0], r[1]});
        d["ladder"] = rungs;
    }
    j["discretization"] = d;
    if (task == "oracle") {
        nlohmann::ordered_json o;
        o["mode"] = oracle.mode;
        if (!oracle.ft.empty()) o["ft"] = oracle.ft;
        o["xi"] = {oracle.xi[0], oracle.xi[1]};
        o["r_trunc"] = oracle.r_trunc;
        o["n_radial"] = oracle.n_radial;
        o["symbol_points"] = oracle.symbol_points;
        j["oracle"] = o;
    }
    if (task == "minimize-torus") j["minimize"] = {{"area", minimize_area}};
    j["output_dir"] = output_dir;
    j["seed"] = seed;
    j["sweep_threshold"] = sweep_threshold;
    j["cluster_delta"] = cluster_delta;
    j["dump_operators"] = dump_operators;
    return j;
}

void ExperimentConfig::validate() const
{
    static const std::set<std::string> tasks = {
        "geometry", "predict", "assemble-check", "spectrum",
        "sweep",    "oracle",  "minimize-torus"};
    if (!tasks.count(task)) throw ValidationError("unknown task: " + task);

    const bool needs_surface = task != "oracle" && task != "minimize-torus";
    if (needs_surface) make_chart(surface);  // throws on bad parameters

    if (task == "predict" || task == "spectrum" || task == "sweep")
        CouplingParams(coupling.eps, coupling.mu);  // criticality gate

    if (task == "spectrum" || task == "assemble-check") {
        const double lambda = physics.lambda.value_or(0.0);
        PhysParams(physics.m, lambda);
    }
    if (task == "sweep") {
        if (sweep_lambdas(*this).empty() && !physics.lambda_grid.empty())
            throw ValidationError("sweep: empty lambda grid after validation");
        for (double lam : physics.lambda_grid)
            if (std::abs(lam) >= std::abs(physics.m))
                throw ValidationError("sweep: requires |lambda| < |m| at every grid point");
    }
    if (task == "minimize-torus" && !(minimize_area > 0))
        throw ValidationError("minimize-torus: area must be positive");
    if (task == "oracle" && oracle.mode != "ft" && oracle.mode != "symbols")
        throw ValidationError("oracle: mode must be 'ft' or 'symbols'");
}

std::shared_ptr<const Chart> make_chart(const SurfaceConfig& surface)
{
    if (surface.family == "sphere") return std::make_shared<SphereChart>(surface.radius);
    if (surface.family == "ellipsoid")
        return std::make_shared<EllipsoidChart>(surface.a, surface.b, surface.c);
    if (surface.family == "torus")
        return std::make_shared<TorusChart>(surface.torus_major, surface.torus_minor);
    if (surface.family == "revolution") {
        RevolutionChart::Curve curve;
        curve.rho_cos = surface.rho_cos;
        curve.rho_sin = surface.rho_sin;
        curve.z_cos = surface.z_cos;
        curve.z_sin = surface.z_sin;
        return std::make_shared<RevolutionChart>(std::move(curve));
    }
    throw ValidationError("unknown surface family: " + surface.family);
}

std::vector<double> sweep_lambdas(const ExperimentConfig& config)
{
    if (!config.physics.lambda_grid.empty()) return config.physics.lambda_grid;
    return {};
}

} // namespace shellspec
