#include "vscl/config.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <set>

#include <nlohmann/json.hpp>

#include "vscl/errors.hpp"
#include "vscl/stability.hpp"

namespace vscl {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& context) {
    if (!obj.is_object()) throw ConfigError(context + ": expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ConfigError(context + ": unknown key \"" + key + "\"");
}

double need_number(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.contains(key)) throw ConfigError(context + ": missing key \"" + key + "\"");
    if (!obj[key].is_number()) throw ConfigError(context + ": \"" + key + "\" must be a number");
    return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& key, double fallback) {
    return obj.contains(key) ? obj[key].get<double>() : fallback;
}

std::string need_string(const json& obj, const std::string& key,
                        const std::string& context) {
    if (!obj.contains(key)) throw ConfigError(context + ": missing key \"" + key + "\"");
    if (!obj[key].is_string()) throw ConfigError(context + ": \"" + key + "\" must be a string");
    return obj[key].get<std::string>();
}

FourierSeries parse_fourier(const json& spec, const std::string& context) {
    if (!spec.is_array()) throw ConfigError(context + ": expected [[k, cos, sin], ...]");
    std::vector<FourierTerm> terms;
    for (const auto& t : spec) {
        if (!t.is_array() || t.size() != 3)
            throw ConfigError(context + ": each term must be [k, cos, sin]");
        terms.push_back({t[0].get<int>(), t[1].get<double>(), t[2].get<double>()});
    }
    return FourierSeries(terms);
}

void validate_flux(const json& spec, const std::string& context) {
    check_keys(spec, {"family", "a", "V", "a_minus", "a_plus", "threshold"}, context);
    const std::string family = need_string(spec, "family", context);
    if (family == "burgers") {
    } else if (family == "linear") {
        if (!spec.contains("a")) throw ConfigError(context + ": missing key \"a\"");
    } else if (family == "separable_convex") {
        for (const char* k : {"V", "a_minus", "a_plus", "threshold"})
            if (!spec.contains(k))
                throw ConfigError(context + ": missing key \"" + std::string(k) + "\"");
    } else {
        throw ConfigError(context + ": unknown flux family \"" + family + "\"");
    }
}

FluxModel parse_flux(const json& spec, const std::string& context) {
    validate_flux(spec, context);
    const std::string family = spec["family"].get<std::string>();
    if (family == "burgers") return make_burgers_flux();
    if (family == "linear") return make_linear_flux(parse_fourier(spec["a"], context));
    return make_separable_convex_flux(parse_fourier(spec["V"], context),
                                      spec["a_minus"].get<double>(),
                                      spec["a_plus"].get<double>(),
                                      spec["threshold"].get<double>());
}

void validate_grid(const json& spec, const std::string& context) {
    check_keys(spec, {"kind", "x_left", "x_right", "n_cells"}, context);
    const std::string kind = need_string(spec, "kind", context);
    if (kind != "periodic" && kind != "line")
        throw ConfigError(context + ": grid kind must be \"periodic\" or \"line\"");
    need_number(spec, "x_left", context);
    need_number(spec, "x_right", context);
    need_number(spec, "n_cells", context);
}

Grid1D parse_grid(const json& spec, const std::string& context) {
    validate_grid(spec, context);
    const GridKind kind = spec["kind"].get<std::string>() == "periodic"
                              ? GridKind::periodic
                              : GridKind::line;
    try {
        return Grid1D(kind, spec["x_left"].get<double>(), spec["x_right"].get<double>(),
                      spec["n_cells"].get<int>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(context + ": " + e.what());
    }
}

void validate_field(const json& spec, const std::string& context) {
    check_keys(spec,
               {"kind", "value", "amplitude", "offset", "k", "n_modes", "center", "width",
                "p"},
               context);
    const std::string kind = need_string(spec, "kind", context);
    static const std::set<std::string> kinds{"zero",   "constant", "sin",
                                             "random", "bump",     "dipole",
                                             "cell_plus_bump"};
    if (!kinds.count(kind))
        throw ConfigError(context + ": unknown field kind \"" + kind + "\"");
}

Field parse_field(const json& spec, const Grid1D& grid, const FluxModel& flux,
                  Rng& rng, const CellTolerances& cell_tol, const std::string& context) {
    validate_field(spec, context);
    const std::string kind = spec["kind"].get<std::string>();
    if (kind == "zero") return Field(grid);
    if (kind == "constant") return Field(grid, need_number(spec, "value", context));
    if (kind == "sin") {
        Field f(grid);
        const double amp = need_number(spec, "amplitude", context);
        const double off = opt_number(spec, "offset", 0.0);
        const double k = opt_number(spec, "k", 1.0);
        for (int j = 0; j < grid.n_cells; ++j) {
            const double x = (grid.center(j) - grid.x_left) / grid.measure();
            f.values[static_cast<std::size_t>(j)] =
                off + amp * std::sin(2.0 * 3.14159265358979323846 * k * x);
        }
        return f;
    }
    if (kind == "random")
        return make_random_smooth_field(grid, static_cast<int>(opt_number(spec, "n_modes", 4)),
                                        need_number(spec, "amplitude", context), rng);
    if (kind == "bump")
        return make_gaussian_bump(grid, need_number(spec, "center", context),
                                  need_number(spec, "width", context),
                                  need_number(spec, "amplitude", context));
    if (kind == "dipole")
        return make_dipole(grid, need_number(spec, "center", context),
                           need_number(spec, "width", context),
                           need_number(spec, "amplitude", context));
    // cell_plus_bump
    const CellSolution cell =
        solve_cell_by_mean(flux, need_number(spec, "p", context), cell_tol);
    Field f = sample_cell_on_grid(flux, cell, grid, cell_tol);
    const Field bump = make_gaussian_bump(grid, need_number(spec, "center", context),
                                          need_number(spec, "width", context),
                                          need_number(spec, "amplitude", context));
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += bump.values[i];
    return f;
}

const std::set<std::string> kToleranceKeys{
    "period_tol",     "mean_tol",        "ode_abs_tol",
    "ode_rel_tol",    "residual_tol",    "n_grid",
    "detect_tol",     "sign_tol",        "n_per_period",
    "observer_dt",    "cfl_number",      "per_step_slack",
    "convergence_fraction", "boundary_ledger_tol", "smallness_threshold",
    "drift_rel_tol"};

void apply_tolerances(const json& spec, StabilityParams& params,
                      const std::string& context) {
    check_keys(spec, kToleranceKeys, context);
    for (const auto& [key, value] : spec.items()) {
        if (!value.is_number() || value.get<double>() <= 0.0)
            throw ConfigError(context + ": \"" + key + "\" must be a positive number");
    }
    CellTolerances& ct = params.shock.cell;
    ct.period_tol = opt_number(spec, "period_tol", ct.period_tol);
    ct.mean_tol = opt_number(spec, "mean_tol", ct.mean_tol);
    ct.ode_abs_tol = opt_number(spec, "ode_abs_tol", ct.ode_abs_tol);
    ct.ode_rel_tol = opt_number(spec, "ode_rel_tol", ct.ode_rel_tol);
    ct.residual_tol = opt_number(spec, "residual_tol", ct.residual_tol);
    ct.n_grid = static_cast<int>(opt_number(spec, "n_grid", ct.n_grid));
    params.shock.detect_tol = opt_number(spec, "detect_tol", params.shock.detect_tol);
    params.shock.sign_tol = opt_number(spec, "sign_tol", params.shock.sign_tol);
    params.shock.n_per_period =
        static_cast<int>(opt_number(spec, "n_per_period", params.shock.n_per_period));
    params.observer_dt = opt_number(spec, "observer_dt", params.observer_dt);
    params.cfl_number = opt_number(spec, "cfl_number", params.cfl_number);
    params.per_step_slack = opt_number(spec, "per_step_slack", params.per_step_slack);
    params.convergence_fraction =
        opt_number(spec, "convergence_fraction", params.convergence_fraction);
    params.boundary_ledger_tol =
        opt_number(spec, "boundary_ledger_tol", params.boundary_ledger_tol);
    params.smallness_threshold =
        opt_number(spec, "smallness_threshold", params.smallness_threshold);
    params.drift_rel_tol = opt_number(spec, "drift_rel_tol", params.drift_rel_tol);
}

struct ExperimentSchema {
    std::string name;
    std::string claim;
    std::set<std::string> keys;
    std::string sample;
};

const std::vector<ExperimentSchema>& experiment_schemas() {
    static const std::vector<ExperimentSchema> schemas{
        {"coproperties",
         "order preservation, L1 contraction and mass conservation of the solution "
         "semigroup",
         {"type", "grid", "n_pairs", "t_end", "flux", "tolerances"},
         R"({"type":"coproperties","grid":{"kind":"periodic","x_left":0,"x_right":1,"n_cells":64},"n_pairs":10,"t_end":0.5})"},
        {"periodic_convergence",
         "bounded periodic data converge in sup norm to the stationary state of the "
         "same mean",
         {"type", "grid", "t_end", "linf_threshold", "initial", "flux", "tolerances"},
         R"({"type":"periodic_convergence","grid":{"kind":"periodic","x_left":0,"x_right":1,"n_cells":128},"t_end":30,"linf_threshold":1e-3,"initial":{"kind":"sin","amplitude":0.5}})"},
        {"shock_stability",
         "perturbed standing shocks relax in L1 to the zero-mass shock selected by "
         "conservation",
         {"type", "grid", "t_end", "alpha", "xi0", "table", "perturbation", "flux",
          "tolerances"},
         R"({"type":"shock_stability","grid":{"kind":"line","x_left":-20,"x_right":20,"n_cells":1280},"t_end":100,"alpha":0.5,"xi0":0.0,"table":{"p_min":-2,"p_max":2,"n_points":21},"perturbation":{"kind":"bump","center":3,"width":1,"amplitude":0.2}})"},
        {"linear_drift",
         "for the linearized equation the center of mass drifts at the homogenized "
         "velocity and the L1 norm decays algebraically",
         {"type", "grid", "t_end", "b", "w0", "tolerances"},
         R"({"type":"linear_drift","grid":{"kind":"line","x_left":-15,"x_right":85,"n_cells":6400},"t_end":40,"b":[[0,1.0,0],[1,0.5,0]],"w0":{"kind":"dipole","center":0,"width":0.5,"amplitude":1.0}})"},
        {"weighted_entropy",
         "the measure-weighted L2 energy of small perturbations is non-increasing and "
         "the L2 norm decays like t^{-1/4}",
         {"type", "grid", "t_end", "p", "w0", "flux", "tolerances"},
         R"({"type":"weighted_entropy","grid":{"kind":"line","x_left":-20,"x_right":20,"n_cells":2560},"t_end":20,"p":0.0,"w0":{"kind":"dipole","center":0,"width":0.5,"amplitude":0.05}})"},
        {"uniform_bounds",
         "the sup norm of the solution stays bounded uniformly in time",
         {"type", "grid", "t_end", "tol", "initial", "flux", "tolerances"},
         R"({"type":"uniform_bounds","grid":{"kind":"periodic","x_left":0,"x_right":1,"n_cells":128},"t_end":100,"tol":1e-4,"initial":{"kind":"sin","amplitude":2.0,"offset":1.0}})"},
    };
    return schemas;
}

const ExperimentSchema& schema_for(const std::string& type) {
    for (const auto& s : experiment_schemas())
        if (s.name == type) return s;
    throw ConfigError("experiments: unknown type \"" + type + "\"");
}

void validate_experiment(const json& spec, const std::string& context) {
    if (!spec.is_object()) throw ConfigError(context + ": expected an object");
    const std::string type = need_string(spec, "type", context);
    const ExperimentSchema& schema = schema_for(type);
    check_keys(spec, schema.keys, context + " (" + type + ")");
    if (spec.contains("grid")) validate_grid(spec["grid"], context + ".grid");
    if (spec.contains("flux")) validate_flux(spec["flux"], context + ".flux");
    for (const char* fk : {"initial", "perturbation", "w0"})
        if (spec.contains(fk)) validate_field(spec[fk], context + "." + fk);
    if (spec.contains("table"))
        check_keys(spec["table"], {"p_min", "p_max", "n_points"}, context + ".table");
    if (spec.contains("b")) parse_fourier(spec["b"], context + ".b");
    for (const char* nk : {"t_end", "linf_threshold", "alpha", "tol", "p"})
        if (spec.contains(nk) && !spec[nk].is_number())
            throw ConfigError(context + ": \"" + std::string(nk) + "\" must be a number");
}

HomogenizedFluxTable table_from(const json& spec, const FluxModel& flux,
                                const CellTolerances& tol, const std::string& context) {
    return homogenized_flux_table(flux, need_number(spec, "p_min", context),
                                  need_number(spec, "p_max", context),
                                  static_cast<int>(need_number(spec, "n_points", context)),
                                  tol);
}

ExperimentReport dispatch_experiment(const json& spec, const FluxModel& default_flux,
                                     StabilityParams params, std::uint64_t seed) {
    const std::string type = spec["type"].get<std::string>();
    const std::string context = "experiment " + type;
    params.seed = seed;
    if (spec.contains("tolerances"))
        apply_tolerances(spec["tolerances"], params, context + ".tolerances");
    const FluxModel flux = spec.contains("flux")
                               ? parse_flux(spec["flux"], context + ".flux")
                               : default_flux;
    Rng rng(seed);

    if (type == "coproperties") {
        const Grid1D grid = parse_grid(spec["grid"], context + ".grid");
        return coproperty_ensemble(flux, grid,
                                   static_cast<int>(opt_number(spec, "n_pairs", 20)),
                                   need_number(spec, "t_end", context), params);
    }
    if (type == "periodic_convergence") {
        const Grid1D grid = parse_grid(spec["grid"], context + ".grid");
        const Field u0 = parse_field(spec["initial"], grid, flux, rng,
                                     params.shock.cell, context + ".initial");
        return periodic_convergence(flux, u0, need_number(spec, "t_end", context),
                                    opt_number(spec, "linf_threshold", 1e-3), params);
    }
    if (type == "shock_stability") {
        const Grid1D grid = parse_grid(spec["grid"], context + ".grid");
        const auto table = table_from(spec["table"], flux, params.shock.cell,
                                      context + ".table");
        const ShockProfile U =
            build_shock_on(flux, table, need_number(spec, "alpha", context),
                           need_number(spec, "xi0", context), grid.centers(), params.shock);
        const Field pert = parse_field(spec["perturbation"], grid, flux, rng,
                                       params.shock.cell, context + ".perturbation");
        return shock_stability(flux, table, U, pert, need_number(spec, "t_end", context),
                               params);
    }
    if (type == "linear_drift") {
        const Grid1D grid = parse_grid(spec["grid"], context + ".grid");
        LinearDriftSetup setup;
        setup.b = parse_fourier(spec["b"], context + ".b");
        setup.w0 = parse_field(spec["w0"], grid, flux, rng, params.shock.cell,
                               context + ".w0");
        setup.t_end = need_number(spec, "t_end", context);
        return linear_drift_experiment(setup, params);
    }
    if (type == "weighted_entropy") {
        const Grid1D grid = parse_grid(spec["grid"], context + ".grid");
        const CellSolution cell =
            solve_cell_by_mean(flux, need_number(spec, "p", context), params.shock.cell);
        const Field w0 = parse_field(spec["w0"], grid, flux, rng, params.shock.cell,
                                     context + ".w0");
        return weighted_entropy_series(flux, cell, w0,
                                       need_number(spec, "t_end", context), params);
    }
    // uniform_bounds
    const Grid1D grid = parse_grid(spec["grid"], context + ".grid");
    const Field u0 = parse_field(spec["initial"], grid, flux, rng, params.shock.cell,
                                 context + ".initial");
    return uniform_bound_probe(flux, u0, need_number(spec, "t_end", context),
                               opt_number(spec, "tol", 1e-4), params);
}

json load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json config;
    try {
        in >> config;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return config;
}

}  // namespace

const std::vector<CatalogEntry>& experiment_catalog() {
    static const std::vector<CatalogEntry> catalog = [] {
        std::vector<CatalogEntry> out;
        for (const auto& s : experiment_schemas()) {
            CatalogEntry e;
            e.name = s.name;
            e.claim = s.claim;
            e.params.assign(s.keys.begin(), s.keys.end());
            e.sample_config = s.sample;
            out.push_back(std::move(e));
        }
        return out;
    }();
    return catalog;
}

void validate_config(const json& config) {
    check_keys(config,
               {"output_dir", "seed", "jobs", "tolerances", "flux", "experiments",
                "cell_table", "shock_build"},
               "config");
    if (config.contains("flux")) validate_flux(config["flux"], "config.flux");
    if (config.contains("tolerances")) {
        StabilityParams scratch;
        apply_tolerances(config["tolerances"], scratch, "config.tolerances");
    }
    if (config.contains("experiments")) {
        if (!config["experiments"].is_array())
            throw ConfigError("config: \"experiments\" must be an array");
        int idx = 0;
        for (const auto& e : config["experiments"])
            validate_experiment(e, "experiments[" + std::to_string(idx++) + "]");
    }
    if (config.contains("cell_table"))
        check_keys(config["cell_table"], {"p_min", "p_max", "n_points", "export_cells"},
                   "config.cell_table");
    if (config.contains("shock_build"))
        check_keys(config["shock_build"],
                   {"alpha", "xi0", "half_length", "n_per_period", "table"},
                   "config.shock_build");
}

int run_config_file(const std::filesystem::path& config_path,
                    const RunOverrides& overrides) {
    json config;
    StabilityParams base_params;
    std::filesystem::path out_dir;
    std::uint64_t seed;
    int jobs;
    try {
        config = load_config(config_path);
        validate_config(config);
        out_dir = !overrides.output_dir.empty()
                      ? std::filesystem::path(overrides.output_dir)
                      : std::filesystem::path(config.value("output_dir", "out"));
        seed = overrides.seed ? overrides.seed : config.value("seed", 2024ull);
        jobs = overrides.jobs ? overrides.jobs : config.value("jobs", 1);
        if (config.contains("tolerances"))
            apply_tolerances(config["tolerances"], base_params, "config.tolerances");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const FluxModel default_flux = config.contains("flux")
                                       ? parse_flux(config["flux"], "config.flux")
                                       : make_burgers_flux();
    const json experiments =
        config.contains("experiments") ? config["experiments"] : json::array();

    struct Slot {
        std::string dir_name;
        ExperimentReport report;
        bool solver_error = false;
        std::string error;
    };
    std::vector<Slot> slots(experiments.size());

    auto run_one = [&](std::size_t i) {
        const json& spec = experiments[i];
        const std::string type = spec["type"].get<std::string>();
        slots[i].dir_name = "exp_" + std::to_string(i) + "_" + type;
        try {
            slots[i].report = dispatch_experiment(spec, default_flux, base_params,
                                                  seed + 1000 * (i + 1));
        } catch (const SolverError& e) {
            slots[i].solver_error = true;
            slots[i].error = e.what();
        } catch (const std::invalid_argument& e) {
            slots[i].solver_error = true;
            slots[i].error = e.what();
        }
    };

    if (jobs > 1) {
        std::vector<std::future<void>> futures;
        for (std::size_t i = 0; i < slots.size(); ++i)
            futures.push_back(std::async(std::launch::async, run_one, i));
        for (auto& f : futures) f.get();
    } else {
        for (std::size_t i = 0; i < slots.size(); ++i) run_one(i);
    }

    bool any_solver_error = false, all_pass = true;
    json summary;
    summary["config"] = config_path.string();
    summary["seed"] = seed;
    summary["experiments"] = json::array();
    int n_pass = 0, n_fail = 0;
    for (auto& slot : slots) {
        json e;
        e["dir"] = slot.dir_name;
        if (slot.solver_error) {
            any_solver_error = true;
            e["solver_error"] = slot.error;
            std::cerr << "solver error in " << slot.dir_name << ": " << slot.error << "\n";
        } else {
            slot.report.write(out_dir / slot.dir_name);
            const bool pass = slot.report.passed();
            e["name"] = slot.report.name;
            e["passed"] = pass;
            (pass ? n_pass : n_fail)++;
            all_pass = all_pass && pass;
            std::cout << (pass ? "PASS " : "FAIL ") << slot.dir_name << "\n";
        }
        summary["experiments"].push_back(e);
    }
    summary["n_passed"] = n_pass;
    summary["n_failed"] = n_fail;
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir / "summary.json") << summary.dump(2) << "\n";
    if (any_solver_error) return 3;
    return all_pass ? 0 : 1;
}

int run_cell_table(const std::filesystem::path& config_path,
                   const RunOverrides& overrides) {
    json config;
    try {
        config = load_config(config_path);
        validate_config(config);
        if (!config.contains("cell_table"))
            throw ConfigError("config: cell-table needs a \"cell_table\" object");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    const std::filesystem::path out_dir = !overrides.output_dir.empty()
                                              ? overrides.output_dir
                                              : config.value("output_dir", "out");
    StabilityParams params;
    if (config.contains("tolerances"))
        apply_tolerances(config["tolerances"], params, "config.tolerances");
    const FluxModel flux = config.contains("flux")
                               ? parse_flux(config["flux"], "config.flux")
                               : make_burgers_flux();
    try {
        const json& ct = config["cell_table"];
        const auto table = table_from(ct, flux, params.shock.cell, "config.cell_table");
        std::filesystem::create_directories(out_dir);
        char buf[64];
        std::ofstream out(out_dir / "cell_table.csv");
        out << "p,alpha,xi0\n";
        for (std::size_t i = 0; i < table.p_samples.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,", table.p_samples[i]);
            out << buf;
            std::snprintf(buf, sizeof buf, "%.17g,", table.alpha_samples[i]);
            out << buf;
            std::snprintf(buf, sizeof buf, "%.17g", table.xi_samples[i]);
            out << buf << "\n";
        }
        if (ct.contains("export_cells")) {
            for (const auto& pv : ct["export_cells"]) {
                const double p = pv.get<double>();
                const CellSolution cell = solve_cell_by_mean(flux, p, params.shock.cell);
                std::snprintf(buf, sizeof buf, "cell_p%.6g.csv", p);
                std::ofstream cout_(out_dir / buf);
                cout_ << "y,v\n";
                for (std::size_t i = 0; i < cell.grid.size(); ++i) {
                    std::snprintf(buf, sizeof buf, "%.17g,", cell.grid[i]);
                    cout_ << buf;
                    std::snprintf(buf, sizeof buf, "%.17g", cell.values[i]);
                    cout_ << buf << "\n";
                }
            }
        }
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int run_shock_build(const std::filesystem::path& config_path,
                    const RunOverrides& overrides) {
    json config;
    try {
        config = load_config(config_path);
        validate_config(config);
        if (!config.contains("shock_build"))
            throw ConfigError("config: shock-build needs a \"shock_build\" object");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    const std::filesystem::path out_dir = !overrides.output_dir.empty()
                                              ? overrides.output_dir
                                              : config.value("output_dir", "out");
    StabilityParams params;
    if (config.contains("tolerances"))
        apply_tolerances(config["tolerances"], params, "config.tolerances");
    const FluxModel flux = config.contains("flux")
                               ? parse_flux(config["flux"], "config.flux")
                               : make_burgers_flux();
    try {
        const json& sb = config["shock_build"];
        params.shock.n_per_period =
            static_cast<int>(opt_number(sb, "n_per_period", params.shock.n_per_period));
        const auto table = table_from(sb["table"], flux, params.shock.cell,
                                      "config.shock_build.table");
        const ShockProfile prof = build_shock(
            flux, table, need_number(sb, "alpha", "shock_build"),
            need_number(sb, "xi0", "shock_build"),
            static_cast<int>(opt_number(sb, "half_length", 0)), params.shock);
        std::filesystem::create_directories(out_dir);
        char buf[64];
        std::ofstream out(out_dir / "profile.csv");
        out << "x,u,v_lower,v_upper\n";
        for (std::size_t i = 0; i < prof.grid.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,", prof.grid[i]);
            out << buf;
            std::snprintf(buf, sizeof buf, "%.17g,", prof.values[i]);
            out << buf;
            std::snprintf(buf, sizeof buf, "%.17g,", prof.band_lower[i]);
            out << buf;
            std::snprintf(buf, sizeof buf, "%.17g", prof.band_upper[i]);
            out << buf << "\n";
        }
        json summary;
        summary["alpha"] = prof.alpha;
        summary["xi0"] = prof.xi0;
        summary["q_left"] = prof.q_left();
        summary["q_right"] = prof.q_right();
        summary["residual_left"] = prof.left.residual;
        summary["residual_right"] = prof.right.residual;
        summary["resolved_left"] = prof.left.resolved;
        summary["resolved_right"] = prof.right.resolved;
        summary["rate_left"] = prof.rate_left.rate;
        summary["rate_right"] = prof.rate_right.rate;
        summary["stationarity_residual"] = prof.residual;
        std::ofstream(out_dir / "summary.json") << summary.dump(2) << "\n";
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace vscl
