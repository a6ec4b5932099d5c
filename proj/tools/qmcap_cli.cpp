#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <optional>

#include "qmcap/capacity.hpp"
#include "qmcap/duality.hpp"
#include "qmcap/io.hpp"
#include "qmcap/models.hpp"
#include "qmcap/verify.hpp"

using nlohmann::json;
using namespace qmcap;

namespace {

json value_with_units(double nats) {
    return json{{"nats", nats}, {"bits", nats / std::numbers::ln2}};
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

json input_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return json{{"path", path}, {"fnv1a64", buf}};
}

json diagnostics_json(const Diagnostics& d) {
    json checks = json::array();
    for (const auto& c : d.checks)
        checks.push_back({{"name", c.name},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    return json{{"checks", std::move(checks)}, {"pass", d.pass}};
}

json capacity_result_json(const CapacityResult& r) {
    return json{{"value", value_with_units(r.value)},
                {"iterations", r.iterations},
                {"restarts", r.restarts},
                {"residual", r.residual},
                {"lower_bound_only", r.lower_bound_flag}};
}

struct ReportPrinter {
    json report;
    bool timing = false;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    int finish(bool pass) {
        report["pass"] = pass;
        if (timing) {
            const auto elapsed = std::chrono::steady_clock::now() - start;
            report["wall_time_ms"] =
                std::chrono::duration<double, std::milli>(elapsed).count();
        }
        std::cout << report.dump(2) << std::endl;
        return pass ? 0 : 1;
    }
};

struct CommonOpts {
    std::uint64_t seed = 0;
    std::string units = "nats";
    int restarts = 16;
    double tol = 1e-6;
    bool timing = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "seed for all randomized steps");
        cmd->add_option("--units", units, "nats|bits (display preference)")
            ->check(CLI::IsMember({"nats", "bits"}));
        cmd->add_option("--restarts", restarts, "optimizer multistart count");
        cmd->add_option("--tol", tol, "first-order tolerance");
        cmd->add_flag("--timing", timing,
                      "include wall time (breaks byte-level determinism)");
    }

    OptimizerOptions optimizer() const {
        OptimizerOptions o;
        o.seed = seed;
        o.restarts = restarts;
        o.tol = tol;
        return o;
    }
};

std::optional<ConstraintSpec> load_constraint(const std::string& path) {
    if (path.empty()) return std::nullopt;
    json j = io::load_file(path);
    if (!j.contains("E")) throw io::SchemaError("E: missing constraint field");
    if (!j.contains("N") || !j["N"].is_number())
        throw io::SchemaError("N: missing or non-numeric constraint bound");
    ConstraintSpec c;
    c.observable = io::matrix_from_json(j["E"], "E");
    c.bound = j["N"].get<double>();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacities of quantum measurement channels"};
    app.require_subcommand(1);

    CommonOpts common;

    // ---- cap ----------------------------------------------------------
    auto* cap = app.add_subcommand("cap", "capacity and information values");
    cap->require_subcommand(1);
    std::string povm_path, state_path, ensemble_path, constraint_path;
    for (const char* name : {"c", "cea", "chi", "mutual", "accessible"}) {
        auto* sub = cap->add_subcommand(name);
        sub->add_option("--povm", povm_path, "POVM JSON file");
        sub->add_option("--state", state_path, "density matrix JSON file");
        sub->add_option("--ensemble", ensemble_path, "ensemble JSON file");
        sub->add_option("--constraint", constraint_path,
                        "constraint JSON file {\"E\": matrix, \"N\": bound}");
        common.attach(sub);
    }

    // ---- dualize ------------------------------------------------------
    auto* dualize = app.add_subcommand("dualize", "ensemble-observable duality");
    dualize->require_subcommand(1);
    std::string out_path;
    for (const char* name : {"to-ensemble", "to-observable"}) {
        auto* sub = dualize->add_subcommand(name);
        sub->add_option("--povm", povm_path, "POVM JSON file");
        sub->add_option("--state", state_path, "density matrix JSON file");
        sub->add_option("--ensemble", ensemble_path, "ensemble JSON file");
        sub->add_option("-o,--output", out_path, "also write the artifact here");
        common.attach(sub);
    }

    // ---- models -------------------------------------------------------
    auto* models = app.add_subcommand("models", "generators and closed forms");
    models->require_subcommand(1);
    int dim = 2;
    int samples = 10000;
    double mean_photons = 1.0;
    int cutoff = 0;
    std::vector<double> fiducial_parts;
    for (const char* name :
         {"sphere-capacity", "sphere-povm", "sic", "wh-povm", "thermal",
          "heterodyne", "depolarizing-check", "radial-check"}) {
        auto* sub = models->add_subcommand(name);
        sub->add_option("--dim", dim, "Hilbert space dimension");
        sub->add_option("--samples", samples, "Monte Carlo sample count");
        sub->add_option("--mean-photons", mean_photons, "thermal mean photon N");
        sub->add_option("--cutoff", cutoff, "Fock cutoff (0 = automatic)");
        sub->add_option("--fiducial", fiducial_parts,
                        "fiducial vector as re,im pairs");
        sub->add_option("-o,--output", out_path, "also write the artifact here");
        common.attach(sub);
    }

    // ---- verify -------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "identity/property suites");
    std::string suite_name = "all";
    verify_cmd->add_option("--suite", suite_name, "suite name or 'all'");
    common.attach(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    ReportPrinter out;
    out.timing = common.timing;
    out.report["seed"] = common.seed;
    out.report["units"] = common.units;

    try {
        json inputs = json::object();
        auto load_povm = [&]() {
            if (povm_path.empty()) throw io::SchemaError("--povm required");
            inputs["povm"] = input_digest(povm_path);
            return io::povm_from_json(io::load_file(povm_path));
        };
        auto load_state = [&]() {
            if (state_path.empty()) throw io::SchemaError("--state required");
            inputs["state"] = input_digest(state_path);
            return io::state_from_json(io::load_file(state_path));
        };
        auto load_ensemble = [&]() {
            if (ensemble_path.empty())
                throw io::SchemaError("--ensemble required");
            inputs["ensemble"] = input_digest(ensemble_path);
            return io::ensemble_from_json(io::load_file(ensemble_path));
        };
        auto constraint = [&]() {
            auto c = load_constraint(constraint_path);
            if (c) inputs["constraint"] = input_digest(constraint_path);
            return c;
        };
        auto emit_artifact = [&](const json& artifact) {
            out.report["artifact"] = artifact;
            if (!out_path.empty()) io::save_file(out_path, artifact);
        };

        if (cap->parsed()) {
            const std::string which = cap->get_subcommands()[0]->get_name();
            out.report["command"] = "cap " + which;
            CapacityResult res;
            bool inputs_ok = true;
            if (which == "c") {
                POVM m = load_povm();
                Diagnostics d = validate(m);
                out.report["diagnostics"] = diagnostics_json(d);
                inputs_ok = d.pass;
                if (inputs_ok) res = capacity_C(m, constraint(), common.optimizer());
            } else if (which == "cea") {
                POVM m = load_povm();
                Diagnostics d = validate(m);
                out.report["diagnostics"] = diagnostics_json(d);
                inputs_ok = d.pass;
                if (inputs_ok)
                    res = capacity_Cea(m, constraint(), common.optimizer());
            } else if (which == "chi") {
                POVM m = load_povm();
                DensityMatrix rho = load_state();
                Diagnostics d = validate(rho);
                out.report["diagnostics"] = diagnostics_json(d);
                inputs_ok = d.pass && validate(m).pass;
                if (inputs_ok) res = chi_measurement(rho, m, common.optimizer());
            } else if (which == "mutual") {
                POVM m = load_povm();
                DensityMatrix rho = load_state();
                inputs_ok = validate(m).pass && validate(rho).pass;
                if (inputs_ok) {
                    res.value = mutual_info(rho, m);
                    res.restarts = 0;
                }
            } else {  // accessible
                Ensemble pi = load_ensemble();
                Diagnostics d = validate(pi);
                out.report["diagnostics"] = diagnostics_json(d);
                inputs_ok = d.pass;
                if (inputs_ok) res = accessible_info(pi, common.optimizer());
            }
            out.report["inputs"] = inputs;
            if (!inputs_ok) return out.finish(false);
            out.report["results"] = capacity_result_json(res);
            return out.finish(true);
        }

        if (dualize->parsed()) {
            const std::string which = dualize->get_subcommands()[0]->get_name();
            out.report["command"] = "dualize " + which;
            if (which == "to-ensemble") {
                DensityMatrix rho = load_state();
                POVM m = load_povm();
                Ensemble dual = dual_ensemble(rho, m);
                out.report["inputs"] = inputs;
                emit_artifact(io::to_json(dual));
                out.report["results"] = {
                    {"chi", value_with_units(holevo_chi(dual))},
                    {"outcomes_kept", dual.size()}};
                return out.finish(true);
            }
            Ensemble pi = load_ensemble();
            DualObservable dual = dual_observable(pi);
            out.report["inputs"] = inputs;
            emit_artifact(json{{"state", io::to_json(dual.average)},
                               {"povm", io::to_json(dual.observable)}});
            out.report["results"] = {
                {"completeness_residual", dual.completeness_residual},
                {"average_full_rank", dual.full_rank}};
            return out.finish(true);
        }

        if (models->parsed()) {
            const std::string which = models->get_subcommands()[0]->get_name();
            out.report["command"] = "models " + which;
            if (which == "sphere-capacity") {
                SphereCapacity cap_m = sphere_capacity(dim);
                out.report["results"] = {
                    {"closed", value_with_units(cap_m.closed)},
                    {"quadrature", value_with_units(cap_m.quadrature)}};
                return out.finish(std::abs(cap_m.closed - cap_m.quadrature) <=
                                  1e-9);
            }
            if (which == "sphere-povm") {
                SphereSpec spec;
                spec.dim = dim;
                spec.mc_samples = samples;
                spec.seed = common.seed;
                SphereDiscretization d = sphere_discretize(spec);
                emit_artifact(io::to_json(d.povm));
                out.report["results"] = {{"deficit_norm", d.deficit_norm},
                                         {"outcomes", d.povm.outcomes()}};
                return out.finish(true);
            }
            if (which == "sic" || which == "wh-povm") {
                const int m = (which == "sic") ? 2 : dim;
                Vector fid;
                if (!fiducial_parts.empty()) {
                    if (fiducial_parts.size() != 2 * static_cast<std::size_t>(m))
                        throw io::SchemaError(
                            "fiducial: expected dim re,im pairs");
                    fid.resize(m);
                    for (int i = 0; i < m; ++i)
                        fid[i] = Complex(fiducial_parts[2 * i],
                                         fiducial_parts[2 * i + 1]);
                    fid.normalize();
                } else if (m == 2) {
                    fid = sic_qubit_fiducial();
                } else {
                    fid = Vector::Constant(m, 1.0 / std::sqrt(double(m)));
                }
                CovariantPOVM cov = weyl_heisenberg_povm(m, fid);
                emit_artifact(io::to_json(cov.povm));
                out.report["results"] = {{"outcomes", cov.povm.outcomes()},
                                         {"dim", m}};
                return out.finish(true);
            }
            if (which == "thermal") {
                FockSpec spec;
                spec.mean_photons = mean_photons;
                spec.cutoff = cutoff;
                DensityMatrix rho =
                    thermal_state(mean_photons, spec.effective_cutoff());
                emit_artifact(io::to_json(rho));
                out.report["results"] = {
                    {"entropy", value_with_units(von_neumann_entropy(rho.mat))},
                    {"cutoff", spec.effective_cutoff()}};
                return out.finish(true);
            }
            if (which == "heterodyne") {
                HeterodyneCapacities het = heterodyne_capacities(mean_photons);
                out.report["results"] = {
                    {"C", value_with_units(het.c)},
                    {"Cea", value_with_units(het.cea)},
                    {"g", value_with_units(het.g)},
                    {"gap", value_with_units(het.cea - het.c)}};
                return out.finish(true);
            }
            if (which == "depolarizing-check") {
                DepolarizingReport d =
                    depolarizing_check(dim, samples, common.seed);
                out.report["results"] = {{"max_deviation", d.max_deviation},
                                         {"max_zscore", d.max_z},
                                         {"samples", d.samples}};
                return out.finish(d.pass);
            }
            // radial-check
            RadialSubstitutionReport a = radial_substitution_check(dim);
            out.report["results"] = {{"lhs", value_with_units(a.lhs)},
                                     {"rhs", value_with_units(a.rhs)}};
            return out.finish(std::abs(a.lhs - a.rhs) <= 1e-10);
        }

        // verify
        out.report["command"] = "verify " + suite_name;
        std::vector<verify::Report> reports =
            verify::suite(suite_name, common.seed);
        json suites = json::array();
        bool all_pass = true;
        for (const auto& rep : reports) {
            json checks = json::array();
            for (const auto& c : rep.checks)
                checks.push_back({{"name", c.name},
                                  {"measured", c.measured},
                                  {"tolerance", c.tolerance},
                                  {"pass", c.pass}});
            suites.push_back({{"criterion", rep.suite},
                              {"checks", std::move(checks)},
                              {"pass", rep.pass}});
            all_pass = all_pass && rep.pass;
        }
        out.report["results"] = std::move(suites);
        return out.finish(all_pass);
    } catch (const io::SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
