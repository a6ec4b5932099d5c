#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmcap/capacity.hpp"
#include "qmcap/duality.hpp"
#include "qmcap/models.hpp"
#include "qmcap/verify.hpp"

namespace py = pybind11;
using namespace qmcap;

namespace {

POVM make_povm(const std::vector<Matrix>& elements,
               const std::vector<double>& weights) {
    POVM m;
    m.elements = elements;
    m.weights = weights;
    Diagnostics d = validate(m);
    if (!d.pass) {
        std::string msg = "invalid POVM:";
        for (const auto& c : d.checks)
            if (!c.pass) msg += " " + c.name;
        throw std::invalid_argument(msg);
    }
    return m;
}

Ensemble make_ensemble(const std::vector<double>& probs,
                       const std::vector<Matrix>& states) {
    Ensemble pi;
    pi.probs = probs;
    pi.states = states;
    Diagnostics d = validate(pi);
    if (!d.pass) {
        std::string msg = "invalid ensemble:";
        for (const auto& c : d.checks)
            if (!c.pass) msg += " " + c.name;
        throw std::invalid_argument(msg);
    }
    return pi;
}

OptimizerOptions make_opts(int restarts, double tol, std::uint64_t seed,
                           int max_iters) {
    OptimizerOptions o;
    o.restarts = restarts;
    o.tol = tol;
    o.seed = seed;
    o.max_iters = max_iters;
    return o;
}

std::optional<ConstraintSpec> make_constraint(
    const std::optional<std::pair<Matrix, double>>& c) {
    if (!c) return std::nullopt;
    return ConstraintSpec{c->first, c->second};
}

py::dict result_to_dict(const CapacityResult& r) {
    py::dict d;
    d["value"] = r.value;
    d["iterations"] = r.iterations;
    d["restarts"] = r.restarts;
    d["residual"] = r.residual;
    d["lower_bound_only"] = r.lower_bound_flag;
    d["achiever_state"] = r.achiever_state.mat;
    py::list probs, states;
    for (double p : r.achiever_ensemble.probs) probs.append(p);
    for (const Matrix& s : r.achiever_ensemble.states) states.append(s);
    d["achiever_probs"] = probs;
    d["achiever_states"] = states;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qmcap, mod) {
    mod.doc() = "capacities of quantum measurement channels";

    mod.def(
        "mutual_info",
        [](const Matrix& rho, const std::vector<Matrix>& elements,
           const std::vector<double>& weights) {
            return mutual_info(DensityMatrix(rho),
                               make_povm(elements, weights));
        },
        py::arg("rho"), py::arg("elements"),
        py::arg("weights") = std::vector<double>{},
        "I(rho; M) = S(rho) - sum_y p_y S(posterior_y), in nats");

    mod.def(
        "shannon_info",
        [](const std::vector<double>& probs, const std::vector<Matrix>& states,
           const std::vector<Matrix>& elements,
           const std::vector<double>& weights) {
            return shannon_info(make_ensemble(probs, states),
                                make_povm(elements, weights));
        },
        py::arg("probs"), py::arg("states"), py::arg("elements"),
        py::arg("weights") = std::vector<double>{});

    mod.def(
        "holevo_chi",
        [](const std::vector<double>& probs,
           const std::vector<Matrix>& states) {
            return holevo_chi(make_ensemble(probs, states));
        },
        py::arg("probs"), py::arg("states"));

    mod.def(
        "capacity_c",
        [](const std::vector<Matrix>& elements,
           const std::vector<double>& weights,
           const std::optional<std::pair<Matrix, double>>& constraint,
           int restarts, double tol, std::uint64_t seed, int max_iters) {
            return result_to_dict(capacity_C(
                make_povm(elements, weights), make_constraint(constraint),
                make_opts(restarts, tol, seed, max_iters)));
        },
        py::arg("elements"), py::arg("weights") = std::vector<double>{},
        py::arg("constraint") = std::nullopt, py::arg("restarts") = 16,
        py::arg("tol") = 1e-6, py::arg("seed") = 0, py::arg("max_iters") = 400,
        "Unassisted classical capacity of the measurement channel, in nats");

    mod.def(
        "capacity_cea",
        [](const std::vector<Matrix>& elements,
           const std::vector<double>& weights,
           const std::optional<std::pair<Matrix, double>>& constraint,
           int restarts, double tol, std::uint64_t seed, int max_iters) {
            return result_to_dict(capacity_Cea(
                make_povm(elements, weights), make_constraint(constraint),
                make_opts(restarts, tol, seed, max_iters)));
        },
        py::arg("elements"), py::arg("weights") = std::vector<double>{},
        py::arg("constraint") = std::nullopt, py::arg("restarts") = 16,
        py::arg("tol") = 1e-6, py::arg("seed") = 0, py::arg("max_iters") = 400,
        "Entanglement-assisted capacity sup_rho I(rho; M), in nats");

    mod.def(
        "chi_measurement",
        [](const Matrix& rho, const std::vector<Matrix>& elements,
           const std::vector<double>& weights, int restarts, double tol,
           std::uint64_t seed, int max_iters) {
            return result_to_dict(chi_measurement(
                DensityMatrix(rho), make_povm(elements, weights),
                make_opts(restarts, tol, seed, max_iters)));
        },
        py::arg("rho"), py::arg("elements"),
        py::arg("weights") = std::vector<double>{}, py::arg("restarts") = 16,
        py::arg("tol") = 1e-6, py::arg("seed") = 0, py::arg("max_iters") = 400);

    mod.def(
        "accessible_info",
        [](const std::vector<double>& probs, const std::vector<Matrix>& states,
           int restarts, double tol, std::uint64_t seed, int max_iters) {
            return result_to_dict(
                accessible_info(make_ensemble(probs, states),
                                make_opts(restarts, tol, seed, max_iters)));
        },
        py::arg("probs"), py::arg("states"), py::arg("restarts") = 16,
        py::arg("tol") = 1e-6, py::arg("seed") = 0, py::arg("max_iters") = 400,
        "Seesaw lower bound on the accessible information, in nats");

    mod.def(
        "dual_ensemble",
        [](const Matrix& rho, const std::vector<Matrix>& elements,
           const std::vector<double>& weights) {
            Ensemble dual = dual_ensemble(DensityMatrix(rho),
                                          make_povm(elements, weights));
            return py::make_tuple(dual.probs, dual.states);
        },
        py::arg("rho"), py::arg("elements"),
        py::arg("weights") = std::vector<double>{},
        "Ensemble {Tr(rho M_y), rho^{1/2} M_y rho^{1/2} / p_y}");

    mod.def(
        "dual_observable",
        [](const std::vector<double>& probs,
           const std::vector<Matrix>& states) {
            DualObservable d = dual_observable(make_ensemble(probs, states));
            return py::make_tuple(d.average.mat, d.observable.elements,
                                  d.completeness_residual);
        },
        py::arg("probs"), py::arg("states"));

    mod.def(
        "sphere_capacity",
        [](int dim) {
            SphereCapacity c = sphere_capacity(dim);
            return py::make_tuple(c.closed, c.quadrature);
        },
        py::arg("dim"),
        "(closed form, quadrature) capacity of the uniform sphere observable");

    mod.def(
        "sphere_povm",
        [](int dim, int samples, std::uint64_t seed) {
            SphereSpec spec;
            spec.dim = dim;
            spec.mc_samples = samples;
            spec.seed = seed;
            SphereDiscretization d = sphere_discretize(spec);
            return py::make_tuple(d.povm.elements, d.povm.weights);
        },
        py::arg("dim"), py::arg("samples") = 10000, py::arg("seed") = 0);

    mod.def(
        "scrooge_ensemble",
        [](const Matrix& rho, int samples, std::uint64_t seed) {
            SphereSpec spec;
            spec.dim = static_cast<int>(rho.rows());
            spec.mc_samples = samples;
            spec.seed = seed;
            Ensemble sc = scrooge_ensemble(DensityMatrix(rho), spec);
            return py::make_tuple(sc.probs, sc.states);
        },
        py::arg("rho"), py::arg("samples") = 10000, py::arg("seed") = 0);

    mod.def(
        "weyl_heisenberg_povm",
        [](int dim, const std::optional<Vector>& fiducial) {
            Vector fid;
            if (fiducial) {
                fid = *fiducial;
                fid.normalize();
            } else if (dim == 2) {
                fid = sic_qubit_fiducial();
            } else {
                fid = Vector::Constant(dim, 1.0 / std::sqrt(double(dim)));
            }
            return weyl_heisenberg_povm(dim, fid).povm.elements;
        },
        py::arg("dim"), py::arg("fiducial") = std::nullopt);

    mod.def(
        "heterodyne_capacities",
        [](double mean_photons) {
            HeterodyneCapacities h = heterodyne_capacities(mean_photons);
            return py::make_tuple(h.c, h.cea);
        },
        py::arg("mean_photons"), "(C, Cea) = (ln(N+1), g(N)) in nats");

    mod.def(
        "thermal_state",
        [](double mean_photons, int cutoff) {
            FockSpec spec;
            spec.mean_photons = mean_photons;
            spec.cutoff = cutoff;
            return thermal_state(mean_photons, spec.effective_cutoff()).mat;
        },
        py::arg("mean_photons"), py::arg("cutoff") = 0);

    mod.def(
        "husimi_entropy",
        [](const Matrix& rho, double mean_photons) {
            FockSpec spec;
            spec.mean_photons = mean_photons;
            spec.cutoff = static_cast<int>(rho.rows()) - 1;
            return husimi_entropy(DensityMatrix(rho), spec);
        },
        py::arg("rho"), py::arg("mean_photons") = 1.0,
        "Wehrl entropy of the state's phase-space distribution, in nats");

    mod.def(
        "verify_criterion",
        [](int number, std::uint64_t seed) {
            verify::Report rep = verify::criterion(number, seed);
            py::list checks;
            for (const auto& c : rep.checks) {
                py::dict e;
                e["name"] = c.name;
                e["measured"] = c.measured;
                e["tolerance"] = c.tolerance;
                e["pass"] = c.pass;
                checks.append(e);
            }
            py::dict d;
            d["suite"] = rep.suite;
            d["checks"] = checks;
            d["pass"] = rep.pass;
            return d;
        },
        py::arg("number"), py::arg("seed") = 0);
}
