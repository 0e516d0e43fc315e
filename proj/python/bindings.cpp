#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "vortexhop/ber.hpp"
#include "vortexhop/chan.hpp"
#include "vortexhop/errors.hpp"
#include "vortexhop/experiment.hpp"
#include "vortexhop/fading.hpp"
#include "vortexhop/hopping.hpp"
#include "vortexhop/mc.hpp"
#include "vortexhop/specfun.hpp"

namespace py = pybind11;
using namespace vortexhop;

namespace {

ber::SystemConfig make_config(const std::string& scheme, int modes, int bands, int hops,
                              int interferers, int m, double mu, double snr_db,
                              double jam_power_ratio, double processing_gain) {
    ber::SystemConfig cfg;
    cfg.scheme = hop::scheme_from_name(scheme);
    cfg.modes = modes;
    cfg.bands = bands;
    cfg.hops = hops;
    cfg.interferers = interferers;
    cfg.m = m;
    cfg.mu = mu;
    cfg.snr = experiment::db_to_linear(snr_db);
    cfg.jam_power_ratio = jam_power_ratio;
    cfg.processing_gain = processing_gain;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_vortexhop, mod) {
    mod.doc() = "Closed-form and Monte Carlo BER analysis for mode/frequency-hopping links";

    py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(mod, "ValidationError", PyExc_ValueError);
    py::register_exception<SizeError>(mod, "SizeError", PyExc_ValueError);
    py::register_exception<NumericalDiagnostic>(mod, "NumericalDiagnostic", PyExc_ArithmeticError);

    mod.def("gamma_int", &specfun::gamma_int, py::arg("n"), "(n-1)! for positive integer n");
    mod.def("binomial", &specfun::binomial, py::arg("n"), py::arg("k"));
    mod.def("c_coeff", &specfun::c_coeff, py::arg("v1"), py::arg("hops"));
    mod.def("bessel_j", &specfun::bessel_j, py::arg("order"), py::arg("x"));
    mod.def(
        "partial_fractions",
        [](const std::vector<std::pair<double, int>>& poles) {
            std::vector<specfun::PoleFactor> pf;
            pf.reserve(poles.size());
            for (auto [loc, mult] : poles) pf.push_back({loc, mult});
            const auto sum = specfun::partial_fractions(pf);
            std::vector<std::tuple<double, int, double>> out;
            out.reserve(sum.terms.size());
            for (const auto& t : sum.terms) {
                out.emplace_back(static_cast<double>(t.pole), t.order,
                                 static_cast<double>(t.coeff));
            }
            return out;
        },
        py::arg("poles"),
        "Decompose prod (p - z)^-m into [(pole, order, coeff), ...]");

    mod.def(
        "gain_closed",
        [](int elements, double radius, double distance, double off_axis, double wavelength,
           int mode) {
            chan::UcaGeometry g;
            g.elements = elements;
            g.radius = radius;
            g.distance = distance;
            g.off_axis = off_axis;
            g.wavelength = wavelength;
            return chan::gain_closed(g, mode);
        },
        py::arg("elements"), py::arg("radius"), py::arg("distance"), py::arg("off_axis"),
        py::arg("wavelength"), py::arg("mode"));

    mod.def(
        "gen_pattern",
        [](std::uint64_t seed, const std::string& scheme, int modes, int bands, int hops) {
            hop::CollisionModel model{modes, bands, 0, hops};
            return hop::gen_pattern(seed, hop::scheme_from_name(scheme), model, hops).dump();
        },
        py::arg("seed"), py::arg("scheme"), py::arg("modes"), py::arg("bands"),
        py::arg("hops"), "PN hop pattern in the one-hop-per-line dump format");

    mod.def(
        "collision_prob",
        [](const std::string& scheme, int modes, int bands) {
            hop::CollisionModel model{modes, bands, 0, 1};
            return hop::collision_prob(model, hop::scheme_from_name(scheme));
        },
        py::arg("scheme"), py::arg("modes"), py::arg("bands") = 1);

    mod.def(
        "p_clear",
        [](int modes, int bands, int interferers, int hops, const std::string& scheme) {
            hop::CollisionModel model{modes, bands, interferers, hops};
            return hop::p_clear(model,
                                hop::collision_prob(model, hop::scheme_from_name(scheme)));
        },
        py::arg("modes"), py::arg("bands"), py::arg("interferers"), py::arg("hops"),
        py::arg("scheme") = "MH");

    mod.def("nakagami_pdf", &fading::nakagami_pdf, py::arg("m"), py::arg("mean"),
            py::arg("gamma"));

    mod.def(
        "conditional_ber",
        [](double gamma_s, int hops, double mu) {
            return ber::conditional_ber(gamma_s, hops, ber::Modulation{mu});
        },
        py::arg("gamma_s"), py::arg("hops"), py::arg("mu") = 1.0);

    mod.def(
        "clear_ber",
        [](int m, int hops, double snr, double mu) {
            fading::SinrModel model;
            model.m = m;
            model.hops = hops;
            model.snr = snr;
            return ber::clear_ber(model, ber::Modulation{mu});
        },
        py::arg("m"), py::arg("hops"), py::arg("snr"), py::arg("mu") = 1.0,
        "Average BER with every hop clear (linear SNR)");

    mod.def(
        "jammed_ber",
        [](int m, int hops, double snr, const std::vector<int>& counts,
           const std::vector<double>& jammed_snr, double mu) {
            auto profile = hop::JamProfile::from_counts(counts);
            fading::SinrModel model;
            model.m = m;
            model.hops = hops;
            model.snr = snr;
            // from_counts sorts descending; align the supplied averages.
            std::vector<std::pair<int, double>> paired;
            for (std::size_t i = 0; i < counts.size(); ++i) {
                paired.emplace_back(counts[i], jammed_snr.at(i));
            }
            std::sort(paired.begin(), paired.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            for (const auto& [_, d] : paired) model.jammed_snr.push_back(d);
            return ber::jammed_ber(model, profile, ber::Modulation{mu});
        },
        py::arg("m"), py::arg("hops"), py::arg("snr"), py::arg("counts"),
        py::arg("jammed_snr"), py::arg("mu") = 1.0,
        "Average BER given per-hop interferer counts and average SINRs");

    mod.def(
        "analytic_ber",
        [](const std::string& scheme, int modes, int bands, int hops, int interferers,
           int m, double mu, double snr_db, double jam_power_ratio, double processing_gain) {
            return ber::analytic_ber(make_config(scheme, modes, bands, hops, interferers, m,
                                                 mu, snr_db, jam_power_ratio,
                                                 processing_gain));
        },
        py::arg("scheme"), py::arg("modes"), py::arg("bands"), py::arg("hops"),
        py::arg("interferers"), py::arg("m") = 1, py::arg("mu") = 1.0,
        py::arg("snr_db") = 10.0, py::arg("jam_power_ratio") = 1.0,
        py::arg("processing_gain") = 0.0,
        "Closed-form scenario BER, jam mixture included");

    mod.def(
        "mc_ber",
        [](const std::string& scheme, int modes, int bands, int hops, int interferers,
           int m, double mu, double snr_db, double jam_power_ratio, double processing_gain,
           long long trials, std::uint64_t seed, const std::string& fidelity) {
            mc::McConfig mcc;
            mcc.trials = trials;
            mcc.seed = seed;
            mcc.fidelity = fidelity == "PHYSICAL" ? mc::Fidelity::Physical
                                                  : mc::Fidelity::Model;
            const auto est = mc::estimate_ber(
                mcc, make_config(scheme, modes, bands, hops, interferers, m, mu, snr_db,
                                 jam_power_ratio, processing_gain));
            return py::make_tuple(est.p_hat, est.trials, est.stderr_());
        },
        py::arg("scheme"), py::arg("modes"), py::arg("bands"), py::arg("hops"),
        py::arg("interferers"), py::arg("m") = 1, py::arg("mu") = 1.0,
        py::arg("snr_db") = 10.0, py::arg("jam_power_ratio") = 1.0,
        py::arg("processing_gain") = 0.0, py::arg("trials") = 1'000'000,
        py::arg("seed") = 1, py::arg("fidelity") = "MODEL",
        "Monte Carlo estimate: (p_hat, trials, stderr)");

    mod.def("estimate_avg_sinr", &mc::estimate_avg_sinr, py::arg("snr"), py::arg("inr"),
            py::arg("interferers"), py::arg("m"), py::arg("trials"), py::arg("seed"));

    mod.def("db_to_linear", &experiment::db_to_linear, py::arg("db"));
    mod.def("linear_to_db", &experiment::linear_to_db, py::arg("linear"));
    mod.def("figure_presets", &experiment::figure_presets);
    mod.def("reproduce_figure", &experiment::reproduce_figure, py::arg("preset"),
            py::arg("outdir"), py::arg("mc_trials") = 0, py::arg("seed") = 1);
}
