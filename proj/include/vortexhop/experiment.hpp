#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vortexhop/ber.hpp"
#include "vortexhop/mc.hpp"

namespace vortexhop::experiment {

enum class Axis { SnrDb, SinrDb, Interferers, Modes, Bands };

const char* axis_name(Axis a);
Axis axis_from_name(const std::string& name); // throws ValidationError

// dB <-> linear; the round trip is exact to 1e-12.
double db_to_linear(double db);
double linear_to_db(double linear);

struct McSettings {
    long long trials = 0; // 0 = analytic only
    std::uint64_t seed = 1;
    long long batch = 0;
};

// One sweep: a scheme, an axis with its grid, a list of hop counts, and the
// fixed scenario parameters.
struct ExperimentSpec {
    hop::Scheme scheme = hop::Scheme::MH;
    Axis axis = Axis::SnrDb;
    std::vector<double> grid;
    std::vector<int> hops_list{1};
    int modes = 10;
    int bands = 1;
    int interferers = 0;
    int m = 1;
    double mu = 1.0;
    double fixed_snr_db = 10.0; // used when the axis is not a dB sweep
    double jam_power_ratio = 1.0;
    double processing_gain = 0.0; // 0 = auto
    McSettings mc;
    std::string out = "results.csv";

    void validate() const; // throws ValidationError with the offending field path
    ber::SystemConfig config_at(int hops, double axis_value) const;
};

struct ResultRow {
    std::string scheme;
    int hops = 1;
    std::string axis;
    double value = 0.0;
    double analytic = 0.0;
    std::optional<double> mc;
    std::optional<double> mc_stderr;
};

// One row per (hops, grid point), graded in parallel across grid points;
// rows come back ordered by (scheme, hops, axis value).
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

// CSV "scheme,U,axis,value,ber_analytic,ber_mc,mc_stderr" with every value
// in full double precision scientific notation; byte-identical for equal
// (spec, seed).
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

// Parse a key = value config with [section] headers ('#'/';' comments).
ExperimentSpec parse_spec_file(const std::string& path);
ExperimentSpec parse_spec_text(const std::string& text); // exposed for tests

// Reproduce one of the seven study figures into `outdir` (CSV + SVG).
// mc_trials = 0 disables the Monte Carlo overlay; the surface presets
// (fig6, fig7) are always analytic.
void reproduce_figure(const std::string& preset, const std::string& outdir,
                      long long mc_trials, std::uint64_t seed);

std::vector<std::string> figure_presets();

} // namespace vortexhop::experiment
