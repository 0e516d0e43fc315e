#include "vortexhop/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "vortexhop/errors.hpp"
#include "vortexhop/svgplot.hpp"

namespace vortexhop::experiment {

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::SnrDb: return "SNR_dB";
        case Axis::SinrDb: return "SINR_dB";
        case Axis::Interferers: return "K";
        case Axis::Modes: return "N";
        default: return "Q";
    }
}

Axis axis_from_name(const std::string& name) {
    if (name == "SNR_dB") return Axis::SnrDb;
    if (name == "SINR_dB") return Axis::SinrDb;
    if (name == "K") return Axis::Interferers;
    if (name == "N") return Axis::Modes;
    if (name == "Q") return Axis::Bands;
    throw ValidationError("experiment.axis: expected SNR_dB, SINR_dB, K, N or Q, got '" +
                          name + "'");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

void ExperimentSpec::validate() const {
    if (grid.empty()) throw ValidationError("experiment.grid: grid must not be empty");
    if (hops_list.empty()) throw ValidationError("experiment.hops: need at least one hop count");
    for (int u : hops_list) {
        if (u < 1 || u > 16) throw ValidationError("experiment.hops: hop counts must lie in [1, 16]");
    }
    if (modes < 1) throw ValidationError("experiment.modes: must be >= 1");
    if (bands < 1) throw ValidationError("experiment.bands: must be >= 1");
    if (interferers < 0) throw ValidationError("experiment.interferers: must be >= 0");
    if (m < 1) throw ValidationError("experiment.m: Nakagami m must be a positive integer");
    if (mu != 1.0 && mu != 0.5) {
        throw ValidationError("experiment.mu: must be 1 (DPSK) or 0.5 (noncoherent FSK)");
    }
    if (!(jam_power_ratio >= 0.0)) {
        throw ValidationError("experiment.jam_power_ratio: must be >= 0");
    }
    if (!std::isfinite(fixed_snr_db)) {
        throw ValidationError("experiment.snr_db: must be finite");
    }
    if (processing_gain != 0.0 && !(processing_gain >= 1.0)) {
        throw ValidationError("experiment.processing_gain: must be >= 1 (or 0 for auto)");
    }
    for (double v : grid) {
        switch (axis) {
            case Axis::SnrDb:
            case Axis::SinrDb:
                if (!std::isfinite(v)) throw ValidationError("experiment.grid: dB values must be finite");
                break;
            case Axis::Interferers:
                if (v < 0.0 || v != std::floor(v)) {
                    throw ValidationError("experiment.grid: K values must be non-negative integers");
                }
                break;
            case Axis::Modes:
            case Axis::Bands:
                if (v < 1.0 || v != std::floor(v)) {
                    throw ValidationError("experiment.grid: N/Q values must be positive integers");
                }
                break;
        }
    }
    if (mc.trials != 0 && mc.trials < 1000) {
        throw ValidationError("mc.trials: must be 0 (off) or >= 1000");
    }
    if (out.empty()) throw ValidationError("experiment.out: output path must not be empty");
}

ber::SystemConfig ExperimentSpec::config_at(int hops, double axis_value) const {
    ber::SystemConfig cfg;
    cfg.scheme = scheme;
    cfg.modes = modes;
    cfg.bands = bands;
    cfg.hops = hops;
    cfg.interferers = interferers;
    cfg.m = m;
    cfg.mu = mu;
    cfg.jam_power_ratio = jam_power_ratio;
    cfg.processing_gain = processing_gain;
    cfg.snr = db_to_linear(fixed_snr_db);
    switch (axis) {
        case Axis::SnrDb:
        case Axis::SinrDb: cfg.snr = db_to_linear(axis_value); break;
        case Axis::Interferers: cfg.interferers = static_cast<int>(axis_value); break;
        case Axis::Modes: cfg.modes = static_cast<int>(axis_value); break;
        case Axis::Bands: cfg.bands = static_cast<int>(axis_value); break;
    }
    return cfg;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    struct Job {
        int hops;
        double value;
    };
    std::vector<Job> jobs;
    for (int u : spec.hops_list) {
        for (double v : spec.grid) jobs.push_back({u, v});
    }
    std::vector<ResultRow> rows(jobs.size());

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_text;
    std::mutex error_lock;
    auto worker = [&]() {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            try {
                const ber::SystemConfig cfg = spec.config_at(jobs[i].hops, jobs[i].value);
                ResultRow row;
                row.scheme = hop::scheme_name(spec.scheme);
                row.hops = jobs[i].hops;
                row.axis = axis_name(spec.axis);
                row.value = jobs[i].value;
                row.analytic = ber::analytic_ber(cfg);
                if (spec.mc.trials > 0) {
                    mc::McConfig mcc;
                    mcc.trials = spec.mc.trials;
                    mcc.batch = spec.mc.batch;
                    mcc.threads = 1; // grid points already run in parallel
                    // Decorrelate points without losing determinism.
                    mcc.seed = CounterRng::mix64(spec.mc.seed ^ CounterRng::mix64(i + 1));
                    const mc::BerEstimate est = mc::estimate_ber(mcc, cfg);
                    row.mc = est.p_hat;
                    row.mc_stderr = est.stderr_();
                }
                rows[i] = std::move(row);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> g(error_lock);
                error_text = e.what();
                failed.store(true);
            }
        }
    };
    const int nthreads = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(mc::max_threads()), jobs.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failed.load()) throw ValidationError(error_text);

    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        if (a.hops != b.hops) return a.hops < b.hops;
        return a.value < b.value;
    });
    return rows;
}

namespace {

std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", v);
    return buf;
}

} // namespace

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    if (rows.empty()) throw ValidationError("emit_csv: result table is empty");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("emit_csv: cannot write " + path);
    out << "scheme,U,axis,value,ber_analytic,ber_mc,mc_stderr\n";
    for (const ResultRow& r : rows) {
        out << r.scheme << ',' << r.hops << ',' << r.axis << ',' << full_precision(r.value)
            << ',' << full_precision(r.analytic) << ','
            << (r.mc ? full_precision(*r.mc) : std::string{}) << ','
            << (r.mc_stderr ? full_precision(*r.mc_stderr) : std::string{}) << '\n';
    }
    if (!out.good()) throw ValidationError("emit_csv: write failed for " + path);
}

// ---------------------------------------------------------------------------
// key = value config parsing

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

SectionMap parse_sections(const std::string& text) {
    SectionMap sections;
    std::string current = "experiment";
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": unterminated section header");
            }
            current = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
        }
        sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return sections;
}

double parse_number(const std::string& field, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ValidationError(field + ": not a number: '" + value + "'");
    }
}

int parse_int(const std::string& field, const std::string& value) {
    const double v = parse_number(field, value);
    if (v != std::floor(v)) throw ValidationError(field + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

// "a:b:step" inclusive range or "v1,v2,..." list.
std::vector<double> parse_grid(const std::string& field, const std::string& value) {
    std::vector<double> grid;
    if (value.find(':') != std::string::npos) {
        double start = 0, stop = 0, step = 1;
        std::istringstream in(value);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':')) {
            throw ValidationError(field + ": range must be start:stop[:step]");
        }
        std::getline(in, c, ':');
        start = parse_number(field, trim(a));
        stop = parse_number(field, trim(b));
        step = c.empty() ? 1.0 : parse_number(field, trim(c));
        if (!(step > 0.0)) throw ValidationError(field + ": step must be > 0");
        for (double v = start; v <= stop + 1e-9 * step; v += step) grid.push_back(v);
        return grid;
    }
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) grid.push_back(parse_number(field, item));
    }
    return grid;
}

} // namespace

ExperimentSpec parse_spec_text(const std::string& text) {
    const SectionMap sections = parse_sections(text);
    for (const auto& [name, _] : sections) {
        if (name != "experiment" && name != "mc") {
            throw ValidationError("config: unknown section [" + name + "]");
        }
    }
    ExperimentSpec spec;
    if (auto it = sections.find("experiment"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            const std::string field = "experiment." + key;
            if (key == "scheme") {
                spec.scheme = hop::scheme_from_name(value);
            } else if (key == "axis") {
                spec.axis = axis_from_name(value);
            } else if (key == "grid") {
                spec.grid = parse_grid(field, value);
            } else if (key == "hops") {
                spec.hops_list.clear();
                for (double v : parse_grid(field, value)) {
                    if (v != std::floor(v)) throw ValidationError(field + ": hop counts must be integers");
                    spec.hops_list.push_back(static_cast<int>(v));
                }
            } else if (key == "modes") {
                spec.modes = parse_int(field, value);
            } else if (key == "bands") {
                spec.bands = parse_int(field, value);
            } else if (key == "interferers") {
                spec.interferers = parse_int(field, value);
            } else if (key == "m") {
                spec.m = parse_int(field, value);
            } else if (key == "mu") {
                spec.mu = parse_number(field, value);
            } else if (key == "snr_db") {
                // fixed SNR for non-dB axes
                spec.fixed_snr_db = parse_number(field, value);
            } else if (key == "jam_power_ratio") {
                spec.jam_power_ratio = parse_number(field, value);
            } else if (key == "processing_gain") {
                spec.processing_gain = value == "auto" ? 0.0 : parse_number(field, value);
            } else if (key == "out") {
                spec.out = value;
            } else {
                throw ValidationError(field + ": unknown key");
            }
        }
    }
    if (auto it = sections.find("mc"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            const std::string field = "mc." + key;
            if (key == "trials") {
                const double v = parse_number(field, value);
                if (v < 0.0 || v != std::floor(v)) throw ValidationError(field + ": must be a non-negative integer");
                spec.mc.trials = static_cast<long long>(v);
            } else if (key == "seed") {
                const double v = parse_number(field, value);
                if (v < 0.0 || v != std::floor(v)) throw ValidationError(field + ": must be a non-negative integer");
                spec.mc.seed = static_cast<std::uint64_t>(v);
            } else if (key == "batch") {
                const double v = parse_number(field, value);
                if (v < 0.0 || v != std::floor(v)) throw ValidationError(field + ": must be a non-negative integer");
                spec.mc.batch = static_cast<long long>(v);
            } else {
                throw ValidationError(field + ": unknown key");
            }
        }
    }
    spec.validate();
    return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

// ---------------------------------------------------------------------------
// figure presets

namespace {

struct FigureFiles {
    std::vector<std::string> csv;
    std::vector<std::string> svg;
};

std::vector<svgplot::Series> to_series(const std::vector<ResultRow>& rows) {
    std::map<std::string, svgplot::Series> by_key;
    for (const ResultRow& r : rows) {
        const std::string key = r.scheme + " U=" + std::to_string(r.hops);
        auto& s = by_key[key];
        s.label = key;
        s.points.emplace_back(r.value, r.analytic);
    }
    std::vector<svgplot::Series> out;
    out.reserve(by_key.size());
    for (auto& [_, s] : by_key) out.push_back(std::move(s));
    return out;
}

std::vector<double> db_grid() {
    std::vector<double> g;
    for (int db = 0; db <= 30; ++db) g.push_back(static_cast<double>(db));
    return g;
}

ExperimentSpec base_spec(hop::Scheme scheme, Axis axis, std::vector<double> grid,
                         std::vector<int> hops, long long mc_trials, std::uint64_t seed) {
    ExperimentSpec spec;
    spec.scheme = scheme;
    spec.axis = axis;
    spec.grid = std::move(grid);
    spec.hops_list = std::move(hops);
    spec.mc.trials = mc_trials;
    spec.mc.seed = seed;
    return spec;
}

void line_figure(const std::string& outdir, const std::string& stem, const std::string& title,
                 const std::string& x_label, std::vector<ExperimentSpec> specs) {
    std::vector<ResultRow> all;
    for (const ExperimentSpec& spec : specs) {
        std::vector<ResultRow> rows = run_experiment(spec);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    std::sort(all.begin(), all.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        if (a.hops != b.hops) return a.hops < b.hops;
        return a.value < b.value;
    });
    emit_csv(all, outdir + "/" + stem + ".csv");
    svgplot::line_chart(outdir + "/" + stem + ".svg", title, x_label, "BER", to_series(all));
}

// Two-axis analytic surface; long-form CSV with both axis columns.
void surface_figure(const std::string& outdir, const std::string& stem,
                    const std::string& title, const char* a1, std::vector<double> v1,
                    const char* a2, std::vector<double> v2,
                    const std::function<ber::SystemConfig(double, double)>& make) {
    std::ofstream csv(outdir + "/" + stem + ".csv", std::ios::binary);
    if (!csv) throw ValidationError("figure: cannot write " + outdir + "/" + stem + ".csv");
    csv << "scheme,U,axis1,value1,axis2,value2,ber_analytic,ber_mc,mc_stderr\n";
    std::vector<std::vector<double>> z(v2.size(), std::vector<double>(v1.size(), 0.0));
    for (std::size_t yi = 0; yi < v2.size(); ++yi) {
        for (std::size_t xi = 0; xi < v1.size(); ++xi) {
            const ber::SystemConfig cfg = make(v1[xi], v2[yi]);
            const double b = ber::analytic_ber(cfg);
            z[yi][xi] = b;
            csv << hop::scheme_name(cfg.scheme) << ',' << cfg.hops << ',' << a1 << ','
                << full_precision(v1[xi]) << ',' << a2 << ',' << full_precision(v2[yi]) << ','
                << full_precision(b) << ",,\n";
        }
    }
    svgplot::heatmap(outdir + "/" + stem + ".svg", title, a1, a2, v1, v2, z);
}

} // namespace

std::vector<std::string> figure_presets() {
    return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
}

void reproduce_figure(const std::string& preset, const std::string& outdir,
                      long long mc_trials, std::uint64_t seed) {
    std::filesystem::create_directories(outdir);
    const auto grid = db_grid();

    if (preset == "fig3") {
        // Single user, DPSK: FH and MH coincide, MFH with G = Q = 5 sits below.
        std::vector<ExperimentSpec> specs;
        for (hop::Scheme s : {hop::Scheme::FH, hop::Scheme::MH, hop::Scheme::MFH}) {
            ExperimentSpec spec = base_spec(s, Axis::SnrDb, grid, {1, 2, 4}, mc_trials, seed);
            spec.modes = 10;
            spec.bands = 5;
            spec.interferers = 0;
            specs.push_back(spec);
        }
        line_figure(outdir, "fig3", "Single-user BER vs average SNR (DPSK)",
                    "average SNR [dB]", std::move(specs));
    } else if (preset == "fig4") {
        std::vector<ExperimentSpec> specs;
        for (hop::Scheme s : {hop::Scheme::MH, hop::Scheme::MFH}) {
            ExperimentSpec spec =
                base_spec(s, Axis::SinrDb, grid, {1, 2, 4, 8}, mc_trials, seed);
            spec.modes = 10;
            spec.bands = 5;
            spec.interferers = 10;
            specs.push_back(spec);
        }
        line_figure(outdir, "fig4", "Multi-user BER vs average SINR (DPSK, K=10)",
                    "average SINR [dB]", std::move(specs));
    } else if (preset == "fig5") {
        std::vector<double> kgrid;
        for (int k = 0; k <= 30; ++k) kgrid.push_back(static_cast<double>(k));
        std::vector<ExperimentSpec> specs;
        for (hop::Scheme s : {hop::Scheme::FH, hop::Scheme::MH, hop::Scheme::MFH}) {
            ExperimentSpec spec =
                base_spec(s, Axis::Interferers, kgrid, {1, 2, 4}, mc_trials, seed);
            spec.modes = 10;
            spec.bands = 5;
            spec.fixed_snr_db = 10.0;
            specs.push_back(spec);
        }
        line_figure(outdir, "fig5", "BER vs interfering users (DPSK, 10 dB)",
                    "interfering users K", std::move(specs));
    } else if (preset == "fig6") {
        std::vector<double> ks, ns;
        for (int k = 1; k <= 20; ++k) ks.push_back(k);
        for (int n = 2; n <= 20; ++n) ns.push_back(n);
        for (hop::Scheme s : {hop::Scheme::MH, hop::Scheme::MFH}) {
            const std::string stem = std::string("fig6_") + hop::scheme_name(s);
            surface_figure(outdir, stem,
                           std::string(hop::scheme_name(s)) + " BER vs K and N (U=2, 10 dB)",
                           "K", ks, "N", ns, [&](double k, double n) {
                               ber::SystemConfig cfg;
                               cfg.scheme = s;
                               cfg.modes = static_cast<int>(n);
                               cfg.bands = 5;
                               cfg.hops = 2;
                               cfg.interferers = static_cast<int>(k);
                               cfg.snr = db_to_linear(10.0);
                               return cfg;
                           });
        }
    } else if (preset == "fig7") {
        std::vector<double> qs, ns;
        for (int q = 1; q <= 10; ++q) qs.push_back(q);
        for (int n = 2; n <= 20; ++n) ns.push_back(n);
        for (double db : {5.0, 10.0}) {
            const std::string stem = "fig7_sinr" + std::to_string(static_cast<int>(db));
            surface_figure(outdir, stem,
                           "MFH BER vs Q and N (U=4, K=10, " +
                               std::to_string(static_cast<int>(db)) + " dB)",
                           "Q", qs, "N", ns, [&](double q, double n) {
                               ber::SystemConfig cfg;
                               cfg.scheme = hop::Scheme::MFH;
                               cfg.modes = static_cast<int>(n);
                               cfg.bands = static_cast<int>(q);
                               cfg.hops = 4;
                               cfg.interferers = 10;
                               cfg.snr = db_to_linear(db);
                               return cfg;
                           });
        }
    } else if (preset == "fig8" || preset == "fig9") {
        // DPSK vs noncoherent FSK, one CSV per modulation.
        const hop::Scheme s = preset == "fig8" ? hop::Scheme::MH : hop::Scheme::MFH;
        for (double mu : {1.0, 0.5}) {
            ExperimentSpec spec = base_spec(s, Axis::SinrDb, grid, {1, 2, 4, 8}, mc_trials, seed);
            spec.modes = 10;
            spec.bands = preset == "fig8" ? 5 : 2;
            spec.interferers = 10;
            spec.mu = mu;
            const std::string stem =
                std::string(preset) + (mu == 1.0 ? "_dpsk" : "_fsk");
            line_figure(outdir, stem,
                        std::string(hop::scheme_name(s)) +
                            (mu == 1.0 ? " BER, binary DPSK" : " BER, binary FSK"),
                        "average SINR [dB]", {spec});
        }
    } else {
        throw ValidationError("figure: unknown preset '" + preset +
                              "' (expected fig3..fig9)");
    }
}

} // namespace vortexhop::experiment
