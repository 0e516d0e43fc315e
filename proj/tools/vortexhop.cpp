#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "vortexhop/errors.hpp"
#include "vortexhop/experiment.hpp"
#include "vortexhop/hopping.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int run_spec(const std::string& path) {
    const auto spec = vortexhop::experiment::parse_spec_file(path);
    const auto rows = vortexhop::experiment::run_experiment(spec);
    vortexhop::experiment::emit_csv(rows, spec.out);
    std::printf("wrote %zu rows to %s\n", rows.size(), spec.out.c_str());
    return kExitOk;
}

int validate_spec(const std::string& path) {
    const auto spec = vortexhop::experiment::parse_spec_file(path);
    std::printf("%s: valid (%zu grid points, %zu hop counts)\n", path.c_str(),
                spec.grid.size(), spec.hops_list.size());
    return kExitOk;
}

int run_figure(const std::string& preset, const std::string& outdir, long long trials,
               std::uint64_t seed) {
    vortexhop::experiment::reproduce_figure(preset, outdir, trials, seed);
    std::printf("%s written to %s\n", preset.c_str(), outdir.c_str());
    return kExitOk;
}

int dump_pattern(const std::string& scheme, int modes, int bands, int hops,
                 std::uint64_t seed) {
    vortexhop::hop::CollisionModel model{modes, bands, 0, hops};
    const auto pattern = vortexhop::hop::gen_pattern(
        seed, vortexhop::hop::scheme_from_name(scheme), model, hops);
    std::fputs(pattern.dump().c_str(), stdout);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level BER analysis for mode/frequency-hopping anti-jamming systems"};
    app.require_subcommand(1);

    std::string spec_path;
    auto* run = app.add_subcommand("run", "Run an experiment spec and write its CSV");
    run->add_option("spec", spec_path, "config file (key = value sections)")->required();

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Validate an experiment spec");
    validate->add_option("spec", validate_path, "config file")->required();

    std::string preset, outdir = ".";
    long long mc_trials = 100'000;
    std::uint64_t seed = 1;
    auto* figure = app.add_subcommand("figure", "Reproduce a study figure (CSV + SVG)");
    figure->add_option("preset", preset, "fig3 | fig4 | fig5 | fig6 | fig7 | fig8 | fig9")
        ->required();
    figure->add_option("--out", outdir, "output directory")->required();
    figure->add_option("--mc-trials", mc_trials, "Monte Carlo trials per point (0 = analytic only)");
    figure->add_option("--seed", seed, "Monte Carlo seed");

    std::string pat_scheme = "MH";
    int pat_modes = 10, pat_bands = 1, pat_hops = 8;
    std::uint64_t pat_seed = 1;
    auto* pattern = app.add_subcommand("pattern", "Dump a PN hop pattern (one hop per line)");
    pattern->add_option("--scheme", pat_scheme, "MH | FH | MFH");
    pattern->add_option("--modes", pat_modes, "available vortex modes N");
    pattern->add_option("--bands", pat_bands, "available frequency bands Q");
    pattern->add_option("--hops", pat_hops, "hops to emit");
    pattern->add_option("--seed", pat_seed, "PN seed");

    try {
        app.parse(argc, argv);
        if (run->parsed()) return run_spec(spec_path);
        if (validate->parsed()) return validate_spec(validate_path);
        if (figure->parsed()) return run_figure(preset, outdir, mc_trials, seed);
        if (pattern->parsed()) return dump_pattern(pat_scheme, pat_modes, pat_bands,
                                                   pat_hops, pat_seed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const vortexhop::NumericalDiagnostic& e) {
        std::fprintf(stderr, "numerical diagnostic: %s\n", e.what());
        return kExitNumerical;
    } catch (const vortexhop::ValidationError& e) {
        std::fprintf(stderr, "invalid spec: %s\n", e.what());
        return kExitValidation;
    } catch (const vortexhop::DomainError& e) {
        std::fprintf(stderr, "invalid spec: %s\n", e.what());
        return kExitValidation;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}
