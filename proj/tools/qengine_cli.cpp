// qengine: quantum Stirling / Ericsson engine cycles for a particle in a box.
//
//   qengine stirling --l1 1 --l3 4 --format json
//   qengine ericsson --l3 1 --l1 4 --samples 16 --out ericsson.csv
//   qengine verify --sweep 10 --seed 7
//
// Exit codes: 0 success, 2 parameter error, 3 verification failure, 4 I/O error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qengine/errors.hpp"
#include "qengine/report.hpp"

namespace {

struct CommonFlags {
    std::optional<double> l1;
    std::optional<double> l3;
    std::string units = "natural";
    std::optional<double> hbar;
    std::optional<double> mass;
    double quad_tol = 1e-10;
    double threshold = 1e-9;
    std::optional<std::string> format;
    std::optional<std::string> out;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--l1", f.l1, "width L1");
    cmd->add_option("--l3", f.l3, "width L3");
    cmd->add_option("--units", f.units, "natural | explicit (requires --hbar and --mass)");
    cmd->add_option("--hbar", f.hbar, "reduced Planck constant in explicit units");
    cmd->add_option("--mass", f.mass, "particle mass in explicit units");
    cmd->add_option("--quad-tol", f.quad_tol, "relative tolerance of the quadrature oracle");
    cmd->add_option("--threshold", f.threshold, "maximum accepted oracle residual");
    cmd->add_option("--format", f.format, "csv | json");
    cmd->add_option("--out", f.out, "output file (default: standard output)");
}

qengine::OutputFormat format_or(const std::optional<std::string>& name, qengine::OutputFormat fallback) {
    if (!name) return fallback;
    const auto parsed = qengine::parse_output_format(*name);
    if (!parsed) throw qengine::ParameterError("unknown format '" + *name + "', expected csv or json");
    return *parsed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Stirling and Ericsson engines in a one-dimensional infinite square well"};
    app.set_config("--config", "", "read flags from a TOML/INI file");
    app.require_subcommand(1);

    CommonFlags stirling_flags, ericsson_flags, verify_flags;
    int stirling_samples = 128, ericsson_samples = 128;

    auto* stirling = app.add_subcommand("stirling", "run the Stirling cycle (requires L3 > 2·L1)");
    add_common(stirling, stirling_flags);
    stirling->add_option("--samples", stirling_samples, "diagram samples per leg");

    auto* ericsson = app.add_subcommand("ericsson", "run the Ericsson cycle (requires L1 > 2·L3)");
    add_common(ericsson, ericsson_flags);
    ericsson->add_option("--samples", ericsson_samples, "diagram samples per leg");

    auto* verify = app.add_subcommand("verify", "cross-check every closed form against quadrature");
    add_common(verify, verify_flags);
    std::optional<std::string> verify_cycle;
    int sweep = 0;
    std::uint64_t seed = 1;
    verify->add_option("--cycle", verify_cycle, "stirling | ericsson (default: both)");
    verify->add_option("--sweep", sweep, "number of random geometries per cycle");
    verify->add_option("--seed", seed, "seed for --sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qengine::kExitParameter;
    }

    try {
        qengine::Outcome outcome;
        std::optional<std::string> out_path;
        if (stirling->parsed() || ericsson->parsed()) {
            const bool is_stirling = stirling->parsed();
            const auto& f = is_stirling ? stirling_flags : ericsson_flags;
            if (!f.l1 || !f.l3) throw qengine::ParameterError("both --l1 and --l3 are required");
            qengine::RunConfig cfg;
            cfg.cycle = is_stirling ? qengine::CycleType::Stirling : qengine::CycleType::Ericsson;
            cfg.l1 = *f.l1;
            cfg.l3 = *f.l3;
            cfg.units = qengine::resolve_units(f.units, f.hbar, f.mass);
            cfg.samples_per_leg = is_stirling ? stirling_samples : ericsson_samples;
            cfg.quad_tol = f.quad_tol;
            cfg.threshold = f.threshold;
            cfg.format = format_or(f.format, qengine::OutputFormat::Csv);
            outcome = qengine::execute_run(cfg);
            out_path = f.out;
        } else {
            const auto& f = verify_flags;
            qengine::VerifyConfig cfg;
            if (verify_cycle) {
                cfg.cycle = qengine::parse_cycle_type(*verify_cycle);
                if (!cfg.cycle) throw qengine::ParameterError("unknown cycle '" + *verify_cycle + "'");
            }
            cfg.l1 = f.l1;
            cfg.l3 = f.l3;
            cfg.units = qengine::resolve_units(f.units, f.hbar, f.mass);
            cfg.quad_tol = f.quad_tol;
            cfg.threshold = f.threshold;
            cfg.format = format_or(f.format, qengine::OutputFormat::Json);
            cfg.sweep = sweep;
            cfg.seed = seed;
            outcome = qengine::execute_verify(cfg);
            out_path = f.out;
        }
        return qengine::deliver(outcome, out_path, std::cout, std::cerr);
    } catch (const qengine::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return qengine::kExitParameter;
    }
}
