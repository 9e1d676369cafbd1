#pragma once

// Run/verify drivers behind the command-line tool, plus the P-L diagram
// sampler and the CSV/JSON report writers.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qengine/cycles.hpp"
#include "qengine/format.hpp"
#include "qengine/well.hpp"

namespace qengine {

enum ExitCode : int {
    kExitOk = 0,
    kExitParameter = 2,
    kExitVerification = 3,
    kExitIo = 4,
};

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept;
std::string_view to_string(OutputFormat format) noexcept;

/// Units as requested on the command line: "natural", or an explicit (hbar, mass) pair.
struct UnitsChoice {
    std::string kind = "natural";
    UnitSystem units = UnitSystem::natural();
};

/// kind is "natural" (no hbar/mass allowed) or "explicit"/"si" (both required).
/// Throws ParameterError on any other combination.
UnitsChoice resolve_units(std::string_view kind, std::optional<double> hbar,
                          std::optional<double> mass);

struct RunConfig {
    CycleType cycle = CycleType::Stirling;
    double l1 = 0.0;
    double l3 = 0.0;
    UnitsChoice units;
    int samples_per_leg = 128;
    double quad_tol = 1e-10;
    double threshold = 1e-9;
    OutputFormat format = OutputFormat::Csv;

    /// Throws ParameterError on bad sampling or tolerance settings. Geometry is
    /// checked by the cycle builder.
    void validate() const;
};

struct DiagramSample {
    std::string leg_id;
    double L;
    double P;
    double E;
    double a1_sq;
};

/// samples_per_leg points per leg, uniform in L from the leg start to its end
/// inclusive, so each vertex appears twice (end of one leg, start of the next).
std::vector<DiagramSample> sample_cycle(const Cycle& cycle, int samples_per_leg);

struct Outcome {
    int exit_code = kExitOk;
    std::string report;       // emitted on stdout or the --out file
    std::string diagnostic;   // emitted on stderr
};

Outcome execute_run(const RunConfig& config);

struct VerifyConfig {
    std::optional<CycleType> cycle;   // both when unset
    std::optional<double> l1;
    std::optional<double> l3;
    UnitsChoice units;
    double quad_tol = 1e-10;
    double threshold = 1e-9;
    OutputFormat format = OutputFormat::Json;
    int sweep = 0;                    // random geometries per cycle type; 0 uses l1/l3
    std::uint64_t seed = 1;
};

/// Geometries for sweep mode: width ratio in [0.05, 0.45] and both widths in [0.1, 10].
/// The pair is (hot width, cold width).
std::vector<std::pair<double, double>> sweep_geometries(int count, std::uint64_t seed);

Outcome execute_verify(const VerifyConfig& config);

/// Writes the report to `path` (or `out` when unset) and the diagnostic to `err`.
/// Returns the outcome's exit code, or kExitIo if the report cannot be written.
int deliver(const Outcome& outcome, const std::optional<std::string>& path, std::ostream& out,
            std::ostream& err);

}  // namespace qengine
