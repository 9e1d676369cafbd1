#pragma once

// Four-leg engine cycles built from two isotherms and two constant-n legs.
//
// Vertex numbering runs 1 -> 2 -> 3 -> 4 -> 1:
//   1 -> 2  hot isotherm, pure n = 1 at the hot width to pure n = 2 at twice that width
//   2 -> 3  constant n = 2 out to the cold width
//   3 -> 4  cold isotherm, pure n = 2 back to pure n = 1 at half the cold width
//   4 -> 1  constant n = 1 back to the hot width
//
// Stirling takes (L1 hot, L3 cold); Ericsson takes (L3 hot, L1 cold).

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qengine/legs.hpp"
#include "qengine/quadrature.hpp"
#include "qengine/well.hpp"

namespace qengine {

enum class CycleType { Stirling, Ericsson };

std::string_view to_string(CycleType type) noexcept;
/// Accepts "stirling" or "ericsson".
std::optional<CycleType> parse_cycle_type(std::string_view name) noexcept;

inline constexpr std::array<std::string_view, 4> kLegIds{"1→2", "2→3", "3→4", "4→1"};

inline constexpr double kClosureOccupationTolerance = 1e-12;
inline constexpr double kClosureEnergyTolerance = 1e-10;

class Cycle {
public:
    /// Throws ClosureError if leg k does not end where leg k+1 (cyclically) starts,
    /// DegenerateCycleError if no leg absorbs heat.
    Cycle(std::string name, std::vector<ProcessLeg> legs, UnitSystem units);

    const std::string& name() const noexcept { return name_; }
    const std::vector<ProcessLeg>& legs() const noexcept { return legs_; }
    const UnitSystem& units() const noexcept { return units_; }

    /// Start state of every leg, i.e. vertices 1..N.
    std::vector<WellState> vertices() const;

private:
    std::string name_;
    std::vector<ProcessLeg> legs_;
    UnitSystem units_;
};

/// Throws ParameterError unless l3 > 2 l1.
Cycle build_stirling(double l1, double l3, const UnitSystem& units);
/// Throws ParameterError unless l1 > 2 l3.
Cycle build_ericsson(double l3, double l1, const UnitSystem& units);
Cycle build_cycle(CycleType type, double l1, double l3, const UnitSystem& units);

struct CycleMetrics {
    std::vector<double> per_leg_work;
    std::vector<double> per_leg_heat;
    /// Quadrature of each leg's pressure, the oracle behind oracle_residual.
    std::vector<double> per_leg_work_quadrature;
    double total_work = 0.0;
    double heat_in = 0.0;
    double efficiency = 0.0;
    double e_hot = 0.0;
    double e_cold = 0.0;
    double oracle_residual = 0.0;
};

CycleMetrics cycle_metrics(const Cycle& cycle, double quadrature_tol = 1e-10);

/// 1 - 4 ratio^2, ratio = L1/L3 (Stirling) or L3/L1 (Ericsson).
/// Throws ParameterError for an unknown name or ratio outside (0, 1/2).
double efficiency_closed_form(std::string_view cycle_name, double ratio);

/// Textbook totals for a cycle, written directly in terms of the two widths.
struct AnalyticTotals {
    double total_work;
    double heat_in;
    double efficiency;
    double e_hot;
    double e_cold;
};

AnalyticTotals analytic_totals(CycleType type, double l1, double l3, const UnitSystem& units);

/// |a - b| / max(|a|, |b|), zero when both vanish.
double relative_difference(double a, double b) noexcept;

struct Residual {
    std::string quantity;
    double value;
};

/// Every closed form recomputed through quadrature, one relative residual per quantity.
struct VerificationReport {
    std::vector<Residual> residuals;
    /// (W_23 + W_41) / max(|W_23|, |W_41|) for the two constant-n legs.
    double constant_n_pair_sum = 0.0;

    double max_residual() const noexcept;
};

VerificationReport verify_against_oracle(CycleType type, double l1, double l3,
                                         const UnitSystem& units, const QuadratureConfig& cfg);

}  // namespace qengine
