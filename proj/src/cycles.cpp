#include "qengine/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qengine/errors.hpp"
#include "qengine/format.hpp"

namespace qengine {

namespace {

bool vertices_match(const WellState& a, const WellState& b, const UnitSystem& units) {
    if (a.width() != b.width()) return false;
    const auto levels = static_cast<int>(std::max(a.occupations().size(), b.occupations().size()));
    for (int n = 1; n <= levels; ++n) {
        if (std::abs(a.occupation(n) - b.occupation(n)) > kClosureOccupationTolerance) return false;
    }
    return relative_difference(state_energy(a, units), state_energy(b, units)) <=
           kClosureEnergyTolerance;
}

// Hot isotherm from pure n = 1 at hot_width; cold isotherm ends in pure n = 1 at cold_width / 2.
std::vector<ProcessLeg> four_legs(double hot_width, double cold_width, const UnitSystem& units) {
    const double e_hot = eigen_energy(1, hot_width, units);
    const double e_cold = eigen_energy(2, cold_width, units);
    std::vector<ProcessLeg> legs;
    legs.reserve(4);
    legs.push_back(ProcessLeg::isothermal(e_hot, hot_width, 2.0 * hot_width, units));
    legs.push_back(ProcessLeg::constant_n(2, 2.0 * hot_width, cold_width, units));
    legs.push_back(ProcessLeg::isothermal(e_cold, cold_width, 0.5 * cold_width, units));
    legs.push_back(ProcessLeg::constant_n(1, 0.5 * cold_width, hot_width, units));
    return legs;
}

void require_positive(double width, const char* label) {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw ParameterError(std::string(label) + " must be positive and finite");
    }
}

}  // namespace

std::string_view to_string(CycleType type) noexcept {
    return type == CycleType::Stirling ? "stirling" : "ericsson";
}

std::optional<CycleType> parse_cycle_type(std::string_view name) noexcept {
    if (name == "stirling") return CycleType::Stirling;
    if (name == "ericsson") return CycleType::Ericsson;
    return std::nullopt;
}

double relative_difference(double a, double b) noexcept {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

Cycle::Cycle(std::string name, std::vector<ProcessLeg> legs, UnitSystem units)
    : name_(std::move(name)), legs_(std::move(legs)), units_(units) {
    if (legs_.empty()) {
        throw ClosureError("a cycle needs at least one leg");
    }
    for (std::size_t k = 0; k < legs_.size(); ++k) {
        const auto& next = legs_[(k + 1) % legs_.size()];
        if (!vertices_match(legs_[k].end(), next.start(), units_)) {
            throw ClosureError("leg " + std::to_string(k + 1) + " does not end where leg " +
                               std::to_string((k + 1) % legs_.size() + 1) + " starts");
        }
    }
    const bool absorbs = std::any_of(legs_.begin(), legs_.end(),
                                     [&](const ProcessLeg& leg) { return leg_heat(leg, units_) > 0.0; });
    if (!absorbs) {
        throw DegenerateCycleError("no leg of cycle '" + name_ + "' absorbs heat");
    }
}

std::vector<WellState> Cycle::vertices() const {
    std::vector<WellState> out;
    out.reserve(legs_.size());
    for (const auto& leg : legs_) out.push_back(leg.start());
    return out;
}

Cycle build_stirling(double l1, double l3, const UnitSystem& units) {
    require_positive(l1, "L1");
    require_positive(l3, "L3");
    if (!(l3 > 2.0 * l1)) {
        throw ParameterError("stirling cycle requires L3 > 2·L1 (got L1 = " + format_number(l1) +
                             ", L3 = " + format_number(l3) + ")");
    }
    return Cycle("stirling", four_legs(l1, l3, units), units);
}

Cycle build_ericsson(double l3, double l1, const UnitSystem& units) {
    require_positive(l1, "L1");
    require_positive(l3, "L3");
    if (!(l1 > 2.0 * l3)) {
        throw ParameterError("ericsson cycle requires L1 > 2·L3 (got L3 = " + format_number(l3) +
                             ", L1 = " + format_number(l1) + ")");
    }
    return Cycle("ericsson", four_legs(l3, l1, units), units);
}

Cycle build_cycle(CycleType type, double l1, double l3, const UnitSystem& units) {
    return type == CycleType::Stirling ? build_stirling(l1, l3, units) : build_ericsson(l3, l1, units);
}

CycleMetrics cycle_metrics(const Cycle& cycle, double quadrature_tol) {
    const auto& units = cycle.units();
    QuadratureConfig cfg;
    cfg.rel_tol = quadrature_tol;
    // Leg pressures never change sign, so a purely relative tolerance is safe and
    // stays meaningful when explicit units put energies near 1e-38.
    cfg.abs_tol = std::numeric_limits<double>::min();

    CycleMetrics m;
    bool have_isotherm = false;
    for (const auto& leg : cycle.legs()) {
        const double work = leg_work_closed_form(leg, units);
        const double heat = leg_heat(leg, units);
        double quad = 0.0;
        if (!std::holds_alternative<ConstantWidth>(leg.kind())) {
            quad = integrate([&](double L) { return leg_pressure(leg, L, units); },
                             leg.start().width(), leg.end().width(), cfg);
        }
        m.per_leg_work.push_back(work);
        m.per_leg_heat.push_back(heat);
        m.per_leg_work_quadrature.push_back(quad);
        m.total_work += work;
        if (heat > 0.0) m.heat_in += heat;
        m.oracle_residual = std::max(m.oracle_residual, relative_difference(work, quad));

        if (const auto* iso = std::get_if<Isothermal>(&leg.kind())) {
            m.e_hot = have_isotherm ? std::max(m.e_hot, iso->energy) : iso->energy;
            m.e_cold = have_isotherm ? std::min(m.e_cold, iso->energy) : iso->energy;
            have_isotherm = true;
        }
    }
    if (!(m.heat_in > 0.0)) {
        throw DegenerateCycleError("cycle '" + cycle.name() + "' absorbs no heat");
    }
    m.efficiency = m.total_work / m.heat_in;
    return m;
}

double efficiency_closed_form(std::string_view cycle_name, double ratio) {
    if (!parse_cycle_type(cycle_name)) {
        throw ParameterError("unknown cycle '" + std::string(cycle_name) + "'");
    }
    if (!(ratio > 0.0 && ratio < 0.5)) {
        throw ParameterError("width ratio must lie in (0, 1/2) for positive efficiency, got " +
                             format_number(ratio));
    }
    return 1.0 - 4.0 * ratio * ratio;
}

AnalyticTotals analytic_totals(CycleType type, double l1, double l3, const UnitSystem& units) {
    const double hot = type == CycleType::Stirling ? l1 : l3;
    const double cold = type == CycleType::Stirling ? l3 : l1;
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    const double c = pi2 * units.hbar() * units.hbar() / units.mass();
    const double ln2 = std::numbers::ln2;
    const double ratio = hot / cold;
    return AnalyticTotals{
        .total_work = c * (1.0 / (hot * hot) - 4.0 / (cold * cold)) * ln2,
        .heat_in = c / (hot * hot) * ln2,
        .efficiency = 1.0 - 4.0 * ratio * ratio,
        .e_hot = c / (2.0 * hot * hot),
        .e_cold = 2.0 * c / (cold * cold),
    };
}

double VerificationReport::max_residual() const noexcept {
    double worst = 0.0;
    for (const auto& r : residuals) worst = std::max(worst, r.value);
    return worst;
}

VerificationReport verify_against_oracle(CycleType type, double l1, double l3,
                                         const UnitSystem& units, const QuadratureConfig& cfg) {
    const Cycle cycle = build_cycle(type, l1, l3, units);
    const CycleMetrics m = cycle_metrics(cycle, cfg.rel_tol);
    const AnalyticTotals ref = analytic_totals(type, l1, l3, units);

    double quad_total = 0.0;
    double quad_heat_in = 0.0;
    for (std::size_t k = 0; k < m.per_leg_work_quadrature.size(); ++k) {
        quad_total += m.per_leg_work_quadrature[k];
        // The oracle side takes heat = work on isotherms, zero elsewhere.
        if (std::holds_alternative<Isothermal>(cycle.legs()[k].kind()) && m.per_leg_work_quadrature[k] > 0.0) {
            quad_heat_in += m.per_leg_work_quadrature[k];
        }
    }
    const double ratio = type == CycleType::Stirling ? l1 / l3 : l3 / l1;

    VerificationReport report;
    auto add = [&](std::string name, double value) { report.residuals.push_back({std::move(name), value}); };
    add("per_leg_work", m.oracle_residual);
    add("total_work", std::max(relative_difference(m.total_work, ref.total_work),
                               relative_difference(quad_total, ref.total_work)));
    add("heat_in", std::max(relative_difference(m.heat_in, ref.heat_in),
                            relative_difference(quad_heat_in, ref.heat_in)));
    add("efficiency",
        std::max({relative_difference(m.efficiency, ref.efficiency),
                  relative_difference(quad_total / quad_heat_in, ref.efficiency),
                  relative_difference(m.efficiency, efficiency_closed_form(to_string(type), ratio))}));
    add("carnot_form", relative_difference(m.efficiency, 1.0 - m.e_cold / m.e_hot));
    add("e_hot", relative_difference(m.e_hot, ref.e_hot));
    add("e_cold", relative_difference(m.e_cold, ref.e_cold));

    const double w23 = m.per_leg_work[1];
    const double w41 = m.per_leg_work[3];
    const double scale = std::max(std::abs(w23), std::abs(w41));
    report.constant_n_pair_sum = scale == 0.0 ? 0.0 : (w23 + w41) / scale;
    add("constant_n_pair_sum", std::abs(report.constant_n_pair_sum));
    return report;
}

}  // namespace qengine
