#include "qengine/legs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qengine/errors.hpp"

namespace qengine {

namespace {

constexpr double kWidthSlack = 1e-12;
constexpr double kLegEnergyTolerance = 1e-10;
// |a1|^2 this close to 0 or 1 is rounding residue from the reference width.
constexpr double kSnap = 1e-14;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool only_lowest_two_levels(const WellState& s) {
    const auto occ = s.occupations();
    return std::all_of(occ.begin() + std::min<std::ptrdiff_t>(2, std::ssize(occ)), occ.end(),
                       [](double p) { return p == 0.0; });
}

bool relative_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

WellState isotherm_state(double energy, double width, const UnitSystem& units) {
    const double a1 = isothermal_occupation(width, isotherm_ground_width(energy, units));
    return WellState::two_level(a1, width);
}

}  // namespace

double isotherm_ground_width(double energy, const UnitSystem& units) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw DomainError("isotherm energy must be positive and finite");
    }
    return std::sqrt(units.energy_scale() / energy);
}

double isothermal_occupation(double width, double ref_width) {
    if (!(ref_width > 0.0)) {
        throw DomainError("isotherm reference width must be positive");
    }
    if (!(width >= ref_width * (1.0 - kWidthSlack) && width <= 2.0 * ref_width * (1.0 + kWidthSlack))) {
        throw DomainError("width " + std::to_string(width) + " outside isotherm domain [" +
                          std::to_string(ref_width) + ", " + std::to_string(2.0 * ref_width) + "]");
    }
    const double r = width / ref_width;
    double a1 = (4.0 - r * r) / 3.0;
    if (a1 < kSnap) a1 = 0.0;
    if (a1 > 1.0 - kSnap) a1 = 1.0;
    return a1;
}

ProcessLeg::ProcessLeg(LegKind kind, WellState start, WellState end, const UnitSystem& units)
    : kind_(kind), start_(std::move(start)), end_(std::move(end)) {
    std::visit(
        overloaded{
            [&](const Isothermal& k) {
                if (!(k.energy > 0.0)) throw InvariantError("isothermal leg energy must be positive");
                if (!only_lowest_two_levels(start_) || !only_lowest_two_levels(end_)) {
                    throw InvariantError("isothermal leg may only mix levels n = 1 and n = 2");
                }
                if (!relative_close(state_energy(start_, units), k.energy, kLegEnergyTolerance) ||
                    !relative_close(state_energy(end_, units), k.energy, kLegEnergyTolerance)) {
                    throw InvariantError("isothermal leg endpoints do not sit at the leg energy");
                }
            },
            [&](const ConstantN& k) {
                if (k.n < 1) throw InvariantError("constant-n leg needs n >= 1");
                if (start_.pure_level() != k.n || end_.pure_level() != k.n) {
                    throw InvariantError("constant-n leg endpoints must be pure level " +
                                         std::to_string(k.n));
                }
                if (start_.width() == end_.width()) {
                    throw InvariantError("constant-n leg must change the width");
                }
            },
            [&](const ConstantWidth& k) {
                if (start_.width() != k.width || end_.width() != k.width) {
                    throw InvariantError("constant-width leg endpoints must share the leg width");
                }
            },
        },
        kind_);
}

ProcessLeg ProcessLeg::isothermal(double energy, double from_width, double to_width,
                                  const UnitSystem& units) {
    return ProcessLeg(Isothermal{energy}, isotherm_state(energy, from_width, units),
                      isotherm_state(energy, to_width, units), units);
}

ProcessLeg ProcessLeg::constant_n(int n, double from_width, double to_width,
                                  const UnitSystem& units) {
    return ProcessLeg(ConstantN{n}, WellState::pure(n, from_width), WellState::pure(n, to_width),
                      units);
}

ProcessLeg ProcessLeg::constant_width(const WellState& from, const WellState& to,
                                      const UnitSystem& units) {
    return ProcessLeg(ConstantWidth{from.width()}, from, to, units);
}

ProcessLeg ProcessLeg::reversed(const UnitSystem& units) const {
    return ProcessLeg(kind_, end_, start_, units);
}

bool ProcessLeg::contains_width(double width) const noexcept {
    const double lo = std::min(start_.width(), end_.width());
    const double hi = std::max(start_.width(), end_.width());
    return width >= lo * (1.0 - kWidthSlack) && width <= hi * (1.0 + kWidthSlack);
}

WellState ProcessLeg::state_at(double width, const UnitSystem& units) const {
    if (!contains_width(width)) {
        throw DomainError("width " + std::to_string(width) + " outside the leg interval");
    }
    return std::visit(
        overloaded{
            [&](const Isothermal& k) { return isotherm_state(k.energy, width, units); },
            [&](const ConstantN& k) { return WellState::pure(k.n, width); },
            [&](const ConstantWidth&) -> WellState {
                throw DomainError("a constant-width leg has no state as a function of width");
            },
        },
        kind_);
}

std::string ProcessLeg::kind_name() const {
    return std::visit(overloaded{
                          [](const Isothermal&) { return std::string("isothermal"); },
                          [](const ConstantN&) { return std::string("constant-n"); },
                          [](const ConstantWidth&) { return std::string("constant-width"); },
                      },
                      kind_);
}

double leg_pressure(const ProcessLeg& leg, double width, const UnitSystem& units) {
    if (std::holds_alternative<ConstantWidth>(leg.kind())) {
        throw DomainError("pressure is not a function of width on a constant-width leg");
    }
    if (!leg.contains_width(width)) {
        throw DomainError("width " + std::to_string(width) + " outside the leg interval");
    }
    if (const auto* iso = std::get_if<Isothermal>(&leg.kind())) {
        return 2.0 * iso->energy / width;
    }
    const int n = std::get<ConstantN>(leg.kind()).n;
    return 2.0 * eigen_energy(n, width, units) / width;
}

double leg_work_closed_form(const ProcessLeg& leg, const UnitSystem& units) {
    const double a = leg.start().width();
    const double b = leg.end().width();
    return std::visit(overloaded{
                          [&](const Isothermal& k) { return 2.0 * k.energy * (std::log(b) - std::log(a)); },
                          [&](const ConstantN& k) {
                              const double nn = static_cast<double>(k.n) * k.n;
                              return units.energy_scale() * nn * (1.0 / (a * a) - 1.0 / (b * b));
                          },
                          [](const ConstantWidth&) { return 0.0; },
                      },
                      leg.kind());
}

double leg_heat(const ProcessLeg& leg, const UnitSystem& units) {
    return std::visit(overloaded{
                          // <H> is constant, so all work done is drawn from the reservoir.
                          [&](const Isothermal&) { return leg_work_closed_form(leg, units); },
                          [](const ConstantN&) { return 0.0; },
                          [&](const ConstantWidth&) {
                              return state_energy(leg.end(), units) - state_energy(leg.start(), units);
                          },
                      },
                      leg.kind());
}

}  // namespace qengine
