#pragma once

// Reversible process legs. Sign convention: positive work is done by the
// particle on the walls, positive heat flows into the particle.

#include <string>
#include <variant>

#include "qengine/well.hpp"

namespace qengine {

/// Wall moves while |a1|^2 adjusts so that <H> stays at `energy`; mixes n = 1 and n = 2.
struct Isothermal {
    double energy;
};

/// Wall moves with the particle held in eigenstate n.
struct ConstantN {
    int n;
};

/// Occupations change at fixed width.
struct ConstantWidth {
    double width;
};

using LegKind = std::variant<Isothermal, ConstantN, ConstantWidth>;

/// Ground-state width of an isotherm: the L at which pure n = 1 has energy E.
double isotherm_ground_width(double energy, const UnitSystem& units);

/// |a1|^2 on an isotherm whose pure-ground-state width is ref_width:
/// (4 - L^2 / ref_width^2) / 3. Requires ref_width <= L <= 2 ref_width
/// (a relative slack of 1e-12 absorbs rounding at the endpoints).
double isothermal_occupation(double width, double ref_width);

class ProcessLeg {
public:
    /// Validates the endpoint invariants for `kind`; throws InvariantError on failure.
    ProcessLeg(LegKind kind, WellState start, WellState end, const UnitSystem& units);

    /// Isotherm at energy `energy` between the two widths. Endpoint states are
    /// the two-level mixtures fixed by the energy.
    static ProcessLeg isothermal(double energy, double from_width, double to_width,
                                 const UnitSystem& units);
    static ProcessLeg constant_n(int n, double from_width, double to_width,
                                 const UnitSystem& units);
    static ProcessLeg constant_width(const WellState& from, const WellState& to,
                                     const UnitSystem& units);

    const LegKind& kind() const noexcept { return kind_; }
    const WellState& start() const noexcept { return start_; }
    const WellState& end() const noexcept { return end_; }

    /// Same leg traversed backwards.
    ProcessLeg reversed(const UnitSystem& units) const;

    /// Whether `width` lies between the endpoint widths (1e-12 relative slack).
    bool contains_width(double width) const noexcept;

    /// Instantaneous state at `width`. Not defined for ConstantWidth legs.
    WellState state_at(double width, const UnitSystem& units) const;

    /// "isothermal", "constant-n" or "constant-width".
    std::string kind_name() const;

private:
    LegKind kind_;
    WellState start_;
    WellState end_;
};

/// Pressure along the leg as a function of width. Isothermal: 2E/L; ConstantN: n^2 pi^2 hbar^2 / (m L^3).
/// Throws DomainError outside the leg's width interval or on a ConstantWidth leg.
double leg_pressure(const ProcessLeg& leg, double width, const UnitSystem& units);

/// Signed integral of P dL from start width to end width, in closed form.
double leg_work_closed_form(const ProcessLeg& leg, const UnitSystem& units);

/// Heat absorbed along the leg.
double leg_heat(const ProcessLeg& leg, const UnitSystem& units);

}  // namespace qengine
