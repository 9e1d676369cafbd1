#pragma once

// Particle of mass m in a one-dimensional infinite square well of width L.
//
//   E_n = n^2 pi^2 hbar^2 / (2 m L^2)
//   E   = sum_n |a_n|^2 E_n
//   P   = -dE/dL (occupations held fixed) = sum_n |a_n|^2 n^2 pi^2 hbar^2 / (m L^3)

#include <span>
#include <vector>

namespace qengine {

/// Values of hbar and the particle mass. All energies scale as hbar^2/m.
class UnitSystem {
public:
    UnitSystem(double hbar, double mass);

    /// hbar = m = 1.
    static UnitSystem natural() { return {1.0, 1.0}; }

    double hbar() const noexcept { return hbar_; }
    double mass() const noexcept { return mass_; }

    /// pi^2 hbar^2 / (2 m), the common prefactor of every eigenenergy.
    double energy_scale() const noexcept;

    friend bool operator==(const UnitSystem&, const UnitSystem&) = default;

private:
    double hbar_;
    double mass_;
};

inline constexpr int kMaxLevel = 64;
inline constexpr double kNormalizationTolerance = 1e-12;

/// Well width plus occupation probabilities |a_n|^2 for n = 1..occupations.size().
class WellState {
public:
    /// Throws InvariantError unless width > 0, every occupation lies in [0, 1],
    /// there are between 1 and kMaxLevel of them, and they sum to 1 within 1e-12.
    WellState(double width, std::vector<double> occupations);

    /// Pure eigenstate n at the given width.
    static WellState pure(int n, double width);

    /// |a1|^2 = a1_sq, |a2|^2 = 1 - a1_sq.
    static WellState two_level(double a1_sq, double width);

    double width() const noexcept { return width_; }
    std::span<const double> occupations() const noexcept { return occupations_; }

    /// |a_n|^2, zero for levels beyond the stored range.
    double occupation(int n) const;

    /// Same occupations at a different width.
    WellState with_width(double width) const;

    /// Quantum number n if the state is a pure eigenstate (occupation 1 within 1e-12), else 0.
    int pure_level() const noexcept;

    /// Sum of |a_n|^2 n^2, the dimensionless energy weight.
    double level_weight() const noexcept;

    friend bool operator==(const WellState&, const WellState&) = default;

private:
    double width_;
    std::vector<double> occupations_;
};

/// n^2 pi^2 hbar^2 / (2 m L^2). Throws DomainError for n < 1 or L <= 0.
double eigen_energy(int n, double width, const UnitSystem& units);

/// Expectation value of the Hamiltonian.
double state_energy(const WellState& state, const UnitSystem& units);

/// Force on the wall, -dE/dL at fixed occupations.
double state_pressure(const WellState& state, const UnitSystem& units);

}  // namespace qengine
