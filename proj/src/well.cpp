#include "qengine/well.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qengine/errors.hpp"

namespace qengine {

namespace {

void require_width(double width) {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw DomainError("well width must be positive and finite, got " + std::to_string(width));
    }
}

}  // namespace

UnitSystem::UnitSystem(double hbar, double mass) : hbar_(hbar), mass_(mass) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw InvariantError("hbar must be positive and finite");
    }
    if (!(mass > 0.0) || !std::isfinite(mass)) {
        throw InvariantError("mass must be positive and finite");
    }
}

double UnitSystem::energy_scale() const noexcept {
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    return pi2 * hbar_ * hbar_ / (2.0 * mass_);
}

WellState::WellState(double width, std::vector<double> occupations)
    : width_(width), occupations_(std::move(occupations)) {
    if (!(width_ > 0.0) || !std::isfinite(width_)) {
        throw InvariantError("well width must be positive and finite");
    }
    if (occupations_.empty() || occupations_.size() > static_cast<std::size_t>(kMaxLevel)) {
        throw InvariantError("occupation list must cover between 1 and 64 levels");
    }
    double total = 0.0;
    for (double p : occupations_) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvariantError("occupation probability outside [0, 1]");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
        throw InvariantError("occupations sum to " + std::to_string(total) + ", expected 1");
    }
}

WellState WellState::pure(int n, double width) {
    if (n < 1 || n > kMaxLevel) {
        throw DomainError("quantum number must lie in [1, 64], got " + std::to_string(n));
    }
    std::vector<double> occ(static_cast<std::size_t>(n), 0.0);
    occ.back() = 1.0;
    return WellState(width, std::move(occ));
}

WellState WellState::two_level(double a1_sq, double width) {
    return WellState(width, {a1_sq, 1.0 - a1_sq});
}

double WellState::occupation(int n) const {
    if (n < 1) {
        throw DomainError("quantum number must be >= 1");
    }
    const auto idx = static_cast<std::size_t>(n - 1);
    return idx < occupations_.size() ? occupations_[idx] : 0.0;
}

WellState WellState::with_width(double width) const {
    return WellState(width, occupations_);
}

int WellState::pure_level() const noexcept {
    for (std::size_t i = 0; i < occupations_.size(); ++i) {
        if (std::abs(occupations_[i] - 1.0) <= kNormalizationTolerance) {
            return static_cast<int>(i) + 1;
        }
    }
    return 0;
}

double WellState::level_weight() const noexcept {
    double weight = 0.0;
    for (std::size_t i = 0; i < occupations_.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        weight += occupations_[i] * n * n;
    }
    return weight;
}

double eigen_energy(int n, double width, const UnitSystem& units) {
    if (n < 1) {
        throw DomainError("quantum number must be >= 1, got " + std::to_string(n));
    }
    require_width(width);
    const double nn = static_cast<double>(n);
    return units.energy_scale() * nn * nn / (width * width);
}

double state_energy(const WellState& state, const UnitSystem& units) {
    const double L = state.width();
    return units.energy_scale() * state.level_weight() / (L * L);
}

double state_pressure(const WellState& state, const UnitSystem& units) {
    const double L = state.width();
    return 2.0 * units.energy_scale() * state.level_weight() / (L * L * L);
}

}  // namespace qengine
