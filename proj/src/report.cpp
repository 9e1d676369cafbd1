#include "qengine/report.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>

#include "json.hpp"
#include "qengine/errors.hpp"

namespace qengine {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json units_json(const UnitsChoice& u) {
    return {{"kind", u.kind}, {"hbar", u.units.hbar()}, {"mass", u.units.mass()}};
}

ordered_json config_json(const RunConfig& c) {
    return {{"cycle", to_string(c.cycle)},
            {"l1", c.l1},
            {"l3", c.l3},
            {"units", units_json(c.units)},
            {"samples_per_leg", c.samples_per_leg},
            {"quad_tol", c.quad_tol},
            {"threshold", c.threshold},
            {"format", to_string(c.format)}};
}

ordered_json metrics_json(const Cycle& cycle, const CycleMetrics& m) {
    ordered_json ids = ordered_json::array();
    ordered_json kinds = ordered_json::array();
    for (std::size_t k = 0; k < cycle.legs().size(); ++k) {
        ids.push_back(std::string(kLegIds[k % kLegIds.size()]));
        kinds.push_back(cycle.legs()[k].kind_name());
    }
    return {{"leg_ids", ids},
            {"leg_kinds", kinds},
            {"per_leg_work", m.per_leg_work},
            {"per_leg_heat", m.per_leg_heat},
            {"per_leg_work_quadrature", m.per_leg_work_quadrature},
            {"total_work", m.total_work},
            {"heat_in", m.heat_in},
            {"efficiency", m.efficiency},
            {"e_hot", m.e_hot},
            {"e_cold", m.e_cold},
            {"oracle_residual", m.oracle_residual}};
}

std::string render_json(const RunConfig& config, const Cycle& cycle, const CycleMetrics& m,
                        const std::vector<DiagramSample>& samples) {
    ordered_json rows = ordered_json::array();
    for (const auto& s : samples) {
        rows.push_back({{"leg_id", s.leg_id}, {"L", s.L}, {"P", s.P}, {"E", s.E}, {"a1_sq", s.a1_sq}});
    }
    ordered_json doc = {{"config", config_json(config)},
                        {"metrics", metrics_json(cycle, m)},
                        {"samples", rows}};
    return doc.dump(2) + "\n";
}

std::string render_csv(const RunConfig& config, const Cycle& cycle, const CycleMetrics& m,
                       const std::vector<DiagramSample>& samples) {
    const auto& u = config.units;
    std::string out = "# metrics:\n";
    auto line = [&](std::string_view key, const std::string& value) {
        out += "# ";
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    };
    line("cycle", std::string(to_string(config.cycle)));
    line("l1", format_number(config.l1));
    line("l3", format_number(config.l3));
    line("units", u.kind + " (hbar = " + format_number(u.units.hbar()) +
                      ", mass = " + format_number(u.units.mass()) + ")");
    for (std::size_t k = 0; k < cycle.legs().size(); ++k) {
        line("leg " + std::string(kLegIds[k % kLegIds.size()]),
             cycle.legs()[k].kind_name() + " work = " + format_number(m.per_leg_work[k]) +
                 ", heat = " + format_number(m.per_leg_heat[k]) +
                 ", work_quadrature = " + format_number(m.per_leg_work_quadrature[k]));
    }
    line("total_work", format_number(m.total_work));
    line("heat_in", format_number(m.heat_in));
    line("efficiency", format_number(m.efficiency));
    line("e_hot", format_number(m.e_hot));
    line("e_cold", format_number(m.e_cold));
    line("oracle_residual", format_number(m.oracle_residual));

    out += "leg_id,L,P,E,a1_sq\n";
    for (const auto& s : samples) {
        out += s.leg_id + ',' + format_number(s.L) + ',' + format_number(s.P) + ',' +
               format_number(s.E) + ',' + format_number(s.a1_sq) + '\n';
    }
    return out;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view name) noexcept {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    return std::nullopt;
}

std::string_view to_string(OutputFormat format) noexcept {
    return format == OutputFormat::Csv ? "csv" : "json";
}

UnitsChoice resolve_units(std::string_view kind, std::optional<double> hbar,
                          std::optional<double> mass) {
    if (kind == "natural") {
        if (hbar || mass) {
            throw ParameterError("--hbar/--mass require --units explicit");
        }
        return {};
    }
    if (kind == "explicit" || kind == "si") {
        if (!hbar || !mass) {
            throw ParameterError("--units " + std::string(kind) + " requires both --hbar and --mass");
        }
        try {
            return {std::string(kind), UnitSystem(*hbar, *mass)};
        } catch (const InvariantError& e) {
            throw ParameterError(e.what());
        }
    }
    throw ParameterError("unknown units '" + std::string(kind) + "', expected natural or explicit");
}

void RunConfig::validate() const {
    if (samples_per_leg < 2) {
        throw ParameterError("samples per leg must be >= 2");
    }
    if (!(quad_tol > 0.0)) {
        throw ParameterError("quadrature tolerance must be positive");
    }
    if (!(threshold > 0.0)) {
        throw ParameterError("verification threshold must be positive");
    }
}

std::vector<DiagramSample> sample_cycle(const Cycle& cycle, int samples_per_leg) {
    if (samples_per_leg < 2) {
        throw ParameterError("samples per leg must be >= 2");
    }
    const auto& units = cycle.units();
    std::vector<DiagramSample> out;
    out.reserve(cycle.legs().size() * static_cast<std::size_t>(samples_per_leg));
    const double last = static_cast<double>(samples_per_leg - 1);

    for (std::size_t k = 0; k < cycle.legs().size(); ++k) {
        const auto& leg = cycle.legs()[k];
        const std::string id(kLegIds[k % kLegIds.size()]);
        const double a = leg.start().width();
        const double b = leg.end().width();
        for (int i = 0; i < samples_per_leg; ++i) {
            const double t = i / last;
            if (std::holds_alternative<ConstantWidth>(leg.kind())) {
                // Linear blend of the endpoint occupations at fixed width.
                const auto levels = std::max(leg.start().occupations().size(),
                                             leg.end().occupations().size());
                std::vector<double> occ(levels);
                for (std::size_t n = 0; n < levels; ++n) {
                    const int level = static_cast<int>(n) + 1;
                    occ[n] = std::lerp(leg.start().occupation(level), leg.end().occupation(level), t);
                }
                const WellState s(a, std::move(occ));
                out.push_back({id, a, state_pressure(s, units), state_energy(s, units), s.occupation(1)});
                continue;
            }
            const double L = std::lerp(a, b, t);
            const WellState s = leg.state_at(L, units);
            out.push_back({id, L, leg_pressure(leg, L, units), state_energy(s, units), s.occupation(1)});
        }
    }
    return out;
}

Outcome execute_run(const RunConfig& config) {
    Outcome outcome;
    try {
        config.validate();
        const Cycle cycle = build_cycle(config.cycle, config.l1, config.l3, config.units.units);
        const CycleMetrics metrics = cycle_metrics(cycle, config.quad_tol);
        const auto samples = sample_cycle(cycle, config.samples_per_leg);
        outcome.report = config.format == OutputFormat::Json
                             ? render_json(config, cycle, metrics, samples)
                             : render_csv(config, cycle, metrics, samples);
        if (metrics.oracle_residual > config.threshold) {
            outcome.exit_code = kExitVerification;
            outcome.diagnostic = "verification failed: oracle residual " +
                                 format_number(metrics.oracle_residual) + " exceeds threshold " +
                                 format_number(config.threshold) + "\n";
        }
    } catch (const ParameterError& e) {
        outcome = {kExitParameter, "", std::string("parameter error: ") + e.what() + "\n"};
    } catch (const ConvergenceError& e) {
        outcome = {kExitVerification, "", std::string("verification failed: ") + e.what() + "\n"};
    }
    return outcome;
}

std::vector<std::pair<double, double>> sweep_geometries(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        const double ratio = 0.05 + 0.40 * unit(rng);
        const double hot = 0.1 + (10.0 * ratio - 0.1) * unit(rng);
        out.emplace_back(hot, hot / ratio);
    }
    return out;
}

Outcome execute_verify(const VerifyConfig& config) {
    struct Case {
        CycleType type;
        double l1;
        double l3;
    };
    Outcome outcome;
    std::vector<Case> cases;
    const std::vector<CycleType> types =
        config.cycle ? std::vector<CycleType>{*config.cycle}
                     : std::vector<CycleType>{CycleType::Stirling, CycleType::Ericsson};
    try {
        if (!(config.quad_tol > 0.0)) throw ParameterError("quadrature tolerance must be positive");
        if (!(config.threshold > 0.0)) throw ParameterError("verification threshold must be positive");
        if (config.sweep < 0) throw ParameterError("sweep count must be non-negative");
        for (const auto type : types) {
            if (config.sweep > 0) {
                for (const auto& [hot, cold] : sweep_geometries(config.sweep, config.seed)) {
                    cases.push_back(type == CycleType::Stirling ? Case{type, hot, cold}
                                                                : Case{type, cold, hot});
                }
            } else {
                if (!config.l1 || !config.l3) {
                    throw ParameterError("verify needs --l1 and --l3, or --sweep");
                }
                cases.push_back({type, *config.l1, *config.l3});
            }
        }

        QuadratureConfig qcfg;
        qcfg.rel_tol = config.quad_tol;
        std::vector<std::pair<Case, VerificationReport>> results;
        for (const auto& c : cases) {
            results.emplace_back(c, verify_against_oracle(c.type, c.l1, c.l3, config.units.units, qcfg));
        }

        bool pass = true;
        for (const auto& [c, r] : results) pass = pass && r.max_residual() <= config.threshold;

        if (config.format == OutputFormat::Json) {
            ordered_json rows = ordered_json::array();
            for (const auto& [c, r] : results) {
                ordered_json res = ordered_json::object();
                for (const auto& q : r.residuals) res[q.quantity] = q.value;
                rows.push_back({{"cycle", to_string(c.type)},
                                {"l1", c.l1},
                                {"l3", c.l3},
                                {"residuals", res},
                                {"constant_n_pair_sum", r.constant_n_pair_sum},
                                {"max_residual", r.max_residual()},
                                {"pass", r.max_residual() <= config.threshold}});
            }
            ordered_json doc = {{"config",
                                 {{"units", units_json(config.units)},
                                  {"quad_tol", config.quad_tol},
                                  {"threshold", config.threshold},
                                  {"sweep", config.sweep},
                                  {"seed", config.seed}}},
                                {"cases", rows},
                                {"pass", pass}};
            outcome.report = doc.dump(2) + "\n";
        } else {
            std::string out = "cycle,l1,l3,quantity,residual,status\n";
            for (const auto& [c, r] : results) {
                for (const auto& q : r.residuals) {
                    out += std::string(to_string(c.type)) + ',' + format_number(c.l1) + ',' +
                           format_number(c.l3) + ',' + q.quantity + ',' + format_number(q.value) + ',' +
                           (q.value <= config.threshold ? "ok" : "FAIL") + '\n';
                }
            }
            outcome.report = std::move(out);
        }
        if (!pass) {
            outcome.exit_code = kExitVerification;
            outcome.diagnostic = "verification failed: residuals above threshold " +
                                 format_number(config.threshold) + "\n";
        }
    } catch (const ParameterError& e) {
        outcome = {kExitParameter, "", std::string("parameter error: ") + e.what() + "\n"};
    } catch (const ConvergenceError& e) {
        outcome = {kExitVerification, "", std::string("verification failed: ") + e.what() + "\n"};
    }
    return outcome;
}

int deliver(const Outcome& outcome, const std::optional<std::string>& path, std::ostream& out,
            std::ostream& err) {
    if (!outcome.report.empty()) {
        if (path) {
            std::ofstream file(*path, std::ios::binary | std::ios::trunc);
            file << outcome.report;
            file.flush();
            if (!file) {
                err << "i/o error: cannot write '" << *path << "'\n";
                return kExitIo;
            }
        } else {
            out << outcome.report;
            out.flush();
            if (!out) {
                err << "i/o error: cannot write to standard output\n";
                return kExitIo;
            }
        }
    }
    err << outcome.diagnostic;
    return outcome.exit_code;
}

}  // namespace qengine
