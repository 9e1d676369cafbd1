#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "json.hpp"
#include "qengine/errors.hpp"
#include "qengine/report.hpp"

using namespace qengine;
using qengine::testing::rel_err;

namespace {

RunConfig stirling_config() {
    RunConfig c;
    c.cycle = CycleType::Stirling;
    c.l1 = 1.0;
    c.l3 = 4.0;
    return c;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("format_number") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0 / 3) == "0.33333333333333331");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
    CHECK(std::stod(format_number(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("resolve_units") {
    CHECK(resolve_units("natural", {}, {}).units == UnitSystem::natural());
    const auto u = resolve_units("explicit", 1.054571817e-34, 9.1093837015e-31);
    CHECK(u.kind == "explicit");
    CHECK(u.units.hbar() == 1.054571817e-34);
    CHECK_THROWS_AS(resolve_units("explicit", 1.0, {}), ParameterError);
    CHECK_THROWS_AS(resolve_units("si", {}, 1.0), ParameterError);
    CHECK_THROWS_AS(resolve_units("natural", 2.0, {}), ParameterError);
    CHECK_THROWS_AS(resolve_units("explicit", -1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(resolve_units("planck", {}, {}), ParameterError);
}

TEST_CASE("sample_cycle") {
    const auto cycle = build_stirling(1.0, 4.0, UnitSystem::natural());
    const auto samples = sample_cycle(cycle, 4);
    REQUIRE(samples.size() == 16);
    CHECK(samples.front().leg_id == "1→2");
    CHECK(samples.back().leg_id == "4→1");

    for (std::size_t k = 0; k < 4; ++k) {
        const auto& leg = cycle.legs()[k];
        const auto first = samples[4 * k];
        const auto last = samples[4 * k + 3];
        CHECK(first.L == leg.start().width());
        CHECK(last.L == leg.end().width());
        // Joint rows repeat the same vertex.
        const auto& next = samples[(4 * k + 4) % 16];
        CHECK(last.L == next.L);
        CHECK(last.E == next.E);
        CHECK(last.a1_sq == next.a1_sq);
        // Monotone in L within a leg.
        const double dir = leg.end().width() > leg.start().width() ? 1.0 : -1.0;
        for (std::size_t i = 4 * k + 1; i < 4 * k + 4; ++i) {
            CHECK(dir * (samples[i].L - samples[i - 1].L) > 0.0);
        }
    }
    // Isotherm rows follow L P = 2 E_leg; constant-n rows carry pure occupations.
    for (const auto& s : samples) {
        CHECK(s.a1_sq >= 0.0);
        CHECK(s.a1_sq <= 1.0);
        if (s.leg_id == "1→2" || s.leg_id == "3→4") CHECK(rel_err(s.L * s.P, 2 * s.E) <= 1e-12);
        if (s.leg_id == "2→3") CHECK(s.a1_sq == 0.0);
        if (s.leg_id == "4→1") CHECK(s.a1_sq == 1.0);
    }
    CHECK_THROWS_AS(sample_cycle(cycle, 1), ParameterError);
}

TEST_CASE("execute_run: csv layout") {
    auto cfg = stirling_config();
    cfg.samples_per_leg = 4;
    const auto out = execute_run(cfg);
    CHECK(out.exit_code == kExitOk);
    const auto lines = lines_of(out.report);
    CHECK(lines.front() == "# metrics:");
    std::size_t header = 0;
    while (header < lines.size() && lines[header].starts_with("#")) ++header;
    REQUIRE(header < lines.size());
    CHECK(lines[header] == "leg_id,L,P,E,a1_sq");
    CHECK(lines.size() - header - 1 == 16);
    CHECK(out.report.find("# efficiency: 0.75") != std::string::npos);
}

TEST_CASE("execute_run: json round trip and determinism") {
    auto cfg = stirling_config();
    cfg.format = OutputFormat::Json;
    cfg.samples_per_leg = 8;
    const auto out = execute_run(cfg);
    REQUIRE(out.exit_code == kExitOk);
    CHECK(execute_run(cfg).report == out.report);

    const auto doc = nlohmann::json::parse(out.report);
    const auto& m = doc.at("metrics");
    double work = 0.0, heat_in = 0.0;
    for (double w : m.at("per_leg_work")) work += w;
    for (double q : m.at("per_leg_heat")) if (q > 0.0) heat_in += q;
    const double eta = m.at("efficiency").get<double>();
    CHECK(std::abs(work / heat_in - eta) <= 1e-12);
    CHECK(eta == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(doc.at("samples").size() == 32);
    CHECK(doc.at("config").at("cycle") == "stirling");
    CHECK(doc.at("samples")[0].at("leg_id") == "1→2");
}

TEST_CASE("execute_run: error exits") {
    auto cfg = stirling_config();
    cfg.l3 = 2.0;
    auto out = execute_run(cfg);
    CHECK(out.exit_code == kExitParameter);
    CHECK(out.report.empty());
    CHECK(out.diagnostic.find("L3 > 2·L1") != std::string::npos);

    cfg = stirling_config();
    cfg.samples_per_leg = 1;
    CHECK(execute_run(cfg).exit_code == kExitParameter);

    // A threshold no quadrature can meet reports a verification failure but still emits the report.
    cfg = stirling_config();
    cfg.quad_tol = 1e-3;
    cfg.threshold = 1e-300;
    out = execute_run(cfg);
    CHECK(out.exit_code == kExitVerification);
    CHECK_FALSE(out.report.empty());
}

TEST_CASE("execute_verify") {
    VerifyConfig cfg;
    cfg.cycle = CycleType::Stirling;
    cfg.l1 = 1.0;
    cfg.l3 = 4.0;
    auto out = execute_verify(cfg);
    CHECK(out.exit_code == kExitOk);
    const auto doc = nlohmann::json::parse(out.report);
    CHECK(doc.at("pass") == true);
    CHECK(doc.at("cases").size() == 1);

    VerifyConfig sweep;
    sweep.sweep = 10;
    sweep.seed = 7;
    out = execute_verify(sweep);
    CHECK(out.exit_code == kExitOk);
    CHECK(nlohmann::json::parse(out.report).at("cases").size() == 20);
    CHECK(execute_verify(sweep).report == out.report);
    sweep.seed = 8;
    CHECK(execute_verify(sweep).report != out.report);

    VerifyConfig missing;
    CHECK(execute_verify(missing).exit_code == kExitParameter);
}

TEST_CASE("sweep_geometries stay in range") {
    for (const auto& [hot, cold] : sweep_geometries(500, 3)) {
        CHECK(hot >= 0.1);
        CHECK(cold <= 10.0 * (1 + 1e-15));
        CHECK(hot / cold < 0.5);
        CHECK(hot / cold > 0.0);
    }
}

TEST_CASE("deliver") {
    std::ostringstream out, err;
    Outcome ok{kExitOk, "data\n", ""};
    CHECK(deliver(ok, std::nullopt, out, err) == kExitOk);
    CHECK(out.str() == "data\n");

    CHECK(deliver(ok, std::string("/nonexistent-dir/sub/out.csv"), out, err) == kExitIo);
    CHECK(err.str().find("i/o error") != std::string::npos);
}
