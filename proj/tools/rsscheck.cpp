#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rss/errors.hpp"
#include "rss/io.hpp"
#include "rss/kinematics.hpp"
#include "rss/odd.hpp"
#include "rss/sim.hpp"
#include "rss/verify.hpp"

using nlohmann::json;

namespace {

json number_or_unbounded(double x) {
    if (std::isinf(x)) return json("unbounded");
    return json(x);
}

std::string one_decimal(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", x);
    return buf;
}

int cmd_dmin(const std::string& scenario_file, const std::string& format) {
    const auto scenario = rss::io::load_scenario(scenario_file);
    const auto r = rss::kinematics::d_min(scenario.params);
    if (format == "csv") {
        std::printf("d_min,d_prime,special_case,d_double_prime,d_triple_prime,t_equal\n");
        std::printf("%.10g,%.10g,%s,", r.d_min, r.d_prime,
                    r.special_case_applied ? "true" : "false");
        if (r.special_case_applied) {
            std::printf("%.10g,%.10g,%.10g\n", *r.d_double_prime, *r.d_triple_prime, *r.t_equal);
        } else {
            std::printf(",,\n");
        }
        return 0;
    }
    json out;
    out["d_min"] = r.d_min;
    out["d_prime"] = r.d_prime;
    out["special_case"] = r.special_case_applied;
    if (r.special_case_applied) {
        out["d_double_prime"] = *r.d_double_prime;
        out["d_triple_prime"] = *r.d_triple_prime;
        out["t_equal"] = *r.t_equal;
    }
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_table(const std::string& config_file, bool figure4, int grid,
              const std::string& format) {
    rss::odd::PartitionTable table;
    if (figure4) {
        table = rss::verify::reference_partition_table(grid);
    } else {
        if (config_file.empty()) throw rss::ConfigError("need --odd-config or --figure4");
        const auto spec = rss::io::load_table_spec(config_file);
        table = rss::odd::build_partition_table(spec.row_param, spec.row_bins, spec.col_param,
                                                spec.col_bins, spec.fixed, grid);
    }
    if (format == "json") {
        json cells = json::array();
        for (const auto& c : table.cells) {
            json cell;
            cell["row"] = {number_or_unbounded(c.row.lo), number_or_unbounded(c.row.hi)};
            cell["col"] = {number_or_unbounded(c.col.lo), number_or_unbounded(c.col.hi)};
            cell["d_min"] = c.d_min ? json(one_decimal(*c.d_min)) : json("no-safe-distance");
            cell["special_case"] = c.special_case;
            cells.push_back(std::move(cell));
        }
        json out;
        out["row_param"] = table.row_param;
        out["col_param"] = table.col_param;
        out["cells"] = std::move(cells);
        std::cout << out.dump() << "\n";
        return 0;
    }
    std::printf("row_lo,row_hi,col_lo,col_hi,d_min,special_case\n");
    for (const auto& c : table.cells) {
        std::printf("%.10g,%.10g,%.10g,%.10g,%s,%s\n", c.row.lo, c.row.hi, c.col.lo, c.col.hi,
                    c.d_min ? one_decimal(*c.d_min).c_str() : "no-safe-distance",
                    c.special_case ? "true" : "false");
    }
    return 0;
}

int cmd_simulate(const std::string& scenario_file, double gap, double dt) {
    if (!(dt > 0.0)) throw rss::ConfigError("dt must be > 0");
    const auto scenario = rss::io::load_scenario(scenario_file);
    const auto trace = rss::sim::simulate(scenario.params, gap, dt);
    std::printf("t,x_f,v_f,x_r,v_r,gap\n");
    for (const auto& s : trace.samples) {
        std::printf("%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", s.t, s.x_f, s.v_f, s.x_r, s.v_r,
                    s.gap);
    }
    std::fprintf(stderr, "min_gap=%.10g min_gap_time=%.10g collided=%s\n", trace.min_gap,
                 trace.min_gap_time, trace.collided ? "true" : "false");
    return 0;
}

int cmd_verify(std::uint64_t seed, int draws, int special_draws, double inject_error) {
    rss::verify::Options opt;
    opt.seed = seed;
    opt.draws = draws;
    opt.special_draws = special_draws;
    opt.dmin_error_factor = inject_error;
    bool all_passed = true;
    for (const auto& rep : rss::verify::run_all(opt)) {
        std::printf("%s: %s checked=%ld worst=%.6g%s%s\n", rep.name.c_str(),
                    rep.passed ? "PASS" : "FAIL", rep.checked, rep.worst,
                    rep.detail.empty() ? "" : " ", rep.detail.c_str());
        all_passed = all_passed && rep.passed;
    }
    return all_passed ? 0 : 1;
}

json belief_to_json(const rss::odd::BeliefState& b) {
    json out;
    for (const auto& [h, w] : b.weights) out[h] = w;
    return out;
}

int cmd_odd_run(const std::string& config_file, const std::string& log_file, int grid) {
    const auto config = rss::io::load_odd_config(config_file, grid);
    const auto events = rss::io::load_evidence_log(log_file);

    std::string state = config.mu_odds.front().id;
    rss::odd::BeliefState belief = config.prior;
    rss::odd::EvidenceRecord context;

    auto emit = [&](const json& t, const json& evidence,
                    const std::optional<std::string>& map_h) {
        json rec;
        rec["t"] = t;
        rec["evidence"] = evidence;
        rec["map_hypothesis"] = map_h ? json(*map_h) : json(nullptr);
        rec["posterior"] = belief_to_json(belief);
        rec["mu_odd"] = state;
        const rss::odd::MuOdd* m = config.find(state);
        if (m->posture == rss::odd::Posture::Defensive) {
            rec["behavior"] = m->behavior.value_or("stop");
            rec["d_min_worst"] = nullptr;
        } else {
            rec["d_min_worst"] =
                m->worst.d_min ? json(*m->worst.d_min) : json("no-safe-distance");
        }
        std::cout << rec.dump() << "\n";
    };

    emit(nullptr, json::object(), std::nullopt);
    for (const auto& ev : events) {
        rss::odd::EvidenceRecord record{{ev.key, ev.value}};
        const auto step = rss::odd::step_state_machine(state, belief, record, config);
        state = step.state;
        belief = step.belief;
        context.emplace_back(ev.key, ev.value);
        if (const auto target = rss::odd::preemptive_transition_check(context, config)) {
            state = *target;
        }
        emit(json(ev.t), json{{ev.key, ev.value.text}}, step.map_hypothesis);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safe following distance and micro-ODD state machine tool"};
    app.require_subcommand(1);

    std::string scenario_file, config_file, log_file;
    std::string format = "json";
    double gap = 0.0, dt = 1e-3, inject_error = 1.0;
    int grid = 9, draws = 10000, special_draws = 1000;
    std::uint64_t seed = 20190501;
    bool figure4 = false;

    auto* dmin = app.add_subcommand("dmin", "Minimum safe following distance breakdown");
    dmin->add_option("--scenario", scenario_file, "Scenario definition file")->required();
    dmin->add_option("--format", format, "json or csv");

    auto* table = app.add_subcommand("table", "Worst-case distance partition table");
    table->add_option("--odd-config", config_file, "Partition description file");
    table->add_flag("--figure4", figure4, "Built-in published 6x7 example layout");
    table->add_option("--grid", grid, "Grid refinement points per dimension");
    table->add_option("--format", format, "csv or json");

    auto* sim = app.add_subcommand("simulate", "Discrete-time braking simulation trace");
    sim->add_option("--scenario", scenario_file, "Scenario definition file")->required();
    sim->add_option("--gap", gap, "Initial gap, m")->required();
    sim->add_option("--dt", dt, "Time step, s");

    auto* verify = app.add_subcommand("verify", "Run the property-based verification suite");
    verify->add_option("--seed", seed, "Master seed");
    verify->add_option("--draws", draws, "Random scenario draws");
    verify->add_option("--special-draws", special_draws, "Special-case draws");
    verify->add_option("--inject-dmin-error", inject_error, "Self-test hook")
        ->group("");  // hidden

    auto* odd_run = app.add_subcommand("odd-run", "Replay an evidence log through the state machine");
    odd_run->add_option("--odd-config", config_file, "Micro-ODD configuration file")->required();
    odd_run->add_option("--evidence-log", log_file, "Evidence log (JSON lines)")->required();
    odd_run->add_option("--grid", grid, "Grid refinement points per dimension");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dmin->parsed()) return cmd_dmin(scenario_file, format);
        if (table->parsed()) return cmd_table(config_file, figure4, grid, format);
        if (sim->parsed()) return cmd_simulate(scenario_file, gap, dt);
        if (verify->parsed()) return cmd_verify(seed, draws, special_draws, inject_error);
        if (odd_run->parsed()) return cmd_odd_run(config_file, log_file, grid);
    } catch (const rss::NoSafeDistanceError& e) {
        std::cerr << "no-safe-distance: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
