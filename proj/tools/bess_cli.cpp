// bess: command-line front end for the planning toolkit.
//
// Exit codes: 0 success or pass, 2 input error, 3 gate rejection,
// 4 evaluated but failed.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "bess/commissioning.hpp"
#include "bess/connection_cost.hpp"
#include "bess/dispatch.hpp"
#include "bess/epc_workflow.hpp"
#include "bess/formats.hpp"
#include "bess/power_quality.hpp"
#include "bess/site_scoring.hpp"
#include "bess/text_io.hpp"

namespace fs = std::filesystem;
using namespace bess;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitGate = 3;
constexpr int kExitFailed = 4;

struct RunConfig {
    std::string out_dir = ".";
    double dkk_per_eur = kDefaultDkkPerEur;

    fs::path output(const std::string& file) const {
        fs::create_directories(out_dir);
        return fs::path(out_dir) / file;
    }
    void write(const std::string& file, const std::string& content) const {
        write_file_atomic(output(file), content);
    }
};

struct BatteryOptions {
    double power_mw = 1.0;
    double capacity_mwh = 1.0;
    double efficiency = 0.9;

    void add(CLI::App* cmd) {
        cmd->add_option("--power-mw", power_mw, "Rated power, MW")->capture_default_str();
        cmd->add_option("--capacity-mwh", capacity_mwh, "Usable energy, MWh")->capture_default_str();
        cmd->add_option("--rte", efficiency, "Round-trip efficiency (0, 1]")->capture_default_str();
    }
    BatterySpec spec() const { return BatterySpec(power_mw, capacity_mwh, efficiency); }
};

int cmd_score(const RunConfig& cfg, const std::string& file) {
    const auto report = scoring_report(rank_sites(parse_scorecards(read_text_file(file))));
    cfg.write("site_scores.md", report.to_markdown());
    cfg.write("site_scores.csv", report.to_csv());
    for (std::size_t i = 0; i < report.ranked.size(); ++i)
        fmt::print("{}. {} {}/{}\n", i + 1, report.ranked[i].site_name(), report.ranked[i].total(), kMaxTotal);
    fmt::print("recommended: {}\n", report.recommended);
    return kExitOk;
}

int cmd_fees(const RunConfig& cfg, double power_mw, double oversize, const std::string& tariff_file) {
    const auto tariff = parse_tariff(read_text_file(tariff_file));
    const auto rows = compare_categories(power_mw, tariff, default_voltage_map(), oversize);
    cfg.write("fees.csv", fee_table_csv(rows));
    cfg.write("fees.md", fee_table_markdown(rows, power_mw, DkkPerEur(cfg.dkk_per_eur)));
    for (const auto& r : rows) fmt::print("{:<7} {:>20}\n", to_string(r.category), r.fee.format());
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const BatteryOptions& b, const StrategyConfig& strategy,
                 const std::string& price_file, double interval_hours) {
    const auto battery = b.spec();
    const auto series = parse_price_series(read_text_file(price_file), interval_hours);
    const auto result = simulate_horizon(battery, series, strategy);
    cfg.write("revenue.md", revenue_report_markdown(result, battery, DkkPerEur(cfg.dkk_per_eur)));
    cfg.write("revenue.json", revenue_report_json(result, battery));
    cfg.write("dispatch_log.csv", dispatch_log_csv(result));
    for (auto p : kReserveProducts)
        fmt::print("{:<14} {:>20}\n", to_string(p), result.report.services[static_cast<std::size_t>(p)].format());
    fmt::print("{:<14} {:>20}\n", "spot export", result.report.export_revenue.format());
    fmt::print("{:<14} {:>20}\n", "spot import", (-result.report.import_cost).format());
    fmt::print("{:<14} {:>20}\n", "net", result.report.net.format());
    return kExitOk;
}

void print_status(const EpcProject& p) {
    fmt::print("project: {}\nphase: {}\n", p.name(), to_string(p.phase()));
    for (const auto& [kind, d] : p.deliverables())
        fmt::print("  {}{}{}\n", to_string(kind), d.timestamp.empty() ? "" : " [" + d.timestamp + "]",
                   d.reference.empty() ? "" : " " + d.reference);
    if (p.phase() != Phase::Handover) {
        std::vector<std::string> missing;
        for (auto k : gate_requirements(p.phase()))
            if (!p.has(k)) missing.emplace_back(to_string(k));
        fmt::print("next gate needs: {}\n", missing.empty() ? "nothing, ready to advance" : fmt::format("{}", fmt::join(missing, ", ")));
    }
}

int cmd_project_advance(const std::string& file) {
    auto project = load_project(file);
    if (project.phase() == Phase::Handover) throw InputError("project is already at Handover");
    const Phase from = project.phase();
    auto out = advance_phase(std::move(project));
    if (!out.advanced) {
        std::vector<std::string> names;
        for (auto k : out.missing) names.emplace_back(to_string(k));
        fmt::print(stderr, "cannot leave {}: missing {}\n", to_string(from), fmt::join(names, ", "));
        return kExitGate;
    }
    save_project(file, out.project);
    fmt::print("{} -> {}\n", to_string(from), to_string(out.project.phase()));
    return kExitOk;
}

int cmd_project_schedule(const RunConfig& cfg, const std::string& file, const std::optional<std::string>& params) {
    const auto project = load_project(file);
    const auto schedule = params ? parse_schedule_params(read_text_file(*params), project.schedule()) : project.schedule();
    const auto timeline = estimate_schedule(project, schedule);
    const auto csv = timeline.to_csv();
    cfg.write("timeline.csv", csv);
    for (const auto& s : timeline.phases)
        fmt::print("{:<14} {:>6g} {:>6g}  ({:g} months)\n", to_string(s.phase), s.start, s.end, s.end - s.start);
    fmt::print("total: {:g} months\n", timeline.total);
    return kExitOk;
}

struct SatOptions {
    std::string cycles;
    std::string telemetry;
    double floor = kDefaultEfficiencyFloor;
    double c_rate_tolerance = 0.1;
    double power_tolerance = 0.1;
    int min_cycles = kMinSatCycles;
    TelemetryThresholds thresholds;
};

int cmd_sat(const RunConfig& cfg, const BatteryOptions& b, const SatOptions& o) {
    const auto battery = b.spec();
    const auto log = parse_cycle_log(read_text_file(o.cycles), battery, o.power_tolerance);
    const auto telemetry = parse_telemetry(read_text_file(o.telemetry));
    double eta = 0.0;
    try {
        eta = round_trip_efficiency(log, o.min_cycles);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const auto report = sat_report(eta, check_c_rate(log, battery, o.c_rate_tolerance),
                                   validate_telemetry(telemetry, o.thresholds), o.floor, o.thresholds);
    cfg.write("sat_report.md", report.to_markdown());
    cfg.write("sat_report.json", report.to_json());
    fmt::print("round-trip efficiency: {:.4f} (floor {:.2f})\n", eta, o.floor);
    fmt::print("SAT: {}\n", report.overall ? "PASS" : "FAIL");
    return report.overall ? kExitOk : kExitFailed;
}

int cmd_pq(const RunConfig& cfg, const std::string& measurements_file, const std::string& limits_file) {
    const auto limits = parse_pq_limits(read_text_file(limits_file));
    const auto measurements = parse_pq_measurements(read_text_file(measurements_file));
    std::vector<PqVerdict> verdicts;
    for (const auto& m : measurements) verdicts.push_back(check(m, limits));
    ComplianceDossier d;
    try {
        d = dossier(std::move(verdicts));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    cfg.write("pq_dossier.md", d.to_markdown(limits));
    for (const auto& v : d.verdicts) {
        fmt::print("{}: {}\n", v.condition, v.overall ? "PASS" : "FAIL");
        for (const auto& note : v.mitigation_notes) fmt::print("  mitigation: {}\n", note);
    }
    fmt::print("dossier: {}\n", d.overall ? "PASS" : "FAIL");
    return d.overall ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Battery storage EPC planning toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--out", cfg.out_dir, "Output directory")->envname("BESS_OUT_DIR")->capture_default_str();
    app.add_option("--dkk-per-eur", cfg.dkk_per_eur, "Exchange rate, DKK per EUR")
        ->envname("BESS_DKK_PER_EUR")
        ->capture_default_str();

    std::function<int()> action;

    auto* score = app.add_subcommand("score", "Rank candidate sites from a scorecard file");
    std::string scorecards;
    score->add_option("scorecards", scorecards, "CSV: name,s1..s12")->required()->check(CLI::ExistingFile);
    score->callback([&] { action = [&] { return cmd_score(cfg, scorecards); }; });

    auto* fees = app.add_subcommand("fees", "Compare grid connection fees across categories");
    double fee_power = 1.0;
    double oversize = kDefaultOversizeFactor;
    std::string tariff_file;
    fees->add_option("--power-mw", fee_power, "Rated power, MW")->required();
    fees->add_option("--oversize", oversize, "Apparent power factor")->capture_default_str();
    fees->add_option("--tariff", tariff_file, "Tariff JSON")->required()->check(CLI::ExistingFile);
    fees->callback([&] { action = [&] { return cmd_fees(cfg, fee_power, oversize, tariff_file); }; });

    auto* simulate = app.add_subcommand("simulate", "Greedy dispatch over a price series");
    BatteryOptions sim_battery;
    StrategyConfig strategy;
    std::string price_file;
    double interval_hours = 1.0;
    sim_battery.add(simulate);
    simulate->add_option("--prices", price_file, "CSV: fcr_n,fcr_d_up,fcr_d_down,ffr,spot")
        ->required()
        ->check(CLI::ExistingFile);
    simulate->add_option("--interval-hours", interval_hours)->capture_default_str();
    simulate->add_option("--step-mw", strategy.step_mw)->capture_default_str();
    simulate->add_option("--backing-hours", strategy.backing_hours)->capture_default_str();
    simulate->add_option("--activation", strategy.activation_fraction)->capture_default_str();
    simulate->add_option("--initial-soc", strategy.initial_soc_fraction)->capture_default_str();
    simulate->add_option("--energy-value", strategy.energy_value, "EUR/MWh credited to stored energy")
        ->capture_default_str();
    simulate->callback(
        [&] { action = [&] { return cmd_simulate(cfg, sim_battery, strategy, price_file, interval_hours); }; });

    auto* project = app.add_subcommand("project", "EPC project state");
    project->require_subcommand(1);
    std::string project_file;

    auto* init = project->add_subcommand("init", "Create a project at Feasibility");
    std::string project_name;
    init->add_option("file", project_file)->required();
    init->add_option("--name", project_name)->required();
    init->callback([&] {
        action = [&] {
            if (fs::exists(project_file)) throw InputError(fmt::format("'{}' already exists", project_file));
            save_project(project_file, EpcProject(project_name));
            fmt::print("created {} at {}\n", project_name, to_string(Phase::Feasibility));
            return kExitOk;
        };
    });

    auto* record = project->add_subcommand("record", "Record a deliverable");
    std::string kind;
    std::string reference;
    std::string date;
    record->add_option("file", project_file)->required()->check(CLI::ExistingFile);
    record->add_option("--kind", kind, "e.g. BuildingPermit")->required();
    record->add_option("--reference", reference);
    record->add_option("--date", date);
    record->callback([&] {
        action = [&] {
            DeliverableKind k;
            try {
                k = parse_deliverable_kind(kind);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
            save_project(project_file, record_deliverable(load_project(project_file), {k, date, reference}));
            fmt::print("recorded {}\n", to_string(k));
            return kExitOk;
        };
    });

    auto* advance = project->add_subcommand("advance", "Pass the current phase gate");
    advance->add_option("file", project_file)->required()->check(CLI::ExistingFile);
    advance->callback([&] { action = [&] { return cmd_project_advance(project_file); }; });

    auto* status = project->add_subcommand("status", "Show phase and deliverables");
    status->add_option("file", project_file)->required()->check(CLI::ExistingFile);
    status->callback([&] {
        action = [&] {
            print_status(load_project(project_file));
            return kExitOk;
        };
    });

    auto* schedule = project->add_subcommand("schedule", "Estimate the phase timeline");
    std::optional<std::string> schedule_params;
    schedule->add_option("file", project_file)->required()->check(CLI::ExistingFile);
    schedule->add_option("--params", schedule_params, "JSON duration overrides, months")->check(CLI::ExistingFile);
    schedule->callback([&] { action = [&] { return cmd_project_schedule(cfg, project_file, schedule_params); }; });

    auto* sat = app.add_subcommand("sat", "Evaluate site acceptance test evidence");
    BatteryOptions sat_battery;
    SatOptions sat_opts;
    sat_battery.add(sat);
    sat->add_option("--cycles", sat_opts.cycles, "CSV: time_s,power_mw[,cycle]")->required()->check(CLI::ExistingFile);
    sat->add_option("--telemetry", sat_opts.telemetry, "CSV: quantity,value")->required()->check(CLI::ExistingFile);
    sat->add_option("--efficiency-floor", sat_opts.floor)->capture_default_str();
    sat->add_option("--c-rate-tolerance", sat_opts.c_rate_tolerance)->capture_default_str();
    sat->add_option("--min-cycles", sat_opts.min_cycles)->capture_default_str();
    sat->add_option("--max-temperature-error", sat_opts.thresholds.max_temperature_error_c)->capture_default_str();
    sat->add_option("--failover-limit-ms", sat_opts.thresholds.failover_limit_ms)->capture_default_str();
    sat->add_option("--max-cell-spread", sat_opts.thresholds.max_cell_spread_v)->capture_default_str();
    sat->callback([&] { action = [&] { return cmd_sat(cfg, sat_battery, sat_opts); }; });

    auto* pq = app.add_subcommand("pq", "Power-quality compliance dossier");
    std::string measurements_file;
    std::string limits_file;
    pq->add_option("--measurements", measurements_file)->required()->check(CLI::ExistingFile);
    pq->add_option("--limits", limits_file)->required()->check(CLI::ExistingFile);
    pq->callback([&] { action = [&] { return cmd_pq(cfg, measurements_file, limits_file); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        return action();
    } catch (const InputError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
    } catch (const std::invalid_argument& e) {
        fmt::print(stderr, "error: {}\n", e.what());
    } catch (const std::domain_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
    } catch (const fs::filesystem_error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
    }
    return kExitInput;
}
