#include "bess/formats.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>
#include <json.hpp>
#include <map>

namespace bess {

namespace {

using nlohmann::json;

json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw InputError(fmt::format("{}: {}", what, e.what()));
    }
}

double json_number(const json& j, std::string_view what) {
    if (!j.is_number()) throw InputError(fmt::format("{} must be a number", what));
    return j.get<double>();
}

std::string json_string(const json& j, std::string_view what) {
    if (!j.is_string()) throw InputError(fmt::format("{} must be a string", what));
    return j.get<std::string>();
}

}  // namespace

std::vector<ScoreCard> parse_scorecards(std::string_view text) {
    std::vector<ScoreCard> cards;
    for (const auto& line : content_lines(text)) {
        auto fields = split_fields(line.text);
        if (fields.size() != 1 + kCriteriaCount)
            throw InputError(fmt::format("expected site name and {} scores, got {} fields", kCriteriaCount,
                                         fields.size()),
                             line.number);
        if (fields[0].empty()) throw InputError("empty site name", line.number);
        std::vector<int> scores;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            int s = parse_integer(fields[i], line.number, "score");
            if (s < 0 || s > kMaxScore)
                throw InputError(fmt::format("score {} for '{}' outside 0..{}", s, canonical_criteria()[i - 1].name,
                                             kMaxScore),
                                 line.number);
            scores.push_back(s);
        }
        for (const auto& c : cards)
            if (c.site_name() == fields[0])
                throw InputError(fmt::format("duplicate site name '{}'", fields[0]), line.number);
        cards.push_back(score_site(fields[0], scores));
    }
    if (cards.empty()) throw InputError("no sites");
    return cards;
}

TariffSchedule parse_tariff(std::string_view text) {
    const json j = parse_json(text, "tariff");
    if (!j.is_object()) throw InputError("tariff must be a JSON object");
    TariffSchedule tariff(j.contains("effective_date") ? json_string(j["effective_date"], "effective_date") : "");
    if (!j.contains("rates") || !j["rates"].is_object()) throw InputError("tariff needs a 'rates' object");
    for (const auto& [name, entry] : j["rates"].items()) {
        ConnectionCategory category;
        try {
            category = parse_connection_category(name);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        if (!entry.is_object() || !entry.contains("rate") || !entry.contains("unit"))
            throw InputError(fmt::format("rate for {} needs 'rate' and 'unit'", name));
        const double rate = json_number(entry["rate"], name + ".rate");
        if (rate < 0.0) throw InputError(fmt::format("negative rate for {}", name));
        const std::string unit = json_string(entry["unit"], name + ".unit");
        const auto slash = unit.find('/');
        if (slash == std::string::npos) throw InputError(fmt::format("unit '{}' for {} is not CUR/MVA or CUR/A", unit, name));
        Currency currency;
        try {
            currency = parse_currency(unit.substr(0, slash));
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        const std::string basis = unit.substr(slash + 1);
        RateBasis rb;
        if (basis == "MVA")
            rb = RateBasis::PerMva;
        else if (basis == "A")
            rb = RateBasis::PerAmpere;
        else
            throw InputError(fmt::format("unit '{}' for {} is not CUR/MVA or CUR/A", unit, name));
        tariff.set(category, {Money::from_decimal(rate, currency), rb});
    }
    try {
        tariff.require_complete();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return tariff;
}

PriceSeries parse_price_series(std::string_view text, double interval_hours) {
    static constexpr std::array<std::string_view, 5> kColumns{"fcr_n", "fcr_d_up", "fcr_d_down", "ffr", "spot"};
    std::vector<IntervalPrices> prices;
    bool first = true;
    for (const auto& line : content_lines(text)) {
        auto fields = split_fields(line.text);
        if (first && !looks_numeric(fields[0])) {
            first = false;
            if (fields.size() != kColumns.size() || !std::equal(kColumns.begin(), kColumns.end(), fields.begin()))
                throw InputError("price header must be fcr_n,fcr_d_up,fcr_d_down,ffr,spot", line.number);
            continue;
        }
        first = false;
        if (fields.size() != kColumns.size())
            throw InputError(fmt::format("expected 5 price columns, got {}", fields.size()), line.number);
        IntervalPrices p;
        p.fcr_n = parse_number(fields[0], line.number, "fcr_n price");
        p.fcr_d_up = parse_number(fields[1], line.number, "fcr_d_up price");
        p.fcr_d_down = parse_number(fields[2], line.number, "fcr_d_down price");
        p.ffr = parse_number(fields[3], line.number, "ffr price");
        p.spot = parse_number(fields[4], line.number, "spot price");
        prices.push_back(p);
    }
    if (prices.empty()) throw InputError("price series is empty");
    try {
        return PriceSeries(std::move(prices), interval_hours);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

PqLimits parse_pq_limits(std::string_view text) {
    const json j = parse_json(text, "limits");
    if (!j.is_object()) throw InputError("limits must be a JSON object");
    PqLimits limits;
    for (auto m : kPqMetrics) {
        const std::string k(key(m));
        if (!j.contains(k)) throw InputError(fmt::format("limits file has no '{}'", k));
        limits[m] = json_number(j[k], k);
        if (limits[m] < 0.0) throw InputError(fmt::format("limit '{}' must be >= 0", k));
    }
    for (const auto& [k, v] : j.items()) {
        bool known = std::any_of(kPqMetrics.begin(), kPqMetrics.end(), [&](PqMetric m) { return key(m) == k; });
        if (!known) throw InputError(fmt::format("unknown limit '{}'", k));
    }
    return limits;
}

std::vector<PqMeasurement> parse_pq_measurements(std::string_view text) {
    auto lines = content_lines(text);
    if (lines.empty()) throw InputError("measurement file is empty");
    const auto header = split_fields(lines.front().text);
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
    if (!column.contains("condition")) throw InputError("header lacks 'condition'", lines.front().number);
    for (auto m : kPqMetrics)
        if (!column.contains(std::string(key(m))))
            throw InputError(fmt::format("header lacks '{}'", key(m)), lines.front().number);

    std::vector<PqMeasurement> out;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        auto fields = split_fields(line.text);
        if (fields.size() != header.size())
            throw InputError(fmt::format("expected {} fields, got {}", header.size(), fields.size()), line.number);
        PqMeasurement m;
        m.condition = fields[column["condition"]];
        for (auto metric : kPqMetrics) {
            double v = parse_number(fields[column[std::string(key(metric))]], line.number, key(metric));
            if (v < 0.0) throw InputError(fmt::format("{} must be >= 0", key(metric)), line.number);
            m[metric] = v;
        }
        out.push_back(std::move(m));
    }
    if (out.empty()) throw InputError("measurement file has no rows");
    return out;
}

CycleLog parse_cycle_log(std::string_view text, const BatterySpec& battery, double power_tolerance) {
    std::vector<CycleSample> samples;
    bool first = true;
    std::size_t columns = 0;
    for (const auto& line : content_lines(text)) {
        auto fields = split_fields(line.text);
        if (first && !looks_numeric(fields[0])) {
            first = false;
            continue;
        }
        first = false;
        if (fields.size() != 2 && fields.size() != 3)
            throw InputError(fmt::format("expected time_s,power_mw[,cycle], got {} fields", fields.size()), line.number);
        if (columns == 0) columns = fields.size();
        if (fields.size() != columns) throw InputError("inconsistent column count", line.number);
        CycleSample s;
        s.time_s = parse_number(fields[0], line.number, "time_s");
        s.power_mw = parse_number(fields[1], line.number, "power_mw");
        if (fields.size() == 3) {
            s.cycle = parse_integer(fields[2], line.number, "cycle");
            if (s.cycle < 0) throw InputError("cycle must be >= 0", line.number);
        }
        if (!samples.empty() && !(s.time_s > samples.back().time_s))
            throw InputError("timestamps must be strictly increasing", line.number);
        samples.push_back(s);
    }
    if (samples.empty()) throw InputError("cycle log is empty");
    try {
        return CycleLog(std::move(samples), battery, power_tolerance);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

TelemetrySnapshot parse_telemetry(std::string_view text) {
    TelemetrySnapshot t;
    bool failover_seen = false;
    bool first = true;
    for (const auto& line : content_lines(text)) {
        auto fields = split_fields(line.text);
        if (fields.size() != 2) throw InputError("expected quantity,value", line.number);
        if (first && fields[0] == "quantity") {
            first = false;
            continue;
        }
        first = false;
        const double v = parse_number(fields[1], line.number, fields[0]);
        if (fields[0] == "cell_voltage_v") {
            t.cell_voltages_v.push_back(v);
        } else if (fields[0] == "temperature_error_c") {
            t.temperature_errors_c.push_back(v);
        } else if (fields[0] == "failover_ms") {
            if (failover_seen) throw InputError("failover_ms given twice", line.number);
            if (v < 0.0) throw InputError("failover_ms must be >= 0", line.number);
            t.failover_ms = v;
            failover_seen = true;
        } else {
            throw InputError(fmt::format("unknown quantity '{}'", fields[0]), line.number);
        }
    }
    if (t.cell_voltages_v.empty()) throw InputError("telemetry has no cell_voltage_v rows");
    if (!failover_seen) throw InputError("telemetry has no failover_ms row");
    return t;
}

namespace {

ScheduleParams schedule_from_json(const json& j, ScheduleParams base) {
    if (!j.is_object()) throw InputError("schedule must be a JSON object");
    const std::array<std::pair<const char*, double*>, 6> fields{{{"feasibility", &base.feasibility},
                                                                 {"grid_review", &base.grid_review},
                                                                 {"municipal_review", &base.municipal_review},
                                                                 {"procurement", &base.procurement},
                                                                 {"construction", &base.construction},
                                                                 {"commissioning", &base.commissioning}}};
    for (const auto& [k, v] : j.items()) {
        auto it = std::find_if(fields.begin(), fields.end(), [&](const auto& f) { return k == f.first; });
        if (it == fields.end()) throw InputError(fmt::format("unknown schedule parameter '{}'", k));
        *it->second = json_number(v, k);
        if (*it->second < 0.0) throw InputError(fmt::format("schedule parameter '{}' must be >= 0", k));
    }
    return base;
}

}  // namespace

std::string serialize_project(const EpcProject& project) {
    nlohmann::ordered_json j;
    j["name"] = project.name();
    j["phase"] = std::string(to_string(project.phase()));
    j["deliverables"] = nlohmann::ordered_json::array();
    for (const auto& [kind, d] : project.deliverables()) {
        nlohmann::ordered_json e;
        e["kind"] = std::string(to_string(kind));
        e["timestamp"] = d.timestamp;
        e["reference"] = d.reference;
        j["deliverables"].push_back(e);
    }
    j["history"] = nlohmann::ordered_json::array();
    for (const auto& g : project.history())
        j["history"].push_back({{"from", std::string(to_string(g.from))}, {"to", std::string(to_string(g.to))}});
    nlohmann::ordered_json sched;
    const auto& s = project.schedule();
    sched["feasibility"] = s.feasibility;
    sched["grid_review"] = s.grid_review;
    sched["municipal_review"] = s.municipal_review;
    sched["procurement"] = s.procurement;
    sched["construction"] = s.construction;
    sched["commissioning"] = s.commissioning;
    j["schedule_months"] = sched;
    return j.dump(2) + "\n";
}

EpcProject parse_project(std::string_view text) {
    const json j = parse_json(text, "project");
    try {
        if (!j.is_object()) throw InputError("project must be a JSON object");
        std::vector<Deliverable> deliverables;
        for (const auto& e : j.at("deliverables"))
            deliverables.push_back({parse_deliverable_kind(json_string(e.at("kind"), "kind")),
                                    json_string(e.at("timestamp"), "timestamp"),
                                    json_string(e.at("reference"), "reference")});
        std::vector<GatePass> history;
        for (const auto& g : j.at("history"))
            history.push_back({parse_phase(json_string(g.at("from"), "from")), parse_phase(json_string(g.at("to"), "to"))});
        ScheduleParams schedule = j.contains("schedule_months") ? schedule_from_json(j["schedule_months"], {}) : ScheduleParams{};
        return EpcProject::restore(json_string(j.at("name"), "name"), parse_phase(json_string(j.at("phase"), "phase")),
                                   std::move(deliverables), std::move(history), schedule);
    } catch (const json::exception& e) {
        throw InputError(fmt::format("project: {}", e.what()));
    } catch (const std::invalid_argument& e) {
        throw InputError(fmt::format("project: {}", e.what()));
    }
}

EpcProject load_project(const std::filesystem::path& path) { return parse_project(read_text_file(path)); }

void save_project(const std::filesystem::path& path, const EpcProject& project) {
    write_file_atomic(path, serialize_project(project));
}

ScheduleParams parse_schedule_params(std::string_view json_text, ScheduleParams base) {
    return schedule_from_json(parse_json(json_text, "schedule"), base);
}

}  // namespace bess
