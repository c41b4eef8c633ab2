#include "bess/epc_workflow.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace bess {

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::Feasibility: return "Feasibility";
        case Phase::Permitting: return "Permitting";
        case Phase::Procurement: return "Procurement";
        case Phase::Construction: return "Construction";
        case Phase::Commissioning: return "Commissioning";
        case Phase::Handover: return "Handover";
    }
    return "?";
}

Phase parse_phase(std::string_view text) {
    for (auto p : kPhases)
        if (text == to_string(p)) return p;
    throw std::invalid_argument(fmt::format("unknown phase '{}'", text));
}

std::string_view to_string(DeliverableKind k) {
    switch (k) {
        case DeliverableKind::SiteSelectionReport: return "SiteSelectionReport";
        case DeliverableKind::BusinessCase: return "BusinessCase";
        case DeliverableKind::ConnectionOffer: return "ConnectionOffer";
        case DeliverableKind::BuildingPermit: return "BuildingPermit";
        case DeliverableKind::FireCertificate: return "FireCertificate";
        case DeliverableKind::FatPassed: return "FatPassed";
        case DeliverableKind::InstallationComplete: return "InstallationComplete";
        case DeliverableKind::SatPassed: return "SatPassed";
        case DeliverableKind::PrequalificationSubmitted: return "PrequalificationSubmitted";
    }
    return "?";
}

DeliverableKind parse_deliverable_kind(std::string_view text) {
    for (auto k : kDeliverableKinds)
        if (text == to_string(k)) return k;
    throw std::invalid_argument(fmt::format("unknown deliverable kind '{}'", text));
}

std::vector<DeliverableKind> gate_requirements(Phase from) {
    using K = DeliverableKind;
    switch (from) {
        case Phase::Feasibility: return {K::SiteSelectionReport, K::BusinessCase};
        case Phase::Permitting: return {K::ConnectionOffer, K::BuildingPermit, K::FireCertificate};
        case Phase::Procurement: return {K::FatPassed};
        case Phase::Construction: return {K::InstallationComplete};
        case Phase::Commissioning: return {K::SatPassed, K::PrequalificationSubmitted};
        case Phase::Handover: return {};
    }
    return {};
}

namespace {

Phase next_phase(Phase p) { return static_cast<Phase>(static_cast<int>(p) + 1); }

void check_duration(double months, std::string_view name) {
    if (!std::isfinite(months) || months < 0.0)
        throw std::invalid_argument(fmt::format("duration '{}' must be >= 0 months, got {}", name, months));
}

}  // namespace

EpcProject::EpcProject(std::string name) : name_(std::move(name)) {
    if (name_.empty()) throw std::invalid_argument("project name must not be empty");
}

EpcProject EpcProject::restore(std::string name, Phase phase, std::vector<Deliverable> deliverables,
                               std::vector<GatePass> history, ScheduleParams schedule) {
    EpcProject p(std::move(name));
    for (auto& d : deliverables) p.deliverables_[d.kind] = std::move(d);
    Phase at = Phase::Feasibility;
    for (const auto& g : history) {
        if (g.from != at || g.to != next_phase(at))
            throw std::invalid_argument(fmt::format("gate history jumps from {} to {} while at {}", to_string(g.from),
                                                    to_string(g.to), to_string(at)));
        at = g.to;
    }
    if (at != phase)
        throw std::invalid_argument(fmt::format("gate history ends at {} but phase is {}", to_string(at),
                                                to_string(phase)));
    p.phase_ = phase;
    p.history_ = std::move(history);
    p.schedule_ = schedule;
    return p;
}

EpcProject record_deliverable(EpcProject project, Deliverable deliverable) {
    project.deliverables_[deliverable.kind] = std::move(deliverable);
    return project;
}

AdvanceOutcome advance_phase(EpcProject project) {
    if (project.phase_ == Phase::Handover) throw std::logic_error("project is already at Handover");
    std::vector<DeliverableKind> missing;
    for (auto k : gate_requirements(project.phase_))
        if (!project.has(k)) missing.push_back(k);
    if (!missing.empty()) return {std::move(project), false, std::move(missing)};

    const Phase to = next_phase(project.phase_);
    project.history_.push_back({project.phase_, to});
    project.phase_ = to;
    return {std::move(project), true, {}};
}

const PhaseSpan& Timeline::span(Phase p) const {
    auto it = std::find_if(phases.begin(), phases.end(), [p](const PhaseSpan& s) { return s.phase == p; });
    if (it == phases.end()) throw std::out_of_range("phase not in timeline");
    return *it;
}

std::string Timeline::to_csv() const {
    std::string out = "phase,start_month,end_month\n";
    for (const auto& s : phases) out += fmt::format("{},{},{}\n", to_string(s.phase), s.start, s.end);
    return out;
}

Timeline estimate_schedule(const EpcProject&, const ScheduleParams& params) {
    check_duration(params.feasibility, "feasibility");
    check_duration(params.grid_review, "grid_review");
    check_duration(params.municipal_review, "municipal_review");
    check_duration(params.procurement, "procurement");
    check_duration(params.construction, "construction");
    check_duration(params.commissioning, "commissioning");

    const std::array<double, 5> durations{params.feasibility,
                                          std::max(params.grid_review, params.municipal_review),
                                          params.procurement, params.construction, params.commissioning};
    Timeline t;
    double at = 0.0;
    for (std::size_t i = 0; i < durations.size(); ++i) {
        t.phases.push_back({kPhases[i], at, at + durations[i]});
        at += durations[i];
    }
    t.phases.push_back({Phase::Handover, at, at});
    t.total = at;
    return t;
}

Timeline estimate_schedule(const EpcProject& project) { return estimate_schedule(project, project.schedule()); }

}  // namespace bess
