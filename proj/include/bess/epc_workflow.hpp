#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bess {

enum class Phase { Feasibility, Permitting, Procurement, Construction, Commissioning, Handover };

inline constexpr std::array<Phase, 6> kPhases{Phase::Feasibility,  Phase::Permitting,    Phase::Procurement,
                                              Phase::Construction, Phase::Commissioning, Phase::Handover};

std::string_view to_string(Phase p);
Phase parse_phase(std::string_view text);

enum class DeliverableKind {
    SiteSelectionReport,
    BusinessCase,
    ConnectionOffer,
    BuildingPermit,
    FireCertificate,
    FatPassed,
    InstallationComplete,
    SatPassed,
    PrequalificationSubmitted,
};

inline constexpr std::array<DeliverableKind, 9> kDeliverableKinds{
    DeliverableKind::SiteSelectionReport, DeliverableKind::BusinessCase,     DeliverableKind::ConnectionOffer,
    DeliverableKind::BuildingPermit,      DeliverableKind::FireCertificate,  DeliverableKind::FatPassed,
    DeliverableKind::InstallationComplete, DeliverableKind::SatPassed,       DeliverableKind::PrequalificationSubmitted};

std::string_view to_string(DeliverableKind k);
DeliverableKind parse_deliverable_kind(std::string_view text);

struct Deliverable {
    DeliverableKind kind;
    std::string timestamp;
    std::string reference;

    bool operator==(const Deliverable&) const = default;
};

/// Deliverables that must be on record to leave `from`. Empty for Handover.
std::vector<DeliverableKind> gate_requirements(Phase from);

/// Durations in months.
struct ScheduleParams {
    double feasibility = 2.0;
    double grid_review = 12.0;
    double municipal_review = 6.0;
    double procurement = 3.0;
    double construction = 4.0;
    double commissioning = 2.0;

    bool operator==(const ScheduleParams&) const = default;
};

struct AdvanceOutcome;

struct GatePass {
    Phase from;
    Phase to;
};

class EpcProject {
public:
    explicit EpcProject(std::string name);

    const std::string& name() const { return name_; }
    Phase phase() const { return phase_; }
    const std::map<DeliverableKind, Deliverable>& deliverables() const { return deliverables_; }
    const std::vector<GatePass>& history() const { return history_; }
    const ScheduleParams& schedule() const { return schedule_; }
    bool has(DeliverableKind k) const { return deliverables_.contains(k); }

    void set_schedule(const ScheduleParams& p) { schedule_ = p; }

    /// Rebuilds a project from stored state; checks the history replays from
    /// Feasibility to `phase` one gate at a time.
    static EpcProject restore(std::string name, Phase phase, std::vector<Deliverable> deliverables,
                              std::vector<GatePass> history, ScheduleParams schedule);

private:
    friend EpcProject record_deliverable(EpcProject project, Deliverable deliverable);
    friend AdvanceOutcome advance_phase(EpcProject project);

    std::string name_;
    Phase phase_ = Phase::Feasibility;
    std::map<DeliverableKind, Deliverable> deliverables_;
    std::vector<GatePass> history_;
    ScheduleParams schedule_;
};

/// Stores the deliverable; a later record of the same kind replaces the earlier one.
EpcProject record_deliverable(EpcProject project, Deliverable deliverable);

struct AdvanceOutcome {
    EpcProject project;
    bool advanced = false;
    std::vector<DeliverableKind> missing;
};

/// Moves one phase forward if the gate is satisfied; otherwise returns the
/// project unchanged with every missing deliverable listed.
/// Throws std::logic_error at Handover.
AdvanceOutcome advance_phase(EpcProject project);

struct PhaseSpan {
    Phase phase;
    double start = 0.0;
    double end = 0.0;
};

struct Timeline {
    std::vector<PhaseSpan> phases;
    double total = 0.0;

    const PhaseSpan& span(Phase p) const;
    std::string to_csv() const;
};

/// Serial phases; Permitting lasts max(grid review, municipal review) since the
/// two reviews run in parallel.
Timeline estimate_schedule(const EpcProject& project, const ScheduleParams& params);
Timeline estimate_schedule(const EpcProject& project);

}  // namespace bess
