#pragma once

#include "sara/graph.hpp"
#include "sara/rules.hpp"
#include "sara/world.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sara::selection {

/// Sort-key tuple of one ranked candidate, in ranking order: association
/// count ascending, then measured bandwidth, antenna gain and tx power
/// descending, final tie-break by AP IRI.
struct CandidateRank {
    std::string ap; // IRI
    std::int64_t count = 0;
    double bandwidth_mbps = 0.0;
    double antenna_gain_dbi = 0.0;
    double tx_power_dbm = 0.0;

    bool operator==(const CandidateRank&) const = default;
};

struct SelectionDecision {
    std::string station; // IRI
    std::string chosen_ap;
    sim::Strategy strategy = sim::Strategy::SSS;
    std::vector<CandidateRank> ranked_candidates; // chosen_ap first
    double elapsed_ms = 0.0;

    bool operator==(const SelectionDecision&) const = default;
};

/// Materializes the knowledge-base snapshot the ranking query runs on:
/// for every AP in range of the target, its type, stationsInRange link,
/// WLAN node (antenna gain, tx power), technology, a bandwidth node with
/// the measured value, and one association token per current association
/// plus one for the target's own measurement association. The target's
/// type and service descriptions are included so selection rules can
/// match. Throws RuntimeFault for an unknown station.
kg::Graph kb_snapshot(const sim::WorldState& world, const std::string& target,
                      const sim::ScenarioConfig& config);

/// Reads the ranking query text shipped as a .rq asset.
std::string load_query_asset(const std::filesystem::path& path);

/// The asset text names its target station; this rewrites the target
/// token so the same query serves any station.
std::string query_for_target(const std::string& query_text, const std::string& target_iri);

SelectionDecision select_sss(const sim::WorldState& world, const std::string& station,
                             const sim::ScenarioConfig& config);

SelectionDecision select_random(const sim::WorldState& world, const std::string& station,
                                const sim::ScenarioConfig& config, Rng& rng);

SelectionDecision select_omniscient(const sim::WorldState& world, const std::string& station,
                                    const sim::ScenarioConfig& config);

/// Full ranking pass: enumerate in-range APs, measure bandwidth, build the
/// snapshot, evaluate the ranking query over it, apply rule constraining
/// (falling back to the unconstrained ranking when the constrained set is
/// empty), and pick the first row. `query_text` is the shipped asset.
SelectionDecision select_sara(const sim::WorldState& world, const std::string& station,
                              const sim::ScenarioConfig& config, const std::string& query_text,
                              const std::vector<rules::Rule>& rule_set);

/// Re-associates the station onto the decided AP. Throws RuntimeFault when
/// the decision is stale (AP no longer in range); associations unchanged.
sim::WorldState apply_decision(const sim::WorldState& world, const SelectionDecision& decision,
                               const sim::ScenarioConfig& config);

} // namespace sara::selection
