#pragma once

#include "sara/harness.hpp"
#include "sara/query_ast.hpp"
#include "sara/rng.hpp"
#include "sara/scenario.hpp"
#include "sara/selection.hpp"

#include <filesystem>
#include <string>

namespace sara::testing {

std::filesystem::path source_dir();
std::string read_text(const std::filesystem::path& path);
std::string ranking_query_text(); // the shipped .rq asset
sim::ScenarioConfig paper_default(); // the shipped scenario asset

/// Canonical text for a parsed query; parse(print(parse(q))) == parse(q).
std::string print_query(const sparql::Query& query);

/// Random graph over small typed pools: IRI-valued predicates stay
/// IRI-valued, numeric ones numeric, so ORDER BY columns are comparable.
kg::Graph random_graph(Rng& rng, std::size_t max_triples);

/// Random query in the subset grammar, 1..4 patterns, sometimes grouped
/// and aggregated, sometimes ordered; guaranteed well-formed.
sparql::Query random_query(Rng& rng);

/// Minimal world with a loaded AP and an empty one in range of a target
/// station; ap_busy holds `busy_count` stations including the target.
struct TwoApFixture {
    sim::ScenarioConfig config;
    sim::WorldState world;
    std::string target;
    std::string ap_busy;
    std::string ap_free;
};
TwoApFixture two_ap_fixture();

/// Three APs with distinct counts/bandwidths/gains/tx powers plus an IRI
/// tie, exercising every ranking key.
struct ThreeApFixture {
    sim::ScenarioConfig config;
    sim::WorldState world;
    std::string target;
};
ThreeApFixture three_ap_fixture();

/// A crowd packed on one WiFi AP with idle LTE and satellite APs in range.
struct CongestedFixture {
    sim::ScenarioConfig config;
    sim::WorldState world;
};
CongestedFixture congested_fixture(int station_count);

/// Direct ranking oracle computed from world state alone (count asc,
/// measured bandwidth desc, antenna gain desc, tx power desc, IRI asc);
/// never touches the knowledge base or the query engine.
std::vector<selection::CandidateRank> rank_from_world(const sim::WorldState& world,
                                                      const std::string& station,
                                                      const sim::ScenarioConfig& config);

} // namespace sara::testing
