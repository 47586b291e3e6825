#pragma once

#include "sara/selection.hpp"
#include "sara/world.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace sara::harness {

enum class EventKind { Tick, SelectionExecuted };

/// One per (tick, station); the event marks ticks on which that station
/// executed its one-shot selection.
struct MetricsRecord {
    double time_s = 0.0;
    std::string station;
    std::string ap;         // empty while unassociated
    std::string technology; // empty while unassociated
    double throughput_mbps = 0.0;
    sim::Strategy strategy = sim::Strategy::SSS;
    EventKind event = EventKind::Tick;

    bool operator==(const MetricsRecord&) const = default;
};

struct StationGain {
    std::string station;
    sim::Strategy strategy = sim::Strategy::SSS;
    bool executed = false;        // ran a one-shot selection
    double selection_time_s = 0;  // actual, or the matched window split
    double mean_before_mbps = 0;
    double mean_after_mbps = 0;
    double gain_percent = 0;

    bool operator==(const StationGain&) const = default;
};

struct GainReport {
    std::vector<StationGain> rows; // ordered by station IRI
    double median_gain_executed = 0.0;
    double fraction_executed_ge_200 = 0.0; // share of executing stations with gain >= 200%
    double median_gain_default = 0.0;      // stations that never executed a selection

    bool operator==(const GainReport&) const = default;
};

struct DecisionRecord {
    double time_s = 0.0;
    std::string station;
    sim::Strategy strategy = sim::Strategy::SSS;
    std::string previous_ap;
    std::string chosen_ap;
    std::size_t candidate_count = 0;
    double elapsed_ms = 0.0; // in-memory only; not exported (not reproducible)

    bool operator==(const DecisionRecord&) const = default;
};

struct OverheadRow {
    int station_count = 0;
    int repetition = 0;
    std::size_t kb_triple_count = 0;
    double elapsed_ms = 0.0;
};

struct OverheadReport {
    std::vector<OverheadRow> rows;
};

/// Runtime assets a run needs beside the scenario: the ranking query text
/// and the parsed selection rules (empty when rules are disabled).
struct RunAssets {
    std::string query_text;
    std::vector<rules::Rule> rule_set;
};

struct RunResult {
    std::vector<MetricsRecord> records;
    GainReport gains;
    std::vector<DecisionRecord> decisions;
    double settle_complete_s = -1.0; // first tick with every station settled
};

/// Simulates the full scenario: per-tick throughput logging for every
/// station, one-shot strategy executions at seeded times shortly after the
/// whole fleet settles, and the before/after gain report.
RunResult run_scenario(const sim::ScenarioConfig& config, const RunAssets& assets);

/// Windowed gain: 100 * mean(throughput in (selection_time, end]) /
/// mean(throughput in [window_start, selection_time)). Throws RuntimeFault
/// on an empty window or a zero baseline.
double compute_gain(const std::vector<MetricsRecord>& records, const std::string& station,
                    double selection_time_s, double window_start_s);

/// Times complete selection passes (scan, measure, snapshot, query,
/// choose) on settled worlds of the given sizes.
OverheadReport bench_overhead(const sim::ScenarioConfig& base_config, const std::vector<int>& sizes,
                              int repetitions, const RunAssets& assets);

void export_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path);
void export_csv(const GainReport& report, const std::filesystem::path& path);
void export_csv(const std::vector<DecisionRecord>& decisions, const std::filesystem::path& path);
void export_csv(const OverheadReport& report, const std::filesystem::path& path);

std::string records_csv(const std::vector<MetricsRecord>& records);
std::string gains_csv(const GainReport& report);
std::string decisions_csv(const std::vector<DecisionRecord>& decisions);
std::string overhead_csv(const OverheadReport& report);

/// Parsers for the exported CSVs (round-trip checks and recomputation).
std::vector<MetricsRecord> parse_records_csv(const std::string& text);

std::string to_string(EventKind e);

} // namespace sara::harness
