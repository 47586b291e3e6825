#include "sara/harness.hpp"

#include "sara/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace sara::harness {

namespace {

/// Shortest round-trip form; reparsing yields the identical double, which
/// keeps gain recomputation from CSVs exact.
std::string fmt(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

double median(std::vector<double> v) {
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw RuntimeFault("cannot write file: " + path.string());
    out << content;
    if (!out)
        throw RuntimeFault("write failed: " + path.string());
}

} // namespace

std::string to_string(EventKind e) {
    return e == EventKind::Tick ? "tick" : "selection_executed";
}

RunResult run_scenario(const sim::ScenarioConfig& config, const RunAssets& assets) {
    RunResult result;
    sim::WorldState world = sim::init_world(config);

    // station order for logging and execution: by IRI, so records are
    // strictly ordered by (time, station)
    std::vector<std::size_t> order(world.stations.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return world.stations[a].id < world.stations[b].id;
    });

    Rng selection_times_rng = Rng(config.seed).stream("selection-times");
    Rng random_strategy_rng = Rng(config.seed).stream("random-strategy");
    std::map<std::string, double> selection_time; // station IRI -> tick time
    std::map<std::string, double> executed_at;

    const auto ticks = static_cast<std::int64_t>(std::llround(config.duration_s / config.tick_s));
    for (std::int64_t t = 1; t <= ticks; ++t) {
        world = sim::step(world, config);
        const double now = world.clock_s;

        if (result.settle_complete_s < 0 && !world.stations.empty() && sim::all_settled(world)) {
            result.settle_complete_s = now;
            // draw execution ticks for the designated stations
            const double lo = now + config.selection.start_offset_s;
            const double hi = lo + config.selection.spread_s;
            const auto lo_tick = static_cast<std::int64_t>(std::ceil(lo / config.tick_s));
            const auto hi_tick = std::max(lo_tick, static_cast<std::int64_t>(std::floor(hi / config.tick_s)));
            for (std::size_t idx : order) {
                const sim::StationState& sta = world.stations[idx];
                if (sta.strategy == sim::Strategy::SSS || sta.selection_done)
                    continue;
                const auto tick_at = selection_times_rng.uniform_int(lo_tick, hi_tick);
                selection_time[sta.id] = static_cast<double>(tick_at) * config.tick_s;
            }
        }

        // one-shot executions due this tick
        for (std::size_t idx : order) {
            sim::StationState& sta = world.stations[idx];
            auto due = selection_time.find(sta.id);
            if (due == selection_time.end() || sta.selection_done || due->second != now)
                continue;
            const std::string previous = sta.associated_ap.value_or("");
            selection::SelectionDecision decision;
            switch (sta.strategy) {
            case sim::Strategy::SARA:
                decision = selection::select_sara(world, sta.id, config, assets.query_text, assets.rule_set);
                break;
            case sim::Strategy::Random:
                decision = selection::select_random(world, sta.id, config, random_strategy_rng);
                break;
            case sim::Strategy::Omniscient:
                decision = selection::select_omniscient(world, sta.id, config);
                break;
            case sim::Strategy::SSS:
                decision = selection::select_sss(world, sta.id, config);
                break;
            }
            world = selection::apply_decision(world, decision, config);
            world.stations[idx].selection_done = true;
            executed_at[sta.id] = now;
            result.decisions.push_back({now, sta.id, sta.strategy, previous, decision.chosen_ap,
                                        decision.ranked_candidates.size(), decision.elapsed_ms});
        }

        for (std::size_t idx : order) {
            const sim::StationState& sta = world.stations[idx];
            MetricsRecord rec;
            rec.time_s = now;
            rec.station = sta.id;
            if (sta.associated_ap) {
                rec.ap = *sta.associated_ap;
                rec.technology = sim::to_string(world.ap(*sta.associated_ap).technology);
            }
            rec.throughput_mbps = sim::station_throughput(world, sta, config);
            rec.strategy = sta.strategy;
            rec.event = executed_at.contains(sta.id) && executed_at.at(sta.id) == now
                            ? EventKind::SelectionExecuted
                            : EventKind::Tick;
            result.records.push_back(std::move(rec));
        }
    }

    // gain report; stations without a selection get a matched window drawn
    // over the same post-settle span selections may use
    if (result.settle_complete_s >= 0) {
        Rng matched_rng = Rng(config.seed).stream("matched-windows");
        const double lo = result.settle_complete_s + config.selection.start_offset_s;
        const double hi = std::max(lo, config.duration_s - 100.0);
        const auto lo_tick = static_cast<std::int64_t>(std::ceil(lo / config.tick_s));
        const auto hi_tick = std::max(lo_tick, static_cast<std::int64_t>(std::floor(hi / config.tick_s)));
        for (std::size_t idx : order) {
            const sim::StationState& sta = world.stations[idx];
            StationGain gain;
            gain.station = sta.id;
            gain.strategy = sta.strategy;
            gain.executed = executed_at.contains(sta.id);
            gain.selection_time_s = gain.executed
                                        ? executed_at.at(sta.id)
                                        : static_cast<double>(matched_rng.uniform_int(lo_tick, hi_tick)) *
                                              config.tick_s;
            double before_sum = 0, after_sum = 0;
            std::size_t before_n = 0, after_n = 0;
            for (const MetricsRecord& rec : result.records) {
                if (rec.station != sta.id)
                    continue;
                if (rec.time_s >= result.settle_complete_s && rec.time_s < gain.selection_time_s) {
                    before_sum += rec.throughput_mbps;
                    ++before_n;
                } else if (rec.time_s > gain.selection_time_s) {
                    after_sum += rec.throughput_mbps;
                    ++after_n;
                }
            }
            if (before_n == 0 || after_n == 0 || before_sum <= 0.0)
                continue; // degenerate window; station omitted from the report
            gain.mean_before_mbps = before_sum / static_cast<double>(before_n);
            gain.mean_after_mbps = after_sum / static_cast<double>(after_n);
            gain.gain_percent = 100.0 * gain.mean_after_mbps / gain.mean_before_mbps;
            result.gains.rows.push_back(std::move(gain));
        }

        std::vector<double> executed_gains, default_gains;
        for (const StationGain& g : result.gains.rows)
            (g.executed ? executed_gains : default_gains).push_back(g.gain_percent);
        result.gains.median_gain_executed = median(executed_gains);
        result.gains.median_gain_default = median(default_gains);
        if (!executed_gains.empty())
            result.gains.fraction_executed_ge_200 =
                static_cast<double>(std::count_if(executed_gains.begin(), executed_gains.end(),
                                                  [](double g) { return g >= 200.0; })) /
                static_cast<double>(executed_gains.size());
    }
    return result;
}

double compute_gain(const std::vector<MetricsRecord>& records, const std::string& station,
                    double selection_time_s, double window_start_s) {
    double before_sum = 0, after_sum = 0;
    std::size_t before_n = 0, after_n = 0;
    for (const MetricsRecord& rec : records) {
        if (rec.station != station)
            continue;
        if (rec.time_s >= window_start_s && rec.time_s < selection_time_s) {
            before_sum += rec.throughput_mbps;
            ++before_n;
        } else if (rec.time_s > selection_time_s) {
            after_sum += rec.throughput_mbps;
            ++after_n;
        }
    }
    if (before_n == 0)
        throw RuntimeFault("empty before-window for " + station);
    if (after_n == 0)
        throw RuntimeFault("empty after-window for " + station);
    const double before = before_sum / static_cast<double>(before_n);
    const double after = after_sum / static_cast<double>(after_n);
    if (before <= 0.0)
        throw RuntimeFault("zero baseline for " + station);
    return 100.0 * after / before;
}

OverheadReport bench_overhead(const sim::ScenarioConfig& base_config, const std::vector<int>& sizes,
                              int repetitions, const RunAssets& assets) {
    if (sizes.empty())
        throw ValidationError("bench: sizes must be non-empty");
    OverheadReport report;
    for (int n : sizes) {
        sim::ScenarioConfig config = base_config;
        config.station_count = n;
        config.selection.station_count = 0;
        sim::WorldState world = sim::init_world(config);

        // settle the whole fleet inside the rectangle, then one step to
        // re-run association upkeep on the new positions
        Rng place = Rng(config.seed).stream("bench-placement");
        const sim::Rect& rect = config.incident.settle_rect;
        for (sim::StationState& sta : world.stations) {
            sta.position = {place.uniform(rect.min.x, rect.max.x), place.uniform(rect.min.y, rect.max.y)};
            sta.phase = sim::Phase::Settled;
        }
        world = sim::step(world, config);

        Rng pick = Rng(config.seed).stream("bench-pick");
        for (int rep = 0; rep < repetitions; ++rep) {
            const auto idx = static_cast<std::size_t>(
                pick.uniform_int(0, static_cast<std::int64_t>(world.stations.size()) - 1));
            const std::string& target = world.stations[idx].id;
            selection::SelectionDecision d =
                selection::select_sara(world, target, config, assets.query_text, assets.rule_set);
            const std::size_t kb_size = selection::kb_snapshot(world, target, config).size();
            report.rows.push_back({n, rep, kb_size, d.elapsed_ms});
        }
    }
    return report;
}

std::string records_csv(const std::vector<MetricsRecord>& records) {
    std::string out = "time,station,ap,technology,throughput_mbps,strategy,event\n";
    for (const MetricsRecord& r : records) {
        out += fmt(r.time_s);
        out += ',';
        out += csv_field(r.station);
        out += ',';
        out += csv_field(r.ap);
        out += ',';
        out += r.technology;
        out += ',';
        out += fmt(r.throughput_mbps);
        out += ',';
        out += sim::to_string(r.strategy);
        out += ',';
        out += to_string(r.event);
        out += '\n';
    }
    return out;
}

std::string gains_csv(const GainReport& report) {
    std::string out =
        "station,strategy,executed,selection_time,mean_before_mbps,mean_after_mbps,gain_percent\n";
    for (const StationGain& g : report.rows) {
        out += csv_field(g.station);
        out += ',';
        out += sim::to_string(g.strategy);
        out += ',';
        out += g.executed ? "1" : "0";
        out += ',';
        out += fmt(g.selection_time_s);
        out += ',';
        out += fmt(g.mean_before_mbps);
        out += ',';
        out += fmt(g.mean_after_mbps);
        out += ',';
        out += fmt(g.gain_percent);
        out += '\n';
    }
    return out;
}

std::string decisions_csv(const std::vector<DecisionRecord>& decisions) {
    std::string out = "time,station,strategy,previous_ap,chosen_ap,candidate_count\n";
    for (const DecisionRecord& d : decisions) {
        out += fmt(d.time_s);
        out += ',';
        out += csv_field(d.station);
        out += ',';
        out += sim::to_string(d.strategy);
        out += ',';
        out += csv_field(d.previous_ap);
        out += ',';
        out += csv_field(d.chosen_ap);
        out += ',';
        out += std::to_string(d.candidate_count);
        out += '\n';
    }
    return out;
}

std::string overhead_csv(const OverheadReport& report) {
    std::string out = "station_count,repetition,kb_triple_count,elapsed_ms\n";
    for (const OverheadRow& r : report.rows) {
        out += std::to_string(r.station_count);
        out += ',';
        out += std::to_string(r.repetition);
        out += ',';
        out += std::to_string(r.kb_triple_count);
        out += ',';
        out += fmt(r.elapsed_ms);
        out += '\n';
    }
    return out;
}

void export_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path) {
    write_file(path, records_csv(records));
}
void export_csv(const GainReport& report, const std::filesystem::path& path) {
    write_file(path, gains_csv(report));
}
void export_csv(const std::vector<DecisionRecord>& decisions, const std::filesystem::path& path) {
    write_file(path, decisions_csv(decisions));
}
void export_csv(const OverheadReport& report, const std::filesystem::path& path) {
    write_file(path, overhead_csv(report));
}

std::vector<MetricsRecord> parse_records_csv(const std::string& text) {
    std::vector<MetricsRecord> out;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::string field;
        for (std::istringstream ls(line); std::getline(ls, field, ',');)
            fields.push_back(field);
        if (fields.size() < 7)
            throw ParseError("records CSV row has too few fields: " + line, 0);
        MetricsRecord r;
        r.time_s = std::stod(fields[0]);
        r.station = fields[1];
        r.ap = fields[2];
        r.technology = fields[3];
        r.throughput_mbps = std::stod(fields[4]);
        r.strategy = sim::strategy_from_string(fields[5]);
        r.event = fields[6] == "tick" ? EventKind::Tick : EventKind::SelectionExecuted;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace sara::harness
