#pragma once

#include "sara/rng.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sara::sim {

enum class Technology { WiFi, LTE, Satellite };
enum class Phase { Wander, Gather, Settled };
enum class Strategy { SSS, SARA, Random, Omniscient };

std::string to_string(Technology t);
std::string to_string(Strategy s);
Technology technology_from_string(const std::string& s);
Strategy strategy_from_string(const std::string& s);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

double distance(const Vec2& a, const Vec2& b);

struct Rect {
    Vec2 min;
    Vec2 max;

    bool contains(const Vec2& p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    bool operator==(const Rect&) const = default;
};

struct AccessPointState {
    std::string id; // IRI
    Technology technology = Technology::WiFi;
    Vec2 position;
    double range_m = 0.0;
    double channel_bandwidth_mbps = 0.0;
    double tx_power_dbm = 0.0;
    double antenna_gain_dbi = 0.0;
    std::set<std::string> associated; // station IRIs

    bool operator==(const AccessPointState&) const = default;
};

struct StationState {
    std::string id; // IRI
    Vec2 position;
    double speed_mps = 0.0;
    double heading_rad = 0.0;
    Phase phase = Phase::Wander;
    double reaction_time_s = 0.0;
    std::optional<std::string> associated_ap;
    Strategy strategy = Strategy::SSS;
    std::vector<std::string> services; // tags such as "video"
    bool selection_done = false;       // one-shot strategies hold their pick

    bool operator==(const StationState&) const = default;
};

struct PathLoss {
    double reference_loss_db = 40.0; // at 1 m
    double exponent = 3.5;

    bool operator==(const PathLoss&) const = default;
};

struct IncidentConfig {
    double time_s = 400.0;
    Vec2 position{20.0, 20.0};
    Rect settle_rect{{5.0, 5.0}, {30.0, 30.0}};
    int reaction_lo_s = 401;
    int reaction_hi_s = 413;

    bool operator==(const IncidentConfig&) const = default;
};

struct SelectionConfig {
    Strategy strategy = Strategy::SARA;
    int station_count = 0;
    double start_offset_s = 10.0;   // after the last station settles
    double spread_s = 15.0;         // width of the execution window
    std::string rules_file;         // empty = no rules
    bool operator==(const SelectionConfig&) const = default;
};

struct ApSpec {
    std::string id; // IRI
    Technology technology = Technology::WiFi;
    Vec2 position;
    double range_m = 75.0;
    double channel_bandwidth_mbps = 20.0;
    double tx_power_dbm = 20.0;
    double antenna_gain_dbi = 5.0;

    bool operator==(const ApSpec&) const = default;
};

struct ScenarioConfig {
    double area_width_m = 300.0;
    double area_height_m = 300.0;
    double duration_s = 1000.0;
    double tick_s = 1.0;
    std::uint64_t seed = 0;
    int station_count = 0;
    double station_range_m = 75.0;
    double speed_mean_mps = 2.5;
    double speed_sd_mps = 0.625;
    double turn_sd_rad = 0.5;
    double default_packet_loss = 0.10;
    double measurement_noise = 0.05; // +-5% multiplicative
    PathLoss path_loss;
    IncidentConfig incident;
    SelectionConfig selection;
    std::vector<ApSpec> aps;
    std::vector<std::pair<std::string, std::vector<std::string>>> station_services; // station IRI -> tags

    bool operator==(const ScenarioConfig&) const = default;
};

struct WorldState {
    double clock_s = 0.0;
    std::vector<AccessPointState> aps;
    std::vector<StationState> stations;
    Rng rng;                     // mobility stream
    std::uint64_t noise_seed = 0; // stateless measurement-noise key

    const AccessPointState& ap(const std::string& id) const;
    AccessPointState& ap(const std::string& id);
    const StationState& station(const std::string& id) const;
    StationState& station(const std::string& id);

    bool operator==(const WorldState&) const = default;
};

/// Places stations uniformly over the area from the scenario seed, assigns
/// strategies and reaction times, and associates every station by signal
/// strength. Throws ValidationError on a bad config.
WorldState init_world(const ScenarioConfig& config);

/// Advances one tick: mobility by phase (wander / gather toward the
/// incident / wander inside the settle rectangle), association upkeep, and
/// per-tick strongest-signal handover for stations still under default
/// control. Pure: same input, same output.
WorldState step(const WorldState& world, const ScenarioConfig& config);

/// Received signal strength in dBm under the log-distance model, or
/// nullopt when the pair is out of mutual range.
std::optional<double> rssi(const AccessPointState& ap, const StationState& sta,
                           const ScenarioConfig& config);

/// Equal share of the AP channel after packet loss. `joining` accounts for
/// the station as an extra member when it is not yet associated. Throws
/// RuntimeFault when the station is out of range.
double achievable_throughput(const AccessPointState& ap, const StationState& sta, bool joining,
                             const ScenarioConfig& config);

/// achievable_throughput(joining=true) with deterministic multiplicative
/// measurement noise; does not mutate associations.
double measure_bandwidth(const WorldState& world, const StationState& sta,
                         const AccessPointState& ap, const ScenarioConfig& config);

/// Indices of APs within mutual range of the station, in AP-list order.
std::vector<std::size_t> aps_in_range(const WorldState& world, const StationState& sta,
                                      const ScenarioConfig& config);

/// Current logged throughput of a station: its equal share on its
/// associated AP, 0 when unassociated.
double station_throughput(const WorldState& world, const StationState& sta,
                          const ScenarioConfig& config);

/// Order-sensitive structural hash for determinism checks.
std::uint64_t world_hash(const WorldState& world);

bool all_settled(const WorldState& world);

} // namespace sara::sim
