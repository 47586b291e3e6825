#include "sara/world.hpp"

#include "sara/errors.hpp"
#include "sara/vocab.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

namespace sara::sim {

std::string to_string(Technology t) {
    switch (t) {
    case Technology::WiFi: return "WiFi";
    case Technology::LTE: return "LTE";
    case Technology::Satellite: return "Satellite";
    }
    return "?";
}

std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::SSS: return "SSS";
    case Strategy::SARA: return "SARA";
    case Strategy::Random: return "Random";
    case Strategy::Omniscient: return "Omniscient";
    }
    return "?";
}

Technology technology_from_string(const std::string& s) {
    if (s == "WiFi")
        return Technology::WiFi;
    if (s == "LTE")
        return Technology::LTE;
    if (s == "Satellite")
        return Technology::Satellite;
    throw ValidationError("unknown technology: " + s);
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "SSS")
        return Strategy::SSS;
    if (s == "SARA")
        return Strategy::SARA;
    if (s == "Random")
        return Strategy::Random;
    if (s == "Omniscient")
        return Strategy::Omniscient;
    throw ValidationError("unknown strategy: " + s);
}

double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

const AccessPointState& WorldState::ap(const std::string& id) const {
    for (const auto& a : aps)
        if (a.id == id)
            return a;
    throw RuntimeFault("unknown access point: " + id);
}

AccessPointState& WorldState::ap(const std::string& id) {
    for (auto& a : aps)
        if (a.id == id)
            return a;
    throw RuntimeFault("unknown access point: " + id);
}

const StationState& WorldState::station(const std::string& id) const {
    for (const auto& s : stations)
        if (s.id == id)
            return s;
    throw RuntimeFault("unknown station: " + id);
}

StationState& WorldState::station(const std::string& id) {
    for (auto& s : stations)
        if (s.id == id)
            return s;
    throw RuntimeFault("unknown station: " + id);
}

namespace {

bool in_mutual_range(const AccessPointState& ap, const StationState& sta,
                     const ScenarioConfig& config) {
    const double d = distance(ap.position, sta.position);
    return d <= std::min(ap.range_m, config.station_range_m);
}

/// Strongest-signal pick over in-range APs; ties broken by AP IRI.
std::optional<std::size_t> strongest_ap(const WorldState& world, const StationState& sta,
                                        const ScenarioConfig& config) {
    std::optional<std::size_t> best;
    double best_rssi = 0.0;
    for (std::size_t i = 0; i < world.aps.size(); ++i) {
        auto level = rssi(world.aps[i], sta, config);
        if (!level)
            continue;
        if (!best || *level > best_rssi ||
            (*level == best_rssi && world.aps[i].id < world.aps[*best].id)) {
            best = i;
            best_rssi = *level;
        }
    }
    return best;
}

void disassociate(WorldState& world, StationState& sta) {
    if (!sta.associated_ap)
        return;
    world.ap(*sta.associated_ap).associated.erase(sta.id);
    sta.associated_ap.reset();
}

void associate(WorldState& world, StationState& sta, std::size_t ap_idx) {
    if (sta.associated_ap && *sta.associated_ap == world.aps[ap_idx].id)
        return;
    disassociate(world, sta);
    world.aps[ap_idx].associated.insert(sta.id);
    sta.associated_ap = world.aps[ap_idx].id;
}

double clamp_speed(double v, const ScenarioConfig& config) {
    return std::clamp(v, 0.0, 2.0 * config.speed_mean_mps);
}

/// Move and reflect inside [lo, hi] on both axes, flipping the heading
/// component that bounced.
void move_reflect(StationState& sta, double dt, const Vec2& lo, const Vec2& hi) {
    double hx = std::cos(sta.heading_rad);
    double hy = std::sin(sta.heading_rad);
    double x = sta.position.x + sta.speed_mps * dt * hx;
    double y = sta.position.y + sta.speed_mps * dt * hy;
    for (int guard = 0; guard < 8; ++guard) {
        bool bounced = false;
        if (x < lo.x) { x = 2 * lo.x - x; hx = -hx; bounced = true; }
        if (x > hi.x) { x = 2 * hi.x - x; hx = -hx; bounced = true; }
        if (y < lo.y) { y = 2 * lo.y - y; hy = -hy; bounced = true; }
        if (y > hi.y) { y = 2 * hi.y - y; hy = -hy; bounced = true; }
        if (!bounced)
            break;
    }
    sta.position = {std::clamp(x, lo.x, hi.x), std::clamp(y, lo.y, hi.y)};
    sta.heading_rad = std::atan2(hy, hx);
}

} // namespace

std::optional<double> rssi(const AccessPointState& ap, const StationState& sta,
                           const ScenarioConfig& config) {
    if (!in_mutual_range(ap, sta, config))
        return std::nullopt;
    const double d = std::max(distance(ap.position, sta.position), 1.0);
    const double loss = config.path_loss.reference_loss_db +
                        10.0 * config.path_loss.exponent * std::log10(d);
    return ap.tx_power_dbm + ap.antenna_gain_dbi - loss;
}

double achievable_throughput(const AccessPointState& ap, const StationState& sta, bool joining,
                             const ScenarioConfig& config) {
    if (!in_mutual_range(ap, sta, config))
        throw RuntimeFault("station " + sta.id + " is out of range of " + ap.id);
    std::size_t n = ap.associated.size();
    if (joining && !ap.associated.contains(sta.id))
        ++n;
    return ap.channel_bandwidth_mbps / static_cast<double>(std::max<std::size_t>(n, 1)) *
           (1.0 - config.default_packet_loss);
}

double measure_bandwidth(const WorldState& world, const StationState& sta,
                         const AccessPointState& ap, const ScenarioConfig& config) {
    const double base = achievable_throughput(ap, sta, true, config);
    if (config.measurement_noise <= 0.0)
        return base;
    std::uint64_t clock_bits;
    static_assert(sizeof(clock_bits) == sizeof(world.clock_s));
    std::memcpy(&clock_bits, &world.clock_s, sizeof(clock_bits));
    std::uint64_t h = hash_mix(world.noise_seed, clock_bits);
    h = hash_mix(h, hash_str(sta.id));
    h = hash_mix(h, hash_str(ap.id));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53; // [0,1)
    const double factor = 1.0 - config.measurement_noise + 2.0 * config.measurement_noise * u;
    return base * factor;
}

std::vector<std::size_t> aps_in_range(const WorldState& world, const StationState& sta,
                                      const ScenarioConfig& config) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < world.aps.size(); ++i)
        if (in_mutual_range(world.aps[i], sta, config))
            out.push_back(i);
    return out;
}

double station_throughput(const WorldState& world, const StationState& sta,
                          const ScenarioConfig& config) {
    if (!sta.associated_ap)
        return 0.0;
    const AccessPointState& ap = world.ap(*sta.associated_ap);
    if (!in_mutual_range(ap, sta, config))
        return 0.0;
    return achievable_throughput(ap, sta, false, config);
}

WorldState init_world(const ScenarioConfig& config) {
    WorldState world;
    world.clock_s = 0.0;
    world.rng = Rng(config.seed).stream("mobility");
    world.noise_seed = Rng(config.seed).stream("measurement-noise").state();

    for (const ApSpec& spec : config.aps) {
        AccessPointState ap;
        ap.id = spec.id;
        ap.technology = spec.technology;
        ap.position = spec.position;
        ap.range_m = spec.range_m;
        ap.channel_bandwidth_mbps = spec.channel_bandwidth_mbps;
        ap.tx_power_dbm = spec.tx_power_dbm;
        ap.antenna_gain_dbi = spec.antenna_gain_dbi;
        world.aps.push_back(std::move(ap));
    }

    Rng placement = Rng(config.seed).stream("placement");
    Rng kinematics = Rng(config.seed).stream("kinematics");
    Rng reaction = Rng(config.seed).stream("reaction");
    for (int i = 0; i < config.station_count; ++i) {
        StationState sta;
        sta.id = kg::vocab::toco + "sta" + std::to_string(i + 1);
        sta.position = {placement.uniform(0.0, config.area_width_m),
                        placement.uniform(0.0, config.area_height_m)};
        sta.heading_rad = kinematics.uniform(0.0, 2.0 * std::numbers::pi);
        sta.speed_mps = clamp_speed(kinematics.gaussian(config.speed_mean_mps, config.speed_sd_mps), config);
        sta.phase = Phase::Wander;
        sta.reaction_time_s = static_cast<double>(
            reaction.uniform_int(config.incident.reaction_lo_s, config.incident.reaction_hi_s));
        world.stations.push_back(std::move(sta));
    }

    for (const auto& [station_iri, tags] : config.station_services)
        world.station(station_iri).services = tags;

    // designate the stations that will run the one-shot strategy
    if (config.selection.station_count > 0 && config.selection.strategy != Strategy::SSS) {
        Rng pick = Rng(config.seed).stream("strategy-assignment");
        std::vector<int> indices(world.stations.size());
        for (std::size_t i = 0; i < indices.size(); ++i)
            indices[i] = static_cast<int>(i);
        for (int chosen = 0; chosen < config.selection.station_count; ++chosen) {
            const auto j = static_cast<std::size_t>(
                pick.uniform_int(chosen, static_cast<std::int64_t>(indices.size()) - 1));
            std::swap(indices[static_cast<std::size_t>(chosen)], indices[j]);
            world.stations[static_cast<std::size_t>(indices[static_cast<std::size_t>(chosen)])].strategy =
                config.selection.strategy;
        }
    }

    for (StationState& sta : world.stations)
        if (auto best = strongest_ap(world, sta, config))
            associate(world, sta, *best);
    return world;
}

WorldState step(const WorldState& input, const ScenarioConfig& config) {
    WorldState world = input;
    world.clock_s += config.tick_s;
    const double dt = config.tick_s;
    const Rect& rect = config.incident.settle_rect;

    for (StationState& sta : world.stations) {
        if (sta.phase == Phase::Wander && world.clock_s >= sta.reaction_time_s &&
            world.clock_s >= config.incident.time_s)
            sta.phase = Phase::Gather;

        switch (sta.phase) {
        case Phase::Wander: {
            sta.heading_rad += world.rng.gaussian(0.0, config.turn_sd_rad);
            sta.speed_mps = clamp_speed(world.rng.gaussian(config.speed_mean_mps, config.speed_sd_mps), config);
            move_reflect(sta, dt, {0.0, 0.0}, {config.area_width_m, config.area_height_m});
            break;
        }
        case Phase::Gather: {
            sta.speed_mps = clamp_speed(world.rng.gaussian(config.speed_mean_mps, config.speed_sd_mps), config);
            const double d = distance(sta.position, config.incident.position);
            if (d > 1e-9) {
                const double stride = std::min(sta.speed_mps * dt, d);
                sta.heading_rad = std::atan2(config.incident.position.y - sta.position.y,
                                             config.incident.position.x - sta.position.x);
                sta.position.x += stride * std::cos(sta.heading_rad);
                sta.position.y += stride * std::sin(sta.heading_rad);
            }
            if (rect.contains(sta.position))
                sta.phase = Phase::Settled;
            break;
        }
        case Phase::Settled: {
            sta.heading_rad += world.rng.gaussian(0.0, config.turn_sd_rad);
            sta.speed_mps = clamp_speed(world.rng.gaussian(config.speed_mean_mps, config.speed_sd_mps), config);
            move_reflect(sta, dt, rect.min, rect.max);
            break;
        }
        }
    }

    // association upkeep after everyone moved
    for (StationState& sta : world.stations) {
        if (sta.associated_ap && !in_mutual_range(world.ap(*sta.associated_ap), sta, config))
            disassociate(world, sta);
        const bool under_default_control = sta.strategy == Strategy::SSS || !sta.selection_done;
        if (under_default_control || !sta.associated_ap) {
            if (auto best = strongest_ap(world, sta, config))
                associate(world, sta, *best);
        }
    }
    return world;
}

std::uint64_t world_hash(const WorldState& world) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_u64 = [&h](std::uint64_t v) { h = hash_mix(h, v); };
    auto mix_d = [&](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        mix_u64(bits);
    };
    mix_d(world.clock_s);
    mix_u64(world.rng.state());
    for (const AccessPointState& ap : world.aps) {
        mix_u64(hash_str(ap.id));
        for (const std::string& s : ap.associated)
            mix_u64(hash_str(s));
    }
    for (const StationState& sta : world.stations) {
        mix_u64(hash_str(sta.id));
        mix_d(sta.position.x);
        mix_d(sta.position.y);
        mix_d(sta.speed_mps);
        mix_d(sta.heading_rad);
        mix_u64(static_cast<std::uint64_t>(sta.phase));
        mix_u64(sta.associated_ap ? hash_str(*sta.associated_ap) : 0);
        mix_u64(sta.selection_done ? 1 : 0);
    }
    return h;
}

bool all_settled(const WorldState& world) {
    return std::all_of(world.stations.begin(), world.stations.end(),
                       [](const StationState& s) { return s.phase == Phase::Settled; });
}

} // namespace sara::sim
