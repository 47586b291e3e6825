#include "sara/scenario.hpp"

#include "sara/errors.hpp"
#include "sara/vocab.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace sara::sim {

using nlohmann::json;

namespace {

Vec2 read_vec2(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("scenario field '" + field + "' must be a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string expand_id(const std::string& id) {
    if (id.starts_with("http://") || id.starts_with("https://"))
        return id;
    return kg::vocab::toco + id;
}

} // namespace

ScenarioConfig parse_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario is not valid JSON: ") + e.what(), 0);
    }

    ScenarioConfig cfg;
    try {
        const auto& area = j.at("area");
        cfg.area_width_m = area.at("width_m").get<double>();
        cfg.area_height_m = area.at("height_m").get<double>();
        cfg.duration_s = j.at("duration_s").get<double>();
        cfg.tick_s = j.value("tick_s", 1.0);
        cfg.seed = j.at("seed").get<std::uint64_t>();

        const auto& stations = j.at("stations");
        cfg.station_count = stations.at("count").get<int>();
        cfg.station_range_m = stations.at("range_m").get<double>();
        cfg.speed_mean_mps = stations.at("speed_mean_mps").get<double>();
        cfg.speed_sd_mps = stations.value("speed_sd_mps", cfg.speed_mean_mps / 4.0);
        cfg.turn_sd_rad = stations.value("turn_sd_rad", 0.5);
        if (stations.contains("services"))
            for (const auto& [key, tags] : stations.at("services").items()) {
                std::vector<std::string> list;
                for (const auto& t : tags)
                    list.push_back(t.get<std::string>());
                cfg.station_services.emplace_back(expand_id(key), std::move(list));
            }

        cfg.default_packet_loss = j.at("default_packet_loss").get<double>();
        cfg.measurement_noise = j.value("measurement_noise", 0.05);

        if (j.contains("path_loss")) {
            cfg.path_loss.reference_loss_db = j.at("path_loss").value("reference_loss_db", 40.0);
            cfg.path_loss.exponent = j.at("path_loss").value("exponent", 3.5);
        }

        const auto& incident = j.at("incident");
        cfg.incident.time_s = incident.at("time_s").get<double>();
        cfg.incident.position = read_vec2(incident.at("position"), "incident.position");
        const auto& rect = incident.at("settle_rect");
        if (!rect.is_array() || rect.size() != 2)
            throw ValidationError("incident.settle_rect must be [[x0,y0],[x1,y1]]");
        cfg.incident.settle_rect.min = read_vec2(rect[0], "incident.settle_rect[0]");
        cfg.incident.settle_rect.max = read_vec2(rect[1], "incident.settle_rect[1]");
        const auto& reaction = incident.at("reaction_time_s");
        if (!reaction.is_array() || reaction.size() != 2)
            throw ValidationError("incident.reaction_time_s must be [lo, hi]");
        cfg.incident.reaction_lo_s = reaction[0].get<int>();
        cfg.incident.reaction_hi_s = reaction[1].get<int>();

        const auto& selection = j.at("selection");
        cfg.selection.strategy = strategy_from_string(selection.value("strategy", std::string("SARA")));
        cfg.selection.station_count = selection.at("station_count").get<int>();
        cfg.selection.start_offset_s = selection.value("start_offset_s", 10.0);
        cfg.selection.spread_s = selection.value("spread_s", 15.0);
        if (selection.contains("rules") && !selection.at("rules").is_null()) {
            std::filesystem::path rules = selection.at("rules").get<std::string>();
            if (rules.is_relative() && !base_dir.empty())
                rules = base_dir / rules;
            cfg.selection.rules_file = rules.string();
        }

        for (const auto& ap : j.at("aps")) {
            ApSpec spec;
            spec.id = expand_id(ap.at("id").get<std::string>());
            spec.technology = technology_from_string(ap.at("technology").get<std::string>());
            spec.position = read_vec2(ap.at("position"), "aps[].position");
            spec.range_m = ap.at("range_m").get<double>();
            spec.channel_bandwidth_mbps = ap.at("channel_bandwidth_mbps").get<double>();
            spec.tx_power_dbm = ap.at("tx_power_dbm").get<double>();
            spec.antenna_gain_dbi = ap.at("antenna_gain_dbi").get<double>();
            cfg.aps.push_back(std::move(spec));
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("scenario schema error: ") + e.what());
    }

    validate_scenario(cfg);
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw RuntimeFault("cannot open scenario file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), file.parent_path());
}

void validate_scenario(const ScenarioConfig& cfg) {
    auto require = [](bool ok, const std::string& message) {
        if (!ok)
            throw ValidationError("scenario: " + message);
    };
    require(cfg.area_width_m > 0 && cfg.area_height_m > 0, "area must be positive");
    require(cfg.duration_s >= 0, "duration_s must be >= 0");
    require(cfg.tick_s > 0, "tick_s must be positive");
    require(cfg.station_count >= 0, "stations.count must be >= 0");
    require(cfg.station_range_m > 0, "stations.range_m must be positive");
    require(cfg.speed_mean_mps >= 0, "stations.speed_mean_mps must be >= 0");
    require(cfg.default_packet_loss >= 0 && cfg.default_packet_loss < 1,
            "default_packet_loss must be in [0, 1)");
    require(cfg.measurement_noise >= 0 && cfg.measurement_noise < 1,
            "measurement_noise must be in [0, 1)");
    require(cfg.selection.station_count <= cfg.station_count,
            "selection.station_count exceeds stations.count");
    require(cfg.selection.station_count >= 0, "selection.station_count must be >= 0");
    require(cfg.selection.spread_s >= 0 && cfg.selection.start_offset_s >= 0,
            "selection window must be non-negative");
    require(cfg.incident.reaction_lo_s <= cfg.incident.reaction_hi_s,
            "incident.reaction_time_s range is inverted");
    require(static_cast<double>(cfg.incident.reaction_lo_s) >= cfg.incident.time_s,
            "reaction times must not precede the incident");
    const Rect& rect = cfg.incident.settle_rect;
    require(rect.min.x <= rect.max.x && rect.min.y <= rect.max.y, "settle_rect is inverted");
    require(rect.max.x <= cfg.area_width_m && rect.max.y <= cfg.area_height_m &&
                rect.min.x >= 0 && rect.min.y >= 0,
            "settle_rect must lie inside the area");
    require(rect.contains(cfg.incident.position), "incident position must lie in the settle_rect");

    std::set<std::string> ids;
    for (const ApSpec& ap : cfg.aps) {
        require(!ap.id.empty(), "AP id must be non-empty");
        require(ids.insert(ap.id).second, "duplicate AP id: " + ap.id);
        require(ap.range_m > 0, ap.id + ": range_m must be positive");
        require(ap.channel_bandwidth_mbps > 0, ap.id + ": channel_bandwidth_mbps must be positive");
        require(ap.position.x >= 0 && ap.position.x <= cfg.area_width_m && ap.position.y >= 0 &&
                    ap.position.y <= cfg.area_height_m,
                ap.id + ": position outside the simulation area");
    }
}

} // namespace sara::sim
