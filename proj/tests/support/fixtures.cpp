#include "support/fixtures.hpp"

#include "sara/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sara::testing {

using kg::Term;
namespace vocab = kg::vocab;

std::filesystem::path source_dir() {
    return SARA_SOURCE_DIR;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw RuntimeFault("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string ranking_query_text() {
    return read_text(source_dir() / "assets/queries/best_ap_v1.rq");
}

sim::ScenarioConfig paper_default() {
    return sim::load_scenario(source_dir() / "assets/scenarios/paper_default.json");
}

std::string print_query(const sparql::Query& query) {
    std::string out;
    for (const auto& [name, iri] : query.prefixes)
        out += "PREFIX " + name + ": <" + iri + ">\n";
    out += "SELECT";
    for (const auto& p : query.projection) {
        if (p.is_count)
            out += " (COUNT(?" + p.variable + ") AS ?" + p.alias + ")";
        else
            out += " ?" + p.variable;
    }
    out += "\nWHERE {\n";
    auto term = [](const Term& t) -> std::string {
        switch (t.kind()) {
        case kg::TermKind::Variable: return "?" + t.text();
        case kg::TermKind::Iri: return "<" + t.text() + ">";
        case kg::TermKind::Literal:
            if (t.is_numeric())
                return t.text();
            return "\"" + t.text() + "\"";
        }
        return {};
    };
    for (const auto& p : query.bgp)
        out += "  " + term(p.subject) + " " + term(p.predicate) + " " + term(p.object) + " .\n";
    out += "}\n";
    if (!query.group_by.empty()) {
        out += "GROUP BY";
        for (const auto& g : query.group_by)
            out += " ?" + g;
        out += "\n";
    }
    if (!query.order_by.empty()) {
        out += "ORDER BY";
        for (const auto& k : query.order_by)
            out += k.descending ? " DESC(?" + k.variable + ")" : " ?" + k.variable;
        out += "\n";
    }
    return out;
}

kg::Graph random_graph(Rng& rng, std::size_t max_triples) {
    // typed pools keep any one predicate's objects mutually comparable
    static const std::vector<std::string> iri_preds = {"linksTo", "serves", "memberOf"};
    static const std::vector<std::string> num_preds = {"load", "level", "width"};
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_triples)));
    kg::Graph g;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string s = vocab::toco + "n" + std::to_string(rng.uniform_int(1, 10));
        const bool numeric = rng.next_double() < 0.5;
        if (numeric) {
            const std::string p = vocab::toco + num_preds[static_cast<std::size_t>(
                                                     rng.uniform_int(0, static_cast<std::int64_t>(num_preds.size()) - 1))];
            if (rng.next_double() < 0.5)
                g.insert(Term::iri(s), Term::iri(p), Term::integer(rng.uniform_int(0, 30)));
            else
                g.insert(Term::iri(s), Term::iri(p), Term::decimal(rng.uniform(0.0, 30.0)));
        } else {
            const std::string p = vocab::toco + iri_preds[static_cast<std::size_t>(
                                                     rng.uniform_int(0, static_cast<std::int64_t>(iri_preds.size()) - 1))];
            const std::string o = vocab::toco + "n" + std::to_string(rng.uniform_int(1, 10));
            g.insert(Term::iri(s), Term::iri(p), Term::iri(o));
        }
    }
    return g;
}

sparql::Query random_query(Rng& rng) {
    static const std::vector<std::string> iri_preds = {"linksTo", "serves", "memberOf"};
    static const std::vector<std::string> num_preds = {"load", "level", "width"};
    sparql::Query q;
    const int pattern_count = static_cast<int>(rng.uniform_int(1, 4));
    std::vector<std::string> subject_vars = {"s0"};
    std::vector<std::string> numeric_vars, iri_vars;

    for (int i = 0; i < pattern_count; ++i) {
        // chain on an existing subject variable half the time
        const std::string subject =
            subject_vars[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(subject_vars.size()) - 1))];
        const bool numeric = rng.next_double() < 0.5;
        sparql::Pattern p;
        p.subject = Term::variable(subject);
        if (numeric) {
            p.predicate = Term::iri(vocab::toco + num_preds[static_cast<std::size_t>(rng.uniform_int(
                                                      0, static_cast<std::int64_t>(num_preds.size()) - 1))]);
            const std::string obj_var = "v" + std::to_string(i);
            p.object = Term::variable(obj_var);
            numeric_vars.push_back(obj_var);
        } else {
            p.predicate = Term::iri(vocab::toco + iri_preds[static_cast<std::size_t>(rng.uniform_int(
                                                      0, static_cast<std::int64_t>(iri_preds.size()) - 1))]);
            if (rng.next_double() < 0.3) {
                p.object = Term::iri(vocab::toco + "n" + std::to_string(rng.uniform_int(1, 10)));
            } else {
                const std::string obj_var = "o" + std::to_string(i);
                p.object = Term::variable(obj_var);
                iri_vars.push_back(obj_var);
                if (rng.next_double() < 0.5)
                    subject_vars.push_back(obj_var); // allow chains
            }
        }
        q.bgp.push_back(std::move(p));
    }

    const bool aggregate = rng.next_double() < 0.5;
    if (aggregate) {
        q.group_by.push_back("s0");
        q.projection.push_back({"s0", false, ""});
        // count any bound variable
        std::vector<std::string> all = numeric_vars;
        all.insert(all.end(), iri_vars.begin(), iri_vars.end());
        const std::string counted =
            all.empty() ? "s0"
                        : all[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(all.size()) - 1))];
        q.projection.push_back({counted, true, "cnt"});
        if (rng.next_double() < 0.8) {
            q.order_by.push_back({"cnt", rng.next_double() < 0.5});
            if (!numeric_vars.empty() && rng.next_double() < 0.7)
                q.order_by.push_back({numeric_vars.front(), true}); // carried column
        }
    } else {
        q.projection.push_back({"s0", false, ""});
        for (const std::string& v : numeric_vars)
            q.projection.push_back({v, false, ""});
        for (const std::string& v : iri_vars)
            if (rng.next_double() < 0.5)
                q.projection.push_back({v, false, ""});
        if (rng.next_double() < 0.7) {
            if (!numeric_vars.empty())
                q.order_by.push_back({numeric_vars.back(), rng.next_double() < 0.5});
            q.order_by.push_back({"s0", rng.next_double() < 0.5});
        }
    }
    return q;
}

namespace {

sim::ScenarioConfig micro_config(std::vector<sim::ApSpec> aps, int station_count) {
    sim::ScenarioConfig cfg;
    cfg.area_width_m = 200.0;
    cfg.area_height_m = 200.0;
    cfg.duration_s = 100.0;
    cfg.seed = 12345;
    cfg.station_count = station_count;
    cfg.measurement_noise = 0.0; // hand-computed expectations
    cfg.incident.time_s = 1e9;   // no incident in micro fixtures
    cfg.incident.reaction_lo_s = 2000000000;
    cfg.incident.reaction_hi_s = 2000000001;
    cfg.incident.position = {10.0, 10.0};
    cfg.incident.settle_rect = {{0.0, 0.0}, {20.0, 20.0}};
    cfg.selection.station_count = 0;
    cfg.aps = std::move(aps);
    return cfg;
}

void park(sim::WorldState& world, const std::string& station, sim::Vec2 at, const std::string& ap) {
    sim::StationState& sta = world.station(station);
    sta.position = at;
    if (sta.associated_ap)
        world.ap(*sta.associated_ap).associated.erase(sta.id);
    sta.associated_ap.reset();
    if (!ap.empty()) {
        world.ap(ap).associated.insert(station);
        sta.associated_ap = ap;
    }
}

} // namespace

TwoApFixture two_ap_fixture() {
    TwoApFixture f;
    f.ap_busy = vocab::toco + "ap_busy";
    f.ap_free = vocab::toco + "ap_free";
    std::vector<sim::ApSpec> aps;
    aps.push_back({f.ap_busy, sim::Technology::WiFi, {40.0, 50.0}, 75.0, 20.0, 20.0, 5.0});
    aps.push_back({f.ap_free, sim::Technology::LTE, {60.0, 50.0}, 1000.0, 10.0, 43.0, 15.0});
    f.config = micro_config(std::move(aps), 6);
    f.world = sim::init_world(f.config);
    f.target = vocab::toco + "sta1";

    // five stations on ap_busy (the target among them), ap_free idle
    park(f.world, vocab::toco + "sta1", {50.0, 50.0}, f.ap_busy);
    park(f.world, vocab::toco + "sta2", {45.0, 52.0}, f.ap_busy);
    park(f.world, vocab::toco + "sta3", {42.0, 47.0}, f.ap_busy);
    park(f.world, vocab::toco + "sta4", {47.0, 55.0}, f.ap_busy);
    park(f.world, vocab::toco + "sta5", {44.0, 49.0}, f.ap_busy);
    park(f.world, vocab::toco + "sta6", {140.0, 150.0}, "");
    return f;
}

ThreeApFixture three_ap_fixture() {
    ThreeApFixture f;
    const std::string a = vocab::toco + "ap_a";
    const std::string b = vocab::toco + "ap_b";
    const std::string c = vocab::toco + "ap_c";
    std::vector<sim::ApSpec> aps;
    aps.push_back({a, sim::Technology::WiFi, {40.0, 50.0}, 75.0, 20.0, 20.0, 5.0});
    aps.push_back({b, sim::Technology::LTE, {60.0, 50.0}, 1000.0, 10.0, 43.0, 15.0});
    aps.push_back({c, sim::Technology::Satellite, {50.0, 60.0}, 1000.0, 10.0, 50.0, 30.0});
    f.config = micro_config(std::move(aps), 5);
    f.world = sim::init_world(f.config);
    f.target = vocab::toco + "sta1";

    park(f.world, vocab::toco + "sta1", {50.0, 50.0}, a);
    park(f.world, vocab::toco + "sta2", {45.0, 52.0}, a);
    park(f.world, vocab::toco + "sta3", {42.0, 47.0}, a);
    park(f.world, vocab::toco + "sta4", {61.0, 51.0}, b);
    park(f.world, vocab::toco + "sta5", {59.0, 49.0}, b);
    return f;
}

CongestedFixture congested_fixture(int station_count) {
    CongestedFixture f;
    std::vector<sim::ApSpec> aps;
    aps.push_back({vocab::toco + "ap_wifi_hot", sim::Technology::WiFi, {10.0, 10.0}, 75.0, 20.0, 20.0, 5.0});
    aps.push_back({vocab::toco + "ap_lte_idle", sim::Technology::LTE, {12.0, 10.0}, 1000.0, 10.0, 9.0, 3.0});
    aps.push_back({vocab::toco + "ap_sat_idle", sim::Technology::Satellite, {8.0, 10.0}, 1000.0, 10.0, 8.0, 2.0});
    f.config = micro_config(std::move(aps), station_count);
    f.config.incident.position = {10.0, 10.0};
    f.config.incident.settle_rect = {{5.0, 5.0}, {15.0, 15.0}};
    f.world = sim::init_world(f.config);
    Rng scatter(99);
    for (int i = 0; i < station_count; ++i)
        park(f.world, vocab::toco + "sta" + std::to_string(i + 1),
             {scatter.uniform(6.0, 14.0), scatter.uniform(6.0, 14.0)}, vocab::toco + "ap_wifi_hot");
    return f;
}

std::vector<selection::CandidateRank> rank_from_world(const sim::WorldState& world,
                                                      const std::string& station,
                                                      const sim::ScenarioConfig& config) {
    const sim::StationState& sta = world.station(station);
    std::vector<selection::CandidateRank> ranks;
    for (std::size_t idx : sim::aps_in_range(world, sta, config)) {
        const sim::AccessPointState& ap = world.aps[idx];
        selection::CandidateRank r;
        r.ap = ap.id;
        r.count = static_cast<std::int64_t>(ap.associated.size()) +
                  (ap.associated.contains(station) ? 0 : 1);
        r.bandwidth_mbps = sim::measure_bandwidth(world, sta, ap, config);
        r.antenna_gain_dbi = ap.antenna_gain_dbi;
        r.tx_power_dbm = ap.tx_power_dbm;
        ranks.push_back(std::move(r));
    }
    std::sort(ranks.begin(), ranks.end(),
              [](const selection::CandidateRank& x, const selection::CandidateRank& y) {
                  if (x.count != y.count)
                      return x.count < y.count;
                  if (x.bandwidth_mbps != y.bandwidth_mbps)
                      return x.bandwidth_mbps > y.bandwidth_mbps;
                  if (x.antenna_gain_dbi != y.antenna_gain_dbi)
                      return x.antenna_gain_dbi > y.antenna_gain_dbi;
                  if (x.tx_power_dbm != y.tx_power_dbm)
                      return x.tx_power_dbm > y.tx_power_dbm;
                  return x.ap < y.ap;
              });
    return ranks;
}

} // namespace sara::testing
