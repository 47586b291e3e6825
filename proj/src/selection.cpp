#include "sara/selection.hpp"

#include "sara/query_eval.hpp"
#include "sara/query_parser.hpp"
#include "sara/vocab.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace sara::selection {

using kg::Term;
namespace vocab = kg::vocab;

namespace {

std::string local_name(const std::string& iri) {
    auto slash = iri.find_last_of("/#");
    return slash == std::string::npos ? iri : iri.substr(slash + 1);
}

/// Per-(AP, peer) association token IRI inside a snapshot.
std::string association_iri(const std::string& ap, const std::string& peer) {
    return vocab::toco + "asso/" + local_name(ap) + "/" + local_name(peer);
}

std::string bandwidth_iri(const std::string& ap) {
    return vocab::toco + "bw/" + local_name(ap);
}

std::string service_iri(const std::string& station, const std::string& tag) {
    return vocab::toco + "svc/" + local_name(station) + "/" + tag;
}

const sim::StationState& require_station(const sim::WorldState& world, const std::string& id) {
    return world.station(id); // throws RuntimeFault when unknown
}

struct Candidate {
    const sim::AccessPointState* ap;
    double measured_mbps;
};

std::vector<Candidate> measured_candidates(const sim::WorldState& world,
                                           const sim::StationState& sta,
                                           const sim::ScenarioConfig& config) {
    std::vector<Candidate> out;
    for (std::size_t idx : sim::aps_in_range(world, sta, config)) {
        const sim::AccessPointState& ap = world.aps[idx];
        out.push_back({&ap, sim::measure_bandwidth(world, sta, ap, config)});
    }
    return out;
}

std::string technology_iri(sim::Technology t) {
    switch (t) {
    case sim::Technology::WiFi: return vocab::WiFi;
    case sim::Technology::LTE: return vocab::LTE;
    case sim::Technology::Satellite: return vocab::Satellite;
    }
    return vocab::WiFi;
}

[[noreturn]] void no_ap_in_range(const std::string& station) {
    throw RuntimeFault("no access point in range of " + station);
}

SelectionDecision argmax_decision(const sim::WorldState& world, const sim::StationState& sta,
                                  const sim::ScenarioConfig& config, sim::Strategy strategy,
                                  const std::vector<std::size_t>& order_of_best) {
    // order_of_best: indices into aps_in_range order, best first
    auto in_range = sim::aps_in_range(world, sta, config);
    SelectionDecision d;
    d.station = sta.id;
    d.strategy = strategy;
    for (std::size_t pos : order_of_best) {
        const sim::AccessPointState& ap = world.aps[in_range[pos]];
        CandidateRank rank;
        rank.ap = ap.id;
        rank.count = static_cast<std::int64_t>(ap.associated.size()) +
                     (ap.associated.contains(sta.id) ? 0 : 1);
        rank.bandwidth_mbps = sim::measure_bandwidth(world, sta, ap, config);
        rank.antenna_gain_dbi = ap.antenna_gain_dbi;
        rank.tx_power_dbm = ap.tx_power_dbm;
        d.ranked_candidates.push_back(std::move(rank));
    }
    d.chosen_ap = d.ranked_candidates.front().ap;
    return d;
}

} // namespace

kg::Graph kb_snapshot(const sim::WorldState& world, const std::string& target,
                      const sim::ScenarioConfig& config) {
    const sim::StationState& sta = require_station(world, target);
    kg::Graph g;

    const Term target_term = Term::iri(target);
    g.insert(target_term, Term::iri(vocab::rdf_type), Term::iri(vocab::UserEquipment));
    for (const std::string& tag : sta.services) {
        const Term svc = Term::iri(service_iri(target, tag));
        g.insert(target_term, Term::iri(vocab::hasService), svc);
        g.insert(svc, Term::iri(vocab::rdf_type), Term::iri(vocab::Service));
        g.insert(svc, Term::iri(vocab::isVideo), Term::string(tag == "video" ? "true" : "false"));
    }

    for (const Candidate& cand : measured_candidates(world, sta, config)) {
        const sim::AccessPointState& ap = *cand.ap;
        const Term ap_term = Term::iri(ap.id);
        g.insert(ap_term, Term::iri(vocab::rdf_type), Term::iri(vocab::AccessPoint));
        g.insert(ap_term, Term::iri(vocab::stationsInRange), target_term);
        g.insert(ap_term, Term::iri(vocab::usesTechnology), Term::iri(technology_iri(ap.technology)));

        const Term wlan = Term::iri(vocab::toco + "wlan/" + local_name(ap.id));
        g.insert(ap_term, Term::iri(vocab::hasWLAN), wlan);
        g.insert(wlan, Term::iri(vocab::rdf_type), Term::iri(vocab::WLAN));
        g.insert(wlan, Term::iri(vocab::antennaGain), Term::decimal(ap.antenna_gain_dbi));
        g.insert(wlan, Term::iri(vocab::hasTxPower), Term::decimal(ap.tx_power_dbm));

        const Term bw = Term::iri(bandwidth_iri(ap.id));
        g.insert(bw, Term::iri(vocab::hasValue), Term::decimal(cand.measured_mbps));

        // one association token per current association, plus the target's
        // own measurement association when not already a member
        std::set<std::string> peers = ap.associated;
        peers.insert(target);
        for (const std::string& peer : peers) {
            const Term asso = Term::iri(association_iri(ap.id, peer));
            g.insert(ap_term, Term::iri(vocab::associatedStations), asso);
            g.insert(asso, Term::iri(vocab::rdf_type), Term::iri(vocab::Association));
            g.insert(asso, Term::iri(vocab::From), ap_term);
            g.insert(asso, Term::iri(vocab::To), target_term);
            g.insert(asso, Term::iri(vocab::hasBandWidth), bw);
        }
    }
    return g;
}

std::string load_query_asset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw RuntimeFault("cannot open query asset: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string query_for_target(const std::string& query_text, const std::string& target_iri) {
    static const std::string token = ":sta1";
    const std::string replacement = "<" + target_iri + ">";
    std::string out;
    std::size_t pos = 0;
    while (true) {
        std::size_t hit = query_text.find(token, pos);
        if (hit == std::string::npos) {
            out += query_text.substr(pos);
            return out;
        }
        // require a standalone token: previous char must not extend a
        // prefixed name (e.g. net:sta1 still counts; x:sta10 must not)
        const std::size_t end = hit + token.size();
        const bool boundary = end >= query_text.size() ||
                              !(std::isalnum(static_cast<unsigned char>(query_text[end])) ||
                                query_text[end] == '_');
        if (!boundary) {
            out += query_text.substr(pos, end - pos);
            pos = end;
            continue;
        }
        out += query_text.substr(pos, hit - pos);
        out += replacement;
        pos = end;
    }
}

SelectionDecision select_sss(const sim::WorldState& world, const std::string& station,
                             const sim::ScenarioConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const sim::StationState& sta = require_station(world, station);
    auto in_range = sim::aps_in_range(world, sta, config);
    if (in_range.empty())
        no_ap_in_range(station);

    std::vector<std::size_t> order(in_range.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto ra = sim::rssi(world.aps[in_range[a]], sta, config);
        const auto rb = sim::rssi(world.aps[in_range[b]], sta, config);
        if (*ra != *rb)
            return *ra > *rb;
        return world.aps[in_range[a]].id < world.aps[in_range[b]].id;
    });
    SelectionDecision d = argmax_decision(world, sta, config, sim::Strategy::SSS, order);
    d.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return d;
}

SelectionDecision select_random(const sim::WorldState& world, const std::string& station,
                                const sim::ScenarioConfig& config, Rng& rng) {
    const auto t0 = std::chrono::steady_clock::now();
    const sim::StationState& sta = require_station(world, station);
    auto in_range = sim::aps_in_range(world, sta, config);
    if (in_range.empty())
        no_ap_in_range(station);

    const auto pick = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(in_range.size()) - 1));
    std::vector<std::size_t> order;
    order.push_back(pick);
    for (std::size_t i = 0; i < in_range.size(); ++i)
        if (i != pick)
            order.push_back(i);
    SelectionDecision d = argmax_decision(world, sta, config, sim::Strategy::Random, order);
    d.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return d;
}

SelectionDecision select_omniscient(const sim::WorldState& world, const std::string& station,
                                    const sim::ScenarioConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    const sim::StationState& sta = require_station(world, station);
    auto in_range = sim::aps_in_range(world, sta, config);
    if (in_range.empty())
        no_ap_in_range(station);

    std::vector<std::size_t> order(in_range.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        // noise-free probe: the idealized upper-bound baseline
        const double ta = sim::achievable_throughput(world.aps[in_range[a]], sta, true, config);
        const double tb = sim::achievable_throughput(world.aps[in_range[b]], sta, true, config);
        if (ta != tb)
            return ta > tb;
        return world.aps[in_range[a]].id < world.aps[in_range[b]].id;
    });
    SelectionDecision d = argmax_decision(world, sta, config, sim::Strategy::Omniscient, order);
    // ranked tuples for omniscient report the noise-free probe values
    for (std::size_t i = 0; i < order.size(); ++i)
        d.ranked_candidates[i].bandwidth_mbps =
            sim::achievable_throughput(world.ap(d.ranked_candidates[i].ap), sta, true, config);
    d.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return d;
}

SelectionDecision select_sara(const sim::WorldState& world, const std::string& station,
                              const sim::ScenarioConfig& config, const std::string& query_text,
                              const std::vector<rules::Rule>& rule_set) {
    const auto t0 = std::chrono::steady_clock::now();
    const sim::StationState& sta = require_station(world, station);
    if (sim::aps_in_range(world, sta, config).empty())
        no_ap_in_range(station);

    // scan + measure + snapshot
    kg::Graph snapshot = kb_snapshot(world, station, config);

    // evaluate the shipped ranking query against the snapshot
    sparql::Query query = sparql::parse_query(query_for_target(query_text, station));
    sparql::BindingTable table = sparql::evaluate(snapshot, query);

    SelectionDecision d;
    d.station = station;
    d.strategy = sim::Strategy::SARA;

    std::size_t ap_col = 0;
    std::optional<std::size_t> cnt_col;
    for (const sparql::Projection& p : query.projection) {
        if (p.is_count)
            cnt_col = table.column_index(p.alias);
        else
            ap_col = table.column_index(p.variable);
    }
    for (const auto& row : table.rows) {
        CandidateRank rank;
        rank.ap = row[ap_col].text();
        rank.count = cnt_col ? static_cast<std::int64_t>(row[*cnt_col].number()) : 0;
        const Term ap_term = Term::iri(rank.ap);
        auto wlan = snapshot.match({ap_term, Term::iri(vocab::hasWLAN), std::nullopt});
        if (!wlan.empty()) {
            auto gain = snapshot.match({wlan.front().object, Term::iri(vocab::antennaGain), std::nullopt});
            auto tx = snapshot.match({wlan.front().object, Term::iri(vocab::hasTxPower), std::nullopt});
            if (!gain.empty())
                rank.antenna_gain_dbi = gain.front().object.number();
            if (!tx.empty())
                rank.tx_power_dbm = tx.front().object.number();
        }
        auto bw = snapshot.match({Term::iri(bandwidth_iri(rank.ap)), Term::iri(vocab::hasValue), std::nullopt});
        if (!bw.empty())
            rank.bandwidth_mbps = bw.front().object.number();
        d.ranked_candidates.push_back(std::move(rank));
    }
    if (d.ranked_candidates.empty())
        throw RuntimeFault("ranking query returned no candidates for " + station);

    // service rule constraining; empty result falls back unconstrained
    std::vector<rules::Assignment> assignments = rules::apply_rules(snapshot, rule_set);
    std::optional<rules::Assignment> mine;
    for (const rules::Assignment& a : assignments)
        if (a.station == station)
            mine = a;
    if (mine) {
        std::vector<std::string> candidate_ids;
        for (const CandidateRank& r : d.ranked_candidates)
            candidate_ids.push_back(r.ap);
        std::vector<std::string> constrained = rules::constrain_candidates(candidate_ids, mine, snapshot);
        if (!constrained.empty() && constrained.size() != candidate_ids.size()) {
            std::vector<CandidateRank> reordered;
            for (const std::string& id : constrained)
                for (const CandidateRank& r : d.ranked_candidates)
                    if (r.ap == id)
                        reordered.push_back(r);
            for (const CandidateRank& r : d.ranked_candidates)
                if (std::find(constrained.begin(), constrained.end(), r.ap) == constrained.end())
                    reordered.push_back(r);
            d.ranked_candidates = std::move(reordered);
        }
    }

    d.chosen_ap = d.ranked_candidates.front().ap;
    d.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return d;
}

sim::WorldState apply_decision(const sim::WorldState& world, const SelectionDecision& decision,
                               const sim::ScenarioConfig& config) {
    sim::WorldState out = world;
    sim::StationState& sta = out.station(decision.station);
    const sim::AccessPointState& target = out.ap(decision.chosen_ap);
    const double d = sim::distance(target.position, sta.position);
    if (d > std::min(target.range_m, config.station_range_m))
        throw RuntimeFault("stale decision: " + decision.chosen_ap + " is out of range of " +
                           decision.station);

    if (sta.associated_ap && *sta.associated_ap == decision.chosen_ap)
        return out; // already there
    if (sta.associated_ap)
        out.ap(*sta.associated_ap).associated.erase(sta.id);
    out.ap(decision.chosen_ap).associated.insert(sta.id);
    sta.associated_ap = decision.chosen_ap;
    return out;
}

} // namespace sara::selection
