#include "sara/harness.hpp"
#include "sara/ntriples.hpp"
#include "sara/query_eval.hpp"
#include "sara/query_parser.hpp"
#include "sara/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

#ifndef SARA_SOURCE_DIR
#define SARA_SOURCE_DIR "."
#endif

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw sara::RuntimeFault("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Look beside the working directory first, then in the source tree, so
/// the tool runs both from a build dir and from the repo root.
fs::path resolve(const fs::path& path) {
    if (fs::exists(path))
        return path;
    fs::path fallback = fs::path(SARA_SOURCE_DIR) / path;
    if (fs::exists(fallback))
        return fallback;
    return path;
}

sara::harness::RunAssets load_assets(const fs::path& query_path, const std::string& rules_file) {
    sara::harness::RunAssets assets;
    assets.query_text = read_file(resolve(query_path));
    if (!rules_file.empty())
        assets.rule_set = sara::rules::parse_rules(read_file(resolve(rules_file)));
    return assets;
}

std::vector<int> parse_sizes(const std::string& spec) {
    // "10..100:10" or a single count
    auto dots = spec.find("..");
    if (dots == std::string::npos)
        return {std::stoi(spec)};
    auto colon = spec.find(':', dots);
    const int lo = std::stoi(spec.substr(0, dots));
    const int hi = std::stoi(spec.substr(dots + 2, colon - dots - 2));
    const int step = colon == std::string::npos ? 10 : std::stoi(spec.substr(colon + 1));
    if (step <= 0 || hi < lo)
        throw sara::ValidationError("bad station range: " + spec);
    std::vector<int> sizes;
    for (int n = lo; n <= hi; n += step)
        sizes.push_back(n);
    return sizes;
}

void print_binding_table(const sara::sparql::BindingTable& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        std::cout << (i ? "," : "") << table.columns[i];
    std::cout << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            std::cout << (i ? "," : "") << row[i].text();
        std::cout << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heterogeneous-network AP selection simulator"};
    app.require_subcommand(1);

    std::string scenario_file;
    std::string out_dir = ".";
    std::string query_path = "assets/queries/best_ap_v1.rq";
    std::string kb_file;
    std::string rq_file;
    std::string stations_spec = "10..100:10";
    std::string bench_out = "overhead.csv";
    long long seed = -1;
    int reps = 10;

    auto* run = app.add_subcommand("run", "simulate a scenario and write CSV metrics");
    run->add_option("--scenario", scenario_file, "scenario JSON file")->required();
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--query", query_path, "ranking query asset (.rq)");

    auto* query = app.add_subcommand("query", "evaluate a query over a knowledge-base file");
    query->add_option("--kb", kb_file, "N-Triples knowledge base")->required();
    query->add_option("--query", rq_file, "query file (.rq)")->required();

    auto* bench = app.add_subcommand("bench-overhead", "time selection passes vs. network size");
    bench->add_option("--stations", stations_spec, "station counts, e.g. 10..100:10");
    bench->add_option("--reps", reps, "repetitions per size");
    bench->add_option("--out", bench_out, "output CSV");
    bench->add_option("--scenario", scenario_file, "base scenario JSON file");
    bench->add_option("--query", query_path, "ranking query asset (.rq)");

    auto* validate = app.add_subcommand("validate", "schema-check a scenario file");
    validate->add_option("--scenario", scenario_file, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            sara::sim::ScenarioConfig config = sara::sim::load_scenario(resolve(scenario_file));
            if (seed >= 0)
                config.seed = static_cast<std::uint64_t>(seed);
            auto assets = load_assets(query_path, config.selection.rules_file);
            sara::harness::RunResult result = sara::harness::run_scenario(config, assets);

            fs::create_directories(out_dir);
            sara::harness::export_csv(result.records, fs::path(out_dir) / "records.csv");
            sara::harness::export_csv(result.gains, fs::path(out_dir) / "gains.csv");
            sara::harness::export_csv(result.decisions, fs::path(out_dir) / "decisions.csv");

            std::cout << "settle_complete_s=" << result.settle_complete_s << "\n"
                      << "selection_events=" << result.decisions.size() << "\n"
                      << "median_gain_executed_percent=" << result.gains.median_gain_executed << "\n"
                      << "median_gain_default_percent=" << result.gains.median_gain_default << "\n"
                      << "fraction_executed_gain_ge_200=" << result.gains.fraction_executed_ge_200
                      << "\n";
        } else if (query->parsed()) {
            sara::kg::Graph graph = sara::kg::load_ntriples(read_file(resolve(kb_file)));
            sara::sparql::Query q = sara::sparql::parse_query(read_file(resolve(rq_file)));
            print_binding_table(sara::sparql::evaluate(graph, q));
        } else if (bench->parsed()) {
            sara::sim::ScenarioConfig config =
                sara::sim::load_scenario(resolve(scenario_file.empty()
                                                     ? std::string("assets/scenarios/paper_default.json")
                                                     : scenario_file));
            auto assets = load_assets(query_path, "");
            auto report = sara::harness::bench_overhead(config, parse_sizes(stations_spec), reps, assets);
            sara::harness::export_csv(report, bench_out);
            std::cout << "rows=" << report.rows.size() << "\n";
        } else if (validate->parsed()) {
            sara::sim::load_scenario(resolve(scenario_file));
            std::cout << "ok\n";
        }
    } catch (const sara::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const sara::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
