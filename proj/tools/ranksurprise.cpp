// Command-line front end: snapshot, analyze, simulate, top.

#include <ranksurprise/error.hpp>
#include <ranksurprise/parallel.hpp>
#include <ranksurprise/pipeline.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace ranksurprise;

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;

struct SimulateArgs {
    SynthConfig synth;
    int shock_step = 7;
    std::string shock_target = "median_in_degree";
    int burst = 50;
    bool no_shock = false;

    SynthConfig resolve() const {
        SynthConfig c = synth;
        if (no_shock)
            return c;
        ShockSpec spec;
        spec.step = shock_step;
        spec.burst_edges = burst;
        if (shock_target.rfind("label:", 0) == 0) {
            spec.selector = ShockSelector::label;
            spec.label = shock_target.substr(6);
        } else if (auto s = parse_shock_selector(shock_target); s && *s != ShockSelector::label) {
            spec.selector = *s;
        } else {
            throw InvalidArgument("unknown --shock-target '" + shock_target +
                                  "' (valid: median_in_degree, random, label:<node>)");
        }
        c.shock = spec;
        return c;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian surprise of rank movement in temporal influence networks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML file with option values; command-line flags take precedence");

    RunConfig run;
    bool weighted = true;
    std::string hypotheses = "past_rank,regular_growth";
    std::string format = "csv";
    std::string delimiter = ",";
    std::string header = "auto";
    int threads = 0;
    std::uint64_t seed = 1;

    app.add_option("--input", run.input, "Edge list: src,dst,year[,weight]");
    app.add_option("--delta", run.delta, "Years per snapshot")->check(CLI::PositiveNumber);
    app.add_option("--start", run.start_year, "First year of the first snapshot (default: earliest event)");
    app.add_option("--end", run.end_year, "Last year covered (default: latest event)");
    app.add_flag("--weighted,!--unweighted", weighted, "Read the weight column (default) or count rows");
    app.add_option("--delimiter", delimiter, "Field delimiter; 'tab' for TSV");
    app.add_option("--header", header, "auto, yes or no")->check(CLI::IsMember({"auto", "yes", "no"}));
    app.add_option("--src-column", run.ingest.src_column, "0-based column of the citing node");
    app.add_option("--dst-column", run.ingest.dst_column, "0-based column of the cited node");
    app.add_option("--year-column", run.ingest.year_column, "0-based column of the year");
    app.add_option("--weight-column", run.ingest.weight_column, "0-based column of the weight");
    app.add_option("--damping", run.pagerank.damping, "PageRank damping factor");
    app.add_option("--tolerance", run.pagerank.tolerance, "PageRank L1 convergence tolerance");
    app.add_option("--max-iterations", run.pagerank.max_iterations, "PageRank iteration cap");
    app.add_option("--hypotheses", hypotheses, "Comma list of past_rank, regular_growth, uniform");
    app.add_option("--clamp-epsilon", run.clamp_epsilon, "Lower bound for Beta prior parameters");
    app.add_flag("--include-bypass,!--exclude-bypass", run.disruption.include_bypass,
                 "Count bypassing citers in the disruption denominator (default on)");
    app.add_flag("--reverse-edges", run.ingest.reverse_edges, "Read rows as cited,citing");
    app.add_option("--out-dir", run.out_dir, "Directory for artifacts");
    app.add_option("--format", format, "Trajectory format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--dataset", run.dataset, "Dataset name in the correlation report");
    app.add_option("--seed", seed, "RNG seed for simulate");
    app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");

    auto* snapshot = app.add_subcommand("snapshot", "Per-snapshot node/edge counts and snapshot cache");
    auto* analyze = app.add_subcommand("analyze", "Centrality, ranks and surprise trajectories");
    analyze->add_option("--plot-node", run.plot_nodes, "Write plot_<node>.svg for these nodes");

    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic network, analyze it, report the shock");
    SimulateArgs sim;
    simulate->add_option("--initial-nodes", sim.synth.initial_nodes, "Seed nodes created at step 1");
    simulate->add_option("--steps", sim.synth.steps, "Growth steps, one snapshot each");
    simulate->add_option("--arrivals", sim.synth.arrivals_per_step, "New nodes per step");
    simulate->add_option("--edges-per-arrival", sim.synth.edges_per_arrival, "Distinct older nodes each arrival cites");
    simulate->add_option("--bias", sim.synth.attachment_bias, "Preferential attachment exponent");
    simulate->add_option("--start-year", sim.synth.start_year, "Year of step 1");
    simulate->add_option("--shock-step", sim.shock_step, "Step receiving the burst");
    simulate->add_option("--shock-target", sim.shock_target, "median_in_degree, random or label:<node>");
    simulate->add_option("--burst", sim.burst, "Isolated citers added to the target at the shock step");
    simulate->add_flag("--no-shock", sim.no_shock, "Plain growth, no burst");

    auto* top = app.add_subcommand("top", "Top-k nodes of a measure at one snapshot");
    std::string measure = "pagerank";
    int top_t = 0;
    std::size_t top_k_count = 10;
    top->add_option("--measure", measure, "pagerank or disruption")->check(CLI::IsMember({"pagerank", "disruption"}));
    top->add_option("--t", top_t, "Snapshot year")->required();
    top->add_option("--k", top_k_count, "Rows to list; ties at the cut are all kept");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        set_threads(threads);
        run.ingest.weighted = weighted;
        run.ingest.delimiter = delimiter == "tab" ? '\t' : (delimiter.empty() ? ',' : delimiter[0]);
        run.ingest.header = header == "yes" ? HeaderMode::present
                            : header == "no" ? HeaderMode::absent
                                             : HeaderMode::automatic;
        run.hypotheses = parse_hypothesis_list(hypotheses);
        run.format = format == "json" ? OutputFormat::json : OutputFormat::csv;

        if (snapshot->parsed()) {
            cmd_snapshot(run, std::cout);
        } else if (analyze->parsed()) {
            cmd_analyze(run, std::cout);
        } else if (simulate->parsed()) {
            SynthConfig synth = sim.resolve();
            synth.seed = seed;
            cmd_simulate(synth, run, std::cout);
        } else if (top->parsed()) {
            cmd_top(run.out_dir, measure, top_t, top_k_count, std::cout);
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    return 0;
}
