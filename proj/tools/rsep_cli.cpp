// Command-line front end: solve single instances, validate allocations,
// aggregate RBAMs, generate random instances, and run benchmark sweeps.
//
// Exit codes (stable, relied on by scripts and tests):
//   0  success / feasible
//   1  malformed input, unreadable file, bad flags
//   2  infeasible instance (per-BS quota overload)
//   3  search budget exhausted (incumbent written when one exists)
//   4  infeasible allocation (validate / aggregate input)
//   5  instance not aggregable (aggregate)

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsep/bench.hpp"
#include "rsep/errors.hpp"
#include "rsep/reduction.hpp"
#include "rsep/scenario.hpp"
#include "rsep/solvers.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

rsep::Instance load_instance(const std::string& instance_path, const std::string& scenario) {
    if (!scenario.empty()) return rsep::fixed_scenario(scenario);
    if (instance_path.empty())
        throw std::invalid_argument("provide --instance FILE or --scenario NAME");
    return rsep::Instance::from_json(read_file(instance_path));
}

// Allocation files: either a bare per-BS grid or any object with an
// "allocation" field (SolveResult JSON works directly). Cells are null, a
// 1-based MVNO id, or a list of ids -- the list form exists so that C2
// violations are expressible and reportable.
rsep::CellAssignment parse_allocation(const std::string& text, int n_rb, int num_slots) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("allocation JSON parse error: ") + e.what());
    }
    if (doc.is_object() && doc.contains("allocation")) doc = doc["allocation"];
    if (!doc.is_array() || doc.empty())
        throw std::invalid_argument("allocation JSON must be an array of per-BS rows");

    rsep::CellAssignment cells;
    cells.num_bs = static_cast<int>(doc.size());
    cells.num_subcarriers = n_rb;
    cells.num_slots = num_slots;
    cells.owners.assign(cells.num_bs, {});
    for (int b = 0; b < cells.num_bs; ++b) {
        if (!doc[b].is_array())
            throw std::invalid_argument("allocation row " + std::to_string(b + 1) +
                                        " is not an array");
        if (static_cast<int>(doc[b].size()) != cells.grid_size())
            throw std::invalid_argument(
                "allocation row " + std::to_string(b + 1) + " has " +
                std::to_string(doc[b].size()) + " slots, the instance grid has " +
                std::to_string(cells.grid_size()));
        cells.owners[b].resize(doc[b].size());
        for (std::size_t tau = 0; tau < doc[b].size(); ++tau) {
            const auto& cell = doc[b][tau];
            if (cell.is_null()) continue;
            if (cell.is_number_integer()) {
                cells.owners[b][tau] = {cell.get<int>() - 1};
            } else if (cell.is_array()) {
                for (const auto& id : cell) cells.owners[b][tau].push_back(id.get<int>() - 1);
            } else {
                throw std::invalid_argument("allocation cells must be null, an id, or a list");
            }
        }
    }
    return cells;
}

std::vector<int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    std::vector<int> values;
    if (dots == std::string::npos) {
        values.push_back(std::stoi(text));
        return values;
    }
    int lo = std::stoi(text.substr(0, dots));
    int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("bad range: " + text);
    for (int v = lo; v <= hi; ++v) values.push_back(v);
    return values;
}

struct CommonOpts {
    std::string instance_path;
    std::string scenario;
    std::string out;
    std::string solver = "exact";
    std::optional<double> lambda;
    std::uint64_t node_budget = 20'000'000;
    int restarts = 16;
    std::uint64_t seed = 1;
    bool sparsity = false;
    bool aggregate = false;
};

int cmd_solve(const CommonOpts& opt) {
    rsep::Instance inst = load_instance(opt.instance_path, opt.scenario);
    auto solver = rsep::solver_from_name(opt.solver);
    if (!solver) throw std::invalid_argument("unknown solver: " + opt.solver);

    rsep::ReductionConfig reduction{opt.sparsity, opt.aggregate};
    rsep::SolverOptions options{opt.node_budget, opt.restarts, opt.lambda, opt.seed};

    std::optional<rsep::SolveResult> result;
    try {
        result = rsep::solve_with_reductions(inst, *solver, reduction, options);
    } catch (const rsep::BudgetExceededError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }

    std::cout << "objective " << result->objective << "\n";
    std::cout << "solver=" << rsep::solver_name(result->solver_id)
              << " certified=" << (result->optimal_certified ? "yes" : "no")
              << " elapsed_ms=" << result->elapsed_ms << " nodes=" << result->nodes << "\n";
    if (!opt.out.empty()) write_file(opt.out, result->to_json());
    return result->optimal_certified || result->solver_id != rsep::SolverId::Exact ? 0 : 3;
}

int cmd_validate(const std::string& instance_path, const std::string& scenario,
                 const std::string& allocation_path) {
    rsep::Instance inst = load_instance(instance_path, scenario);
    rsep::CellAssignment cells = parse_allocation(read_file(allocation_path),
                                                  inst.num_subcarriers(), inst.num_slots());
    if (cells.num_bs != inst.num_bs())
        throw std::invalid_argument("allocation has " + std::to_string(cells.num_bs) +
                                    " BS rows, the instance has " +
                                    std::to_string(inst.num_bs()));

    rsep::FeasibilityReport report = rsep::check_feasibility(inst, cells);
    std::cout << report.to_string();
    if (!report.empty()) return 4;

    rsep::Allocation alloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
    for (int b = 0; b < inst.num_bs(); ++b)
        for (int tau = 0; tau < inst.grid_size(); ++tau)
            if (!cells.owners[b][tau].empty())
                alloc.set_owner(b, tau, cells.owners[b][tau][0]);
    std::cout << "linked " << rsep::count_linked(inst, alloc) << "\n";
    return 0;
}

int cmd_aggregate(const std::string& instance_path, const std::string& scenario,
                  const std::string& allocation_path, const std::string& out) {
    rsep::Instance inst = load_instance(instance_path, scenario);
    rsep::CellAssignment cells = parse_allocation(read_file(allocation_path),
                                                  inst.num_subcarriers(), inst.num_slots());
    rsep::FeasibilityReport report = rsep::check_feasibility(inst, cells);
    if (!report.empty()) {
        std::cout << report.to_string();
        return 4;
    }
    rsep::Allocation alloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
    for (int b = 0; b < inst.num_bs(); ++b)
        for (int tau = 0; tau < inst.grid_size(); ++tau)
            if (!cells.owners[b][tau].empty())
                alloc.set_owner(b, tau, cells.owners[b][tau][0]);

    auto plan = rsep::plan_aggregation(inst);
    if (!plan) {
        std::cout << "not aggregable\n";
        return 5;
    }
    rsep::Rbam aggregated = rsep::aggregate_solution(inst, alloc, plan->k);
    std::cout << "aggregated with K=" << plan->k << " ("
              << (plan->axis == rsep::AggregationAxis::TimeSlot ? "time-slot" : "subcarrier")
              << " axis), " << aggregated.num_cols() << " columns, links "
              << aggregated.links(inst.adjacency()) << " (x" << plan->k << ")\n";
    std::cout << aggregated.pretty();
    if (!out.empty()) write_file(out, aggregated.to_json());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RSEP solver toolkit: resource-block slicing enforcement"};
    app.require_subcommand(1);

    CommonOpts opt;
    rsep::ScenarioSpec spec;
    std::string allocation_path, spec_path, jsonl_path;
    std::string sweep_m, sweep_b, solvers_csv = "exact,relaxed,mlf";
    int reps = 20;
    int force_k = 0;
    bool linked_rb = false;

    auto add_instance_flags = [&](CLI::App* cmd) {
        cmd->add_option("--instance", opt.instance_path, "instance JSON file");
        cmd->add_option("--scenario", opt.scenario, "fixed scenario name (fig1, appendix_shape)");
    };
    auto add_spec_flags = [&](CLI::App* cmd) {
        cmd->add_option("--m", spec.num_mvnos, "number of MVNOs");
        cmd->add_option("--b", spec.num_bs, "number of BSs");
        cmd->add_option("--n-rb", spec.n_rb, "subcarrier blocks per slot");
        cmd->add_option("--n-sf", spec.n_sf, "sub-frames per frame");
        cmd->add_option("--n-frames", spec.n_frames, "frames per enforcement window");
        cmd->add_option("--density", spec.adjacency_density, "BS interference probability");
        cmd->add_option("--load", spec.load_fraction, "fraction of the grid under quota");
        cmd->add_option("--seed", spec.seed, "generator seed");
        cmd->add_option("--force-k", force_k, "round quotas down to multiples of k");
        cmd->add_option("--spec", spec_path, "scenario spec JSON file (overrides flags)");
    };

    double lambda_flag = std::numeric_limits<double>::quiet_NaN();

    CLI::App* solve = app.add_subcommand("solve", "solve one instance");
    add_instance_flags(solve);
    solve->add_option("--solver", opt.solver, "exact|relaxed|mlf|brute");
    solve->add_option("--lambda", lambda_flag, "penalty weight (default z* + 1)");
    solve->add_option("--node-budget", opt.node_budget, "search node budget");
    solve->add_option("--restarts", opt.restarts, "relaxed-solver restarts");
    solve->add_option("--seed", opt.seed, "relaxed-solver seed");
    solve->add_flag("--sparsity", opt.sparsity, "eliminate zero-quota variables first");
    solve->add_flag("--aggregate", opt.aggregate, "solve the aggregated instance when possible");
    solve->add_option("--out", opt.out, "write SolveResult JSON here");

    CLI::App* validate = app.add_subcommand("validate", "check an allocation against an instance");
    add_instance_flags(validate);
    validate->add_option("--allocation", allocation_path, "allocation JSON file")->required();

    CLI::App* aggregate = app.add_subcommand("aggregate", "map an allocation to an aggregated RBAM");
    add_instance_flags(aggregate);
    aggregate->add_option("--allocation", allocation_path, "allocation JSON file")->required();
    aggregate->add_option("--out", opt.out, "write aggregated RBAM JSON here");

    CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
    add_spec_flags(gen);
    gen->add_option("--out", opt.out, "write instance JSON here");

    CLI::App* sweep = app.add_subcommand("sweep", "run a benchmark sweep");
    add_spec_flags(sweep);
    sweep->add_option("--sweep-m", sweep_m, "MVNO range A..B");
    sweep->add_option("--sweep-b", sweep_b, "BS range A..B");
    sweep->add_option("--reps", reps, "repetitions per cell");
    sweep->add_option("--solvers", solvers_csv, "comma list of solvers");
    sweep->add_flag("--sparsity", opt.sparsity, "also apply sparsity elimination");
    sweep->add_flag("--aggregate", opt.aggregate, "also apply RB aggregation");
    sweep->add_flag("--linked-rb", linked_rb, "linked-RB study (relaxed and mlf only)");
    sweep->add_option("--node-budget", opt.node_budget, "exact-solver node budget");
    sweep->add_option("--restarts", opt.restarts, "relaxed-solver restarts");
    sweep->add_option("--out", opt.out, "records CSV path (default stdout)");
    sweep->add_option("--jsonl", jsonl_path, "JSON-lines mirror path");

    CLI11_PARSE(app, argc, argv);

    if (!std::isnan(lambda_flag)) opt.lambda = lambda_flag;

    try {
        if (solve->parsed()) return cmd_solve(opt);
        if (validate->parsed())
            return cmd_validate(opt.instance_path, opt.scenario, allocation_path);
        if (aggregate->parsed())
            return cmd_aggregate(opt.instance_path, opt.scenario, allocation_path, opt.out);

        if (gen->parsed()) {
            if (!spec_path.empty()) spec = rsep::ScenarioSpec::from_json(read_file(spec_path));
            if (force_k > 0) spec.force_aggregable_k = force_k;
            rsep::Instance inst = rsep::generate(spec);
            if (!opt.out.empty())
                write_file(opt.out, inst.to_json());
            else
                std::cout << inst.to_json();
            return 0;
        }

        if (sweep->parsed()) {
            if (!spec_path.empty()) spec = rsep::ScenarioSpec::from_json(read_file(spec_path));
            if (force_k > 0) spec.force_aggregable_k = force_k;
            rsep::SweepConfig config;
            config.base = spec;
            if (!sweep_m.empty()) config.m_values = parse_range(sweep_m);
            if (!sweep_b.empty()) config.b_values = parse_range(sweep_b);
            config.repetitions = reps;
            config.solvers.clear();
            std::stringstream ss(solvers_csv);
            std::string token;
            while (std::getline(ss, token, ',')) {
                auto solver = rsep::solver_from_name(token);
                if (!solver) throw std::invalid_argument("unknown solver: " + token);
                config.solvers.push_back(*solver);
            }
            config.reductions = {{false, false}};
            if (opt.sparsity || opt.aggregate)
                config.reductions.push_back({opt.sparsity, opt.aggregate});
            config.options.node_budget = opt.node_budget;
            config.options.restarts = opt.restarts;

            std::ofstream csv_file;
            std::ostream* csv = &std::cout;
            if (!opt.out.empty()) {
                csv_file.open(opt.out);
                if (!csv_file) throw std::invalid_argument("cannot write file: " + opt.out);
                csv = &csv_file;
            }
            std::ofstream jsonl_file;
            std::ostream* jsonl = nullptr;
            if (!jsonl_path.empty()) {
                jsonl_file.open(jsonl_path);
                if (!jsonl_file) throw std::invalid_argument("cannot write file: " + jsonl_path);
                jsonl = &jsonl_file;
            }
            if (linked_rb)
                rsep::linked_rb_study(config, csv, jsonl);
            else
                rsep::run_sweep(config, csv, jsonl);
            return 0;
        }
    } catch (const rsep::InfeasibleInstanceError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const rsep::FeasibilityError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
