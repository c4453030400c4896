#include "rsep/bench.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rsep/errors.hpp"
#include "rsep/rng.hpp"
#include "rsep/stats.hpp"

namespace rsep {

std::string ReductionConfig::label() const {
    if (sparsity && aggregation) return "sparsity+aggregation";
    if (sparsity) return "sparsity";
    if (aggregation) return "aggregation";
    return "none";
}

SolveResult solve_with_reductions(const Instance& inst, SolverId solver,
                                  const ReductionConfig& reduction,
                                  const SolverOptions& options) {
    const Instance* target = &inst;
    std::optional<AggregationPlan> plan;
    if (reduction.aggregation) {
        plan = plan_aggregation(inst);
        if (plan) target = &plan->scaled;
    }

    EliminationMask mask;
    const EliminationMask* mask_ptr = nullptr;
    if (reduction.sparsity) {
        mask = eliminate_sparse(*target);
        mask_ptr = &mask;
    }

    SolveResult result = [&] {
        switch (solver) {
            case SolverId::Exact:
                return solve_exact(*target, options.node_budget, mask_ptr);
            case SolverId::Relaxed:
                return solve_relaxed(*target,
                                     RelaxParams::for_instance(*target, options.lambda,
                                                               options.restarts,
                                                               options.seed),
                                     mask_ptr);
            case SolverId::Mlf:
                return solve_mlf(*target);
            case SolverId::BruteForce:
                return solve_brute_force(*target, options.node_budget);
        }
        throw std::logic_error("unknown solver");
    }();

    if (plan) {
        double elapsed = result.elapsed_ms;
        Allocation expanded = expand_solution(*plan, result.allocation);
        result.allocation = std::move(expanded);
        result.objective = count_linked(inst, result.allocation);
        result.elapsed_ms = elapsed;
    }
    return result;
}

namespace {

std::string csv_escape_double(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

} // namespace

std::string csv_header() {
    return "kind,cell_index,M,B,N_RB,T,density,load_fraction,seed,rep,solver,"
           "sparsity,aggregation,objective,certified,elapsed_ms,nodes,gap_vs_exact,"
           "x_name,x,series,metric,mean,std";
}

std::string ExperimentRecord::csv_row() const {
    std::ostringstream out;
    out << "record," << cell_index << ',' << num_mvnos << ',' << num_bs << ',' << n_rb
        << ',' << num_slots << ',' << adjacency_density << ',' << load_fraction << ','
        << seed << ',' << repetition << ',' << solver_name(solver) << ','
        << (reduction.sparsity ? 1 : 0) << ',' << (reduction.aggregation ? 1 : 0) << ','
        << objective << ',' << (certified ? 1 : 0) << ',' << csv_escape_double(elapsed_ms)
        << ',' << nodes << ',';
    if (gap_vs_exact) out << csv_escape_double(*gap_vs_exact);
    out << ",,,,,,"; // summary-only columns
    return out.str();
}

std::string ExperimentRecord::json_line() const {
    nlohmann::ordered_json doc;
    doc["cell_index"] = cell_index;
    doc["M"] = num_mvnos;
    doc["B"] = num_bs;
    doc["N_RB"] = n_rb;
    doc["T"] = num_slots;
    doc["density"] = adjacency_density;
    doc["load_fraction"] = load_fraction;
    doc["seed"] = seed;
    doc["rep"] = repetition;
    doc["solver"] = solver_name(solver);
    doc["sparsity"] = reduction.sparsity;
    doc["aggregation"] = reduction.aggregation;
    doc["objective"] = objective;
    doc["certified"] = certified;
    doc["elapsed_ms"] = elapsed_ms;
    doc["nodes"] = nodes;
    if (gap_vs_exact)
        doc["gap_vs_exact"] = *gap_vs_exact;
    else
        doc["gap_vs_exact"] = nullptr;
    return doc.dump();
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RSEP_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

struct Cell {
    int index;
    int num_mvnos;
    int num_bs;
};

// One repetition of one cell: a fresh seeded instance solved by every
// requested (solver, reduction) combination.
std::vector<ExperimentRecord> run_task(const SweepConfig& config, const Cell& cell, int rep) {
    ScenarioSpec spec = config.base;
    spec.num_mvnos = cell.num_mvnos;
    spec.num_bs = cell.num_bs;
    spec.seed = mix_seed(config.base.seed, static_cast<std::uint64_t>(cell.index) * 10007 + rep);
    Instance inst = generate(spec);

    std::vector<ExperimentRecord> rows;
    std::optional<std::int64_t> exact_certified;

    for (const ReductionConfig& reduction : config.reductions)
        for (SolverId solver : config.solvers) {
            ExperimentRecord row;
            row.cell_index = cell.index;
            row.num_mvnos = spec.num_mvnos;
            row.num_bs = spec.num_bs;
            row.n_rb = spec.n_rb;
            row.num_slots = spec.num_slots();
            row.adjacency_density = spec.adjacency_density;
            row.load_fraction = spec.load_fraction;
            row.seed = spec.seed;
            row.repetition = rep;
            row.solver = solver;
            row.reduction = reduction;

            SolverOptions options = config.options;
            options.seed = mix_seed(spec.seed, static_cast<std::uint64_t>(solver));
            try {
                SolveResult result = solve_with_reductions(inst, solver, reduction, options);
                if (result.objective != count_linked(inst, result.allocation))
                    throw std::logic_error("solver objective failed revalidation");
                row.objective = result.objective;
                row.certified = result.optimal_certified;
                row.elapsed_ms = result.elapsed_ms;
                row.nodes = result.nodes;
                if (result.optimal_certified &&
                    (solver == SolverId::Exact || solver == SolverId::BruteForce) &&
                    !exact_certified)
                    exact_certified = result.objective;
            } catch (const BudgetExceededError&) {
                // recorded as a failed, uncertified row; the sweep moves on
            }
            rows.push_back(std::move(row));
        }

    for (ExperimentRecord& row : rows) {
        if (!exact_certified || row.objective < 0) continue;
        std::int64_t exact = *exact_certified;
        if (exact > 0)
            row.gap_vs_exact = static_cast<double>(exact - row.objective) /
                               static_cast<double>(exact);
        else
            row.gap_vs_exact = 0.0;
    }
    return rows;
}

void write_summaries(const std::vector<ExperimentRecord>& records,
                     const std::vector<Cell>& cells, bool sweep_over_m, std::ostream* csv) {
    if (!csv) return;
    // (cell, solver, reduction label) -> metric samples
    std::map<std::tuple<int, std::string, std::string>,
             std::map<std::string, std::vector<double>>> groups;
    for (const ExperimentRecord& r : records) {
        auto key = std::make_tuple(r.cell_index, solver_name(r.solver), r.reduction.label());
        auto& metrics = groups[key];
        if (r.objective >= 0) {
            metrics["objective"].push_back(static_cast<double>(r.objective));
            metrics["elapsed_ms"].push_back(r.elapsed_ms);
        }
        if (r.gap_vs_exact) metrics["gap"].push_back(*r.gap_vs_exact);
    }
    for (const auto& [key, metrics] : groups) {
        const auto& [cell_index, solver, reduction] = key;
        const Cell& cell = cells[cell_index];
        for (const auto& [metric, samples] : metrics) {
            std::ostringstream out;
            out << "summary," << cell_index << ',' << cell.num_mvnos << ',' << cell.num_bs
                << ",,,,,,,,,,,,,,,";
            out << (sweep_over_m ? "M" : "B") << ','
                << (sweep_over_m ? cell.num_mvnos : cell.num_bs) << ',' << solver;
            if (reduction != "none") out << '+' << reduction;
            out << ',' << metric << ',' << mean(samples) << ',' << sample_stddev(samples);
            *csv << out.str() << '\n';
        }
    }
}

} // namespace

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config, std::ostream* csv,
                                        std::ostream* jsonl) {
    std::vector<int> ms = config.m_values.empty() ? std::vector<int>{config.base.num_mvnos}
                                                  : config.m_values;
    std::vector<int> bs = config.b_values.empty() ? std::vector<int>{config.base.num_bs}
                                                  : config.b_values;
    if (config.repetitions < 1)
        throw std::invalid_argument("repetitions must be at least 1");

    std::vector<Cell> cells;
    for (int b : bs)
        for (int m : ms) cells.push_back({static_cast<int>(cells.size()), m, b});

    struct Task {
        int cell;
        int rep;
    };
    std::vector<Task> tasks;
    for (const Cell& cell : cells)
        for (int rep = 0; rep < config.repetitions; ++rep) tasks.push_back({cell.index, rep});

    std::vector<std::vector<ExperimentRecord>> results(tasks.size());
    std::vector<char> done(tasks.size(), 0);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    int thread_count = std::min<int>(resolve_threads(config.threads),
                                     static_cast<int>(tasks.size()));
    std::vector<std::thread> workers;
    workers.reserve(thread_count);
    for (int w = 0; w < thread_count; ++w)
        workers.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                std::vector<ExperimentRecord> rows =
                    run_task(config, cells[tasks[i].cell], tasks[i].rep);
                {
                    std::lock_guard<std::mutex> lock(mu);
                    results[i] = std::move(rows);
                    done[i] = 1;
                }
                cv.notify_all();
            }
        });

    // Stream rows in task order as they complete, independent of which
    // worker finishes first.
    if (csv) *csv << csv_header() << '\n';
    std::vector<ExperimentRecord> all;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return done[i] == 1; });
        for (const ExperimentRecord& row : results[i]) {
            if (csv) *csv << row.csv_row() << '\n';
            if (jsonl) *jsonl << row.json_line() << '\n';
            all.push_back(row);
        }
        results[i].clear();
    }
    for (std::thread& t : workers) t.join();

    write_summaries(all, cells, ms.size() > 1 || bs.size() <= 1, csv);
    if (csv) csv->flush();
    if (jsonl) jsonl->flush();
    return all;
}

std::vector<ExperimentRecord> linked_rb_study(const SweepConfig& config, std::ostream* csv,
                                              std::ostream* jsonl) {
    SweepConfig restricted = config;
    restricted.solvers = {SolverId::Relaxed, SolverId::Mlf};
    return run_sweep(restricted, csv, jsonl);
}

} // namespace rsep
