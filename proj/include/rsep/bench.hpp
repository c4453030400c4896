#ifndef RSEP_BENCH_HPP
#define RSEP_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsep/reduction.hpp"
#include "rsep/scenario.hpp"
#include "rsep/solvers.hpp"

namespace rsep {

struct ReductionConfig {
    bool sparsity = false;
    bool aggregation = false;

    std::string label() const;
};

struct SolverOptions {
    std::uint64_t node_budget = 20'000'000;
    int restarts = 16;
    std::optional<double> lambda;
    std::uint64_t seed = 1;
};

/// One-stop dispatch used by the harness and the CLI: applies the requested
/// reductions around the chosen solver. Aggregation solves the scaled
/// instance and expands the result back; the returned allocation and
/// objective always refer to the original instance. Non-aggregable
/// instances run unreduced under an aggregation request.
SolveResult solve_with_reductions(const Instance& inst, SolverId solver,
                                  const ReductionConfig& reduction,
                                  const SolverOptions& options);

/// One benchmark row. gap_vs_exact is present only when a certified exact
/// objective for the same instance is available: (exact - obj) / exact for
/// exact > 0, 0 when both are 0.
struct ExperimentRecord {
    int cell_index = 0;
    int num_mvnos = 0;
    int num_bs = 0;
    int n_rb = 0;
    int num_slots = 0;
    double adjacency_density = 0.0;
    double load_fraction = 0.0;
    std::uint64_t seed = 0;
    int repetition = 0;
    SolverId solver = SolverId::Mlf;
    ReductionConfig reduction;
    std::int64_t objective = -1; // -1: solver failed (budget)
    bool certified = false;
    double elapsed_ms = 0.0;
    std::uint64_t nodes = 0;
    std::optional<double> gap_vs_exact;

    std::string csv_row() const;
    std::string json_line() const;
};

struct SweepConfig {
    ScenarioSpec base;
    std::vector<int> m_values; // empty = {base.num_mvnos}
    std::vector<int> b_values; // empty = {base.num_bs}
    int repetitions = 20;
    std::vector<SolverId> solvers{SolverId::Exact, SolverId::Relaxed, SolverId::Mlf};
    std::vector<ReductionConfig> reductions{{}};
    SolverOptions options;
    int threads = 0; // 0: RSEP_THREADS env var, then hardware concurrency
};

/// Documented header line of the records CSV.
std::string csv_header();

/// Cartesian sweep over (M, B) cells x repetitions x solvers x reductions.
/// Every repetition draws an independent seeded instance; rows stream to
/// `csv` (and optionally `jsonl`) in deterministic cell order while cells
/// execute on a worker pool. Mean/stddev summary rows per (cell, solver,
/// reduction) follow the records. Budget-exceeded solver runs become
/// objective = -1 rows; the sweep never aborts on them.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& config, std::ostream* csv,
                                        std::ostream* jsonl = nullptr);

/// The linked-RB study: run_sweep restricted to the relaxed and MLF
/// solvers (no exact reference, no gaps).
std::vector<ExperimentRecord> linked_rb_study(const SweepConfig& config, std::ostream* csv,
                                              std::ostream* jsonl = nullptr);

int resolve_threads(int requested);

} // namespace rsep

#endif // RSEP_BENCH_HPP
