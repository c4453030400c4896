#ifndef RSEP_SOLVERS_HPP
#define RSEP_SOLVERS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsep/allocation.hpp"
#include "rsep/instance.hpp"
#include "rsep/reduction.hpp"

namespace rsep {

enum class SolverId { Exact, Relaxed, Mlf, BruteForce };

std::string solver_name(SolverId id);
std::optional<SolverId> solver_from_name(const std::string& name);

struct SolveResult {
    Allocation allocation;
    std::int64_t objective = 0; // linked-RB count of `allocation`
    SolverId solver_id = SolverId::Exact;
    double elapsed_ms = 0.0;
    bool optimal_certified = false;
    std::uint64_t nodes = 0; // search nodes / improving moves, solver-specific

    /// {solver, objective, certified, elapsed_ms, allocation} with the
    /// allocation as a per-BS grid of 1-based MVNO ids (null = unassigned).
    std::string to_json() const;
};

/// Penalty-relaxation parameters. The penalty weight must dominate the
/// largest eigenvalue z* of Q, otherwise the hypercube relaxation is not
/// equivalent to the binary problem and construction is refused.
class RelaxParams {
public:
    /// lambda defaults to z* + 1 (z* taken as 0 when Y has no edge).
    static RelaxParams for_instance(const Instance& inst,
                                    std::optional<double> lambda = std::nullopt,
                                    int max_restarts = 16,
                                    std::uint64_t rounding_seed = 1,
                                    double convergence_tol = 0.0);

    double lambda() const { return lambda_; }
    int max_restarts() const { return max_restarts_; }
    std::uint64_t rounding_seed() const { return rounding_seed_; }
    double convergence_tol() const { return convergence_tol_; }

private:
    RelaxParams(double lambda, int max_restarts, std::uint64_t rounding_seed,
                double convergence_tol)
        : lambda_(lambda), max_restarts_(max_restarts), rounding_seed_(rounding_seed),
          convergence_tol_(convergence_tol) {}

    double lambda_;
    int max_restarts_;
    std::uint64_t rounding_seed_;
    double convergence_tol_;
};

/// Exhaustive oracle. Enumerates per-BS multiset permutations of the MVNO
/// labels; the first BS is kept in one canonical order, which is lossless
/// because the link count is invariant under a common permutation of the
/// slot indices. Throws BudgetExceededError rather than return a
/// suboptimal answer.
SolveResult solve_brute_force(const Instance& inst,
                              std::uint64_t node_budget = 10'000'000);

/// Branch and bound over slot columns. Certifies optimality when the
/// search finishes within the node budget; otherwise returns the best
/// incumbent with optimal_certified = false.
SolveResult solve_exact(const Instance& inst, std::uint64_t node_budget = 20'000'000,
                        const EliminationMask* mask = nullptr);

/// Penalty-relaxation solver: the convex surrogate coincides with the true
/// objective at binary points, so the search walks vertices of the
/// feasibility polytope via quota-preserving swaps, restarted from random
/// feasible allocations. Never certifies.
SolveResult solve_relaxed(const Instance& inst, const RelaxParams& params,
                          const EliminationMask* mask = nullptr);

/// Most-linked-first greedy: MVNOs sorted by linking index, each filling
/// the lowest-indexed free slots BS by BS. Deterministic.
SolveResult solve_mlf(const Instance& inst);

/// Linking index l_m = sum_{b} sum_{b' != b} min(L[m][b], L[m][b']) * y[b][b'];
/// ordered pairs each counted, as defined.
std::vector<std::int64_t> linking_index(const Instance& inst);

/// Surrogate objective (1/2) x^T (Q + 2 lambda I) x - lambda e^T x evaluated
/// at a binary point. Exposed for the penalty-identity checks.
double relaxed_surrogate_value(const Instance& inst, const Allocation& alloc,
                               double lambda);

/// Enumerates feasible allocations, calling visit(alloc, links) for each.
/// With canonical_first_bs the first BS row is fixed in one sorted order
/// (the brute-force reduction); without it the full feasible set is
/// visited. Returns the number of leaves visited.
std::uint64_t enumerate_feasible(const Instance& inst, bool canonical_first_bs,
                                 std::uint64_t node_budget,
                                 const std::function<void(const Allocation&, std::int64_t)>& visit);

} // namespace rsep

#endif // RSEP_SOLVERS_HPP
