#ifndef RSEP_REDUCTION_HPP
#define RSEP_REDUCTION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "rsep/allocation.hpp"
#include "rsep/instance.hpp"
#include "rsep/rbam.hpp"

namespace rsep {

/// Pairs (m, b) with a zero quota; their variables are fixed to 0 before
/// any search (C1 forces them to 0 anyway, so objectives are unchanged).
/// Solvers accepting a mask never branch on eliminated variables.
struct EliminationMask {
    std::vector<std::pair<int, int>> eliminated; // (m, b), 0-based

    bool contains(int m, int b) const;
    /// Per-BS candidate MVNO lists with eliminated pairs removed.
    std::vector<std::vector<int>> candidates_per_bs(const Instance& inst) const;
};

EliminationMask eliminate_sparse(const Instance& inst);

enum class AggregationAxis { Subcarrier, TimeSlot };

/// A K-fold shrink of the resource grid: K is the GCD of the positive
/// quotas, the chosen axis is divisible by K, and scaled holds the
/// equivalent instance with profile L / K.
struct AggregationPlan {
    int k;
    AggregationAxis axis;
    Instance scaled;
};

/// GCD-based plan, preferring the time axis when both divide. nullopt when
/// K <= 1 or neither axis is divisible ("not aggregable" is a value, not an
/// error).
std::optional<AggregationPlan> plan_aggregation(const Instance& inst);

/// Replicates every aggregated slot's assignment across its K constituent
/// slots of the original grid. The result is feasible for the original
/// instance and carries exactly K times the aggregated link count.
Allocation expand_solution(const AggregationPlan& plan, const Allocation& aggregated);

/// The RBAM aggregation mapping: rewrites an optimal allocation into an
/// aggregated RBAM with N_RB * T / k columns using coherent column swaps,
/// identical-column extraction, and link-preserving partial swaps. The
/// total link count is asserted invariant after every step; if no
/// link-preserving partial swap exists the mapping throws PartialSwapError
/// with the offending RBAM state.
Rbam aggregate_solution(const Instance& inst, const Allocation& alloc, int k);

/// Swap two RBAM columns wholesale. Feasibility- and link-preserving for
/// any allocation; exposed for the standalone transform property tests.
void coherent_swap(Rbam& rbam, int col1, int col2);

} // namespace rsep

#endif // RSEP_REDUCTION_HPP
