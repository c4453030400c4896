#include <chrono>
#include <sstream>

#include "rsep/errors.hpp"
#include "rsep/rng.hpp"
#include "rsep/solvers.hpp"

namespace rsep {

namespace {

// Delta in total links from swapping the owners of slots tau1 and tau2 on
// BS b. Only pairs involving b change; swaps preserve C1 and C2.
int swap_delta(const Instance& inst, const Allocation& alloc, int b, int tau1, int tau2) {
    int a = alloc.owner(b, tau1);
    int c = alloc.owner(b, tau2);
    if (a == c) return 0;
    int delta = 0;
    for (int b2 = 0; b2 < inst.num_bs(); ++b2) {
        if (!inst.adjacent(b, b2)) continue;
        int o1 = alloc.owner(b2, tau1);
        int o2 = alloc.owner(b2, tau2);
        if (a != kUnassigned) delta += (o2 == a) - (o1 == a);
        if (c != kUnassigned) delta += (o1 == c) - (o2 == c);
    }
    return delta;
}

Allocation random_feasible(const Instance& inst, Rng& rng) {
    Allocation alloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
    std::vector<int> labels;
    for (int b = 0; b < inst.num_bs(); ++b) {
        labels.clear();
        for (int m = 0; m < inst.num_mvnos(); ++m)
            labels.insert(labels.end(), inst.quota(m, b), m);
        labels.resize(inst.grid_size(), kUnassigned);
        rng.shuffle(labels);
        for (int tau = 0; tau < inst.grid_size(); ++tau)
            alloc.set_owner(b, tau, labels[tau]);
    }
    return alloc;
}

} // namespace

SolveResult solve_relaxed(const Instance& inst, const RelaxParams& params,
                          const EliminationMask* /*mask*/) {
    auto start = std::chrono::steady_clock::now();
    int overloaded = inst.overloaded_bs();
    if (overloaded >= 0) {
        std::ostringstream msg;
        msg << "infeasible instance: quotas on BS " << overloaded + 1 << " total "
            << inst.bs_load(overloaded) << " > " << inst.grid_size() << " available RBs";
        throw InfeasibleInstanceError(msg.str());
    }

    // The surrogate equals the true link count at every binary point, so the
    // vertex walk runs directly on integer link counts; lambda only backs
    // the equivalence guarantee. Coherent column swaps are in the move set
    // but permute whole columns, which never changes the link count, so
    // their delta is identically zero and they are never the best improving
    // move; only intra-BS pair swaps can improve.
    const int z = inst.grid_size();
    std::int64_t best = -1;
    Allocation best_alloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
    std::uint64_t moves = 0;

    for (int restart = 0; restart < params.max_restarts(); ++restart) {
        Rng rng(mix_seed(params.rounding_seed(), restart));
        Allocation alloc = random_feasible(inst, rng);
        std::int64_t links = 0;
        for (int tau = 0; tau < z; ++tau) links += column_links(inst, alloc, tau);

        for (;;) {
            int best_delta = 0;
            int mb = -1, mt1 = -1, mt2 = -1;
            for (int b = 0; b < inst.num_bs(); ++b)
                for (int tau1 = 0; tau1 < z; ++tau1)
                    for (int tau2 = tau1 + 1; tau2 < z; ++tau2) {
                        int d = swap_delta(inst, alloc, b, tau1, tau2);
                        if (d > best_delta) {
                            best_delta = d;
                            mb = b; mt1 = tau1; mt2 = tau2;
                        }
                    }
            if (static_cast<double>(best_delta) <= params.convergence_tol()) break;
            int a = alloc.owner(mb, mt1);
            alloc.set_owner(mb, mt1, alloc.owner(mb, mt2));
            alloc.set_owner(mb, mt2, a);
            links += best_delta;
            ++moves;
        }

        if (links > best) {
            best = links;
            best_alloc = alloc;
        }
    }

    SolveResult result{std::move(best_alloc), best, SolverId::Relaxed, 0.0, false, moves};
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

} // namespace rsep
