#include <chrono>
#include <sstream>

#include "rsep/errors.hpp"
#include "rsep/solvers.hpp"

namespace rsep {

namespace {

void require_solvable(const Instance& inst) {
    int b = inst.overloaded_bs();
    if (b >= 0) {
        std::ostringstream msg;
        msg << "infeasible instance: quotas on BS " << b + 1 << " total "
            << inst.bs_load(b) << " > " << inst.grid_size() << " available RBs";
        throw InfeasibleInstanceError(msg.str());
    }
}

struct Enumerator {
    const Instance& inst;
    const std::function<void(const Allocation&, std::int64_t)>& visit;
    std::uint64_t budget;

    Allocation alloc;
    std::vector<std::vector<int>> rem; // [b][m]
    std::vector<int> slack;            // per-BS unassigned slots still allowed
    std::uint64_t nodes = 0;

    Enumerator(const Instance& i, std::uint64_t node_budget,
               const std::function<void(const Allocation&, std::int64_t)>& v)
        : inst(i), visit(v), budget(node_budget),
          alloc(i.num_bs(), i.num_subcarriers(), i.num_slots()) {
        rem.assign(inst.num_bs(), std::vector<int>(inst.num_mvnos(), 0));
        slack.assign(inst.num_bs(), 0);
        for (int b = 0; b < inst.num_bs(); ++b) {
            for (int m = 0; m < inst.num_mvnos(); ++m) rem[b][m] = inst.quota(m, b);
            slack[b] = inst.grid_size() - inst.bs_load(b);
        }
    }

    void charge() {
        if (++nodes > budget)
            throw BudgetExceededError("oracle budget exceeded (" +
                                      std::to_string(budget) + " nodes)");
    }

    int gained(int b, int tau, int m) const {
        int g = 0;
        for (int b2 = 0; b2 < b; ++b2)
            if (inst.adjacent(b, b2) && alloc.owner(b2, tau) == m) ++g;
        return g;
    }

    void fill_canonical_row(int b) {
        int tau = 0;
        for (int m = 0; m < inst.num_mvnos(); ++m)
            for (int k = 0; k < inst.quota(m, b); ++k) alloc.set_owner(b, tau++, m);
    }

    void row(int b, std::int64_t links) {
        if (b == inst.num_bs()) {
            visit(alloc, links);
            return;
        }
        cell(b, 0, links);
    }

    void cell(int b, int tau, std::int64_t links) {
        if (tau == inst.grid_size()) {
            row(b + 1, links);
            return;
        }
        for (int m = 0; m < inst.num_mvnos(); ++m) {
            if (rem[b][m] == 0) continue;
            charge();
            --rem[b][m];
            alloc.set_owner(b, tau, m);
            cell(b, tau + 1, links + gained(b, tau, m));
            alloc.set_owner(b, tau, kUnassigned);
            ++rem[b][m];
        }
        if (slack[b] > 0) {
            charge();
            --slack[b];
            cell(b, tau + 1, links);
            ++slack[b];
        }
    }
};

} // namespace

std::uint64_t enumerate_feasible(const Instance& inst, bool canonical_first_bs,
                                 std::uint64_t node_budget,
                                 const std::function<void(const Allocation&, std::int64_t)>& visit) {
    require_solvable(inst);
    Enumerator e(inst, node_budget, visit);
    if (canonical_first_bs && inst.num_bs() > 0) {
        // The link count is invariant under a common permutation of the slot
        // indices of all BSs, so row 0 can be pinned to one representative.
        e.fill_canonical_row(0);
        e.row(1, 0);
    } else {
        e.row(0, 0);
    }
    return e.nodes;
}

SolveResult solve_brute_force(const Instance& inst, std::uint64_t node_budget) {
    auto start = std::chrono::steady_clock::now();

    std::int64_t best = -1;
    Allocation best_alloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
    std::uint64_t nodes = enumerate_feasible(
        inst, /*canonical_first_bs=*/true, node_budget,
        [&](const Allocation& alloc, std::int64_t links) {
            if (links > best) {
                best = links;
                best_alloc = alloc;
            }
        });

    SolveResult result{std::move(best_alloc), best, SolverId::BruteForce, 0.0, true, nodes};
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

} // namespace rsep
