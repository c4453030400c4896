#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "rsep/errors.hpp"
#include "rsep/solvers.hpp"

namespace rsep {

std::vector<std::int64_t> linking_index(const Instance& inst) {
    std::vector<std::int64_t> l(inst.num_mvnos(), 0);
    for (int m = 0; m < inst.num_mvnos(); ++m)
        for (int b1 = 0; b1 < inst.num_bs(); ++b1)
            for (int b2 = 0; b2 < inst.num_bs(); ++b2) {
                if (b2 == b1 || !inst.adjacent(b1, b2)) continue;
                l[m] += std::min(inst.quota(m, b1), inst.quota(m, b2));
            }
    return l;
}

SolveResult solve_mlf(const Instance& inst) {
    auto start = std::chrono::steady_clock::now();
    int overloaded = inst.overloaded_bs();
    if (overloaded >= 0) {
        std::ostringstream msg;
        msg << "infeasible instance: quotas on BS " << overloaded + 1 << " total "
            << inst.bs_load(overloaded) << " > " << inst.grid_size() << " available RBs";
        throw InfeasibleInstanceError(msg.str());
    }

    std::vector<std::int64_t> l = linking_index(inst);
    std::vector<int> order(inst.num_mvnos());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return l[a] > l[b]; }); // ties: smaller id first

    Allocation alloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
    std::vector<int> cursor(inst.num_bs(), 0); // next free slot per BS
    for (int m : order)
        for (int b = 0; b < inst.num_bs(); ++b)
            for (int k = 0; k < inst.quota(m, b); ++k) alloc.set_owner(b, cursor[b]++, m);

    std::int64_t links = count_linked(inst, alloc);
    SolveResult result{std::move(alloc), links, SolverId::Mlf, 0.0, false, 0};
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

} // namespace rsep
