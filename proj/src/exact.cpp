#include <algorithm>
#include <array>
#include <chrono>
#include <numeric>
#include <sstream>

#include "rsep/errors.hpp"
#include "rsep/solvers.hpp"

namespace rsep {

namespace {

// Branch and bound over the multiset of column tuples. The objective and
// the quota constraints only see that multiset (links live within a column,
// quotas sum across columns), so the search places column types in strictly
// decreasing lexicographic order, choosing a repetition count per type;
// every allocation is equivalent to exactly one such run-length sequence,
// which removes the factorial column-permutation symmetry and collapses
// repeated columns into single decisions.
//
// Unassigned slots are handled as a pseudo-MVNO whose per-BS quota is the
// grid slack, so each BS row always owes exactly cols_left more cells and
// no partial state is a dead end.
//
// Bound: per interfering pair, future links never exceed
// sum_m min(rem[m][b1], rem[m][b2]) nor the remaining column count. Pairs
// grouped into an edge-disjoint set of triangles get a joint refinement: a
// column yields 3 links on a triangle only when all three cells share one
// MVNO, and such columns are limited by sum_m min over the triangle, so the
// triangle's total is at most cols_left + 2 * all_same_cap. Quotas only
// shrink along a branch, so all caps are optimistic.
struct ExactSearch {
    const Instance& inst;
    int num_bs, num_cols, num_mvnos;
    std::uint64_t budget;

    std::vector<int> bs_at;                   // position -> BS id
    std::vector<std::vector<int>> candidates; // position -> candidate codes
    std::vector<std::pair<int, int>> pair_positions;
    std::vector<std::array<int, 3>> triangles;   // position triples, edge-disjoint
    std::vector<std::pair<int, int>> lone_pairs; // pairs not in any triangle
    std::vector<std::vector<int>> rem;        // [bs][code], code M = unassigned
    std::vector<std::vector<int>> run_tuple;  // placed runs (codes by position)
    std::vector<int> run_count;
    std::vector<std::vector<int>> best_tuple;
    std::vector<int> best_count;

    std::uint64_t nodes = 0;
    bool aborted = false;
    std::int64_t best = -1;

    ExactSearch(const Instance& i, std::uint64_t node_budget, const EliminationMask* mask)
        : inst(i), num_bs(i.num_bs()), num_cols(i.grid_size()),
          num_mvnos(i.num_mvnos()), budget(node_budget) {
        // Higher-degree BSs first so column links accrue early in a tuple.
        bs_at.resize(num_bs);
        std::iota(bs_at.begin(), bs_at.end(), 0);
        std::vector<int> degree(num_bs, 0);
        for (int b1 = 0; b1 < num_bs; ++b1)
            for (int b2 = 0; b2 < num_bs; ++b2) degree[b1] += inst.adjacent(b1, b2);
        std::stable_sort(bs_at.begin(), bs_at.end(),
                         [&](int a, int b) { return degree[a] > degree[b]; });

        candidates.resize(num_bs);
        for (int p = 0; p < num_bs; ++p) {
            int b = bs_at[p];
            for (int m = 0; m < num_mvnos; ++m) {
                if (mask && mask->contains(m, b)) continue;
                candidates[p].push_back(m);
            }
            candidates[p].push_back(num_mvnos); // unassigned
        }

        for (int p1 = 0; p1 < num_bs; ++p1)
            for (int p2 = p1 + 1; p2 < num_bs; ++p2)
                if (inst.adjacent(bs_at[p1], bs_at[p2])) pair_positions.emplace_back(p1, p2);

        // Greedy edge-disjoint triangle cover of the interference graph.
        std::vector<std::vector<char>> used(num_bs, std::vector<char>(num_bs, 0));
        for (int p1 = 0; p1 < num_bs; ++p1)
            for (int p2 = p1 + 1; p2 < num_bs; ++p2) {
                if (!inst.adjacent(bs_at[p1], bs_at[p2]) || used[p1][p2]) continue;
                for (int p3 = p2 + 1; p3 < num_bs; ++p3) {
                    if (!inst.adjacent(bs_at[p1], bs_at[p3]) ||
                        !inst.adjacent(bs_at[p2], bs_at[p3]) || used[p1][p3] ||
                        used[p2][p3])
                        continue;
                    triangles.push_back({p1, p2, p3});
                    used[p1][p2] = used[p1][p3] = used[p2][p3] = 1;
                    break;
                }
            }
        for (auto [p1, p2] : pair_positions)
            if (!used[p1][p2]) lone_pairs.emplace_back(p1, p2);

        rem.assign(num_bs, std::vector<int>(num_mvnos + 1, 0));
        for (int b = 0; b < num_bs; ++b) {
            for (int m = 0; m < num_mvnos; ++m) rem[b][m] = inst.quota(m, b);
            rem[b][num_mvnos] = num_cols - inst.bs_load(b);
        }
    }

    std::int64_t pair_cap(int p1, int p2) const {
        const std::vector<int>& r1 = rem[bs_at[p1]];
        const std::vector<int>& r2 = rem[bs_at[p2]];
        std::int64_t cap = 0;
        for (int m = 0; m < num_mvnos; ++m) cap += std::min(r1[m], r2[m]);
        return cap;
    }

    std::int64_t bound_remaining(int cols_left) const {
        std::int64_t ub = 0;
        for (const auto& tri : triangles) {
            std::int64_t pairs_cap = std::min<std::int64_t>(pair_cap(tri[0], tri[1]), cols_left) +
                                     std::min<std::int64_t>(pair_cap(tri[0], tri[2]), cols_left) +
                                     std::min<std::int64_t>(pair_cap(tri[1], tri[2]), cols_left);
            std::int64_t all_same = 0;
            for (int m = 0; m < num_mvnos; ++m)
                all_same += std::min({rem[bs_at[tri[0]]][m], rem[bs_at[tri[1]]][m],
                                      rem[bs_at[tri[2]]][m]});
            std::int64_t joint = cols_left + 2 * std::min<std::int64_t>(all_same, cols_left);
            ub += std::min(pairs_cap, joint);
        }
        for (auto [p1, p2] : lone_pairs)
            ub += std::min<std::int64_t>(pair_cap(p1, p2), cols_left);
        return ub;
    }

    int tuple_links(const std::vector<int>& tuple) const {
        int links = 0;
        for (auto [p1, p2] : pair_positions)
            if (tuple[p1] == tuple[p2] && tuple[p1] < num_mvnos) ++links;
        return links;
    }

    int max_count(const std::vector<int>& tuple, int cols_left) const {
        int c = cols_left;
        for (int p = 0; p < num_bs; ++p) c = std::min(c, rem[bs_at[p]][tuple[p]]);
        return c;
    }

    void place(const std::vector<int>& tuple, int count) {
        for (int p = 0; p < num_bs; ++p) rem[bs_at[p]][tuple[p]] -= count;
    }
    void unplace(const std::vector<int>& tuple, int count) {
        for (int p = 0; p < num_bs; ++p) rem[bs_at[p]][tuple[p]] += count;
    }

    // All feasible tuples strictly below `cap` in lex order, each with its
    // link count, best links first.
    struct Candidate {
        std::vector<int> tuple;
        int links;
    };

    // Descending code order, so equal-links candidates come out largest-lex
    // first; diving into a large tuple leaves the most room below it.
    void gather(int pos, bool tight, const std::vector<int>& cap, std::vector<int>& scratch,
                std::vector<Candidate>& out) const {
        if (pos == num_bs) {
            if (tight) return; // equal to cap: not strictly smaller
            out.push_back({scratch, tuple_links(scratch)});
            return;
        }
        for (auto it = candidates[pos].rbegin(); it != candidates[pos].rend(); ++it) {
            int code = *it;
            if (rem[bs_at[pos]][code] == 0) continue;
            if (tight && code > cap[pos]) continue;
            scratch[pos] = code;
            gather(pos + 1, tight && code == cap[pos], cap, scratch, out);
        }
    }

    std::vector<Candidate> children(const std::vector<int>& cap, bool first) const {
        std::vector<Candidate> out;
        std::vector<int> scratch(num_bs);
        if (first) {
            std::vector<int> top(num_bs, num_mvnos + 1); // above every tuple
            gather(0, false, top, scratch, out);
        } else {
            gather(0, true, cap, scratch, out);
        }
        std::stable_sort(out.begin(), out.end(),
                         [](const Candidate& a, const Candidate& b) { return a.links > b.links; });
        return out;
    }

    // No pair can link anymore: any feasible filling of the remaining
    // columns scores exactly `links`, so record one and skip the subtree.
    void complete_tail(int cols_left, std::int64_t links) {
        if (links <= best) return;
        int placed = 0;
        std::vector<int> tuple(num_bs);
        while (cols_left > 0) {
            for (int p = 0; p < num_bs; ++p) {
                const std::vector<int>& r = rem[bs_at[p]];
                int pick = num_mvnos;
                for (int code = 0; code <= num_mvnos; ++code)
                    if (r[code] > r[pick]) pick = code;
                tuple[p] = pick;
            }
            int count = max_count(tuple, cols_left);
            place(tuple, count);
            run_tuple.push_back(tuple);
            run_count.push_back(count);
            ++placed;
            cols_left -= count;
        }
        best = links;
        best_tuple = run_tuple;
        best_count = run_count;
        for (int i = 0; i < placed; ++i) {
            unplace(run_tuple.back(), run_count.back());
            run_tuple.pop_back();
            run_count.pop_back();
        }
    }

    void search(int cols_left, std::int64_t links, const std::vector<int>& cap, bool first) {
        if (aborted) return;
        if (cols_left == 0) {
            if (links > best) {
                best = links;
                best_tuple = run_tuple;
                best_count = run_count;
            }
            return;
        }
        std::int64_t bound = bound_remaining(cols_left);
        if (links + bound <= best) return;
        if (bound == 0) {
            complete_tail(cols_left, links);
            return;
        }

        for (const Candidate& cand : children(cap, first)) {
            int cmax = max_count(cand.tuple, cols_left);
            if (cmax == 0) continue;
            for (int count = cmax; count >= 1; --count) {
                if (++nodes > budget && best >= 0) {
                    aborted = true;
                    return;
                }
                place(cand.tuple, count);
                run_tuple.push_back(cand.tuple);
                run_count.push_back(count);
                search(cols_left - count, links + static_cast<std::int64_t>(cand.links) * count,
                       cand.tuple, false);
                run_tuple.pop_back();
                run_count.pop_back();
                unplace(cand.tuple, count);
                if (aborted) return;
            }
        }
    }

    // Sorting every BS row's labels in descending code order yields
    // componentwise non-increasing columns, which are automatically lex
    // non-increasing: a feasible canonical leaf from any quota state. Used
    // as the initial incumbent so the node budget can always cut off with
    // an answer in hand, and so zero-objective instances certify at once.
    void seed_incumbent() {
        std::vector<std::vector<int>> rows(num_bs);
        for (int p = 0; p < num_bs; ++p)
            for (int code = num_mvnos; code >= 0; --code)
                rows[p].insert(rows[p].end(), rem[bs_at[p]][code], code);

        best = 0;
        best_tuple.clear();
        best_count.clear();
        std::vector<int> tuple(num_bs);
        int tau = 0;
        while (tau < num_cols) {
            for (int p = 0; p < num_bs; ++p) tuple[p] = rows[p][tau];
            int run = 1;
            auto same = [&](int col) {
                for (int p = 0; p < num_bs; ++p)
                    if (rows[p][col] != tuple[p]) return false;
                return true;
            };
            while (tau + run < num_cols && same(tau + run)) ++run;
            best += static_cast<std::int64_t>(tuple_links(tuple)) * run;
            best_tuple.push_back(tuple);
            best_count.push_back(run);
            tau += run;
        }
    }

    void run() {
        seed_incumbent();
        std::vector<int> cap(num_bs, num_mvnos + 1);
        search(num_cols, 0, cap, true);
    }
};

} // namespace

SolveResult solve_exact(const Instance& inst, std::uint64_t node_budget,
                        const EliminationMask* mask) {
    auto start = std::chrono::steady_clock::now();
    int overloaded = inst.overloaded_bs();
    if (overloaded >= 0) {
        std::ostringstream msg;
        msg << "infeasible instance: quotas on BS " << overloaded + 1 << " total "
            << inst.bs_load(overloaded) << " > " << inst.grid_size() << " available RBs";
        throw InfeasibleInstanceError(msg.str());
    }

    ExactSearch search(inst, node_budget, mask);
    search.run();

    Allocation alloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
    int tau = 0;
    for (std::size_t r = 0; r < search.best_tuple.size(); ++r)
        for (int c = 0; c < search.best_count[r]; ++c, ++tau)
            for (int p = 0; p < inst.num_bs(); ++p) {
                int code = search.best_tuple[r][p];
                if (code < inst.num_mvnos()) alloc.set_owner(search.bs_at[p], tau, code);
            }

    SolveResult result{std::move(alloc), search.best, SolverId::Exact,
                       0.0, !search.aborted, search.nodes};
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

} // namespace rsep
