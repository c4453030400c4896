#include "rsep/reduction.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rsep/errors.hpp"

namespace rsep {

bool EliminationMask::contains(int m, int b) const {
    return std::find(eliminated.begin(), eliminated.end(), std::make_pair(m, b)) !=
           eliminated.end();
}

std::vector<std::vector<int>> EliminationMask::candidates_per_bs(const Instance& inst) const {
    std::vector<std::vector<int>> cands(inst.num_bs());
    for (int b = 0; b < inst.num_bs(); ++b)
        for (int m = 0; m < inst.num_mvnos(); ++m)
            if (!contains(m, b)) cands[b].push_back(m);
    return cands;
}

EliminationMask eliminate_sparse(const Instance& inst) {
    EliminationMask mask;
    for (int m = 0; m < inst.num_mvnos(); ++m)
        for (int b = 0; b < inst.num_bs(); ++b)
            if (inst.quota(m, b) == 0) mask.eliminated.emplace_back(m, b);
    return mask;
}

std::optional<AggregationPlan> plan_aggregation(const Instance& inst) {
    int k = 0;
    for (int m = 0; m < inst.num_mvnos(); ++m)
        for (int b = 0; b < inst.num_bs(); ++b)
            if (inst.quota(m, b) > 0) k = std::gcd(k, inst.quota(m, b));
    if (k <= 1) return std::nullopt;

    AggregationAxis axis;
    int n_rb = inst.num_subcarriers();
    int t = inst.num_slots();
    if (t % k == 0) {
        axis = AggregationAxis::TimeSlot;
        t /= k;
    } else if (n_rb % k == 0) {
        axis = AggregationAxis::Subcarrier;
        n_rb /= k;
    } else {
        return std::nullopt;
    }

    std::vector<std::vector<int>> profile = inst.profile();
    for (auto& row : profile)
        for (int& q : row) q /= k;
    return AggregationPlan{k, axis,
                           Instance(inst.num_mvnos(), inst.num_bs(), n_rb, t,
                                    inst.adjacency(), std::move(profile))};
}

Allocation expand_solution(const AggregationPlan& plan, const Allocation& aggregated) {
    const Instance& scaled = plan.scaled;
    FeasibilityReport report = check_feasibility(scaled, aggregated);
    if (!report.empty())
        throw FeasibilityError("aggregated allocation is infeasible for the scaled instance:\n" +
                               report.to_string());

    const int k = plan.k;
    const bool time_axis = plan.axis == AggregationAxis::TimeSlot;
    const int n_rb = time_axis ? scaled.num_subcarriers() : scaled.num_subcarriers() * k;
    const int t = time_axis ? scaled.num_slots() * k : scaled.num_slots();

    Allocation out(scaled.num_bs(), n_rb, t);
    for (int b = 0; b < scaled.num_bs(); ++b)
        for (int ts = 0; ts < scaled.num_slots(); ++ts)
            for (int ns = 0; ns < scaled.num_subcarriers(); ++ns) {
                int owner = aggregated.owner(b, ns, ts);
                for (int j = 0; j < k; ++j) {
                    int n = time_axis ? ns : ns * k + j;
                    int tt = time_axis ? ts * k + j : ts;
                    out.set_owner(b, tt * n_rb + n, owner);
                }
            }
    return out;
}

void coherent_swap(Rbam& rbam, int col1, int col2) {
    for (int b = 0; b < rbam.num_bs(); ++b) {
        int tmp = rbam.at(b, col1);
        rbam.set(b, col1, rbam.at(b, col2));
        rbam.set(b, col2, tmp);
    }
}

namespace {

// Working state of the aggregation mapping. Columns live in `cols`
// (cols[c][pos], row positions top to bottom); rows are tracked by position
// so that "move row to the bottom" is bookkeeping, while links always go
// through the BS ids in bs_at. Positions >= processed_from belong to rows
// already paired; their entries are constant within each aligned group of k
// columns and are never touched again.
struct Mapper {
    const Instance& inst;
    int k;
    int num_bs;
    std::vector<int> bs_at;              // position -> BS id
    std::vector<std::vector<int>> cols;  // [col][pos]
    std::vector<std::vector<int>> out;   // aggregated columns, by position
    int processed_from;
    std::int64_t expected_links;

    Mapper(const Instance& i, const Allocation& alloc, int k_)
        : inst(i), k(k_), num_bs(i.num_bs()), processed_from(i.num_bs()) {
        bs_at.resize(num_bs);
        std::iota(bs_at.begin(), bs_at.end(), 0);
        cols.assign(alloc.grid_size(), std::vector<int>(num_bs));
        for (int tau = 0; tau < alloc.grid_size(); ++tau)
            for (int pos = 0; pos < num_bs; ++pos)
                cols[tau][pos] = alloc.owner(pos, tau);
        expected_links = state_links();
    }

    std::int64_t column_links(const std::vector<int>& col) const {
        std::int64_t links = 0;
        for (int p1 = 0; p1 < num_bs; ++p1) {
            if (col[p1] == kUnassigned) continue;
            for (int p2 = p1 + 1; p2 < num_bs; ++p2)
                if (inst.adjacent(bs_at[p1], bs_at[p2]) && col[p2] == col[p1]) ++links;
        }
        return links;
    }

    // Extracted columns are stored indexed by BS id (row positions keep
    // moving, so position-indexed copies would go stale).
    std::vector<int> by_bs_id(const std::vector<int>& col) const {
        std::vector<int> v(num_bs);
        for (int pos = 0; pos < num_bs; ++pos) v[bs_at[pos]] = col[pos];
        return v;
    }

    std::int64_t column_links_by_id(const std::vector<int>& col) const {
        std::int64_t links = 0;
        for (int b1 = 0; b1 < num_bs; ++b1) {
            if (col[b1] == kUnassigned) continue;
            for (int b2 = b1 + 1; b2 < num_bs; ++b2)
                if (inst.adjacent(b1, b2) && col[b2] == col[b1]) ++links;
        }
        return links;
    }

    // Working links plus k times the links of every extracted column; this
    // total must never change.
    std::int64_t state_links() const {
        std::int64_t total = 0;
        for (const auto& col : cols) total += column_links(col);
        for (const auto& col : out)
            total += static_cast<std::int64_t>(k) * column_links_by_id(col);
        return total;
    }

    void assert_links(const char* stage) const {
        if (state_links() != expected_links)
            throw PartialSwapError(std::string("aggregation mapping broke the link count during ") +
                                       stage,
                                   dump());
    }

    std::string dump() const {
        Rbam rbam(num_bs, static_cast<int>(cols.size()));
        for (int c = 0; c < static_cast<int>(cols.size()); ++c)
            for (int pos = 0; pos < num_bs; ++pos) rbam.set(pos, c, cols[c][pos]);
        std::ostringstream out_text;
        out_text << "row order (top to bottom): ";
        for (int pos = 0; pos < num_bs; ++pos) out_text << "BS" << bs_at[pos] + 1 << " ";
        out_text << "\n" << rbam.pretty();
        return out_text.str();
    }

    // Remove every set of k identical columns to the aggregated RBAM.
    void extract_identical() {
        std::vector<char> removed(cols.size(), 0);
        for (std::size_t c1 = 0; c1 < cols.size(); ++c1) {
            if (removed[c1]) continue;
            std::vector<std::size_t> same{c1};
            for (std::size_t c2 = c1 + 1; c2 < cols.size(); ++c2)
                if (!removed[c2] && cols[c2] == cols[c1]) same.push_back(c2);
            std::size_t groups = same.size() / k;
            for (std::size_t g = 0; g < groups; ++g) {
                out.push_back(by_bs_id(cols[c1]));
                for (int j = 0; j < k; ++j) removed[same[g * k + j]] = 1;
            }
        }
        std::vector<std::vector<int>> kept;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!removed[c]) kept.push_back(std::move(cols[c]));
        cols = std::move(kept);
        assert_links("identical-column extraction");
    }

    // Coherent re-sort: order columns by the labels of the processed rows
    // (bottom row first). A pure column permutation, so links are
    // preserved; it realigns every processed row into constant groups of k.
    void normalize() {
        std::stable_sort(cols.begin(), cols.end(),
                         [&](const std::vector<int>& a, const std::vector<int>& b) {
                             for (int pos = num_bs - 1; pos >= processed_from; --pos) {
                                 int la = a[pos] == kUnassigned ? inst.num_mvnos() : a[pos];
                                 int lb = b[pos] == kUnassigned ? inst.num_mvnos() : b[pos];
                                 if (la != lb) return la < lb;
                             }
                             return false;
                         });
        assert_links("coherent column sort");
    }

    void move_row_to(int from_pos, int to_pos) {
        int bs = bs_at[from_pos];
        bs_at.erase(bs_at.begin() + from_pos);
        bs_at.insert(bs_at.begin() + to_pos, bs);
        for (auto& col : cols) {
            int v = col[from_pos];
            col.erase(col.begin() + from_pos);
            col.insert(col.begin() + to_pos, v);
        }
    }

    int distinct_mvnos(int pos) const {
        std::set<int> labels;
        for (const auto& col : cols)
            if (col[pos] != kUnassigned) labels.insert(col[pos]);
        return static_cast<int>(labels.size());
    }

    // Links shared between the rows at two positions.
    std::int64_t shared_links(int pos1, int pos2) const {
        if (!inst.adjacent(bs_at[pos1], bs_at[pos2])) return 0;
        std::int64_t shared = 0;
        for (const auto& col : cols)
            if (col[pos1] != kUnassigned && col[pos1] == col[pos2]) ++shared;
        return shared;
    }

    bool group_constant(int g, int pos) const {
        for (int j = 1; j < k; ++j)
            if (cols[g * k + j][pos] != cols[g * k][pos]) return false;
        return true;
    }

    // Swap the entries of columns c1 and c2 on the given row positions.
    void apply_swap(std::size_t c1, std::size_t c2, const std::vector<int>& positions) {
        for (int pos : positions) std::swap(cols[c1][pos], cols[c2][pos]);
    }

    std::int64_t swap_delta(std::size_t c1, std::size_t c2, const std::vector<int>& positions) {
        std::int64_t before = column_links(cols[c1]) + column_links(cols[c2]);
        apply_swap(c1, c2, positions);
        std::int64_t after = column_links(cols[c1]) + column_links(cols[c2]);
        apply_swap(c1, c2, positions);
        return after - before;
    }

    // All subsets of the rows above pos_bn, by ascending size; pos_bn is
    // always part of the swap.
    std::vector<std::vector<int>> swap_row_sets(int pos_bn) const {
        std::vector<std::vector<int>> sets;
        for (int size = 0; size <= pos_bn; ++size) {
            std::vector<int> pick(size);
            std::function<void(int, int)> combos = [&](int start, int depth) {
                if (depth == size) {
                    std::vector<int> rows = pick;
                    rows.push_back(pos_bn);
                    sets.push_back(std::move(rows));
                    return;
                }
                for (int p = start; p <= pos_bn - (size - depth); ++p) {
                    pick[depth] = p;
                    combos(p + 1, depth + 1);
                }
            };
            combos(0, 0);
        }
        return sets;
    }

    struct Applied {
        std::size_t c1, c2;
        std::vector<int> positions;
    };

    // Make group g all `label` on row pos_bn using link-preserving partial
    // swaps against later columns. Returns false (state restored) if some
    // slot cannot be filled.
    bool try_pair_group(int g, int label, int pos_bn,
                        const std::vector<std::vector<int>>& row_sets,
                        std::vector<Applied>& applied) {
        for (int j = 0; j < k; ++j) {
            std::size_t p = static_cast<std::size_t>(g) * k + j;
            if (cols[p][pos_bn] == label) continue;
            bool fixed = false;
            for (std::size_t s = static_cast<std::size_t>(g + 1) * k;
                 s < cols.size() && !fixed; ++s) {
                if (cols[s][pos_bn] != label) continue;
                for (const auto& rows : row_sets) {
                    if (swap_delta(p, s, rows) != 0) continue;
                    apply_swap(p, s, rows);
                    applied.push_back({p, s, rows});
                    fixed = true;
                    break;
                }
            }
            if (!fixed) {
                for (auto it = applied.rbegin(); it != applied.rend(); ++it)
                    apply_swap(it->c1, it->c2, it->positions);
                applied.clear();
                return false;
            }
        }
        return true;
    }

    void pair_row(int pos_bn) {
        const auto row_sets = swap_row_sets(pos_bn);
        const std::size_t num_groups = cols.size() / k;
        for (std::size_t g = 0; g < num_groups; ++g) {
            if (group_constant(static_cast<int>(g), pos_bn)) continue;

            // Candidate target labels: everything this row still shows from
            // the group onward. Counts in that suffix are multiples of k,
            // so any present label has at least k copies available.
            std::vector<int> candidates;
            auto add_candidate = [&](int label) {
                if (std::find(candidates.begin(), candidates.end(), label) ==
                    candidates.end())
                    candidates.push_back(label);
            };
            add_candidate(cols[g * k][pos_bn]);
            std::vector<int> rest;
            for (std::size_t c = g * k + 1; c < cols.size(); ++c) rest.push_back(cols[c][pos_bn]);
            std::sort(rest.begin(), rest.end(), [](int a, int b) {
                if ((a == kUnassigned) != (b == kUnassigned)) return b == kUnassigned;
                return a < b;
            });
            for (int label : rest) add_candidate(label);

            bool paired = false;
            std::vector<Applied> applied;
            for (int label : candidates) {
                if (try_pair_group(static_cast<int>(g), label, pos_bn, row_sets, applied)) {
                    paired = true;
                    break;
                }
            }
            if (!paired)
                throw PartialSwapError(
                    "no link-preserving partial swap pairs group " + std::to_string(g + 1) +
                        " of the working RBAM; the input allocation was likely not optimal",
                    dump());
            assert_links("partial swap");
        }
    }

    Rbam run() {
        extract_identical();

        if (!cols.empty()) {
            // Row with the fewest distinct MVNOs moves to the bottom and is
            // sorted into groups of k by one coherent pass.
            int b0 = 0;
            for (int pos = 1; pos < num_bs; ++pos)
                if (distinct_mvnos(pos) < distinct_mvnos(b0)) b0 = pos;
            move_row_to(b0, num_bs - 1);
            processed_from = num_bs - 1;
            normalize();
        }

        while (!cols.empty()) {
            extract_identical();
            normalize();
            if (cols.empty()) break;

            if (processed_from == 0)
                throw PartialSwapError(
                    "aggregation mapping exhausted all rows with unpaired columns left",
                    dump());

            // Row above the processed block sharing the most links with the
            // boundary row; ties fall to the smaller BS id.
            int bn = 0;
            std::int64_t best_shared = -1;
            for (int pos = 0; pos < processed_from; ++pos) {
                std::int64_t shared = shared_links(pos, processed_from);
                if (shared > best_shared ||
                    (shared == best_shared && bs_at[pos] < bs_at[bn])) {
                    best_shared = shared;
                    bn = pos;
                }
            }
            move_row_to(bn, processed_from - 1);
            pair_row(processed_from - 1);
            --processed_from;
            normalize();
        }

        Rbam aggregated(num_bs, static_cast<int>(out.size()));
        for (int c = 0; c < static_cast<int>(out.size()); ++c)
            for (int b = 0; b < num_bs; ++b) aggregated.set(b, c, out[c][b]);
        return aggregated;
    }
};

} // namespace

Rbam aggregate_solution(const Instance& inst, const Allocation& alloc, int k) {
    if (k <= 1) throw std::invalid_argument("aggregation factor k must exceed 1");
    if (inst.num_subcarriers() % k != 0 && inst.num_slots() % k != 0)
        throw std::invalid_argument("instance is not aggregable: neither N_RB nor T is divisible by k");
    for (int m = 0; m < inst.num_mvnos(); ++m)
        for (int b = 0; b < inst.num_bs(); ++b)
            if (inst.quota(m, b) % k != 0)
                throw std::invalid_argument("instance is not aggregable: quota not divisible by k");

    FeasibilityReport report = check_feasibility(inst, alloc);
    if (!report.empty())
        throw FeasibilityError("allocation is infeasible for the instance:\n" + report.to_string());

    Mapper mapper(inst, alloc, k);
    Rbam aggregated = mapper.run();

    // k * aggregated links must reproduce the input exactly.
    std::int64_t input_links = count_linked(inst, alloc);
    if (static_cast<std::int64_t>(k) * aggregated.links(inst.adjacency()) != input_links)
        throw PartialSwapError("aggregated RBAM does not reproduce the input link count",
                               aggregated.pretty());
    if (aggregated.num_cols() != inst.grid_size() / k)
        throw PartialSwapError("aggregated RBAM has the wrong number of columns",
                               aggregated.pretty());
    // per-row multiplicities must equal the quotas in aggregated units
    for (int b = 0; b < inst.num_bs(); ++b) {
        std::vector<int> counts(inst.num_mvnos(), 0);
        for (int c = 0; c < aggregated.num_cols(); ++c)
            if (aggregated.at(b, c) != kUnassigned) ++counts[aggregated.at(b, c)];
        for (int m = 0; m < inst.num_mvnos(); ++m)
            if (counts[m] * k != inst.quota(m, b))
                throw PartialSwapError("aggregated RBAM broke the per-row quota counts",
                                       aggregated.pretty());
    }
    return aggregated;
}

} // namespace rsep
