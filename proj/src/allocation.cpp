#include "rsep/allocation.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "rsep/errors.hpp"

namespace rsep {

Allocation::Allocation(int num_bs, int num_subcarriers, int num_slots)
    : num_bs_(num_bs),
      num_subcarriers_(num_subcarriers),
      num_slots_(num_slots),
      grid_(num_bs, std::vector<int>(num_subcarriers * num_slots, kUnassigned)) {}

Allocation Allocation::from_grid(int num_subcarriers, int num_slots,
                                 std::vector<std::vector<int>> grid) {
    Allocation alloc(static_cast<int>(grid.size()), num_subcarriers, num_slots);
    for (std::size_t b = 0; b < grid.size(); ++b) {
        if (static_cast<int>(grid[b].size()) != alloc.grid_size())
            throw std::invalid_argument("allocation row length must equal N_RB * T");
        alloc.grid_[b] = std::move(grid[b]);
    }
    return alloc;
}

std::vector<std::uint8_t> Allocation::to_bits(const Instance& inst) const {
    const int z = grid_size();
    std::vector<std::uint8_t> bits(inst.num_vars(), 0);
    for (int b = 0; b < num_bs_; ++b)
        for (int tau = 0; tau < z; ++tau) {
            int m = grid_[b][tau];
            if (m != kUnassigned)
                bits[(static_cast<std::size_t>(m) * num_bs_ + b) * z + tau] = 1;
        }
    return bits;
}

Allocation Allocation::from_bits(const Instance& inst,
                                 const std::vector<std::uint8_t>& bits) {
    if (static_cast<std::int64_t>(bits.size()) != inst.num_vars())
        throw std::invalid_argument("bit vector length must equal M * B * N_RB * T");
    Allocation alloc(inst.num_bs(), inst.num_subcarriers(), inst.num_slots());
    const int z = inst.grid_size();
    for (int m = 0; m < inst.num_mvnos(); ++m)
        for (int b = 0; b < inst.num_bs(); ++b)
            for (int tau = 0; tau < z; ++tau) {
                if (!bits[(static_cast<std::size_t>(m) * inst.num_bs() + b) * z + tau])
                    continue;
                if (alloc.grid_[b][tau] != kUnassigned) {
                    std::ostringstream msg;
                    msg << "C2 violated at (b=" << b + 1 << ", n=" << tau % inst.num_subcarriers() + 1
                        << ", t=" << tau / inst.num_subcarriers() + 1
                        << "): slot assigned to MVNOs " << alloc.grid_[b][tau] + 1
                        << " and " << m + 1;
                    throw FeasibilityError(msg.str());
                }
                alloc.grid_[b][tau] = m;
            }
    return alloc;
}

std::string FeasibilityReport::to_string() const {
    std::ostringstream out;
    for (const auto& v : c1)
        out << "C1 violated at (m=" << v.m + 1 << ", b=" << v.b + 1 << "): assigned "
            << v.assigned << " RBs, profile requires " << v.required << "\n";
    for (const auto& v : c2) {
        out << "C2 violated at (b=" << v.b + 1 << ", n=" << v.n + 1 << ", t=" << v.t + 1
            << "): owners";
        for (int m : v.owners) out << " " << m + 1;
        out << "\n";
    }
    if (empty()) out << "feasible\n";
    return out.str();
}

namespace {

void check_dims(const Instance& inst, int num_bs, int num_subcarriers, int num_slots) {
    if (num_bs != inst.num_bs() || num_subcarriers != inst.num_subcarriers() ||
        num_slots != inst.num_slots())
        throw std::invalid_argument("allocation dimensions do not match the instance");
}

} // namespace

FeasibilityReport check_feasibility(const Instance& inst, const Allocation& alloc) {
    check_dims(inst, alloc.num_bs(), alloc.num_subcarriers(), alloc.num_slots());
    FeasibilityReport report;
    const int z = inst.grid_size();
    for (int b = 0; b < inst.num_bs(); ++b) {
        std::vector<int> counts(inst.num_mvnos(), 0);
        for (int tau = 0; tau < z; ++tau) {
            int m = alloc.owner(b, tau);
            if (m == kUnassigned) continue;
            if (m < 0 || m >= inst.num_mvnos())
                throw std::invalid_argument("allocation references an unknown MVNO id");
            ++counts[m];
        }
        for (int m = 0; m < inst.num_mvnos(); ++m)
            if (counts[m] != inst.quota(m, b))
                report.c1.push_back({m, b, counts[m], inst.quota(m, b)});
    }
    return report;
}

FeasibilityReport check_feasibility(const Instance& inst, const CellAssignment& cells) {
    check_dims(inst, cells.num_bs, cells.num_subcarriers, cells.num_slots);
    FeasibilityReport report;
    const int z = inst.grid_size();
    for (int b = 0; b < inst.num_bs(); ++b) {
        std::vector<int> counts(inst.num_mvnos(), 0);
        for (int tau = 0; tau < z; ++tau) {
            const auto& owners = cells.owners[b][tau];
            for (int m : owners) {
                if (m < 0 || m >= inst.num_mvnos())
                    throw std::invalid_argument("allocation references an unknown MVNO id");
                ++counts[m];
            }
            if (owners.size() > 1)
                report.c2.push_back(
                    {b, tau % inst.num_subcarriers(), tau / inst.num_subcarriers(), owners});
        }
        for (int m = 0; m < inst.num_mvnos(); ++m)
            if (counts[m] != inst.quota(m, b))
                report.c1.push_back({m, b, counts[m], inst.quota(m, b)});
    }
    return report;
}

std::int64_t count_linked(const Instance& inst, const Allocation& alloc) {
    FeasibilityReport report = check_feasibility(inst, alloc);
    if (!report.empty()) {
        const auto& v = report.c1.front();
        std::ostringstream msg;
        msg << "C1 violated at (m=" << v.m + 1 << ", b=" << v.b + 1 << "): assigned "
            << v.assigned << " RBs, profile requires " << v.required;
        throw FeasibilityError(msg.str());
    }
    std::int64_t linked = 0;
    for (int tau = 0; tau < inst.grid_size(); ++tau)
        linked += column_links(inst, alloc, tau);
    return linked;
}

std::int64_t column_links(const Instance& inst, const Allocation& alloc, int tau) {
    std::int64_t linked = 0;
    for (int b1 = 0; b1 < inst.num_bs(); ++b1) {
        int m = alloc.owner(b1, tau);
        if (m == kUnassigned) continue;
        for (int b2 = b1 + 1; b2 < inst.num_bs(); ++b2)
            if (inst.adjacent(b1, b2) && alloc.owner(b2, tau) == m) ++linked;
    }
    return linked;
}

} // namespace rsep
