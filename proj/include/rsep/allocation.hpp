#ifndef RSEP_ALLOCATION_HPP
#define RSEP_ALLOCATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rsep/instance.hpp"

namespace rsep {

/// Marker for an RB slot not assigned to any MVNO.
inline constexpr int kUnassigned = -1;

/// An RB-to-MVNO assignment, stored per BS as a grid of MVNO ids over the
/// linear slot index tau. One owner per slot is structural here (C2); a
/// multi-owner assignment can only exist in the CellAssignment form below,
/// which is what deserialization produces.
class Allocation {
public:
    /// All slots unassigned.
    Allocation(int num_bs, int num_subcarriers, int num_slots);

    static Allocation from_grid(int num_subcarriers, int num_slots,
                                std::vector<std::vector<int>> grid);

    int num_bs() const { return num_bs_; }
    int num_subcarriers() const { return num_subcarriers_; }
    int num_slots() const { return num_slots_; }
    int grid_size() const { return num_subcarriers_ * num_slots_; }

    int owner(int b, int tau) const { return grid_[b][tau]; }
    int owner(int b, int n, int t) const { return grid_[b][t * num_subcarriers_ + n]; }
    void set_owner(int b, int tau, int m) { grid_[b][tau] = m; }

    const std::vector<int>& row(int b) const { return grid_[b]; }
    std::vector<int>& row(int b) { return grid_[b]; }

    /// Flat 0/1 vector x of length M * B * grid_size(), indexed
    /// (m * B + b) * grid_size() + tau. M is taken from the instance.
    std::vector<std::uint8_t> to_bits(const Instance& inst) const;

    /// Inverse of to_bits. Throws FeasibilityError if the bit vector
    /// assigns one slot to two MVNOs (C2).
    static Allocation from_bits(const Instance& inst,
                                const std::vector<std::uint8_t>& bits);

    bool operator==(const Allocation&) const = default;

private:
    int num_bs_;
    int num_subcarriers_;
    int num_slots_;
    std::vector<std::vector<int>> grid_; // [b][tau] -> m or kUnassigned
};

/// Raw per-slot owner lists, as parsed from an allocation file. Unlike
/// Allocation this can express a double-assigned slot, which validation
/// must be able to report.
struct CellAssignment {
    int num_bs = 0;
    int num_subcarriers = 0;
    int num_slots = 0;
    std::vector<std::vector<std::vector<int>>> owners; // [b][tau] -> list of m

    int grid_size() const { return num_subcarriers * num_slots; }
};

struct QuotaViolation {
    int m; // 0-based
    int b;
    int assigned;
    int required;
};

struct SlotViolation {
    int b; // 0-based
    int n;
    int t;
    std::vector<int> owners;
};

/// Per-constraint satisfaction report; empty() iff the allocation is a
/// feasible policy for the instance.
struct FeasibilityReport {
    std::vector<QuotaViolation> c1; // wrong per-(m,b) RB count
    std::vector<SlotViolation> c2;  // slot assigned to more than one MVNO

    bool empty() const { return c1.empty() && c2.empty(); }
    std::string to_string() const; // 1-based indices, one line per violation
};

FeasibilityReport check_feasibility(const Instance& inst, const Allocation& alloc);
FeasibilityReport check_feasibility(const Instance& inst, const CellAssignment& cells);

/// Total number of linked RBs: slots assigned to the same MVNO on two
/// interfering BSs, each unordered BS pair counted once. Equals
/// (1/2) x^T Q x for the flat vector x. Throws FeasibilityError if the
/// allocation is not feasible for the instance.
std::int64_t count_linked(const Instance& inst, const Allocation& alloc);

/// Link count of the allocation restricted to one slot column.
std::int64_t column_links(const Instance& inst, const Allocation& alloc, int tau);

} // namespace rsep

#endif // RSEP_ALLOCATION_HPP
