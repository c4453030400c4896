#ifndef RSEP_RBAM_HPP
#define RSEP_RBAM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rsep/allocation.hpp"

namespace rsep {

/// RB allocation matrix: one row per BS, one column per slot of the
/// reshaped (linearized) grid, entries are MVNO ids or kUnassigned. This is
/// the working representation of the aggregation mapping; an aggregated
/// RBAM has N_RB * T / K columns.
class Rbam {
public:
    Rbam(int num_bs, int num_cols)
        : num_cols_(num_cols),
          grid_(num_bs, std::vector<int>(num_cols, kUnassigned)) {}

    static Rbam from_allocation(const Allocation& alloc);

    /// Columns must match num_subcarriers * num_slots.
    Allocation to_allocation(int num_subcarriers, int num_slots) const;

    int num_bs() const { return static_cast<int>(grid_.size()); }
    int num_cols() const { return num_cols_; }

    int at(int b, int col) const { return grid_[b][col]; }
    void set(int b, int col, int m) { grid_[b][col] = m; }

    const std::vector<std::vector<int>>& grid() const { return grid_; }

    /// Link count under the given BS adjacency matrix.
    std::int64_t links(const std::vector<std::vector<int>>& adjacency) const;

    /// Text grid for debugging, one BS per row ("." = unassigned).
    std::string pretty() const;

    std::string to_json() const;
    static Rbam from_json(const std::string& text);

    bool operator==(const Rbam&) const = default;

private:
    int num_cols_;
    std::vector<std::vector<int>> grid_; // [b][col]
};

} // namespace rsep

#endif // RSEP_RBAM_HPP
