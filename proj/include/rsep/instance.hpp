#ifndef RSEP_INSTANCE_HPP
#define RSEP_INSTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace rsep {

/// One slicing enforcement problem: an interference graph over base
/// stations, a per-(MVNO, BS) resource-block quota matrix, and the
/// dimensions of the per-BS resource grid.
///
/// Conventions used throughout the library:
///   - MVNOs m and BSs b are 0-based internally, 1-based in files and
///     diagnostics.
///   - An RB (n, t) maps to the linear slot index tau = t * n_rb + n
///     (time-major), tau in [0, grid_size()).
class Instance {
public:
    /// Validates shape invariants: Y square/symmetric/binary with zero
    /// diagonal, L non-negative with M rows and B columns. Throws
    /// std::invalid_argument on violation. A per-BS quota overload
    /// (sum_m L[m][b] > grid_size()) is representable -- solvers reject
    /// it with InfeasibleInstanceError -- so that overloaded inputs can be
    /// loaded and diagnosed rather than refused at parse time.
    Instance(int num_mvnos, int num_bs, int num_subcarriers, int num_slots,
             std::vector<std::vector<int>> adjacency,
             std::vector<std::vector<int>> profile);

    int num_mvnos() const { return num_mvnos_; }
    int num_bs() const { return num_bs_; }
    int num_subcarriers() const { return num_subcarriers_; }
    int num_slots() const { return num_slots_; }

    /// Number of RB slots per BS, |R| = N_RB * T.
    int grid_size() const { return num_subcarriers_ * num_slots_; }

    /// Total number of binary variables V = M * B * N_RB * T.
    std::int64_t num_vars() const {
        return static_cast<std::int64_t>(num_mvnos_) * num_bs_ * grid_size();
    }

    int adjacent(int b1, int b2) const { return adjacency_[b1][b2]; }
    int quota(int m, int b) const { return profile_[m][b]; }

    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    const std::vector<std::vector<int>>& profile() const { return profile_; }

    /// Unordered interfering pairs (b1, b2), b1 < b2.
    std::vector<std::pair<int, int>> interfering_pairs() const;

    bool has_interference() const;

    /// Sum of quotas on BS b.
    int bs_load(int b) const;

    /// First BS whose quotas exceed the grid, or -1 if none. A non-negative
    /// result means no feasible policy exists.
    int overloaded_bs() const;

    /// Lossless JSON round trip; schema {M, B, N_RB, T, Y, L} documented in
    /// the README. Parse failures throw std::invalid_argument with a
    /// field-anchored message.
    std::string to_json() const;
    static Instance from_json(const std::string& text);

    bool operator==(const Instance&) const = default;

private:
    int num_mvnos_;
    int num_bs_;
    int num_subcarriers_;
    int num_slots_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<int>> profile_;
};

} // namespace rsep

#endif // RSEP_INSTANCE_HPP
