#ifndef RSEP_SCENARIO_HPP
#define RSEP_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "rsep/instance.hpp"

namespace rsep {

/// Knobs for random instance generation. Defaults follow an LTE FDD grid:
/// 6 resource blocks per sub-frame, 10 sub-frames per frame, so
/// T = n_frames * n_sf slots per enforcement window.
struct ScenarioSpec {
    int num_mvnos = 2;
    int num_bs = 2;
    int n_rb = 6;
    int n_sf = 10;
    int n_frames = 1;
    double adjacency_density = 0.5; // per unordered BS pair
    double load_fraction = 1.0;     // share of the grid split among MVNOs per BS
    std::uint64_t seed = 1;
    std::optional<int> force_aggregable_k;

    int num_slots() const { return n_frames * n_sf; }
    int grid_size() const { return n_rb * num_slots(); }

    /// Throws std::invalid_argument on inconsistent values (including a
    /// forced k that divides neither n_rb nor T).
    void validate() const;

    std::string to_json() const;
    static ScenarioSpec from_json(const std::string& text);
};

/// Seed-deterministic random instance: Erdos-Renyi adjacency, per-BS loads
/// of floor(load_fraction * N_RB * T) RBs split by a uniform random
/// composition among the MVNOs. With force_aggregable_k every quota is
/// rounded down to a multiple of k.
Instance generate(const ScenarioSpec& spec);

/// Named fixed scenarios: "fig1" (two interfering BSs, 4x4 grid, three
/// MVNOs with quotas 4/8/4) and "appendix_shape" (four fully interfering
/// BSs, five MVNOs, 2x4 grid, seeded quotas with GCD 2).
Instance fixed_scenario(const std::string& name);

} // namespace rsep

#endif // RSEP_SCENARIO_HPP
