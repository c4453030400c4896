#include "rsep/rng.hpp"

#include <algorithm>

namespace rsep {

std::vector<std::uint64_t> Rng::sample(std::uint64_t n, std::uint64_t k) {
    std::vector<std::uint64_t> chosen;
    chosen.reserve(k);
    for (std::uint64_t j = n - k; j < n; ++j) {
        std::uint64_t r = below(j + 1);
        if (std::find(chosen.begin(), chosen.end(), r) == chosen.end())
            chosen.push_back(r);
        else
            chosen.push_back(j);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

} // namespace rsep
