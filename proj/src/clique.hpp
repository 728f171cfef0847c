#pragma once

#include <cstdint>
#include <vector>

namespace relword::detail {

// Exact maximum-weight clique, branch and bound. adj must be symmetric and irreflexive.
std::uint64_t max_weight_clique(const std::vector<std::vector<bool>>& adj,
                                const std::vector<std::uint64_t>& weight);

}  // namespace relword::detail
