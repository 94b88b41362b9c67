#include "permcorr/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace permcorr::rng {

double standard_normal(SplitMix64& g) {
    const double u1 = to_unit_open(g.next());
    const double u2 = to_unit_open(g.next());
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void fill_random_permutation(std::vector<int>& perm, SplitMix64& g) {
    const int n = static_cast<int>(perm.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i >= 1; --i) {
        const auto j = static_cast<int>(bounded(g.next(), static_cast<std::uint64_t>(i) + 1));
        std::swap(perm[i], perm[j]);
    }
}

} // namespace permcorr::rng
