#include "clique.hpp"

#include <algorithm>
#include <numeric>

namespace relword::detail {

namespace {

struct Search {
    std::vector<std::vector<bool>> adj;  // reordered
    std::vector<std::uint64_t> w;
    std::uint64_t best = 0;

    void expand(std::vector<std::size_t>& cand, std::uint64_t cur) {
        if (cand.empty()) {
            best = std::max(best, cur);
            return;
        }
        std::uint64_t rest = 0;
        for (auto v : cand) rest += w[v];
        while (!cand.empty()) {
            if (cur + rest <= best) return;
            std::size_t v = cand.back();
            cand.pop_back();
            rest -= w[v];
            std::vector<std::size_t> next;
            for (auto u : cand)
                if (adj[v][u]) next.push_back(u);
            expand(next, cur + w[v]);
        }
    }
};

}  // namespace

std::uint64_t max_weight_clique(const std::vector<std::vector<bool>>& adj,
                                const std::vector<std::uint64_t>& weight) {
    std::size_t n = weight.size();
    if (n == 0) return 0;
    // Heaviest vertices are popped first.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return weight[a] < weight[b]; });
    Search s;
    s.adj.assign(n, std::vector<bool>(n, false));
    s.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.w[i] = weight[order[i]];
        for (std::size_t j = 0; j < n; ++j) s.adj[i][j] = adj[order[i]][order[j]];
    }
    std::vector<std::size_t> cand(n);
    std::iota(cand.begin(), cand.end(), 0);
    s.expand(cand, 0);
    return s.best;
}

}  // namespace relword::detail
