#include "cutforge/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cutforge/rng.hpp"

namespace cutforge::graphs {

SmallGraph SmallGraph::induced(uint32_t mask) const {
    mask &= vertex_mask();
    std::vector<int> keep;
    for (int v = 0; v < n_; ++v)
        if ((mask >> v) & 1u) keep.push_back(v);
    SmallGraph out(static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j)
            if (has_edge(keep[i], keep[j])) out.add_edge(static_cast<int>(i), static_cast<int>(j));
    return out;
}

SmallGraph SmallGraph::relabeled(const std::vector<int>& perm) const {
    if (static_cast<int>(perm.size()) != n_)
        throw std::invalid_argument("permutation size mismatch");
    SmallGraph out(n_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if ((adj_[u] >> v) & 1u) out.add_edge(perm[u], perm[v]);
    return out;
}

bool is_triangle_free(const SmallGraph& g) {
    for (int u = 0; u < g.vertex_count(); ++u) {
        uint32_t nu = g.neighbors(u);
        for (int v = u + 1; v < g.vertex_count(); ++v)
            if ((nu >> v) & 1u && (nu & g.neighbors(v)) != 0) return false;
    }
    return true;
}

bool is_connected(const SmallGraph& g) {
    int n = g.vertex_count();
    if (n <= 1) return true;
    uint32_t seen = 1u, frontier = 1u;
    while (frontier) {
        uint32_t next = 0;
        for (int v = 0; v < n; ++v)
            if ((frontier >> v) & 1u) next |= g.neighbors(v);
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == g.vertex_mask();
}

int removed_edges(const SmallGraph& g, Bipartition cut) {
    int n = g.vertex_count();
    uint32_t full = g.vertex_mask();
    uint32_t a = cut.side & full;
    int twice = 0;
    for (int v = 0; v < n; ++v) {
        uint32_t same = ((a >> v) & 1u) ? a : (~a & full);
        twice += std::popcount(g.neighbors(v) & same);
    }
    return twice / 2;
}

D2Result d2_exact(const SmallGraph& g) {
    int n = g.vertex_count();
    if (n > kD2Capacity)
        throw CapacityError("d2_exact capped at " + std::to_string(kD2Capacity) + " vertices");
    if (n == 0) return {0, Bipartition{0}};

    // Highest vertex pinned to part B; ascending scan then finds the
    // smallest optimal part-A mask overall.
    uint32_t full = g.vertex_mask();
    uint64_t limit = 1ull << (n - 1);
    int best = g.edge_count() + 1;
    uint32_t best_mask = 0;
    std::array<uint32_t, SmallGraph::kMaxVertices> adj{};
    for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);

    for (uint64_t m = 0; m < limit; ++m) {
        uint32_t a = static_cast<uint32_t>(m);
        uint32_t b = ~a & full;
        int twice = 0;
        for (int v = 0; v < n; ++v) {
            uint32_t same = ((a >> v) & 1u) ? a : b;
            twice += std::popcount(adj[v] & same);
        }
        int removed = twice / 2;
        if (removed < best) {
            best = removed;
            best_mask = a;
            if (best == 0) break;
        }
    }
    return {best, Bipartition{best_mask}};
}

SmallGraph blow_up(const BlowUpSpec& spec) {
    int nb = spec.base.vertex_count();
    if (static_cast<int>(spec.sizes.size()) != nb)
        throw std::invalid_argument("blow-up size vector does not match base");
    long total = 0;
    for (int s : spec.sizes) {
        if (s <= 0) throw std::invalid_argument("blow-up sizes must be positive");
        total += s;
    }
    if (total > SmallGraph::kMaxVertices)
        throw CapacityError("blow-up result exceeds 32 vertices");

    std::vector<int> offset(nb + 1, 0);
    for (int v = 0; v < nb; ++v) offset[v + 1] = offset[v] + spec.sizes[v];

    SmallGraph out(static_cast<int>(total));
    for (auto [u, v] : spec.base.edges())
        for (int i = offset[u]; i < offset[u + 1]; ++i)
            for (int j = offset[v]; j < offset[v + 1]; ++j) out.add_edge(i, j);
    return out;
}

std::optional<std::vector<int>> is_c5_colorable(const SmallGraph& g) {
    int n = g.vertex_count();
    if (n > 20) throw CapacityError("is_c5_colorable capped at 20 vertices");
    std::vector<int> color(n, -1);

    // class c fits next to class d iff |c-d| = 1 (mod 5)
    auto compatible = [&](int v, int c) {
        uint32_t nb = g.neighbors(v);
        for (int u = 0; u < n; ++u) {
            if (!((nb >> u) & 1u) || color[u] < 0) continue;
            int diff = (c - color[u] + 5) % 5;
            if (diff != 1 && diff != 4) return false;
        }
        return true;
    };

    // vertices in index order, classes tried ascending
    std::function<bool(int)> assign = [&](int v) {
        if (v == n) return true;
        for (int c = 0; c < 5; ++c) {
            if (!compatible(v, c)) continue;
            color[v] = c;
            if (assign(v + 1)) return true;
            color[v] = -1;
        }
        return false;
    };
    if (assign(0)) return color;
    return std::nullopt;
}

SmallGraph cycle(int n) {
    SmallGraph g(n);
    if (n == 2) {
        g.add_edge(0, 1);
        return g;
    }
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

SmallGraph path(int n) {
    SmallGraph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

SmallGraph complete_bipartite(int a, int b) {
    SmallGraph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) g.add_edge(u, v);
    return g;
}

SmallGraph c5() { return cycle(5); }

SmallGraph petersen() {
    SmallGraph g(10);
    for (int v = 0; v < 5; ++v) {
        g.add_edge(v, (v + 1) % 5);      // outer cycle
        g.add_edge(5 + v, 5 + (v + 2) % 5);  // inner pentagram
        g.add_edge(v, 5 + v);            // spokes
    }
    return g;
}

SmallGraph clebsch() {
    static const std::vector<std::pair<int, int>> edge_list = {
        {0, 1},  {0, 6},  {0, 8},   {0, 10},  {0, 13},  {1, 3},   {1, 4},   {1, 9},
        {1, 15}, {2, 3},  {2, 8},   {2, 10},  {2, 12},  {2, 15},  {3, 5},   {3, 6},
        {3, 11}, {4, 5},  {4, 10},  {4, 12},  {4, 14},  {5, 7},   {5, 8},   {5, 13},
        {6, 7},  {6, 12}, {6, 14},  {7, 9},   {7, 10},  {7, 15},  {8, 9},   {8, 14},
        {9, 11}, {9, 12}, {10, 11}, {11, 13}, {11, 14}, {12, 13}, {13, 15}, {14, 15}};
    return SmallGraph(16, edge_list);
}

Bipartition clebsch_reference_cut() {
    uint32_t mask = 0;
    for (int v : {0, 2, 4, 5, 6, 9, 11, 15}) mask |= 1u << v;
    return Bipartition{mask};
}

std::optional<SmallGraph> named_graph(std::string_view name) {
    if (name == "c5") return c5();
    if (name == "c4") return cycle(4);
    if (name == "petersen") return petersen();
    if (name == "clebsch") return clebsch();
    return std::nullopt;
}

SmallGraph random_triangle_free(int n, long prob_num, long prob_den, uint64_t seed) {
    if (n < 0 || n > SmallGraph::kMaxVertices) throw CapacityError("vertex count out of range");
    if (prob_den <= 0 || prob_num < 0 || prob_num > prob_den)
        throw std::invalid_argument("edge probability must be in [0,1]");

    SplitMix64 rng{seed};
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    for (std::size_t i = slots.size(); i > 1; --i)
        std::swap(slots[i - 1], slots[rng.below(i)]);

    SmallGraph g(n);
    for (auto [u, v] : slots) {
        if (!rng.bernoulli(static_cast<uint64_t>(prob_num), static_cast<uint64_t>(prob_den)))
            continue;
        if ((g.neighbors(u) & g.neighbors(v)) == 0) g.add_edge(u, v);
    }
    return g;
}

}  // namespace cutforge::graphs
