#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cutforge/graph.hpp"

namespace cutforge::graphs {

namespace {

using Cells = std::vector<std::vector<int>>;

// Equitable refinement: split every cell by the vector of neighbor counts
// into all cells, ordered by signature. Deterministic.
void refine(const SmallGraph& g, Cells& cells) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<uint32_t> masks(cells.size(), 0);
        for (std::size_t c = 0; c < cells.size(); ++c)
            for (int v : cells[c]) masks[c] |= 1u << v;

        Cells next;
        next.reserve(cells.size());
        for (const auto& cell : cells) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::map<std::vector<int>, std::vector<int>> groups;
            for (int v : cell) {
                std::vector<int> sig(cells.size());
                for (std::size_t c = 0; c < cells.size(); ++c)
                    sig[c] = std::popcount(g.neighbors(v) & masks[c]);
                groups[sig].push_back(v);
            }
            if (groups.size() > 1) changed = true;
            for (auto& [sig, members] : groups) next.push_back(std::move(members));
        }
        cells = std::move(next);
    }
}

struct CanonicalSearch {
    const SmallGraph& g;
    SmallGraph best;
    std::vector<int> best_perm;
    bool have_best = false;

    explicit CanonicalSearch(const SmallGraph& graph) : g(graph) {}

    void visit_leaf(const Cells& cells) {
        std::vector<int> perm(g.vertex_count());
        for (std::size_t pos = 0; pos < cells.size(); ++pos) perm[cells[pos][0]] = static_cast<int>(pos);
        SmallGraph candidate = g.relabeled(perm);
        if (!have_best || candidate < best) {
            best = candidate;
            best_perm = perm;
            have_best = true;
        }
    }

    void run(Cells cells) {
        refine(g, cells);
        auto target = std::find_if(cells.begin(), cells.end(),
                                   [](const auto& c) { return c.size() > 1; });
        if (target == cells.end()) {
            visit_leaf(cells);
            return;
        }
        std::size_t idx = static_cast<std::size_t>(target - cells.begin());
        for (int v : cells[idx]) {
            Cells branched;
            branched.reserve(cells.size() + 1);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != idx) {
                    branched.push_back(cells[c]);
                    continue;
                }
                branched.push_back({v});
                std::vector<int> rest;
                for (int u : cells[c])
                    if (u != v) rest.push_back(u);
                branched.push_back(std::move(rest));
            }
            run(std::move(branched));
        }
    }
};

}  // namespace

CanonicalForm canonical_form(const SmallGraph& g) {
    int n = g.vertex_count();
    if (n == 0) return {g, {}};
    CanonicalSearch search(g);
    Cells start(1);
    start[0].resize(n);
    std::iota(start[0].begin(), start[0].end(), 0);
    search.run(std::move(start));
    return {search.best, search.best_perm};
}

bool isomorphic(const SmallGraph& a, const SmallGraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a).graph == canonical_form(b).graph;
}

std::vector<std::vector<int>> automorphisms(const SmallGraph& g) {
    int n = g.vertex_count();
    if (n > 8) throw CapacityError("automorphisms brute force capped at 8 vertices");
    std::vector<std::vector<int>> out;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                if (g.has_edge(u, v) != g.has_edge(perm[u], perm[v])) ok = false;
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<SmallGraph> enumerate_triangle_free(int n) {
    if (n < 1 || n > 8)
        throw CapacityError("enumerate_triangle_free supports 1 <= n <= 8");

    // Grow one vertex at a time: attaching a new vertex to an independent
    // set is exactly the triangle-free-preserving extension.
    std::vector<SmallGraph> level = {SmallGraph(1)};
    for (int size = 2; size <= n; ++size) {
        std::set<SmallGraph> next;
        for (const auto& g : level) {
            uint32_t full = g.vertex_mask();
            for (uint32_t s = 0; s <= full; ++s) {
                bool independent = true;
                for (int v = 0; v < g.vertex_count() && independent; ++v)
                    if ((s >> v) & 1u && (g.neighbors(v) & s) != 0) independent = false;
                if (!independent) continue;
                SmallGraph h(size);
                for (auto [u, v] : g.edges()) h.add_edge(u, v);
                for (int v = 0; v < g.vertex_count(); ++v)
                    if ((s >> v) & 1u) h.add_edge(v, size - 1);
                next.insert(canonical_form(h).graph);
            }
        }
        level.assign(next.begin(), next.end());
    }
    return level;
}

}  // namespace cutforge::graphs
