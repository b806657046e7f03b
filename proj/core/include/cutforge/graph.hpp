#ifndef CUTFORGE_GRAPH_HPP
#define CUTFORGE_GRAPH_HPP

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cutforge {

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    std::size_t byte_offset;
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
};

namespace graphs {

/// Undirected simple graph on at most 32 vertices, stored as a symmetric
/// adjacency bit matrix (row v = neighbor mask of v). Value type, immutable
/// in spirit: mutators exist for construction only.
class SmallGraph {
public:
    static constexpr int kMaxVertices = 32;

    SmallGraph() = default;
    explicit SmallGraph(int n) : n_(n) {
        if (n < 0 || n > kMaxVertices)
            throw CapacityError("vertex count out of range: " + std::to_string(n));
    }
    SmallGraph(int n, const std::vector<std::pair<int, int>>& edge_list) : SmallGraph(n) {
        for (auto [u, v] : edge_list) add_edge(u, v);
    }

    int vertex_count() const { return n_; }

    int edge_count() const {
        int total = 0;
        for (int v = 0; v < n_; ++v) total += std::popcount(adj_[v]);
        return total / 2;
    }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        return (adj_[u] >> v) & 1u;
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("loops are not allowed");
        adj_[u] |= 1u << v;
        adj_[v] |= 1u << u;
    }

    void remove_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        adj_[u] &= ~(1u << v);
        adj_[v] &= ~(1u << u);
    }

    uint32_t neighbors(int v) const {
        check_vertex(v);
        return adj_[v];
    }

    int degree(int v) const { return std::popcount(neighbors(v)); }

    int min_degree() const {
        int best = n_ == 0 ? 0 : degree(0);
        for (int v = 1; v < n_; ++v) best = std::min(best, degree(v));
        return best;
    }

    uint32_t vertex_mask() const {
        return n_ == 32 ? 0xffffffffu : ((1u << n_) - 1u);
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if ((adj_[u] >> v) & 1u) out.emplace_back(u, v);
        return out;
    }

    /// Subgraph induced by the vertex set `mask`, re-indexed in ascending
    /// original-vertex order.
    SmallGraph induced(uint32_t mask) const;

    /// Image under the permutation `perm` (vertex v of *this becomes
    /// perm[v] of the result).
    SmallGraph relabeled(const std::vector<int>& perm) const;

    auto operator<=>(const SmallGraph& other) const {
        if (auto c = n_ <=> other.n_; c != 0) return c;
        for (int v = 0; v < n_; ++v)
            if (auto c = adj_[v] <=> other.adj_[v]; c != 0) return c;
        return std::strong_ordering::equal;
    }
    bool operator==(const SmallGraph& other) const {
        return (*this <=> other) == 0;
    }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("vertex index " + std::to_string(v));
    }

    int n_ = 0;
    std::array<uint32_t, kMaxVertices> adj_{};
};

/// One side of a bipartition as a bit mask (bit v set = vertex v in part A).
struct Bipartition {
    uint32_t side = 0;

    bool in_part_a(int v) const { return (side >> v) & 1u; }
    bool operator==(const Bipartition&) const = default;
};

/// Replication plan: vertex v of `base` becomes an independent set of
/// sizes[v] vertices; edges are carried over completely between blocks.
struct BlowUpSpec {
    SmallGraph base;
    std::vector<int> sizes;
};

// --- graph6 interchange format ------------------------------------------

/// Decodes one graph6 word. Strict: rejects trailing bytes, nonzero padding
/// and anything above the 32-vertex capacity.
SmallGraph from_graph6(std::string_view text);

std::string to_graph6(const SmallGraph& g);

// --- basic predicates and oracles ---------------------------------------

bool is_triangle_free(const SmallGraph& g);

bool is_connected(const SmallGraph& g);

/// Number of edges with both ends in the same part of `cut`.
int removed_edges(const SmallGraph& g, Bipartition cut);

struct D2Result {
    int removed = 0;
    Bipartition cut;  // witness; smallest part-A mask among the optima
};

/// Exact bipartization distance by brute force over all bipartitions.
/// Capacity 24 vertices.
D2Result d2_exact(const SmallGraph& g);

constexpr int kD2Capacity = 24;

// --- canonical labeling and enumeration ----------------------------------

struct CanonicalForm {
    SmallGraph graph;
    std::vector<int> permutation;  // relabeled(permutation) == graph
};

/// Canonical representative under isomorphism, computed by degree
/// refinement with backtracking over the remaining cells. Deterministic;
/// tuned for the enumeration sizes (n <= 8), usable well beyond.
CanonicalForm canonical_form(const SmallGraph& g);

bool isomorphic(const SmallGraph& a, const SmallGraph& b);

/// All automorphisms, as permutations. Brute force; capacity 8 vertices.
std::vector<std::vector<int>> automorphisms(const SmallGraph& g);

/// One representative per isomorphism class of triangle-free graphs on n
/// vertices, canonical forms in ascending adjacency order. 1 <= n <= 8.
std::vector<SmallGraph> enumerate_triangle_free(int n);

// --- constructions --------------------------------------------------------

SmallGraph blow_up(const BlowUpSpec& spec);

/// Homomorphism into the 5-cycle (classes 0..4, edges mapped onto cycle
/// edges), or nullopt. Backtracking; capacity 20 vertices.
std::optional<std::vector<int>> is_c5_colorable(const SmallGraph& g);

// --- named graphs ----------------------------------------------------------

SmallGraph cycle(int n);
SmallGraph path(int n);
SmallGraph complete_bipartite(int a, int b);
SmallGraph c5();
SmallGraph petersen();

/// The 16-vertex 5-regular triangle-free Clebsch graph.
SmallGraph clebsch();

/// Part A of the reference 8-edge bipartization of the Clebsch graph.
Bipartition clebsch_reference_cut();

std::optional<SmallGraph> named_graph(std::string_view name);

/// Seeded random triangle-free graph: visits vertex pairs in a shuffled
/// order and keeps an edge with probability num/den when it closes no
/// triangle. Fully deterministic for a given seed.
SmallGraph random_triangle_free(int n, long prob_num, long prob_den, uint64_t seed);

}  // namespace graphs
}  // namespace cutforge

#endif
