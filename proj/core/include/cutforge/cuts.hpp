#ifndef CUTFORGE_CUTS_HPP
#define CUTFORGE_CUTS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutforge/graph.hpp"
#include "cutforge/rational.hpp"

namespace cutforge::cuts {

struct EmbeddingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoEmbeddingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A randomized bipartition scheme rooted at an induced copy of `root`.
/// Root vertex a joins part A with probability root_side[a]; every other
/// vertex is classified by its adjacency pattern towards the root (bit a =
/// adjacent to root vertex a) and joins part A with probability
/// class_prob[pattern]. All draws independent, all probabilities exact
/// rationals.
///
/// class_prob carries a value for each of the 2^k patterns. Patterns whose
/// root vertices span an edge cannot occur in a triangle-free host; they are
/// stored anyway (pinned to 1/2 by the constructors here) and stay inert.
struct RootedCutDescriptor {
    graphs::SmallGraph root;
    std::vector<Rational> root_side;
    std::vector<Rational> class_prob;

    int root_size() const { return root.vertex_count(); }
    std::size_t pattern_count() const { return std::size_t{1} << root_size(); }

    /// A pattern is realizable on triangle-free hosts iff it is an
    /// independent set in the root.
    bool pattern_realizable(uint32_t pattern) const;

    /// Checks shape and probability ranges; throws std::invalid_argument.
    void validate() const;

    bool operator==(const RootedCutDescriptor&) const = default;
};

/// Enumeration request for a family of cut descriptors.
struct CutFamilySpec {
    int min_root_size = 0;
    int max_root_size = 0;
    std::vector<Rational> allowed_probs;            // values for class probabilities
    std::optional<graphs::SmallGraph> exact_root;   // constrain to one root graph

    static CutFamilySpec roots_up_to(int max_size, std::vector<Rational> probs);
    static CutFamilySpec roots_exactly(int size, std::vector<Rational> probs);
    static CutFamilySpec specific_root(graphs::SmallGraph root, std::vector<Rational> probs);
};

// --- canonical descriptors -------------------------------------------------

/// Neighborhood cut: fixed vertex v stays with its non-neighborhood,
/// N(v) forms the other part.
RootedCutDescriptor single_vertex_cut();

/// Edge-rooted cut: N(u) and N(v) oppose their roots, everything else is
/// sided uniformly at random.
RootedCutDescriptor edge_cut();

/// Three disjoint root edges; a vertex follows the edge_cut rule of the
/// first root edge it is adjacent to (edge order 1, 2, 3), and is sided
/// uniformly when adjacent to none.
RootedCutDescriptor triple_edge_cut();

/// Deterministic cut rooted at a 4-cycle v0v1v2v3 with pendant vertices
/// v4 (at v0) and v5 (at v1). The two pseudo-side masks partition the root
/// set; a non-root vertex joins part A exactly when all of its root
/// neighbors lie in the second mask, and each root joins the part of its
/// own mask (first mask = part A, unassigned roots default to part B).
RootedCutDescriptor clebsch_cut(uint32_t first_pseudo_side, uint32_t second_pseudo_side);

/// The two plausible pseudo-side readings for the Clebsch-targeted cut.
/// Preset A co-locates {v0,v2,v5} against {v1,v3,v4}; preset B co-locates
/// {v1,v2,v5} against {v0,v3,v4}. A is the default elsewhere.
RootedCutDescriptor clebsch_cut_preset_a();
RootedCutDescriptor clebsch_cut_preset_b();

/// Pseudo-sides ({v0,v1}, {v2,v3,v4,v5}): the pendant-carrying cycle
/// vertices against the rest. Engine-measured to realize the 8-edge
/// optimum on the Clebsch graph, the best of all pseudo-side choices.
RootedCutDescriptor clebsch_cut_pendant_split();

/// Rootless uniform cut: every vertex joins part A with probability 1/2.
RootedCutDescriptor uniform_random_cut();

// --- evaluation -------------------------------------------------------------

/// All induced embeddings of `pattern` into `host` as ordered vertex tuples,
/// lexicographically sorted. Deterministic.
std::vector<std::vector<int>> induced_embeddings(const graphs::SmallGraph& pattern,
                                                 const graphs::SmallGraph& host);

bool is_induced_embedding(const graphs::SmallGraph& pattern, const graphs::SmallGraph& host,
                          std::span<const int> embedding);

/// Exact expected number of removed edges (edges with both ends on the same
/// side) for the scheme `d` anchored at `embedding`.
Rational expected_removed(const graphs::SmallGraph& g, const RootedCutDescriptor& d,
                          std::span<const int> embedding);

/// Mean of expected_removed over all induced embeddings of the root.
/// Throws NoEmbeddingError when the root does not embed.
Rational average_expected_removed(const graphs::SmallGraph& g, const RootedCutDescriptor& d);

/// One random bipartition drawn with the scheme's probabilities.
/// Deterministic for a fixed seed.
graphs::Bipartition sample_cut(const graphs::SmallGraph& g, const RootedCutDescriptor& d,
                               std::span<const int> embedding, uint64_t seed);

/// Method of conditional expectations: fixes the still-random vertices one
/// at a time (roots first, then non-roots, index order) to the side that
/// does not increase the conditional expectation, ties to part A. Vertices
/// with probability 0 or 1 keep their side, so a fully deterministic scheme
/// maps to exactly its own bipartition. The result removes at most
/// expected_removed(g, d, embedding) edges.
graphs::Bipartition derandomize(const graphs::SmallGraph& g, const RootedCutDescriptor& d,
                                std::span<const int> embedding);

// --- family enumeration ------------------------------------------------------

/// Deterministic enumeration of a descriptor family. Root graphs are the
/// triangle-free isomorphism classes in the requested size range, root
/// sides run over {0,1}, class probabilities run over allowed_probs on the
/// realizable patterns (inert patterns pinned to 1/2). Descriptors are
/// deduplicated up to root automorphism combined with the global part swap
/// (p -> 1-p, q -> 1-q); the first representative in scan order is kept.
std::vector<RootedCutDescriptor> enumerate_family(const CutFamilySpec& spec);

/// The four standard families with their reference sizes from the
/// literature; enumerate_family counts are reported against these.
struct FamilyReference {
    std::string name;
    CutFamilySpec spec;
    long reference_count;
};
std::vector<FamilyReference> standard_families();

// --- serialization -----------------------------------------------------------

std::string descriptor_to_json(const RootedCutDescriptor& d);
RootedCutDescriptor descriptor_from_json(const std::string& text);

/// Built-in descriptor by name (single-vertex, edge, triple-edge,
/// clebsch-a, clebsch-b, uniform).
std::optional<RootedCutDescriptor> named_cut(std::string_view name);

}  // namespace cutforge::cuts

#endif
