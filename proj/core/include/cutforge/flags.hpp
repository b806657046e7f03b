#ifndef CUTFORGE_FLAGS_HPP
#define CUTFORGE_FLAGS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutforge/cuts.hpp"
#include "cutforge/graph.hpp"
#include "cutforge/rational.hpp"

namespace cutforge::flags {

/// A graph with its first `root_count` vertices distinguished as ordered
/// roots. Canonical representative under permutations of the non-root
/// vertices only (roots are fixed pointwise).
struct RootedGraphType {
    graphs::SmallGraph graph;
    int root_count = 0;

    static RootedGraphType make(graphs::SmallGraph g, int root_count);

    int size() const { return graph.vertex_count(); }
    graphs::SmallGraph root() const;
    bool contains_triangle() const { return !graphs::is_triangle_free(graph); }

    auto operator<=>(const RootedGraphType&) const = default;
};

/// Exact expected-removed-edges accounting of a rooted cut as a rational
/// combination of rooted subgraph counts: a constant (root-root edges), one
/// term per (k+1)-type (root-to-class edges) and one per (k+2)-type (edges
/// between classified vertices). Terms that vanish on triangle-free hosts
/// are dropped, so count-form evaluation matches expected_removed exactly
/// on every triangle-free host.
struct FlagExpression {
    graphs::SmallGraph root;
    Rational constant = 0;
    std::map<RootedGraphType, Rational> linear_terms;
    std::map<RootedGraphType, Rational> quadratic_terms;
};

FlagExpression cut_to_flag_expression(const cuts::RootedCutDescriptor& d);

enum class EvalForm { counts, density };

/// Count form: constant + sum of coefficient * extension count. Density
/// form divides linear counts by (n-k) and quadratic counts by C(n-k, 2).
Rational evaluate_expression(const FlagExpression& e, const graphs::SmallGraph& g,
                             std::span<const int> embedding, EvalForm form);

/// Probability that a uniformly random (|T|-k)-subset of the non-root
/// vertices induces, together with the embedded root, a rooted copy of T.
Rational rooted_density(const RootedGraphType& type, const graphs::SmallGraph& g,
                        std::span<const int> embedding);

/// All triangle-free rooted types of the given size over `root`.
std::vector<RootedGraphType> flag_basis(const graphs::SmallGraph& root, int type_size);

/// Density of ordered induced root embeddings among all ordered k-tuples.
Rational root_embedding_density(const graphs::SmallGraph& root, const graphs::SmallGraph& host);

/// Count-normalized labeled density: probability that a random ordered
/// k-tuple plus a random (|T|-k)-subset of the rest induces T rooted.
Rational labeled_density(const RootedGraphType& type, const graphs::SmallGraph& host);

using SymMatrix = std::vector<std::vector<Rational>>;

/// Count-normalized Gram matrix of the basis against one host: entry (s,t)
/// = (1/(N)_k) * sum over root embeddings of
/// rooted_density(basis[s]) * rooted_density(basis[t]).
SymMatrix product_block_matrix(const std::vector<RootedGraphType>& basis,
                               const graphs::SmallGraph& host);

/// product_block_matrix against every triangle-free constraint graph.
std::vector<SymMatrix> product_block_matrices(const std::vector<RootedGraphType>& basis,
                                              int constraint_size);

/// The assembled optimization: find multipliers mu (simplex) over the cut
/// inequalities and PSD blocks certifying the smallest lambda with
///   sum_c mu_c a_{c,F} + sum_j <Q_j, M_{j,F}> <= 2 lambda r_F
/// for every triangle-free constraint graph F, where a_{c,F} is the
/// count-normalized pair-density expansion of cut c and r_F weighs the
/// inequality by root presence (identically 1 for roots on <= 1 vertex).
/// An accepted certificate proves D2(G) <= lambda n^2 + o(n^2) over
/// triangle-free graphs.
struct SdpProblem {
    int constraint_size = 0;
    std::vector<graphs::SmallGraph> constraint_graphs;
    std::vector<cuts::RootedCutDescriptor> cut_list;
    std::vector<std::vector<Rational>> cut_rows;      // [cut][F]
    std::vector<std::vector<Rational>> root_density;  // [cut][F]
    std::vector<std::vector<RootedGraphType>> bases;
    std::vector<std::vector<SymMatrix>> product_blocks;  // [basis][F]
};

SdpProblem assemble_sdp(int constraint_size,
                        const std::vector<cuts::RootedCutDescriptor>& cut_list,
                        const std::vector<std::vector<RootedGraphType>>& bases);

/// SDPA sparse (.dat-s) export of the assembled problem; decision variables
/// are (lambda, mu, block entries), one diagonal slack block carries the
/// per-graph rows, the simplex equality and mu >= 0.
void emit_sdpa(const SdpProblem& p, const std::string& path);
std::string emit_sdpa_string(const SdpProblem& p);

/// Rendering used in SDPA files: shortest exact decimal when the
/// denominator is 2^a 5^b, otherwise a plain decimal with 17 significant
/// digits.
std::string sdpa_decimal(const Rational& q);

/// Minimal reader for the emitted format (used for round-trip checks and
/// external solutions).
struct SdpaData {
    int num_vars = 0;
    std::vector<int> block_sizes;
    std::vector<Rational> objective;
    // (matno, block, i, j, value) with matno 0 the constant matrix
    std::vector<std::tuple<int, int, int, int, Rational>> entries;
};
SdpaData parse_sdpa(const std::string& text);

struct Certificate {
    Rational lambda;
    std::vector<Rational> mu;        // aligned with SdpProblem::cut_list
    std::vector<SymMatrix> blocks;   // aligned with SdpProblem::bases
};

struct Verdict {
    bool accepted = false;
    Rational lambda;
    std::string reason;                                  // empty when accepted
    std::optional<graphs::SmallGraph> witness_graph;     // violated constraint graph
};

/// Exact-rational certificate check: mu >= 0, sum mu = 1, lambda in
/// (0, 1/2], every block PSD (fraction-free LDL^T; a zero pivot with a
/// nonzero residual row rejects), every constraint-graph inequality holds.
Verdict verify_certificate(const Certificate& c, const SdpProblem& p);

/// True iff the matrix is symmetric positive semidefinite, decided in exact
/// integer arithmetic.
bool is_positive_semidefinite(const SymMatrix& m);

/// Rounds a floating-point solution to rationals with denominators at most
/// `max_denominator` (continued fractions). The result still has to pass
/// verify_certificate; rounding never silently accepts.
Certificate rationalize_certificate(double lambda, const std::vector<double>& mu,
                                    const std::vector<std::vector<std::vector<double>>>& blocks,
                                    unsigned long max_denominator = 1000000);

Rational rationalize(double value, unsigned long max_denominator = 1000000);

// --- serialization ---------------------------------------------------------

std::string problem_to_json(const SdpProblem& p);
SdpProblem problem_from_json(const std::string& text);
std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);

}  // namespace cutforge::flags

#endif
