#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "cutforge/flags.hpp"

namespace cutforge::flags {

using cuts::RootedCutDescriptor;
using graphs::SmallGraph;

RootedGraphType RootedGraphType::make(SmallGraph g, int root_count) {
    int n = g.vertex_count();
    if (root_count < 0 || root_count > n)
        throw std::invalid_argument("root count out of range");

    std::vector<int> tail(n - root_count);
    std::iota(tail.begin(), tail.end(), root_count);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    SmallGraph best = g;
    bool first = true;
    do {
        for (std::size_t i = 0; i < tail.size(); ++i) perm[root_count + i] = tail[i];
        SmallGraph candidate = g.relabeled(perm);
        if (first || candidate < best) {
            best = candidate;
            first = false;
        }
    } while (std::next_permutation(tail.begin(), tail.end()));
    return {best, root_count};
}

SmallGraph RootedGraphType::root() const {
    return graph.induced((1u << root_count) - 1u);
}

namespace {

/// Rooted graph induced by the embedded root plus `extras` (host vertices,
/// kept in the given order after the roots).
SmallGraph extract_rooted(const SmallGraph& host, std::span<const int> embedding,
                          std::span<const int> extras) {
    int k = static_cast<int>(embedding.size());
    int t = static_cast<int>(extras.size());
    SmallGraph out(k + t);
    std::vector<int> all(embedding.begin(), embedding.end());
    all.insert(all.end(), extras.begin(), extras.end());
    for (int i = 0; i < k + t; ++i)
        for (int j = i + 1; j < k + t; ++j)
            if (host.has_edge(all[i], all[j])) out.add_edge(i, j);
    return out;
}

/// Type for root-plus-one-vertex with the given adjacency pattern.
RootedGraphType pattern_type(const SmallGraph& root, uint32_t pattern) {
    int k = root.vertex_count();
    SmallGraph g(k + 1);
    for (auto [u, v] : root.edges()) g.add_edge(u, v);
    for (int a = 0; a < k; ++a)
        if ((pattern >> a) & 1u) g.add_edge(a, k);
    return RootedGraphType{g, k};  // one non-root: already canonical
}

/// Type for root-plus-two-vertices with patterns p1, p2 and an optional
/// edge between the two.
RootedGraphType pair_type(const SmallGraph& root, uint32_t p1, uint32_t p2, bool edge) {
    int k = root.vertex_count();
    SmallGraph g(k + 2);
    for (auto [u, v] : root.edges()) g.add_edge(u, v);
    for (int a = 0; a < k; ++a) {
        if ((p1 >> a) & 1u) g.add_edge(a, k);
        if ((p2 >> a) & 1u) g.add_edge(a, k + 1);
    }
    if (edge) g.add_edge(k, k + 1);
    return RootedGraphType::make(g, k);
}

bool pattern_independent(const SmallGraph& root, uint32_t pattern) {
    for (int a = 0; a < root.vertex_count(); ++a)
        if ((pattern >> a) & 1u && (root.neighbors(a) & pattern) != 0) return false;
    return true;
}

}  // namespace

FlagExpression cut_to_flag_expression(const RootedCutDescriptor& d) {
    d.validate();
    int k = d.root_size();
    uint32_t patterns = 1u << k;

    FlagExpression e;
    e.root = d.root;

    for (auto [a, b] : d.root.edges())
        e.constant += same_side_probability(d.root_side[a], d.root_side[b]);

    // root-to-class edges; types with a triangle never occur in a
    // triangle-free host and are dropped
    for (uint32_t p = 0; p < patterns; ++p) {
        if (!pattern_independent(d.root, p)) continue;
        Rational coeff = 0;
        for (int a = 0; a < k; ++a)
            if ((p >> a) & 1u)
                coeff += same_side_probability(d.root_side[a], d.class_prob[p]);
        if (coeff != 0) e.linear_terms[pattern_type(d.root, p)] += coeff;
    }

    // edges between two classified vertices; patterns sharing a root
    // neighbor would close a triangle with the connecting edge
    for (uint32_t p1 = 0; p1 < patterns; ++p1) {
        if (!pattern_independent(d.root, p1)) continue;
        for (uint32_t p2 = p1; p2 < patterns; ++p2) {
            if (!pattern_independent(d.root, p2)) continue;
            if ((p1 & p2) != 0) continue;
            Rational coeff = same_side_probability(d.class_prob[p1], d.class_prob[p2]);
            if (coeff != 0) e.quadratic_terms[pair_type(d.root, p1, p2, true)] += coeff;
        }
    }
    return e;
}

Rational evaluate_expression(const FlagExpression& e, const SmallGraph& g,
                             std::span<const int> embedding, EvalForm form) {
    if (!cuts::is_induced_embedding(e.root, g, embedding))
        throw cuts::EmbeddingError("embedding is not an induced copy of the expression root");

    int n = g.vertex_count();
    int k = e.root.vertex_count();
    uint32_t roots = 0;
    for (int v : embedding) roots |= 1u << v;

    std::vector<int> others;
    for (int v = 0; v < n; ++v)
        if (!((roots >> v) & 1u)) others.push_back(v);

    std::map<uint32_t, long> single_counts;
    for (int w : others) {
        uint32_t pattern = 0;
        for (int a = 0; a < k; ++a)
            if (g.has_edge(w, embedding[a])) pattern |= 1u << a;
        ++single_counts[pattern];
    }

    std::map<std::tuple<uint32_t, uint32_t, bool>, long> pair_counts;
    for (std::size_t i = 0; i < others.size(); ++i)
        for (std::size_t j = i + 1; j < others.size(); ++j) {
            uint32_t pi = 0, pj = 0;
            for (int a = 0; a < k; ++a) {
                if (g.has_edge(others[i], embedding[a])) pi |= 1u << a;
                if (g.has_edge(others[j], embedding[a])) pj |= 1u << a;
            }
            if (pi > pj) std::swap(pi, pj);
            ++pair_counts[{pi, pj, g.has_edge(others[i], others[j])}];
        }

    Rational linear = 0;
    for (auto& [pattern, count] : single_counts) {
        auto it = e.linear_terms.find(pattern_type(e.root, pattern));
        if (it != e.linear_terms.end()) linear += it->second * Rational(count);
    }

    Rational quadratic = 0;
    for (auto& [key, count] : pair_counts) {
        auto [p1, p2, edge] = key;
        auto it = e.quadratic_terms.find(pair_type(e.root, p1, p2, edge));
        if (it != e.quadratic_terms.end()) quadratic += it->second * Rational(count);
    }

    if (form == EvalForm::counts) return e.constant + linear + quadratic;

    long singles = n - k;
    long pairs = singles * (singles - 1) / 2;
    Rational out = e.constant;
    if (linear != 0) {
        if (singles == 0) throw std::domain_error("density form needs a non-root vertex");
        out += linear / Rational(singles);
    }
    if (quadratic != 0) {
        if (pairs == 0) throw std::domain_error("density form needs a non-root pair");
        out += quadratic / Rational(pairs);
    }
    return out;
}

Rational rooted_density(const RootedGraphType& type, const SmallGraph& g,
                        std::span<const int> embedding) {
    int k = type.root_count;
    if (static_cast<int>(embedding.size()) != k)
        throw cuts::EmbeddingError("embedding size does not match the type's root");
    if (!cuts::is_induced_embedding(type.root(), g, embedding))
        throw cuts::EmbeddingError("embedding is not an induced copy of the type's root");

    int n = g.vertex_count();
    int t = type.size() - k;
    uint32_t roots = 0;
    for (int v : embedding) roots |= 1u << v;

    std::vector<int> others;
    for (int v = 0; v < n; ++v)
        if (!((roots >> v) & 1u)) others.push_back(v);

    long total = 0, hits = 0;
    std::vector<int> subset(t);
    auto choose = [&](auto&& self, int start, int depth) -> void {
        if (depth == t) {
            ++total;
            if (RootedGraphType::make(extract_rooted(g, embedding, subset), k) == type) ++hits;
            return;
        }
        for (int i = start; i < static_cast<int>(others.size()); ++i) {
            subset[depth] = others[i];
            self(self, i + 1, depth + 1);
        }
    };
    choose(choose, 0, 0);
    if (total == 0) throw std::domain_error("no subsets of the requested size");
    return Rational(hits) / Rational(total);
}

std::vector<RootedGraphType> flag_basis(const SmallGraph& root, int type_size) {
    int k = root.vertex_count();
    int t = type_size - k;
    if (t < 0) throw std::invalid_argument("type size below root size");
    if (type_size > 8) throw CapacityError("flag bases capped at 8-vertex types");

    std::vector<RootedGraphType> out;
    std::set<RootedGraphType> seen;

    int root_bits = k * t;
    int tail_bits = t * (t - 1) / 2;
    for (uint64_t mask = 0; mask < (1ull << (root_bits + tail_bits)); ++mask) {
        SmallGraph g(type_size);
        for (auto [u, v] : root.edges()) g.add_edge(u, v);
        int bit = 0;
        for (int x = 0; x < t; ++x)
            for (int a = 0; a < k; ++a, ++bit)
                if ((mask >> bit) & 1ull) g.add_edge(a, k + x);
        for (int x = 0; x < t; ++x)
            for (int y = x + 1; y < t; ++y, ++bit)
                if ((mask >> bit) & 1ull) g.add_edge(k + x, k + y);
        if (!graphs::is_triangle_free(g)) continue;
        auto type = RootedGraphType::make(g, k);
        if (seen.insert(type).second) out.push_back(type);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Rational root_embedding_density(const SmallGraph& root, const SmallGraph& host) {
    int k = root.vertex_count();
    int n = host.vertex_count();
    if (k > n) return Rational(0);
    long tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= n - i;
    auto embeddings = cuts::induced_embeddings(root, host);
    return Rational(static_cast<long>(embeddings.size())) / Rational(tuples);
}

Rational labeled_density(const RootedGraphType& type, const SmallGraph& host) {
    const SmallGraph root = type.root();
    int k = root.vertex_count();
    int n = host.vertex_count();
    if (type.size() > n) return Rational(0);
    long tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= n - i;

    Rational sum = 0;
    for (const auto& emb : cuts::induced_embeddings(root, host))
        sum += rooted_density(type, host, emb);
    return sum / Rational(tuples);
}

SymMatrix product_block_matrix(const std::vector<RootedGraphType>& basis,
                               const SmallGraph& host) {
    if (basis.empty()) throw std::invalid_argument("empty flag basis");
    const SmallGraph root = basis.front().root();
    int k = root.vertex_count();
    for (const auto& type : basis)
        if (type.root() != root || type.root_count != k)
            throw std::invalid_argument("basis types must share one root");

    int n = host.vertex_count();
    long tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= n - i;

    std::size_t b = basis.size();
    SymMatrix m(b, std::vector<Rational>(b, Rational(0)));
    for (const auto& emb : cuts::induced_embeddings(root, host)) {
        std::vector<Rational> dens(b);
        for (std::size_t s = 0; s < b; ++s) dens[s] = rooted_density(basis[s], host, emb);
        for (std::size_t s = 0; s < b; ++s)
            for (std::size_t t = s; t < b; ++t) m[s][t] += dens[s] * dens[t];
    }
    for (std::size_t s = 0; s < b; ++s)
        for (std::size_t t = s; t < b; ++t) {
            m[s][t] /= Rational(tuples);
            m[t][s] = m[s][t];
        }
    return m;
}

std::vector<SymMatrix> product_block_matrices(const std::vector<RootedGraphType>& basis,
                                              int constraint_size) {
    if (basis.empty()) throw std::invalid_argument("empty flag basis");
    int k = basis.front().root().vertex_count();
    for (const auto& type : basis)
        if (2 * type.size() - k > constraint_size)
            throw std::invalid_argument("basis type too large for the constraint size");

    std::vector<SymMatrix> out;
    for (const auto& host : graphs::enumerate_triangle_free(constraint_size))
        out.push_back(product_block_matrix(basis, host));
    return out;
}

}  // namespace cutforge::flags
