#ifndef CUTFORGE_TEST_HELPERS_HPP
#define CUTFORGE_TEST_HELPERS_HPP

#include <string>
#include <vector>

#include "cutforge/cuts.hpp"
#include "cutforge/graph.hpp"
#include "cutforge/rational.hpp"
#include "cutforge/rng.hpp"

namespace testutil {

using cutforge::Rational;
using cutforge::SplitMix64;
using cutforge::graphs::SmallGraph;

/// Independent graph6 encoder built on a textual bit buffer; shares no code
/// with the library implementation.
inline std::string reference_graph6(const SmallGraph& g) {
    int n = g.vertex_count();
    std::string bits;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) bits.push_back(g.has_edge(i, j) ? '1' : '0');
    while (bits.size() % 6 != 0) bits.push_back('0');
    std::string out(1, static_cast<char>(63 + n));
    for (std::size_t at = 0; at < bits.size(); at += 6) {
        int value = 0;
        for (int b = 0; b < 6; ++b) value = value * 2 + (bits[at + b] - '0');
        out.push_back(static_cast<char>(63 + value));
    }
    return out;
}

/// Uniform random graph (every pair an independent coin).
inline SmallGraph random_graph(int n, SplitMix64& rng) {
    SmallGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next() & 1u) g.add_edge(u, v);
    return g;
}

inline std::vector<int> random_permutation(int n, SplitMix64& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    return perm;
}

/// Seeded random cut descriptor with root size <= max_root; probabilities
/// drawn from a small pool of exact rationals.
inline cutforge::cuts::RootedCutDescriptor random_descriptor(int max_root, SplitMix64& rng) {
    using cutforge::cuts::RootedCutDescriptor;
    static const std::vector<Rational> pool = {
        Rational(0),     Rational(1),     Rational(1, 2), Rational(1, 3),
        Rational(2, 3),  Rational(1, 4),  Rational(3, 4), Rational(2, 5),
    };
    int k = static_cast<int>(rng.below(max_root + 1));
    RootedCutDescriptor d;
    // random triangle-free root
    for (;;) {
        d.root = SmallGraph(k);
        for (int u = 0; u < k; ++u)
            for (int v = u + 1; v < k; ++v)
                if (rng.next() & 1u) d.root.add_edge(u, v);
        if (cutforge::graphs::is_triangle_free(d.root)) break;
    }
    d.root_side.clear();
    for (int a = 0; a < k; ++a) d.root_side.push_back(pool[rng.below(pool.size())]);
    d.class_prob.clear();
    for (std::size_t p = 0; p < (std::size_t{1} << k); ++p)
        d.class_prob.push_back(pool[rng.below(pool.size())]);
    return d;
}

}  // namespace testutil

#endif
