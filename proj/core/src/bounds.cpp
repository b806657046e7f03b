#include "cutforge/bounds.hpp"

#include <algorithm>

namespace cutforge::bounds {

using graphs::Bipartition;
using graphs::SmallGraph;

Rational efps_bound(long n, long m) {
    if (n < 1) throw std::domain_error("need at least one vertex");
    if (n * n == 2 * m) throw std::domain_error("first branch undefined at m = n^2/2");
    if (m < 0 || 4 * m > n * n)
        throw std::domain_error("edge count outside the triangle-free range [0, n^2/4]");
    if (m == 0) return Rational(0);

    Integer N(n), M(m);
    Integer n2 = N * N, n3 = n2 * N;

    // m/2 - 2m(2m^2 - n^3) / (n^2 (n^2 - 2m))
    Rational first = Rational(M) / 2 -
                     Rational(2 * M * (2 * M * M - n3)) / Rational(n2 * (n2 - 2 * M));
    // m - 4m^2/n^2
    Rational second = Rational(M) - Rational(4 * M * M) / Rational(n2);
    return std::min(first, second);
}

RegimeReport theorem3_regime(long n, long m) {
    RegimeReport r;
    r.n = n;
    r.m = m;
    r.efps = efps_bound(n, m);
    r.half_edges = Rational(m) / 2;
    r.always_bound = Rational(2 * Integer(n) * Integer(n)) / 47;  // n^2 / 23.5

    Rational pairs = Rational(Integer(n) * Integer(n - 1)) / 2;
    r.dense_regime = Rational(m) >= Rational(3197, 10000) * pairs;
    r.sparse_regime = Rational(m) <= Rational(2486, 10000) * pairs;
    if (r.dense_regime || r.sparse_regime)
        r.conjectured_bound = Rational(Integer(n) * Integer(n)) / 25;
    return r;
}

PeelConfig PeelConfig::defaults() { return {Rational(3, 8), Rational(5, 10000000)}; }

PeelConfig PeelConfig::uncapped() { return {Rational(3, 8), Rational(2)}; }

PeelTrace peel(const SmallGraph& g, const PeelConfig& cfg) {
    if (cfg.slope <= 0 || cfg.slope >= 1) throw std::invalid_argument("slope must be in (0,1)");
    if (cfg.round_cap_coeff < 0) throw std::invalid_argument("round cap must be nonnegative");

    int n = g.vertex_count();
    Rational cap_rational = cfg.round_cap_coeff * n;
    Integer cap_floor = cap_rational.get_num() / cap_rational.get_den();
    long cap = cap_floor.get_si();

    PeelTrace trace;
    uint32_t survivors = g.vertex_mask();
    int size = n;
    long rounds = 0;
    for (;;) {
        if (rounds >= cap) {
            trace.stop_reason = PeelStop::round_cap;
            return trace;
        }
        if (size == 0) {
            trace.stop_reason = PeelStop::degree_threshold;
            return trace;
        }
        // min degree within the surviving set, lowest index wins ties
        int pick = -1, pick_degree = 0;
        for (int v = 0; v < n; ++v) {
            if (!((survivors >> v) & 1u)) continue;
            int d = std::popcount(g.neighbors(v) & survivors);
            if (pick < 0 || d < pick_degree) {
                pick = v;
                pick_degree = d;
            }
        }
        if (Rational(pick_degree) > cfg.slope * size) {
            trace.stop_reason = PeelStop::degree_threshold;
            return trace;
        }
        survivors &= ~(1u << pick);
        --size;
        ++rounds;
        trace.stages.push_back({g.induced(survivors), survivors, pick, pick_degree});
    }
}

Rational lemma1_bound(long n, long m_stage, const Rational& d2_tail) {
    if (m_stage < 0 || m_stage > n)
        throw std::domain_error("stage size must lie in [0, n]");
    Integer N(n), M(m_stage);
    return Rational(3 * (N * N - M * M + N - M)) / 32 + d2_tail;
}

Bipartition extend_bipartition(const SmallGraph& g, uint32_t sub_vertices, Bipartition sub_cut) {
    uint32_t full = g.vertex_mask();
    if ((sub_vertices & ~full) != 0)
        throw std::invalid_argument("sub_vertices is not a subset of the vertex set");

    // translate the induced-subgraph cut back to original labels
    uint32_t placed = sub_vertices, part_a = 0;
    int pos = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!((sub_vertices >> v) & 1u)) continue;
        if (sub_cut.in_part_a(pos)) part_a |= 1u << v;
        ++pos;
    }

    for (int v = 0; v < g.vertex_count(); ++v) {
        if ((placed >> v) & 1u) continue;
        uint32_t nb = g.neighbors(v) & placed;
        int in_a = std::popcount(nb & part_a);
        int in_b = std::popcount(nb & ~part_a);
        if (in_a <= in_b) part_a |= 1u << v;  // ties to part A
        placed |= 1u << v;
    }
    return Bipartition{part_a};
}

long c5_blowup_d2(const C5Profile& profile, bool formula_only) {
    long total = 0;
    for (long a : profile) {
        if (a < 0) throw std::invalid_argument("class sizes must be nonnegative");
        total += a;
    }
    long best = profile[0] * profile[1];
    for (int i = 1; i < 5; ++i) best = std::min(best, profile[i] * profile[(i + 1) % 5]);

    if (!formula_only) {
        if (total > graphs::kD2Capacity)
            throw CapacityError("blow-up exceeds the brute-force capacity; pass formula_only");
        if (total > 0) {
            // zero classes drop out of the constructed graph
            graphs::BlowUpSpec spec;
            spec.base = SmallGraph(5);
            std::vector<int> klass;
            for (int i = 0; i < 5; ++i)
                if (profile[i] > 0) {
                    klass.push_back(i);
                    spec.sizes.push_back(static_cast<int>(profile[i]));
                }
            spec.base = SmallGraph(static_cast<int>(klass.size()));
            for (std::size_t x = 0; x < klass.size(); ++x)
                for (std::size_t y = x + 1; y < klass.size(); ++y) {
                    int diff = (klass[y] - klass[x]) % 5;
                    if (diff == 1 || diff == 4) spec.base.add_edge(static_cast<int>(x),
                                                                   static_cast<int>(y));
                }
            long brute = graphs::d2_exact(graphs::blow_up(spec)).removed;
            if (brute != best)
                throw std::logic_error("class formula disagrees with brute force");
        }
    }
    return best;
}

C5Optimum c5_blowup_edge_optimum(long total, const Rational& d2_floor, bool symmetric) {
    if (total < 0 || total > 200)
        throw CapacityError("exhaustive profile search capped at total 200");
    if (d2_floor < 0) throw std::invalid_argument("d2 floor must be nonnegative");

    C5Optimum best;
    auto consider = [&](const C5Profile& p) {
        long d2 = c5_blowup_d2(p, /*formula_only=*/true);
        if (Rational(d2) < d2_floor) return;
        long edges = 0;
        for (int i = 0; i < 5; ++i) edges += p[i] * p[(i + 1) % 5];
        if (!best.feasible || edges > best.edges) {
            best.feasible = true;
            best.profile = p;
            best.edges = edges;
        }
    };

    if (symmetric) {
        // a2 = a5, a3 = a4
        for (long a1 = 0; a1 <= total; ++a1)
            for (long a2 = 0; a1 + 2 * a2 <= total; ++a2) {
                long rest = total - a1 - 2 * a2;
                if (rest % 2 != 0) continue;
                long a3 = rest / 2;
                consider({a1, a2, a3, a3, a2});
            }
    } else {
        for (long a1 = 0; a1 <= total; ++a1)
            for (long a2 = 0; a1 + a2 <= total; ++a2)
                for (long a3 = 0; a1 + a2 + a3 <= total; ++a3)
                    for (long a4 = 0; a1 + a2 + a3 + a4 <= total; ++a4)
                        consider({a1, a2, a3, a4, total - a1 - a2 - a3 - a4});
    }
    return best;
}

ScalingCheck blowup_scaling_check(const SmallGraph& g, int factor) {
    int n = g.vertex_count();
    if (factor < 1) throw std::invalid_argument("factor must be positive");
    if (n * factor > graphs::kD2Capacity)
        throw CapacityError("scaled graph exceeds the brute-force capacity");
    if (n == 0) throw std::invalid_argument("empty graph");

    graphs::BlowUpSpec spec{g, std::vector<int>(n, factor)};
    SmallGraph scaled = graphs::blow_up(spec);

    ScalingCheck out;
    out.original = Rational(graphs::d2_exact(g).removed) / Rational(Integer(n) * Integer(n));
    long kn = static_cast<long>(n) * factor;
    out.blown_up = Rational(graphs::d2_exact(scaled).removed) / Rational(Integer(kn) * Integer(kn));
    out.holds = out.blown_up >= out.original;
    return out;
}

HaggkvistReport haggkvist_premise(const SmallGraph& g) {
    HaggkvistReport r;
    int n = g.vertex_count();
    if (n == 0) return r;
    r.premise = Rational(g.min_degree()) > Rational(3 * n, 8);
    if (r.premise && graphs::is_triangle_free(g)) r.witness = graphs::is_c5_colorable(g);
    return r;
}

}  // namespace cutforge::bounds
