#ifndef CUTFORGE_BOUNDS_HPP
#define CUTFORGE_BOUNDS_HPP

#include <array>
#include <optional>
#include <vector>

#include "cutforge/graph.hpp"
#include "cutforge/rational.hpp"

namespace cutforge::bounds {

/// min{ m/2 - 2m(2m^2 - n^3) / (n^2 (n^2 - 2m)),  m - 4m^2/n^2 } as an
/// exact rational. Defined for 0 <= m <= floor(n^2/4) (the triangle-free
/// range, where n^2 != 2m holds automatically).
Rational efps_bound(long n, long m);

/// Which guarantees apply to an (n, m) pair: n^2/23.5 always, n^2/25 when
/// the edge count clears 0.3197*C(n,2) from above or 0.2486*C(n,2) from
/// below. Thresholds compared exactly.
struct RegimeReport {
    long n = 0, m = 0;
    bool dense_regime = false;    // m >= 3197/10000 * C(n,2)
    bool sparse_regime = false;   // m <= 2486/10000 * C(n,2)
    Rational always_bound;        // 2 n^2 / 47
    Rational conjectured_bound;   // n^2 / 25, when a regime applies
    Rational efps;                // the closed-form bound, for comparison
    Rational half_edges;          // m/2
};
RegimeReport theorem3_regime(long n, long m);

struct PeelConfig {
    Rational slope = Rational(3, 8);
    Rational round_cap_coeff;  // cap = floor(coeff * n) rounds

    static PeelConfig defaults();   // slope 3/8, coeff 5e-7
    static PeelConfig uncapped();   // slope 3/8, coeff 2 (cap never binds)
};

enum class PeelStop { degree_threshold, round_cap };

struct PeelStage {
    graphs::SmallGraph graph;   // after the removal, re-indexed
    uint32_t survivors = 0;     // original-vertex mask
    int removed_vertex = 0;     // original index
    int removed_degree = 0;     // degree at removal time
};

struct PeelTrace {
    std::vector<PeelStage> stages;
    PeelStop stop_reason = PeelStop::degree_threshold;
};

/// Iterated minimum-degree removal: stops when the current i-vertex graph
/// has min degree exceeding slope*i, or after floor(coeff*n) rounds.
/// The round cap is checked first; minimum-degree ties break to the lowest
/// original index.
PeelTrace peel(const graphs::SmallGraph& g, const PeelConfig& cfg);

/// (3/32)(n^2 - m^2 + n - m) + d2_tail; requires 0 <= m_stage <= n.
Rational lemma1_bound(long n, long m_stage, const Rational& d2_tail);

/// Extends a bipartition of the induced subgraph on `sub_vertices` (bit
/// mask; sub_cut indexes that subgraph in ascending original order) to all
/// of g: remaining vertices are placed in ascending index order on the side
/// holding fewer of their already-placed neighbors, ties to part A.
graphs::Bipartition extend_bipartition(const graphs::SmallGraph& g, uint32_t sub_vertices,
                                       graphs::Bipartition sub_cut);

using C5Profile = std::array<long, 5>;

/// Bipartization distance of the C5 blow-up with the given class sizes:
/// min over cyclically adjacent class products. Cross-checked against the
/// brute-force oracle whenever the blow-up fits (sum <= 24); pass
/// formula_only to skip that (required above capacity).
long c5_blowup_d2(const C5Profile& profile, bool formula_only = false);

struct C5Optimum {
    bool feasible = false;
    C5Profile profile{};
    long edges = 0;
};

/// Maximizes the blow-up edge count sum a_i a_{i+1} over profiles with the
/// given total, subject to c5_blowup_d2 >= d2_floor and, when symmetric,
/// a2 = a5 and a3 = a4. Exhaustive integer search, total <= 200.
C5Optimum c5_blowup_edge_optimum(long total, const Rational& d2_floor, bool symmetric);

struct ScalingCheck {
    Rational original;  // D2(G) / n^2
    Rational blown_up;  // D2(G') / (kn)^2
    bool holds = false; // blown_up >= original
};

/// Compares D2 density before and after a uniform factor-k blow-up,
/// both sides by brute force. Requires k*n <= 24.
ScalingCheck blowup_scaling_check(const graphs::SmallGraph& g, int factor);

struct HaggkvistReport {
    bool premise = false;                       // min degree > 3n/8
    std::optional<std::vector<int>> witness;    // C5 coloring when expected
};

/// Minimum-degree premise delta(G) > 3n/8; when it holds on a triangle-free
/// graph, also reports the C5-blow-up coloring witness.
HaggkvistReport haggkvist_premise(const graphs::SmallGraph& g);

}  // namespace cutforge::bounds

#endif
