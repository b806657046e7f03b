#include "cutforge/cuts.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "cutforge/rng.hpp"

namespace cutforge::cuts {

using graphs::Bipartition;
using graphs::SmallGraph;

bool RootedCutDescriptor::pattern_realizable(uint32_t pattern) const {
    for (int a = 0; a < root_size(); ++a)
        if ((pattern >> a) & 1u && (root.neighbors(a) & pattern) != 0) return false;
    return true;
}

void RootedCutDescriptor::validate() const {
    if (root_side.size() != static_cast<std::size_t>(root_size()))
        throw std::invalid_argument("root_side size does not match root order");
    if (class_prob.size() != pattern_count())
        throw std::invalid_argument("class_prob must cover all 2^k patterns");
    for (const auto& q : root_side)
        if (!is_probability(q)) throw std::invalid_argument("root_side entry outside [0,1]");
    for (const auto& p : class_prob)
        if (!is_probability(p)) throw std::invalid_argument("class_prob entry outside [0,1]");
}

CutFamilySpec CutFamilySpec::roots_up_to(int max_size, std::vector<Rational> probs) {
    return CutFamilySpec{0, max_size, std::move(probs), std::nullopt};
}

CutFamilySpec CutFamilySpec::roots_exactly(int size, std::vector<Rational> probs) {
    return CutFamilySpec{size, size, std::move(probs), std::nullopt};
}

CutFamilySpec CutFamilySpec::specific_root(SmallGraph root, std::vector<Rational> probs) {
    int k = root.vertex_count();
    return CutFamilySpec{k, k, std::move(probs), std::move(root)};
}

// --- canonical descriptors ---------------------------------------------------

RootedCutDescriptor single_vertex_cut() {
    RootedCutDescriptor d;
    d.root = SmallGraph(1);
    d.root_side = {Rational(0)};
    d.class_prob = {Rational(0), Rational(1)};  // non-neighbors stay with v
    return d;
}

RootedCutDescriptor edge_cut() {
    RootedCutDescriptor d;
    d.root = SmallGraph(2, {{0, 1}});
    d.root_side = {Rational(1), Rational(0)};
    d.class_prob.assign(4, Rational(1, 2));
    d.class_prob[0b01] = 0;  // N(u) only: opposite of u
    d.class_prob[0b10] = 1;  // N(v) only: opposite of v
    // 0b00 uniform, 0b11 inert on triangle-free hosts
    return d;
}

RootedCutDescriptor triple_edge_cut() {
    RootedCutDescriptor d;
    d.root = SmallGraph(6, {{0, 1}, {2, 3}, {4, 5}});
    d.root_side.assign(6, Rational(0));
    for (int e = 0; e < 3; ++e) d.root_side[2 * e] = 1;
    d.class_prob.assign(64, Rational(1, 2));
    for (uint32_t pattern = 0; pattern < 64; ++pattern) {
        for (int e = 0; e < 3; ++e) {
            uint32_t hits = (pattern >> (2 * e)) & 3u;
            if (hits == 0) continue;               // not adjacent to this edge
            if (hits == 0b01) d.class_prob[pattern] = 0;   // u_e only
            if (hits == 0b10) d.class_prob[pattern] = 1;   // v_e only
            // both endpoints: unrealizable in a triangle-free host, keep 1/2
            break;                                  // first adjacent edge decides
        }
    }
    return d;
}

namespace {

SmallGraph clebsch_cut_root() {
    return SmallGraph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {1, 5}});
}

}  // namespace

RootedCutDescriptor clebsch_cut(uint32_t first_pseudo_side, uint32_t second_pseudo_side) {
    if ((first_pseudo_side | second_pseudo_side) >> 6)
        throw std::invalid_argument("pseudo-side masks must address root vertices 0..5");
    if (first_pseudo_side & second_pseudo_side)
        throw std::invalid_argument("pseudo-side sets overlap");

    RootedCutDescriptor d;
    d.root = clebsch_cut_root();
    d.root_side.assign(6, Rational(0));
    for (int a = 0; a < 6; ++a)
        if ((first_pseudo_side >> a) & 1u) d.root_side[a] = 1;
    d.class_prob.assign(64, Rational(0));
    for (uint32_t pattern = 0; pattern < 64; ++pattern)
        if ((pattern & ~second_pseudo_side) == 0) d.class_prob[pattern] = 1;
    return d;
}

RootedCutDescriptor clebsch_cut_preset_a() {
    // {v0,v2,v5} vs {v1,v3,v4}
    return clebsch_cut((1u << 0) | (1u << 2) | (1u << 5), (1u << 1) | (1u << 3) | (1u << 4));
}

RootedCutDescriptor clebsch_cut_preset_b() {
    // {v1,v2,v5} vs {v0,v3,v4}
    return clebsch_cut((1u << 1) | (1u << 2) | (1u << 5), (1u << 0) | (1u << 3) | (1u << 4));
}

RootedCutDescriptor clebsch_cut_pendant_split() {
    // {v0,v1} vs {v2,v3,v4,v5}
    return clebsch_cut((1u << 0) | (1u << 1),
                       (1u << 2) | (1u << 3) | (1u << 4) | (1u << 5));
}

RootedCutDescriptor uniform_random_cut() {
    RootedCutDescriptor d;
    d.root = SmallGraph(0);
    d.class_prob = {Rational(1, 2)};
    return d;
}

// --- evaluation ----------------------------------------------------------------

bool is_induced_embedding(const SmallGraph& pattern, const SmallGraph& host,
                          std::span<const int> embedding) {
    int k = pattern.vertex_count();
    if (static_cast<int>(embedding.size()) != k) return false;
    for (int a = 0; a < k; ++a) {
        if (embedding[a] < 0 || embedding[a] >= host.vertex_count()) return false;
        for (int b = a + 1; b < k; ++b) {
            if (embedding[a] == embedding[b]) return false;
            if (pattern.has_edge(a, b) != host.has_edge(embedding[a], embedding[b])) return false;
        }
    }
    return true;
}

std::vector<std::vector<int>> induced_embeddings(const SmallGraph& pattern,
                                                 const SmallGraph& host) {
    int k = pattern.vertex_count();
    int n = host.vertex_count();
    std::vector<std::vector<int>> out;
    std::vector<int> map(k, -1);
    uint32_t used = 0;

    auto extend = [&](auto&& self, int a) -> void {
        if (a == k) {
            out.push_back(map);
            return;
        }
        for (int v = 0; v < n; ++v) {
            if ((used >> v) & 1u) continue;
            bool ok = true;
            for (int b = 0; b < a && ok; ++b)
                if (pattern.has_edge(a, b) != host.has_edge(v, map[b])) ok = false;
            if (!ok) continue;
            map[a] = v;
            used |= 1u << v;
            self(self, a + 1);
            used &= ~(1u << v);
            map[a] = -1;
        }
    };
    extend(extend, 0);
    return out;
}

namespace {

void require_embedding(const SmallGraph& g, const RootedCutDescriptor& d,
                       std::span<const int> embedding) {
    if (!is_induced_embedding(d.root, g, embedding))
        throw EmbeddingError("embedding is not an induced copy of the root");
}

uint32_t root_mask(std::span<const int> embedding) {
    uint32_t m = 0;
    for (int v : embedding) m |= 1u << v;
    return m;
}

uint32_t adjacency_pattern(const SmallGraph& g, std::span<const int> embedding, int w) {
    uint32_t pattern = 0;
    for (std::size_t a = 0; a < embedding.size(); ++a)
        if (g.has_edge(w, embedding[a])) pattern |= 1u << a;
    return pattern;
}

}  // namespace

Rational expected_removed(const SmallGraph& g, const RootedCutDescriptor& d,
                          std::span<const int> embedding) {
    d.validate();
    require_embedding(g, d, embedding);

    int n = g.vertex_count();
    int k = d.root_size();
    uint32_t roots = root_mask(embedding);
    bool host_triangle_free = graphs::is_triangle_free(g);

    // probability of landing in part A, per vertex of g
    std::vector<Rational> side_prob(n);
    for (int a = 0; a < k; ++a) side_prob[embedding[a]] = d.root_side[a];
    for (int w = 0; w < n; ++w) {
        if ((roots >> w) & 1u) continue;
        uint32_t pattern = adjacency_pattern(g, embedding, w);
        if (host_triangle_free && !d.pattern_realizable(pattern))
            throw std::logic_error("dependent adjacency pattern on a triangle-free host");
        side_prob[w] = d.class_prob[pattern];
    }

    Rational total = 0;
    for (auto [u, v] : g.edges()) total += same_side_probability(side_prob[u], side_prob[v]);
    return total;
}

Rational average_expected_removed(const SmallGraph& g, const RootedCutDescriptor& d) {
    auto embeddings = induced_embeddings(d.root, g);
    if (embeddings.empty()) throw NoEmbeddingError("root does not embed in the host");
    Rational sum = 0;
    for (const auto& emb : embeddings) sum += expected_removed(g, d, emb);
    return sum / Rational(static_cast<long>(embeddings.size()));
}

Bipartition sample_cut(const SmallGraph& g, const RootedCutDescriptor& d,
                       std::span<const int> embedding, uint64_t seed) {
    d.validate();
    require_embedding(g, d, embedding);

    int n = g.vertex_count();
    int k = d.root_size();
    uint32_t roots = root_mask(embedding);

    SplitMix64 rng{seed};
    uint32_t side = 0;
    auto draw = [&rng](const Rational& p) {
        uint64_t num = p.get_num().get_ui();
        uint64_t den = p.get_den().get_ui();
        return rng.bernoulli(num, den);
    };
    // vertices in index order so the stream is reproducible
    for (int v = 0; v < n; ++v) {
        Rational p;
        if ((roots >> v) & 1u) {
            for (int a = 0; a < k; ++a)
                if (embedding[a] == v) p = d.root_side[a];
        } else {
            p = d.class_prob[adjacency_pattern(g, embedding, v)];
        }
        if (p == 1 || (p != 0 && draw(p))) side |= 1u << v;
    }
    return Bipartition{side};
}

Bipartition derandomize(const SmallGraph& g, const RootedCutDescriptor& d,
                        std::span<const int> embedding) {
    d.validate();
    require_embedding(g, d, embedding);

    int n = g.vertex_count();
    int k = d.root_size();
    uint32_t roots = root_mask(embedding);

    std::vector<Rational> prob(n);
    for (int a = 0; a < k; ++a) prob[embedding[a]] = d.root_side[a];
    for (int w = 0; w < n; ++w)
        if (!((roots >> w) & 1u)) prob[w] = d.class_prob[adjacency_pattern(g, embedding, w)];

    auto conditional = [&]() {
        Rational e = 0;
        for (auto [u, v] : g.edges()) e += same_side_probability(prob[u], prob[v]);
        return e;
    };

    // roots first (embedding order), then the remaining vertices ascending;
    // vertices that are already deterministic stay on their side
    std::vector<int> order(embedding.begin(), embedding.end());
    for (int v = 0; v < n; ++v)
        if (!((roots >> v) & 1u)) order.push_back(v);

    for (int v : order) {
        if (prob[v] == 0 || prob[v] == 1) continue;
        prob[v] = 1;
        Rational to_a = conditional();
        prob[v] = 0;
        Rational to_b = conditional();
        if (to_a <= to_b) prob[v] = 1;  // ties to part A
    }

    uint32_t side = 0;
    for (int v = 0; v < n; ++v)
        if (prob[v] == 1) side |= 1u << v;
    return Bipartition{side};
}

// --- family enumeration ---------------------------------------------------------

namespace {

std::vector<uint32_t> realizable_patterns(const SmallGraph& root) {
    std::vector<uint32_t> out;
    uint32_t limit = 1u << root.vertex_count();
    for (uint32_t pattern = 0; pattern < limit; ++pattern) {
        bool independent = true;
        for (int a = 0; a < root.vertex_count() && independent; ++a)
            if ((pattern >> a) & 1u && (root.neighbors(a) & pattern) != 0) independent = false;
        if (independent) out.push_back(pattern);
    }
    return out;
}

// Descriptors are compared through a compact byte encoding: every rational
// that can appear (allowed probs, their part-swapped mirrors, 0, 1, 1/2)
// gets an index in a sorted value table.
struct ValueTable {
    std::vector<Rational> values;
    std::vector<uint8_t> swapped;  // index of 1-q for each value

    explicit ValueTable(const std::vector<Rational>& probs) {
        std::set<Rational> pool(probs.begin(), probs.end());
        pool.insert(Rational(0));
        pool.insert(Rational(1));
        pool.insert(Rational(1, 2));
        for (const auto& p : probs) pool.insert(1 - p);
        values.assign(pool.begin(), pool.end());
        swapped.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) swapped[i] = index_of(1 - values[i]);
    }

    uint8_t index_of(const Rational& q) const {
        auto it = std::lower_bound(values.begin(), values.end(), q);
        return static_cast<uint8_t>(it - values.begin());
    }
};

// Minimal byte key over root automorphisms x optional part swap.
std::vector<uint8_t> canonical_key(const std::vector<uint8_t>& q_idx,
                                   const std::vector<uint8_t>& p_idx,
                                   const std::vector<std::vector<int>>& auts,
                                   const ValueTable& table) {
    int k = static_cast<int>(q_idx.size());
    std::size_t patterns = p_idx.size();
    std::vector<uint8_t> best, candidate(q_idx.size() + p_idx.size());
    for (const auto& aut : auts) {
        // new label a corresponds to old label aut^{-1}(a)
        std::vector<int> inv(k);
        for (int a = 0; a < k; ++a) inv[aut[a]] = a;
        for (int flip = 0; flip < 2; ++flip) {
            for (int a = 0; a < k; ++a) {
                uint8_t idx = q_idx[inv[a]];
                candidate[a] = flip ? table.swapped[idx] : idx;
            }
            for (uint32_t pattern = 0; pattern < patterns; ++pattern) {
                uint32_t old_pattern = 0;
                for (int a = 0; a < k; ++a)
                    if ((pattern >> a) & 1u) old_pattern |= 1u << inv[a];
                uint8_t idx = p_idx[old_pattern];
                candidate[k + pattern] = flip ? table.swapped[idx] : idx;
            }
            if (best.empty() || candidate < best) best = candidate;
        }
    }
    return best;
}

}  // namespace

std::vector<RootedCutDescriptor> enumerate_family(const CutFamilySpec& spec) {
    if (spec.max_root_size > 5) throw CapacityError("cut families capped at 5 root vertices");
    if (spec.allowed_probs.empty()) throw std::invalid_argument("allowed_probs is empty");
    for (const auto& p : spec.allowed_probs)
        if (!is_probability(p)) throw std::invalid_argument("allowed prob outside [0,1]");

    std::vector<Rational> probs = spec.allowed_probs;
    std::sort(probs.begin(), probs.end());
    probs.erase(std::unique(probs.begin(), probs.end()), probs.end());
    ValueTable table(probs);
    uint8_t half_idx = table.index_of(Rational(1, 2));

    std::vector<SmallGraph> roots;
    if (spec.exact_root) {
        roots.push_back(graphs::canonical_form(*spec.exact_root).graph);
    } else {
        for (int k = std::max(spec.min_root_size, 0); k <= spec.max_root_size; ++k) {
            if (k == 0) {
                roots.emplace_back(0);
                continue;
            }
            for (const auto& g : graphs::enumerate_triangle_free(k)) roots.push_back(g);
        }
    }

    std::vector<RootedCutDescriptor> family;
    std::set<std::pair<SmallGraph, std::vector<uint8_t>>> seen;

    for (const auto& root : roots) {
        int k = root.vertex_count();
        auto patterns = realizable_patterns(root);
        std::vector<std::vector<int>> auts =
            k == 0 ? std::vector<std::vector<int>>{{}} : graphs::automorphisms(root);

        std::vector<uint8_t> prob_indices(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) prob_indices[i] = table.index_of(probs[i]);

        // q over {0,1}^k, p as an odometer over the realizable patterns
        uint8_t zero_idx = table.index_of(Rational(0));
        uint8_t one_idx = table.index_of(Rational(1));
        for (uint32_t q_mask = 0; q_mask < (1u << k); ++q_mask) {
            std::vector<uint8_t> q_idx(k);
            for (int a = 0; a < k; ++a) q_idx[a] = ((q_mask >> a) & 1u) ? one_idx : zero_idx;

            std::vector<std::size_t> odo(patterns.size(), 0);
            for (;;) {
                std::vector<uint8_t> p_idx(std::size_t{1} << k, half_idx);
                for (std::size_t i = 0; i < patterns.size(); ++i)
                    p_idx[patterns[i]] = prob_indices[odo[i]];

                auto key = canonical_key(q_idx, p_idx, auts, table);
                if (seen.emplace(root, std::move(key)).second) {
                    RootedCutDescriptor d;
                    d.root = root;
                    d.root_side.resize(k);
                    for (int a = 0; a < k; ++a) d.root_side[a] = table.values[q_idx[a]];
                    d.class_prob.resize(std::size_t{1} << k);
                    for (std::size_t i = 0; i < d.class_prob.size(); ++i)
                        d.class_prob[i] = table.values[p_idx[i]];
                    family.push_back(std::move(d));
                }

                // advance odometer, last position fastest
                std::size_t pos = patterns.size();
                while (pos > 0) {
                    --pos;
                    if (++odo[pos] < probs.size()) break;
                    odo[pos] = 0;
                    if (pos == 0) goto next_q;
                }
                if (patterns.empty()) break;
            }
        next_q:;
        }
    }
    return family;
}

std::vector<FamilyReference> standard_families() {
    std::vector<Rational> three = {Rational(0), Rational(1, 2), Rational(1)};
    std::vector<Rational> two = {Rational(0), Rational(1)};
    return {
        {"roots<=2,probs{0,1/2,1}", CutFamilySpec::roots_up_to(2, three), 10},
        {"roots<=3,probs{0,1/2,1}", CutFamilySpec::roots_up_to(3, three), 108},
        {"roots=4,probs{0,1}", CutFamilySpec::roots_exactly(4, two), 953},
        {"root=C5,probs{0,1}", CutFamilySpec::specific_root(graphs::c5(), two), 125},
    };
}

// --- serialization ----------------------------------------------------------------

std::string descriptor_to_json(const RootedCutDescriptor& d) {
    nlohmann::ordered_json j;
    j["root"]["n"] = d.root_size();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : d.root.edges()) edges.push_back({u, v});
    j["root"]["edges"] = edges;
    auto sides = nlohmann::ordered_json::array();
    for (const auto& q : d.root_side) sides.push_back(rational_string(q));
    j["root_side"] = sides;
    nlohmann::ordered_json probs;
    for (std::size_t pattern = 0; pattern < d.class_prob.size(); ++pattern)
        probs[std::to_string(pattern)] = rational_string(d.class_prob[pattern]);
    j["class_prob"] = probs;
    return j.dump();
}

RootedCutDescriptor descriptor_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RootedCutDescriptor d;
    int k = j.at("root").at("n").get<int>();
    d.root = SmallGraph(k);
    for (const auto& e : j.at("root").at("edges"))
        d.root.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& q : j.at("root_side"))
        d.root_side.push_back(parse_rational(q.get<std::string>()));
    d.class_prob.assign(d.pattern_count(), Rational(0));
    const auto& probs = j.at("class_prob");
    if (probs.size() != d.pattern_count())
        throw std::invalid_argument("class_prob must cover all 2^k patterns");
    for (auto it = probs.begin(); it != probs.end(); ++it) {
        std::size_t pattern = std::stoul(it.key());
        if (pattern >= d.pattern_count()) throw std::invalid_argument("pattern key out of range");
        d.class_prob[pattern] = parse_rational(it.value().get<std::string>());
    }
    d.validate();
    return d;
}

std::optional<RootedCutDescriptor> named_cut(std::string_view name) {
    if (name == "single-vertex") return single_vertex_cut();
    if (name == "edge") return edge_cut();
    if (name == "triple-edge") return triple_edge_cut();
    if (name == "clebsch-a") return clebsch_cut_preset_a();
    if (name == "clebsch-b") return clebsch_cut_preset_b();
    if (name == "clebsch-pendant") return clebsch_cut_pendant_split();
    if (name == "uniform") return uniform_random_cut();
    return std::nullopt;
}

}  // namespace cutforge::cuts
