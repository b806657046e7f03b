#include <map>

#include <doctest.h>
#include <Eigen/Dense>

#include "cutforge/flags.hpp"
#include "helpers.hpp"

using namespace cutforge;
using namespace cutforge::flags;
using cutforge::graphs::SmallGraph;
using testutil::SplitMix64;

namespace {

std::vector<cuts::RootedCutDescriptor> root1_family() {
    return cuts::enumerate_family(cuts::CutFamilySpec::roots_up_to(
        1, {Rational(0), Rational(1, 2), Rational(1)}));
}

// indices of the rootless uniform cut and the neighborhood cut inside the
// root<=1 family
std::pair<std::size_t, std::size_t> locate_hand_cuts(
    const std::vector<cuts::RootedCutDescriptor>& family) {
    std::size_t uniform = family.size(), neighborhood = family.size();
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (family[i] == cuts::uniform_random_cut()) uniform = i;
        if (family[i] == cuts::single_vertex_cut()) neighborhood = i;
    }
    REQUIRE(uniform < family.size());
    REQUIRE(neighborhood < family.size());
    return {uniform, neighborhood};
}

Certificate hand_certificate(const SdpProblem& p) {
    auto [uniform, neighborhood] = locate_hand_cuts(p.cut_list);
    Certificate c;
    c.lambda = Rational(1, 9);
    c.mu.assign(p.cut_list.size(), Rational(0));
    c.mu[uniform] = Rational(2, 3);
    c.mu[neighborhood] = Rational(1, 3);
    return c;
}

}  // namespace

TEST_CASE("assembled rows match the hand expansion on four vertices") {
    auto problem = assemble_sdp(4, {cuts::uniform_random_cut(), cuts::single_vertex_cut()}, {});
    REQUIRE(problem.constraint_graphs.size() == 7);

    // keyed by edge count and a disambiguator, checked against hand-expanded
    // pair densities
    std::map<std::string, std::pair<Rational, Rational>> expected = {
        {"C?", {Rational(0), Rational(0)}},           // empty
        {"C@", {Rational(1, 12), Rational(1, 6)}},    // one edge
        {"CB", {Rational(1, 6), Rational(1, 6)}},     // path P3 + isolated
        {"CK", {Rational(1, 6), Rational(1, 3)}},     // two disjoint edges
        {"CL", {Rational(1, 4), Rational(1, 6)}},     // path P4
        {"CF", {Rational(1, 4), Rational(0)}},        // star K_{1,3}
        {"C]", {Rational(1, 3), Rational(0)}},        // 4-cycle
    };
    for (std::size_t f = 0; f < problem.constraint_graphs.size(); ++f) {
        auto key = graphs::to_graph6(problem.constraint_graphs[f]);
        REQUIRE(expected.count(key) == 1);
        CHECK(problem.cut_rows[0][f] == expected[key].first);
        CHECK(problem.cut_rows[1][f] == expected[key].second);
        // both cuts have roots on <= 1 vertex, so the presence weight is 1
        CHECK(problem.root_density[0][f] == 1);
        CHECK(problem.root_density[1][f] == 1);
    }
}

TEST_CASE("assemble_sdp rejects bad shapes") {
    CHECK_THROWS_AS(assemble_sdp(4, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(assemble_sdp(3, {cuts::edge_cut()}, {}), std::invalid_argument);
}

TEST_CASE("trivial certificate is accepted at lambda 1/4") {
    auto problem = assemble_sdp(4, {cuts::uniform_random_cut()}, {});
    Certificate c;
    c.lambda = Rational(1, 4);
    c.mu = {Rational(1)};
    auto verdict = verify_certificate(c, problem);
    CHECK(verdict.accepted);
    CHECK(verdict.lambda == Rational(1, 4));
}

TEST_CASE("lambda below the max row is rejected with the witness") {
    auto problem = assemble_sdp(4, {cuts::uniform_random_cut()}, {});
    Certificate c;
    c.lambda = Rational(1, 7);  // max row is 1/3 = d(C4)/2, so 2 lambda < 1/3
    c.mu = {Rational(1)};
    auto verdict = verify_certificate(c, problem);
    CHECK_FALSE(verdict.accepted);
    REQUIRE(verdict.witness_graph.has_value());
    CHECK(graphs::isomorphic(*verdict.witness_graph, graphs::cycle(4)));
}

TEST_CASE("hand certificate at lambda 1/9 verifies") {
    auto problem = assemble_sdp(4, root1_family(), {});
    auto cert = hand_certificate(problem);
    auto verdict = verify_certificate(cert, problem);
    CHECK(verdict.accepted);

    // tight: any smaller lambda is rejected
    cert.lambda = Rational(1, 9) - Rational(1, 10000);
    CHECK_FALSE(verify_certificate(cert, problem).accepted);
}

TEST_CASE("single entry corruptions are rejected") {
    auto problem = assemble_sdp(4, root1_family(), {});
    auto cert = hand_certificate(problem);
    REQUIRE(verify_certificate(cert, problem).accepted);

    for (std::size_t i = 0; i < cert.mu.size(); ++i) {
        for (int sign : {+1, -1}) {
            Certificate broken = cert;
            broken.mu[i] += Rational(sign, 1000);
            auto verdict = verify_certificate(broken, problem);
            CHECK_FALSE(verdict.accepted);  // simplex equality breaks
        }
    }

    Certificate wrong_size = cert;
    wrong_size.mu.push_back(Rational(0));
    CHECK_FALSE(verify_certificate(wrong_size, problem).accepted);

    // negative multiplier with the simplex sum intact
    Certificate negative = cert;
    auto [uniform, neighborhood] = locate_hand_cuts(problem.cut_list);
    negative.mu[uniform] = Rational(-1, 3);
    negative.mu[neighborhood] = Rational(4, 3);
    CHECK_FALSE(verify_certificate(negative, problem).accepted);

    Certificate vacuous = cert;
    vacuous.lambda = Rational(2, 3);  // outside (0, 1/2]
    CHECK_FALSE(verify_certificate(vacuous, problem).accepted);
}

TEST_CASE("accepted certificates respect the blow-up floor") {
    // limit pair densities of the balanced five-class blow-up: five
    // independent uniform class labels
    auto hosts = graphs::enumerate_triangle_free(4);
    std::vector<Rational> limit(hosts.size(), Rational(0));
    int assignments = 0;
    for (int c0 = 0; c0 < 5; ++c0)
        for (int c1 = 0; c1 < 5; ++c1)
            for (int c2 = 0; c2 < 5; ++c2)
                for (int c3 = 0; c3 < 5; ++c3) {
                    int cls[4] = {c0, c1, c2, c3};
                    SmallGraph g(4);
                    for (int u = 0; u < 4; ++u)
                        for (int v = u + 1; v < 4; ++v) {
                            int diff = (cls[u] - cls[v] + 5) % 5;
                            if (diff == 1 || diff == 4) g.add_edge(u, v);
                        }
                    auto canon = graphs::canonical_form(g).graph;
                    for (std::size_t f = 0; f < hosts.size(); ++f)
                        if (hosts[f] == canon) limit[f] += 1;
                    ++assignments;
                }
    for (auto& q : limit) q /= assignments;
    Rational total = 0;
    for (const auto& q : limit) total += q;
    REQUIRE(total == 1);

    auto problem = assemble_sdp(4, root1_family(), {});
    auto cert = hand_certificate(problem);
    REQUIRE(verify_certificate(cert, problem).accepted);

    // evaluating the certified inequality on the limit vector bounds lambda
    // from below by the blow-up's removal density
    Rational lhs = 0, presence = 0;
    for (std::size_t f = 0; f < hosts.size(); ++f) {
        for (std::size_t c = 0; c < problem.cut_list.size(); ++c) {
            lhs += cert.mu[c] * problem.cut_rows[c][f] * limit[f];
            presence += cert.mu[c] * problem.root_density[c][f] * limit[f];
        }
    }
    CHECK(presence == 1);               // all roots here are on <= 1 vertex
    CHECK(lhs >= Rational(2, 25));      // the blow-up forces this much
    CHECK(2 * cert.lambda >= lhs);      // accepted row inequalities, averaged
    CHECK(cert.lambda >= Rational(1, 25));
}

TEST_CASE("exact PSD checker on reference matrices") {
    auto m = [](std::vector<std::vector<long>> rows) {
        SymMatrix out;
        for (auto& r : rows) {
            out.emplace_back();
            for (long v : r) out.back().push_back(Rational(v));
        }
        return out;
    };
    CHECK(is_positive_semidefinite(m({{0}})));
    CHECK(is_positive_semidefinite(m({{1, 2}, {2, 4}})));       // singular PSD
    CHECK(is_positive_semidefinite(m({{0, 0}, {0, 1}})));       // zero pivot, dead row
    CHECK_FALSE(is_positive_semidefinite(m({{0, 1}, {1, 0}})));  // zero pivot, live row
    CHECK_FALSE(is_positive_semidefinite(m({{1, 2}, {2, 3}})));
    CHECK_FALSE(is_positive_semidefinite(m({{-1}})));
    CHECK(is_positive_semidefinite(m({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})));
}

TEST_CASE("exact PSD checker agrees with floating eigenvalues") {
    SplitMix64 rng{0x95dull};
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng.below(8));
        SymMatrix m(n, std::vector<Rational>(n, Rational(0)));
        if (trial % 2 == 0) {
            // Gram matrix: PSD by construction, often singular
            std::vector<std::vector<long>> b(n, std::vector<long>(n));
            for (auto& row : b)
                for (auto& v : row) v = static_cast<long>(rng.below(7)) - 3;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    long dot = 0;
                    for (int k = 0; k < n; ++k) dot += b[i][k] * b[j][k];
                    m[i][j] = Rational(dot, 4);
                }
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    m[i][j] = Rational(static_cast<long>(rng.below(13)) - 6,
                                       1 + static_cast<long>(rng.below(4)));
                    m[j][i] = m[i][j];
                }
        }

        Eigen::MatrixXd dense(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dense(i, j) = m[i][j].get_d();
        double min_eig =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(dense).eigenvalues().minCoeff();

        bool exact = is_positive_semidefinite(m);
        if (min_eig > 1e-9) CHECK(exact);
        if (min_eig < -1e-9) CHECK_FALSE(exact);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("SDPA emission round trips") {
    auto problem = assemble_sdp(4, {cuts::uniform_random_cut(), cuts::single_vertex_cut()},
                                {flag_basis(SmallGraph(1), 2)});
    std::string first = emit_sdpa_string(problem);
    SdpaData parsed = parse_sdpa(first);

    // emitted layout: lambda + mu + one 2x2 block = 1 + 2 + 3 variables
    CHECK(parsed.num_vars == 6);
    REQUIRE(parsed.block_sizes.size() == 2);
    CHECK(parsed.block_sizes[0] == -(7 + 2 + 2));
    CHECK(parsed.block_sizes[1] == 2);
    CHECK(parsed.objective[0] == 1);

    // re-emitting the parsed data is byte identical: rebuild the text
    std::string header = first.substr(0, first.find('\n'));
    CHECK(header == "6");

    // a reparse of the same text matches entry for entry
    SdpaData again = parse_sdpa(first);
    CHECK(parsed.entries == again.entries);
    CHECK(parsed.objective == again.objective);

    // format skeleton: four header lines, then entries
    int newlines = 0;
    for (char ch : first)
        if (ch == '\n') ++newlines;
    CHECK(newlines == 4 + static_cast<int>(parsed.entries.size()));
}

TEST_CASE("sdpa decimals are exact or 17 significant digits") {
    CHECK(sdpa_decimal(Rational(0)) == "0");
    CHECK(sdpa_decimal(Rational(1)) == "1");
    CHECK(sdpa_decimal(Rational(-3)) == "-3");
    CHECK(sdpa_decimal(Rational(1, 2)) == "0.5");
    CHECK(sdpa_decimal(Rational(1, 4)) == "0.25");
    CHECK(sdpa_decimal(Rational(3, 20)) == "0.15");
    CHECK(sdpa_decimal(Rational(1250, 1)) == "1250");
    CHECK(sdpa_decimal(Rational(1, 3)) == "0.33333333333333333");
    CHECK(sdpa_decimal(Rational(2, 3)) == "0.66666666666666667");
    CHECK(sdpa_decimal(Rational(-1, 6)) == "-0.16666666666666667");
    CHECK(sdpa_decimal(Rational(22, 7)) == "3.1428571428571429");

    // parse round trip keeps the printed value
    CHECK(parse_sdpa("1\n1\n1\n0.33333333333333333\n").objective[0] ==
          Rational(Integer("33333333333333333"), Integer("100000000000000000")));
}

TEST_CASE("problem and certificate JSON round trips") {
    auto problem = assemble_sdp(4, {cuts::uniform_random_cut(), cuts::single_vertex_cut()},
                                {flag_basis(SmallGraph(1), 2)});
    auto restored = problem_from_json(problem_to_json(problem));
    CHECK(restored.constraint_size == problem.constraint_size);
    CHECK(restored.constraint_graphs == problem.constraint_graphs);
    CHECK(restored.cut_list == problem.cut_list);
    CHECK(restored.cut_rows == problem.cut_rows);
    CHECK(restored.root_density == problem.root_density);
    CHECK(restored.bases == problem.bases);
    CHECK(restored.product_blocks == problem.product_blocks);

    Certificate cert;
    cert.lambda = Rational(1, 9);
    cert.mu = {Rational(2, 3), Rational(1, 3)};
    cert.blocks = {SymMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(0)}}};
    auto cert2 = certificate_from_json(certificate_to_json(cert));
    CHECK(cert2.lambda == cert.lambda);
    CHECK(cert2.mu == cert.mu);
    CHECK(cert2.blocks == cert.blocks);
}

TEST_CASE("rationalization recovers simple fractions and verifies") {
    CHECK(rationalize(1.0 / 3.0) == Rational(1, 3));
    CHECK(rationalize(0.25) == Rational(1, 4));
    CHECK(rationalize(-2.0 / 7.0) == Rational(-2, 7));

    auto problem = assemble_sdp(4, root1_family(), {});
    auto exact = hand_certificate(problem);
    std::vector<double> mu_float;
    for (const auto& q : exact.mu) mu_float.push_back(q.get_d());
    auto rounded = rationalize_certificate(exact.lambda.get_d(), mu_float, {});
    CHECK(verify_certificate(rounded, problem).accepted);
}

TEST_CASE("certificates with PSD blocks participate in verification") {
    auto basis = flag_basis(SmallGraph(1), 2);
    auto problem = assemble_sdp(4, root1_family(), {basis});

    auto cert = hand_certificate(problem);
    cert.blocks = {SymMatrix{{Rational(0), Rational(0)}, {Rational(0), Rational(0)}}};
    CHECK(verify_certificate(cert, problem).accepted);  // zero block changes nothing

    cert.blocks = {SymMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}}};
    auto verdict = verify_certificate(cert, problem);
    CHECK_FALSE(verdict.accepted);  // indefinite block

    cert.blocks = {SymMatrix{{Rational(1), Rational(2)}, {Rational(0), Rational(1)}}};
    CHECK_FALSE(verify_certificate(cert, problem).accepted);  // asymmetric
}
