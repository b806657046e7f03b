// cutforge command line: exact small-graph oracles, rooted cuts, flag
// expression / SDP assembly and certification, and closed-form bounds for
// the triangle-free bipartization problem.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cutforge/bounds.hpp"
#include "cutforge/cuts.hpp"
#include "cutforge/flags.hpp"
#include "cutforge/graph.hpp"

using json = nlohmann::ordered_json;
using namespace cutforge;

namespace {

struct Violation : std::runtime_error {
    json witness;
    Violation(const std::string& what, json w) : std::runtime_error(what), witness(std::move(w)) {}
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

/// Graph sources: named graphs, g6:<literal>, random:n=..,p=..,seed=..,
/// or a path to a file whose first line is a graph6 word.
graphs::SmallGraph load_graph(const std::string& source) {
    if (auto named = graphs::named_graph(source)) return *named;
    if (source.rfind("g6:", 0) == 0) return graphs::from_graph6(source.substr(3));
    if (source.rfind("random:", 0) == 0) {
        long n = -1, pnum = 1, pden = 2;
        std::optional<uint64_t> seed;
        std::string rest = source.substr(7);
        std::istringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw std::runtime_error("bad random spec item: " + item);
            std::string key = item.substr(0, eq), value = item.substr(eq + 1);
            if (key == "n") {
                n = std::stol(value);
            } else if (key == "p") {
                Rational p = parse_rational(value);
                pnum = p.get_num().get_si();
                pden = p.get_den().get_si();
            } else if (key == "seed") {
                seed = std::stoull(value);
            } else {
                throw std::runtime_error("unknown random spec key: " + key);
            }
        }
        if (n < 0) throw std::runtime_error("random spec needs n=");
        if (!seed) throw std::runtime_error("random graph source refused without seed=");
        return graphs::random_triangle_free(static_cast<int>(n), pnum, pden, *seed);
    }
    std::ifstream in(source);
    if (!in) throw std::runtime_error("unknown graph source: " + source);
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw std::runtime_error("no graph6 line in " + source);
    return graphs::from_graph6(line);
}

cuts::RootedCutDescriptor load_cut(const std::string& source) {
    if (auto named = cuts::named_cut(source)) return *named;
    return cuts::descriptor_from_json(slurp(source));
}

json graph_report(const graphs::SmallGraph& g) {
    json j;
    j["graph6"] = graphs::to_graph6(g);
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["triangle_free"] = graphs::is_triangle_free(g);
    return j;
}

json bipartition_report(const graphs::SmallGraph& g, graphs::Bipartition cut) {
    json j;
    auto part_a = json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        if (cut.in_part_a(v)) part_a.push_back(v);
    j["part_a"] = part_a;
    j["mask"] = cut.side;
    j["removed_edges"] = graphs::removed_edges(g, cut);
    return j;
}

std::vector<int> parse_embedding(const std::string& text) {
    std::vector<int> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

std::vector<Rational> parse_probs(const std::string& text) {
    std::vector<Rational> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw std::runtime_error("empty probability list");
    return out;
}

struct Output {
    std::string json_path;  // empty = no JSON, "-" = stdout

    void deliver(const json& report, const std::string& text) const {
        if (!text.empty()) std::cout << text;
        if (json_path == "-")
            std::cout << report.dump(2) << "\n";
        else if (!json_path.empty())
            spit(json_path, report.dump(2) + "\n");
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bipartization-distance toolkit for triangle-free graphs"};
    app.require_subcommand(1);

    Output out;
    app.add_option("--json", out.json_path, "write the JSON report to this path ('-' = stdout)");

    std::string graph_src, cut_src, embedding_text, probs_text = "0,1/2,1";
    long opt_n = 0, opt_m = 0, opt_total = 0;
    int opt_factor = 2, max_root = 1, min_root = 0;
    uint64_t seed = 0;
    std::string floor_text = "0", slope_text = "3/8", cap_text;
    std::string problem_path, certificate_path, out_path, root_name;
    bool average = false, symmetric = false, uncapped = false, list_cuts = false;

    auto* cmd_d2 = app.add_subcommand("d2", "exact bipartization distance");
    cmd_d2->add_option("--graph", graph_src, "graph source")->required();

    auto* cmd_enum = app.add_subcommand("enumerate", "triangle-free graphs up to isomorphism");
    cmd_enum->add_option("--n", opt_n, "vertex count")->required();
    cmd_enum->add_option("--out", out_path, "write graph6 lines here");

    auto* cmd_cuts = app.add_subcommand("cuts", "rooted cut tooling");
    cmd_cuts->require_subcommand(1);
    auto* cuts_enum = cmd_cuts->add_subcommand("enumerate", "enumerate a cut family");
    cuts_enum->add_option("--max-root", max_root, "largest root size");
    cuts_enum->add_option("--min-root", min_root, "smallest root size");
    cuts_enum->add_option("--root", root_name, "restrict to one root graph (name or g6:...)");
    cuts_enum->add_option("--probs", probs_text, "allowed class probabilities");
    cuts_enum->add_flag("--list", list_cuts, "emit every descriptor in the JSON report");

    auto* cuts_expected = cmd_cuts->add_subcommand("expected", "exact expected removed edges");
    cuts_expected->add_option("--graph", graph_src, "graph source")->required();
    cuts_expected->add_option("--cut", cut_src, "cut descriptor (name or file)")->required();
    cuts_expected->add_option("--embedding", embedding_text, "root embedding, comma separated");
    cuts_expected->add_flag("--average", average, "average over all induced embeddings");

    auto* cuts_sample = cmd_cuts->add_subcommand("sample", "draw one random bipartition");
    cuts_sample->add_option("--graph", graph_src, "graph source")->required();
    cuts_sample->add_option("--cut", cut_src, "cut descriptor")->required();
    cuts_sample->add_option("--embedding", embedding_text, "root embedding")->required();
    cuts_sample->add_option("--seed", seed, "RNG seed")->required();

    auto* cuts_derand = cmd_cuts->add_subcommand("derandomize",
                                                 "conditional-expectation bipartition");
    cuts_derand->add_option("--graph", graph_src, "graph source")->required();
    cuts_derand->add_option("--cut", cut_src, "cut descriptor")->required();
    cuts_derand->add_option("--embedding", embedding_text,
                            "root embedding (default: best over all)");

    auto* cuts_expr = cmd_cuts->add_subcommand("expression", "flag expression of a cut");
    cuts_expr->add_option("--cut", cut_src, "cut descriptor")->required();

    auto* cmd_assemble = app.add_subcommand("sdp-assemble", "assemble the certificate problem");
    cmd_assemble->add_option("--n", opt_n, "constraint graph size")->required();
    cmd_assemble->add_option("--max-root", max_root, "cut family: largest root size");
    cmd_assemble->add_option("--min-root", min_root, "cut family: smallest root size");
    cmd_assemble->add_option("--probs", probs_text, "cut family: allowed probabilities");
    std::vector<std::string> basis_specs;
    cmd_assemble->add_option("--basis", basis_specs,
                             "flag basis spec root=<name|g6:..>,size=<s> (repeatable)");
    cmd_assemble->add_option("--out", out_path, "problem JSON path")->required();

    auto* cmd_emit = app.add_subcommand("sdp-emit", "emit SDPA sparse format");
    cmd_emit->add_option("--problem", problem_path, "problem JSON")->required();
    cmd_emit->add_option("--out", out_path, "output .dat-s path")->required();

    auto* cmd_certify = app.add_subcommand("certify", "verify a certificate exactly");
    cmd_certify->add_option("--problem", problem_path, "problem JSON")->required();
    cmd_certify->add_option("--certificate", certificate_path, "certificate JSON")->required();

    auto* cmd_bound = app.add_subcommand("bound", "closed-form bounds");
    cmd_bound->require_subcommand(1);
    auto* bound_efps = cmd_bound->add_subcommand("efps", "two-branch closed-form bound");
    bound_efps->add_option("--n", opt_n, "vertices")->required();
    bound_efps->add_option("--m", opt_m, "edges")->required();

    auto* cmd_regime = app.add_subcommand("regime", "density regime report");
    cmd_regime->add_option("--n", opt_n, "vertices")->required();
    cmd_regime->add_option("--m", opt_m, "edges")->required();

    auto* cmd_peel = app.add_subcommand("peel", "minimum-degree peeling trace");
    cmd_peel->add_option("--graph", graph_src, "graph source")->required();
    cmd_peel->add_option("--slope", slope_text, "stop when min degree > slope * size");
    cmd_peel->add_option("--cap", cap_text, "round cap coefficient (floor(coeff*n) rounds)");
    cmd_peel->add_flag("--uncapped", uncapped, "disable the round cap");

    auto* cmd_c5opt = app.add_subcommand("c5opt", "optimize C5 blow-up class sizes");
    cmd_c5opt->add_option("--total", opt_total, "total vertex budget")->required();
    cmd_c5opt->add_option("--floor", floor_text, "required bipartization distance");
    cmd_c5opt->add_flag("--symmetric", symmetric, "force a2=a5, a3=a4");

    auto* cmd_scale = app.add_subcommand("scale-check", "blow-up density comparison");
    cmd_scale->add_option("--graph", graph_src, "graph source")->required();
    cmd_scale->add_option("--factor", opt_factor, "replication factor");

    // let the shared --json flag appear after any subcommand
    auto enable_fallthrough = [](auto&& self, CLI::App* node) -> void {
        for (CLI::App* sub : node->get_subcommands([](const CLI::App*) { return true; })) {
            sub->fallthrough();
            self(self, sub);
        }
    };
    enable_fallthrough(enable_fallthrough, &app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    try {
        if (cmd_d2->parsed()) {
            auto g = load_graph(graph_src);
            auto r = graphs::d2_exact(g);
            json j;
            j["command"] = "d2";
            j["graph"] = graph_report(g);
            j["d2"] = r.removed;
            j["cut"] = bipartition_report(g, r.cut);
            std::ostringstream text;
            text << "d2 = " << r.removed << " on " << g.vertex_count() << " vertices, "
                 << g.edge_count() << " edges\npart A:";
            for (int v = 0; v < g.vertex_count(); ++v)
                if (r.cut.in_part_a(v)) text << " " << v;
            text << "\n";
            out.deliver(j, text.str());
        } else if (cmd_enum->parsed()) {
            auto list = graphs::enumerate_triangle_free(static_cast<int>(opt_n));
            std::ostringstream lines;
            for (const auto& g : list) lines << graphs::to_graph6(g) << "\n";
            if (!out_path.empty()) spit(out_path, lines.str());
            json j;
            j["command"] = "enumerate";
            j["n"] = opt_n;
            j["count"] = list.size();
            out.deliver(j, out_path.empty() ? lines.str()
                                            : "wrote " + std::to_string(list.size()) +
                                                  " graphs to " + out_path + "\n");
        } else if (cuts_enum->parsed()) {
            cuts::CutFamilySpec spec;
            if (!root_name.empty()) {
                auto root = root_name.rfind("g6:", 0) == 0
                                ? graphs::from_graph6(root_name.substr(3))
                                : load_graph(root_name);
                spec = cuts::CutFamilySpec::specific_root(root, parse_probs(probs_text));
            } else {
                spec = cuts::CutFamilySpec{min_root, max_root, parse_probs(probs_text),
                                           std::nullopt};
            }
            auto family = cuts::enumerate_family(spec);

            // match against the reference counts when the family is one of
            // the four standard ones
            json j;
            j["command"] = "cuts enumerate";
            j["count"] = family.size();
            std::ostringstream text;
            text << "enumerated " << family.size() << " cuts\n";
            for (const auto& ref : cuts::standard_families()) {
                bool same = ref.spec.min_root_size == spec.min_root_size &&
                            ref.spec.max_root_size == spec.max_root_size &&
                            ref.spec.allowed_probs == spec.allowed_probs &&
                            ref.spec.exact_root.has_value() == spec.exact_root.has_value() &&
                            (!spec.exact_root ||
                             graphs::isomorphic(*ref.spec.exact_root, *spec.exact_root));
                if (!same) continue;
                j["family"] = ref.name;
                j["reference_count"] = ref.reference_count;
                j["matches_reference"] = static_cast<long>(family.size()) == ref.reference_count;
                text << "reference count " << ref.reference_count << " ("
                     << (static_cast<long>(family.size()) == ref.reference_count
                             ? "match"
                             : "mismatch, documented convention difference")
                     << ")\n";
            }
            if (list_cuts) {
                auto arr = json::array();
                for (const auto& d : family)
                    arr.push_back(json::parse(cuts::descriptor_to_json(d)));
                j["cuts"] = arr;
            }
            out.deliver(j, text.str());
        } else if (cuts_expected->parsed()) {
            auto g = load_graph(graph_src);
            auto d = load_cut(cut_src);
            json j;
            j["command"] = "cuts expected";
            j["graph"] = graph_report(g);
            std::ostringstream text;
            if (average || embedding_text.empty()) {
                Rational value = cuts::average_expected_removed(g, d);
                j["average_expected_removed"] = rational_string(value);
                text << "average expected removed = " << rational_string(value) << " ("
                     << value.get_d() << ")\n";
            } else {
                auto emb = parse_embedding(embedding_text);
                Rational value = cuts::expected_removed(g, d, emb);
                j["expected_removed"] = rational_string(value);
                text << "expected removed = " << rational_string(value) << " (" << value.get_d()
                     << ")\n";
            }
            out.deliver(j, text.str());
        } else if (cuts_sample->parsed()) {
            auto g = load_graph(graph_src);
            auto d = load_cut(cut_src);
            auto emb = parse_embedding(embedding_text);
            auto cut = cuts::sample_cut(g, d, emb, seed);
            json j;
            j["command"] = "cuts sample";
            j["seed"] = seed;
            j["cut"] = bipartition_report(g, cut);
            out.deliver(j, "removed = " + std::to_string(graphs::removed_edges(g, cut)) + "\n");
        } else if (cuts_derand->parsed()) {
            auto g = load_graph(graph_src);
            auto d = load_cut(cut_src);
            json j;
            j["command"] = "cuts derandomize";
            graphs::Bipartition cut;
            Rational expectation;
            if (!embedding_text.empty()) {
                auto emb = parse_embedding(embedding_text);
                cut = cuts::derandomize(g, d, emb);
                expectation = cuts::expected_removed(g, d, emb);
            } else {
                auto embeddings = cuts::induced_embeddings(d.root, g);
                if (embeddings.empty()) throw cuts::NoEmbeddingError("root does not embed");
                bool first = true;
                for (const auto& emb : embeddings) {
                    auto candidate = cuts::derandomize(g, d, emb);
                    if (first ||
                        graphs::removed_edges(g, candidate) < graphs::removed_edges(g, cut)) {
                        cut = candidate;
                        expectation = cuts::expected_removed(g, d, emb);
                        first = false;
                    }
                }
            }
            int removed = graphs::removed_edges(g, cut);
            if (Rational(removed) > expectation)
                throw Violation("derandomized cut exceeds its expectation",
                                bipartition_report(g, cut));
            j["expected"] = rational_string(expectation);
            j["cut"] = bipartition_report(g, cut);
            out.deliver(j, "removed = " + std::to_string(removed) + " (expectation " +
                               rational_string(expectation) + ")\n");
        } else if (cuts_expr->parsed()) {
            auto d = load_cut(cut_src);
            auto e = flags::cut_to_flag_expression(d);
            json j;
            j["command"] = "cuts expression";
            j["constant"] = rational_string(e.constant);
            auto lin = json::array(), quad = json::array();
            for (const auto& [type, coeff] : e.linear_terms)
                lin.push_back({{"graph6", graphs::to_graph6(type.graph)},
                               {"roots", type.root_count},
                               {"coefficient", rational_string(coeff)}});
            for (const auto& [type, coeff] : e.quadratic_terms)
                quad.push_back({{"graph6", graphs::to_graph6(type.graph)},
                                {"roots", type.root_count},
                                {"coefficient", rational_string(coeff)}});
            j["linear_terms"] = lin;
            j["quadratic_terms"] = quad;
            std::ostringstream text;
            text << "constant " << rational_string(e.constant) << ", " << e.linear_terms.size()
                 << " linear terms, " << e.quadratic_terms.size() << " quadratic terms\n";
            out.deliver(j, text.str());
        } else if (cmd_assemble->parsed()) {
            auto family = cuts::enumerate_family(
                cuts::CutFamilySpec{min_root, max_root, parse_probs(probs_text), std::nullopt});
            std::vector<std::vector<flags::RootedGraphType>> bases;
            for (const auto& spec : basis_specs) {
                std::string root_spec;
                int size = 0;
                std::istringstream ss(spec);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    auto eq = item.find('=');
                    if (eq == std::string::npos)
                        throw std::runtime_error("bad basis spec item: " + item);
                    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
                    if (key == "root")
                        root_spec = value;
                    else if (key == "size")
                        size = std::stoi(value);
                    else
                        throw std::runtime_error("unknown basis spec key: " + key);
                }
                auto root = root_spec.rfind("g6:", 0) == 0
                                ? graphs::from_graph6(root_spec.substr(3))
                                : load_graph(root_spec);
                bases.push_back(flags::flag_basis(root, size));
            }
            auto problem = flags::assemble_sdp(static_cast<int>(opt_n), family, bases);
            spit(out_path, flags::problem_to_json(problem) + "\n");
            json j;
            j["command"] = "sdp-assemble";
            j["constraint_size"] = opt_n;
            j["cuts"] = family.size();
            j["constraint_graphs"] = problem.constraint_graphs.size();
            out.deliver(j, "assembled " + std::to_string(family.size()) + " cuts over " +
                               std::to_string(problem.constraint_graphs.size()) +
                               " constraint graphs -> " + out_path + "\n");
        } else if (cmd_emit->parsed()) {
            auto problem = flags::problem_from_json(slurp(problem_path));
            flags::emit_sdpa(problem, out_path);
            json j;
            j["command"] = "sdp-emit";
            j["out"] = out_path;
            out.deliver(j, "wrote " + out_path + "\n");
        } else if (cmd_certify->parsed()) {
            auto problem = flags::problem_from_json(slurp(problem_path));
            auto certificate = flags::certificate_from_json(slurp(certificate_path));
            auto verdict = flags::verify_certificate(certificate, problem);
            json j;
            j["command"] = "certify";
            j["accepted"] = verdict.accepted;
            j["lambda"] = rational_string(verdict.lambda);
            if (!verdict.accepted) {
                j["reason"] = verdict.reason;
                if (verdict.witness_graph)
                    j["witness"] = graphs::to_graph6(*verdict.witness_graph);
                out.deliver(j, "REJECTED: " + verdict.reason + "\n");
                return 1;
            }
            out.deliver(j, "certified lambda = " + rational_string(verdict.lambda) +
                               " (bound D2 <= lambda n^2 + o(n^2))\n");
        } else if (bound_efps->parsed()) {
            Rational value = bounds::efps_bound(opt_n, opt_m);
            json j;
            j["command"] = "bound efps";
            j["n"] = opt_n;
            j["m"] = opt_m;
            j["bound"] = rational_string(value);
            std::ostringstream text;
            text << "bound = " << rational_string(value) << " (" << value.get_d() << ")\n";
            out.deliver(j, text.str());
        } else if (cmd_regime->parsed()) {
            auto r = bounds::theorem3_regime(opt_n, opt_m);
            json j;
            j["command"] = "regime";
            j["n"] = r.n;
            j["m"] = r.m;
            j["dense_regime"] = r.dense_regime;
            j["sparse_regime"] = r.sparse_regime;
            j["always_bound"] = rational_string(r.always_bound);
            j["conjectured_bound"] =
                (r.dense_regime || r.sparse_regime) ? rational_string(r.conjectured_bound) : "";
            j["efps"] = rational_string(r.efps);
            j["half_edges"] = rational_string(r.half_edges);
            std::ostringstream text;
            text << "regime: " << (r.dense_regime ? "dense (n^2/25 applies)"
                                                  : r.sparse_regime ? "sparse (n^2/25 applies)"
                                                                    : "middle (n^2/23.5 only)")
                 << "\nalways " << rational_string(r.always_bound) << ", closed-form "
                 << rational_string(r.efps) << ", m/2 " << rational_string(r.half_edges) << "\n";
            out.deliver(j, text.str());
        } else if (cmd_peel->parsed()) {
            auto g = load_graph(graph_src);
            bounds::PeelConfig cfg = bounds::PeelConfig::defaults();
            cfg.slope = parse_rational(slope_text);
            if (uncapped)
                cfg = bounds::PeelConfig{cfg.slope, bounds::PeelConfig::uncapped().round_cap_coeff};
            else if (!cap_text.empty())
                cfg.round_cap_coeff = parse_rational(cap_text);
            auto trace = bounds::peel(g, cfg);
            json j;
            j["command"] = "peel";
            j["graph"] = graph_report(g);
            j["stages"] = json::array();
            for (const auto& stage : trace.stages)
                j["stages"].push_back({{"graph6", graphs::to_graph6(stage.graph)},
                                       {"removed_vertex", stage.removed_vertex},
                                       {"degree", stage.removed_degree}});
            j["stop_reason"] = trace.stop_reason == bounds::PeelStop::round_cap
                                   ? "round-cap"
                                   : "degree-threshold";
            std::ostringstream text;
            text << trace.stages.size() << " rounds, stopped by " << std::string(j["stop_reason"])
                 << "\n";
            out.deliver(j, text.str());
        } else if (cmd_c5opt->parsed()) {
            auto r = bounds::c5_blowup_edge_optimum(opt_total, parse_rational(floor_text),
                                                    symmetric);
            json j;
            j["command"] = "c5opt";
            j["total"] = opt_total;
            j["feasible"] = r.feasible;
            if (!r.feasible) {
                out.deliver(j, "infeasible: no profile meets the floor\n");
                return 1;
            }
            j["profile"] = r.profile;
            j["edges"] = r.edges;
            std::ostringstream text;
            text << "optimum profile (" << r.profile[0];
            for (int i = 1; i < 5; ++i) text << "," << r.profile[i];
            text << ") with " << r.edges << " edges\n";
            out.deliver(j, text.str());
        } else if (cmd_scale->parsed()) {
            auto g = load_graph(graph_src);
            auto r = bounds::blowup_scaling_check(g, opt_factor);
            json j;
            j["command"] = "scale-check";
            j["graph"] = graph_report(g);
            j["factor"] = opt_factor;
            j["original_density"] = rational_string(r.original);
            j["blown_up_density"] = rational_string(r.blown_up);
            j["holds"] = r.holds;
            std::ostringstream text;
            text << "D2/n^2: " << rational_string(r.original) << " -> "
                 << rational_string(r.blown_up) << (r.holds ? " (holds)" : " (VIOLATED)") << "\n";
            if (!r.holds) throw Violation("blow-up scaling inequality violated", j);
            out.deliver(j, text.str());
        }
    } catch (const Violation& e) {
        json j;
        j["error"] = e.what();
        j["witness"] = e.witness;
        std::cerr << j.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
