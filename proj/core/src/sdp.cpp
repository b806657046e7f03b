#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "cutforge/flags.hpp"

namespace cutforge::flags {

using graphs::SmallGraph;

SdpProblem assemble_sdp(int constraint_size,
                        const std::vector<cuts::RootedCutDescriptor>& cut_list,
                        const std::vector<std::vector<RootedGraphType>>& bases) {
    if (cut_list.empty()) throw std::invalid_argument("empty cut list");
    for (const auto& d : cut_list)
        if (d.root_size() + 2 > constraint_size)
            throw std::invalid_argument("cut root too large for the constraint size");

    SdpProblem p;
    p.constraint_size = constraint_size;
    p.constraint_graphs = graphs::enumerate_triangle_free(constraint_size);
    p.cut_list = cut_list;
    p.bases = bases;

    for (const auto& d : cut_list) {
        FlagExpression expr = cut_to_flag_expression(d);
        std::vector<Rational> row, dens;
        row.reserve(p.constraint_graphs.size());
        dens.reserve(p.constraint_graphs.size());
        for (const auto& host : p.constraint_graphs) {
            Rational a = 0;
            for (const auto& [type, coeff] : expr.quadratic_terms)
                a += coeff * labeled_density(type, host);
            row.push_back(a);
            dens.push_back(root_embedding_density(d.root, host));
        }
        p.cut_rows.push_back(std::move(row));
        p.root_density.push_back(std::move(dens));
    }

    for (const auto& basis : bases)
        p.product_blocks.push_back(product_block_matrices(basis, constraint_size));
    return p;
}

// --- SDPA sparse export -------------------------------------------------------

namespace {

Integer pow10z(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

std::string format_decimal(bool negative, Integer digits, long frac) {
    while (frac > 0 && digits % 10 == 0) {
        digits /= 10;
        --frac;
    }
    std::string s = digits.get_str();
    if (frac > 0) {
        if (static_cast<long>(s.size()) <= frac)
            s.insert(0, std::string(frac + 1 - s.size(), '0'));
        s.insert(s.size() - frac, ".");
    }
    return negative ? "-" + s : s;
}

}  // namespace

std::string sdpa_decimal(const Rational& q) {
    if (q == 0) return "0";
    Integer num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;

    Integer rest = den;
    unsigned long twos = 0, fives = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest == 1) {
        unsigned long e = std::max(twos, fives);
        return format_decimal(neg, num * (pow10z(e) / den), static_cast<long>(e));
    }

    // num/den compared against 10^e, e of either sign
    auto below_pow10 = [&](long e) {
        if (e >= 0) return num < den * pow10z(static_cast<unsigned long>(e));
        return num * pow10z(static_cast<unsigned long>(-e)) < den;
    };
    // position e with 10^e <= num/den < 10^{e+1}
    long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) + 1;
    while (below_pow10(e)) --e;
    while (!below_pow10(e + 1)) ++e;

    long shift = 16 - e;
    Integer sn = shift >= 0 ? num * pow10z(static_cast<unsigned long>(shift)) : num;
    Integer sd = shift >= 0 ? den : den * pow10z(static_cast<unsigned long>(-shift));
    Integer digits = (2 * sn + sd) / (2 * sd);  // round half up
    std::string ds = digits.get_str();
    if (ds.size() == 18) {  // rounding carried into an 18th digit
        ds = ds.substr(0, 17);
        ++e;
    }
    long frac = 16 - e;
    if (frac < 0) {
        ds.append(static_cast<std::size_t>(-frac), '0');
        frac = 0;
    }
    return format_decimal(neg, Integer(ds), frac);
}

namespace {

struct SdpaEntry {
    int matno, block, row, col;
    Rational value;
};

struct SdpaLayout {
    int num_vars = 0;
    std::vector<int> block_sizes;
    std::vector<Rational> objective;
    std::vector<SdpaEntry> entries;
};

SdpaLayout build_layout(const SdpProblem& p) {
    std::size_t nf = p.constraint_graphs.size();
    std::size_t nc = p.cut_list.size();

    SdpaLayout lay;
    lay.num_vars = 1 + static_cast<int>(nc);
    std::vector<int> qvar_base;  // first variable index per basis block
    for (const auto& basis : p.bases) {
        qvar_base.push_back(lay.num_vars + 1);
        int s = static_cast<int>(basis.size());
        lay.num_vars += s * (s + 1) / 2;
    }

    int slack = static_cast<int>(nf + 2 + nc);
    lay.block_sizes.push_back(-slack);
    for (const auto& basis : p.bases) lay.block_sizes.push_back(static_cast<int>(basis.size()));

    lay.objective.assign(lay.num_vars, Rational(0));
    lay.objective[0] = 1;  // minimize lambda

    auto push = [&lay](int matno, int block, int row, int col, Rational v) {
        if (v != 0) lay.entries.push_back({matno, block, row, col, std::move(v)});
    };

    // constant matrix: the simplex equality sum(mu) = 1 as two inequalities
    push(0, 1, static_cast<int>(nf) + 1, static_cast<int>(nf) + 1, Rational(1));
    push(0, 1, static_cast<int>(nf) + 2, static_cast<int>(nf) + 2, Rational(-1));

    // lambda: row slack 2*rhat_F per constraint graph
    for (std::size_t f = 0; f < nf; ++f) {
        Rational rhat = 1;
        for (std::size_t c = 0; c < nc; ++c)
            if (p.root_density[c][f] < rhat) rhat = p.root_density[c][f];
        push(1, 1, static_cast<int>(f) + 1, static_cast<int>(f) + 1, 2 * rhat);
    }

    // mu variables
    for (std::size_t c = 0; c < nc; ++c) {
        int var = 2 + static_cast<int>(c);
        for (std::size_t f = 0; f < nf; ++f)
            push(var, 1, static_cast<int>(f) + 1, static_cast<int>(f) + 1, -p.cut_rows[c][f]);
        push(var, 1, static_cast<int>(nf) + 1, static_cast<int>(nf) + 1, Rational(1));
        push(var, 1, static_cast<int>(nf) + 2, static_cast<int>(nf) + 2, Rational(-1));
        push(var, 1, static_cast<int>(nf) + 3 + static_cast<int>(c),
             static_cast<int>(nf) + 3 + static_cast<int>(c), Rational(1));
    }

    // block entry variables
    for (std::size_t j = 0; j < p.bases.size(); ++j) {
        int s = static_cast<int>(p.bases[j].size());
        int var = qvar_base[j];
        for (int a = 0; a < s; ++a)
            for (int b = a; b < s; ++b, ++var) {
                for (std::size_t f = 0; f < nf; ++f) {
                    const Rational& m = p.product_blocks[j][f][a][b];
                    push(var, 1, static_cast<int>(f) + 1, static_cast<int>(f) + 1,
                         a == b ? Rational(-m) : Rational(-2 * m));
                }
                push(var, 2 + static_cast<int>(j), a + 1, b + 1, Rational(1));
            }
    }

    std::sort(lay.entries.begin(), lay.entries.end(), [](const auto& x, const auto& y) {
        return std::tie(x.matno, x.block, x.row, x.col) <
               std::tie(y.matno, y.block, y.row, y.col);
    });
    return lay;
}

}  // namespace

std::string emit_sdpa_string(const SdpProblem& p) {
    SdpaLayout lay = build_layout(p);
    std::ostringstream out;
    out << lay.num_vars << "\n";
    out << lay.block_sizes.size() << "\n";
    for (std::size_t i = 0; i < lay.block_sizes.size(); ++i)
        out << (i ? " " : "") << lay.block_sizes[i];
    out << "\n";
    for (int i = 0; i < lay.num_vars; ++i)
        out << (i ? " " : "") << sdpa_decimal(lay.objective[i]);
    out << "\n";
    for (const auto& e : lay.entries)
        out << e.matno << " " << e.block << " " << e.row << " " << e.col << " "
            << sdpa_decimal(e.value) << "\n";
    return out.str();
}

void emit_sdpa(const SdpProblem& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << emit_sdpa_string(p);
    if (!out) throw std::runtime_error("write failure on " + path);
}

namespace {

Rational parse_sdpa_number(const std::string& token) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < token.size() && (token[pos] == '+' || token[pos] == '-')) {
        neg = token[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac = 0, exponent = 0;
    bool in_frac = false, seen_digit = false;
    for (; pos < token.size(); ++pos) {
        char ch = token[pos];
        if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            seen_digit = true;
            if (in_frac) ++frac;
        } else if (ch == '.' && !in_frac) {
            in_frac = true;
        } else if (ch == 'e' || ch == 'E') {
            exponent = std::stol(token.substr(pos + 1));
            break;
        } else {
            throw std::invalid_argument("bad numeric token: " + token);
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad numeric token: " + token);
    Integer num;
    if (num.set_str(digits, 10) != 0)  // explicit base: leading zeros are not octal
        throw std::invalid_argument("bad numeric token: " + token);
    Integer den = 1;
    long net = exponent - frac;
    if (net >= 0)
        num *= pow10z(static_cast<unsigned long>(net));
    else
        den = pow10z(static_cast<unsigned long>(-net));
    Rational q(num, den);
    q.canonicalize();
    if (neg) q = -q;
    return q;
}

}  // namespace

SdpaData parse_sdpa(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && (line[0] == '*' || line[0] == '"')) continue;
        for (char& ch : line)
            if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }

    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= tokens.size()) throw std::invalid_argument("truncated SDPA data");
        return tokens[pos++];
    };

    SdpaData data;
    data.num_vars = std::stoi(next());
    int nblocks = std::stoi(next());
    for (int b = 0; b < nblocks; ++b) data.block_sizes.push_back(std::stoi(next()));
    for (int i = 0; i < data.num_vars; ++i) data.objective.push_back(parse_sdpa_number(next()));
    while (tokens.size() - pos >= 5) {
        int matno = std::stoi(next());
        int block = std::stoi(next());
        int row = std::stoi(next());
        int col = std::stoi(next());
        Rational value = parse_sdpa_number(next());
        data.entries.emplace_back(matno, block, row, col, std::move(value));
    }
    if (pos != tokens.size()) throw std::invalid_argument("trailing tokens in SDPA data");
    return data;
}

// --- exact PSD check ------------------------------------------------------------

bool is_positive_semidefinite(const SymMatrix& m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j] != m[j][i]) return false;

    // scale to integers; PSD is invariant under positive scaling
    Integer scale = 1;
    for (const auto& row : m)
        for (const auto& q : row) {
            Integer den = q.get_den();
            scale = scale / gcd(scale, den) * den;
        }
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational scaled = m[i][j] * Rational(scale);
            a[i][j] = scaled.get_num();  // denominator is 1 by construction
        }

    // fraction-free LDL^T elimination; active indices shrink when a zero
    // pivot has an all-zero residual row, anything else nonpositive rejects
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;
    Integer prev = 1;
    while (!active.empty()) {
        std::size_t k = active.front();
        const Integer& pivot = a[k][k];
        if (pivot < 0) return false;
        if (pivot == 0) {
            for (std::size_t idx = 1; idx < active.size(); ++idx)
                if (a[k][active[idx]] != 0) return false;  // zero pivot, live row
            active.erase(active.begin());
            continue;
        }
        for (std::size_t ii = 1; ii < active.size(); ++ii)
            for (std::size_t jj = ii; jj < active.size(); ++jj) {
                std::size_t i = active[ii], j = active[jj];
                Integer t = pivot * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[j][i] = a[i][j];
            }
        prev = pivot;
        active.erase(active.begin());
    }
    return true;
}

// --- verification ------------------------------------------------------------------

Verdict verify_certificate(const Certificate& c, const SdpProblem& p) {
    Verdict v;
    v.lambda = c.lambda;
    auto reject = [&v](std::string why) {
        v.accepted = false;
        v.reason = std::move(why);
        return v;
    };

    std::size_t nc = p.cut_list.size();
    std::size_t nf = p.constraint_graphs.size();
    if (c.mu.size() != nc) return reject("mu size does not match the cut list");
    if (c.blocks.size() != p.bases.size()) return reject("block count does not match the bases");
    for (std::size_t j = 0; j < c.blocks.size(); ++j)
        if (c.blocks[j].size() != p.bases[j].size())
            return reject("block " + std::to_string(j) + " has wrong dimension");

    if (c.lambda <= 0 || c.lambda > Rational(1, 2))
        return reject("lambda outside the meaningful range (0, 1/2]");

    Rational mu_sum = 0;
    for (std::size_t i = 0; i < nc; ++i) {
        if (c.mu[i] < 0) return reject("mu[" + std::to_string(i) + "] is negative");
        mu_sum += c.mu[i];
    }
    if (mu_sum != 1) return reject("mu does not sum to 1");

    for (std::size_t j = 0; j < c.blocks.size(); ++j) {
        for (const auto& row : c.blocks[j])
            if (row.size() != c.blocks[j].size())
                return reject("block " + std::to_string(j) + " is not square");
        if (!is_positive_semidefinite(c.blocks[j]))
            return reject("block " + std::to_string(j) + " is not positive semidefinite");
    }

    for (std::size_t f = 0; f < nf; ++f) {
        Rational lhs = 0, presence = 0;
        for (std::size_t i = 0; i < nc; ++i) {
            lhs += c.mu[i] * p.cut_rows[i][f];
            presence += c.mu[i] * p.root_density[i][f];
        }
        for (std::size_t j = 0; j < c.blocks.size(); ++j) {
            const SymMatrix& m = p.product_blocks[j][f];
            std::size_t s = c.blocks[j].size();
            for (std::size_t a = 0; a < s; ++a)
                for (std::size_t b = 0; b < s; ++b) lhs += c.blocks[j][a][b] * m[a][b];
        }
        Rational rhs = 2 * c.lambda * presence;
        if (lhs > rhs) {
            v.witness_graph = p.constraint_graphs[f];
            return reject("constraint graph " + graphs::to_graph6(p.constraint_graphs[f]) +
                          " violates the row inequality: " + rational_string(lhs) + " > " +
                          rational_string(rhs));
        }
    }

    v.accepted = true;
    return v;
}

Rational rationalize(double value, unsigned long max_denominator) {
    if (!std::isfinite(value)) throw std::domain_error("cannot rationalize a non-finite value");
    bool neg = value < 0;
    double x = std::fabs(value);

    // continued fraction convergents until the denominator cap
    unsigned long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        if (fl > 1e15) break;
        unsigned long long a = static_cast<unsigned long long>(fl);
        unsigned long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_denominator && q1 != 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) throw std::domain_error("rationalization failed");
    Rational q(Integer(static_cast<unsigned long>(p1)), Integer(static_cast<unsigned long>(q1)));
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

Certificate rationalize_certificate(double lambda, const std::vector<double>& mu,
                                    const std::vector<std::vector<std::vector<double>>>& blocks,
                                    unsigned long max_denominator) {
    Certificate c;
    c.lambda = rationalize(lambda, max_denominator);
    c.mu.reserve(mu.size());
    for (double value : mu) c.mu.push_back(rationalize(value, max_denominator));

    // repair the simplex constraint exactly: dump rounding slack on the
    // largest multiplier
    Rational sum = 0;
    for (const auto& q : c.mu) sum += q;
    if (sum != 1 && !c.mu.empty()) {
        std::size_t top = 0;
        for (std::size_t i = 1; i < c.mu.size(); ++i)
            if (c.mu[i] > c.mu[top]) top = i;
        c.mu[top] += 1 - sum;
    }

    for (const auto& block : blocks) {
        SymMatrix m(block.size());
        for (std::size_t i = 0; i < block.size(); ++i) {
            for (std::size_t j = 0; j < block[i].size(); ++j) {
                // symmetrize before rounding
                double v = (block[i][j] + block[j][i]) / 2.0;
                m[i].push_back(rationalize(v, max_denominator));
            }
        }
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = i + 1; j < m.size(); ++j) m[j][i] = m[i][j];
        c.blocks.push_back(std::move(m));
    }
    return c;
}

// --- JSON -----------------------------------------------------------------------------

namespace {

nlohmann::ordered_json type_to_json(const RootedGraphType& t) {
    nlohmann::ordered_json j;
    j["n"] = t.size();
    j["roots"] = t.root_count;
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : t.graph.edges()) edges.push_back({u, v});
    j["edges"] = edges;
    return j;
}

RootedGraphType type_from_json(const nlohmann::json& j) {
    SmallGraph g(j.at("n").get<int>());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return RootedGraphType{g, j.at("roots").get<int>()};
}

nlohmann::ordered_json matrix_to_json(const SymMatrix& m) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : m) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& q : row) r.push_back(rational_string(q));
        rows.push_back(r);
    }
    return rows;
}

SymMatrix matrix_from_json(const nlohmann::json& j) {
    SymMatrix m;
    for (const auto& row : j) {
        std::vector<Rational> r;
        for (const auto& q : row) r.push_back(parse_rational(q.get<std::string>()));
        m.push_back(std::move(r));
    }
    return m;
}

}  // namespace

std::string problem_to_json(const SdpProblem& p) {
    nlohmann::ordered_json j;
    j["constraint_size"] = p.constraint_size;
    auto graphs6 = nlohmann::ordered_json::array();
    for (const auto& g : p.constraint_graphs) graphs6.push_back(graphs::to_graph6(g));
    j["constraint_graphs"] = graphs6;
    auto cuts_json = nlohmann::ordered_json::array();
    for (const auto& d : p.cut_list)
        cuts_json.push_back(nlohmann::ordered_json::parse(cuts::descriptor_to_json(d)));
    j["cuts"] = cuts_json;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : p.cut_rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& q : row) r.push_back(rational_string(q));
        rows.push_back(r);
    }
    j["cut_rows"] = rows;
    auto dens = nlohmann::ordered_json::array();
    for (const auto& row : p.root_density) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& q : row) r.push_back(rational_string(q));
        dens.push_back(r);
    }
    j["root_density"] = dens;
    auto bases = nlohmann::ordered_json::array();
    for (const auto& basis : p.bases) {
        auto b = nlohmann::ordered_json::array();
        for (const auto& t : basis) b.push_back(type_to_json(t));
        bases.push_back(b);
    }
    j["bases"] = bases;
    auto blocks = nlohmann::ordered_json::array();
    for (const auto& per_basis : p.product_blocks) {
        auto b = nlohmann::ordered_json::array();
        for (const auto& m : per_basis) b.push_back(matrix_to_json(m));
        blocks.push_back(b);
    }
    j["product_blocks"] = blocks;
    return j.dump(2);
}

SdpProblem problem_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    SdpProblem p;
    p.constraint_size = j.at("constraint_size").get<int>();
    for (const auto& g : j.at("constraint_graphs"))
        p.constraint_graphs.push_back(graphs::from_graph6(g.get<std::string>()));
    for (const auto& d : j.at("cuts"))
        p.cut_list.push_back(cuts::descriptor_from_json(d.dump()));
    for (const auto& row : j.at("cut_rows")) {
        std::vector<Rational> r;
        for (const auto& q : row) r.push_back(parse_rational(q.get<std::string>()));
        p.cut_rows.push_back(std::move(r));
    }
    for (const auto& row : j.at("root_density")) {
        std::vector<Rational> r;
        for (const auto& q : row) r.push_back(parse_rational(q.get<std::string>()));
        p.root_density.push_back(std::move(r));
    }
    for (const auto& basis : j.at("bases")) {
        std::vector<RootedGraphType> b;
        for (const auto& t : basis) b.push_back(type_from_json(t));
        p.bases.push_back(std::move(b));
    }
    for (const auto& per_basis : j.at("product_blocks")) {
        std::vector<SymMatrix> b;
        for (const auto& m : per_basis) b.push_back(matrix_from_json(m));
        p.product_blocks.push_back(std::move(b));
    }
    return p;
}

std::string certificate_to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["lambda"] = rational_string(c.lambda);
    auto mu = nlohmann::ordered_json::array();
    for (const auto& q : c.mu) mu.push_back(rational_string(q));
    j["mu"] = mu;
    auto blocks = nlohmann::ordered_json::array();
    for (const auto& m : c.blocks) blocks.push_back(matrix_to_json(m));
    j["blocks"] = blocks;
    return j.dump(2);
}

Certificate certificate_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Certificate c;
    c.lambda = parse_rational(j.at("lambda").get<std::string>());
    for (const auto& q : j.at("mu")) c.mu.push_back(parse_rational(q.get<std::string>()));
    for (const auto& m : j.at("blocks")) c.blocks.push_back(matrix_from_json(m));
    return c;
}

}  // namespace cutforge::flags
