#include "cutforge/graph.hpp"

// graph6: n encoded as one printable byte (n+63) for n < 63, then the upper
// triangle of the adjacency matrix column by column, six bits per byte,
// most significant bit first, zero padded, every byte offset by 63.

namespace cutforge::graphs {

SmallGraph from_graph6(std::string_view text) {
    if (text.empty()) throw ParseError("empty graph6 string", 0);

    std::size_t pos = 0;
    unsigned char head = static_cast<unsigned char>(text[pos]);
    if (head == '>') {
        // optional ">>graph6<<" prefix
        constexpr std::string_view kPrefix = ">>graph6<<";
        if (text.substr(0, kPrefix.size()) != kPrefix)
            throw ParseError("bad graph6 header prefix", 0);
        pos = kPrefix.size();
        if (pos >= text.size()) throw ParseError("missing graph6 body", pos);
        head = static_cast<unsigned char>(text[pos]);
    }

    if (head < 63 || head > 126) throw ParseError("invalid graph6 byte", pos);
    if (head == 126)
        throw CapacityError("graph6 order >= 63 exceeds the 32-vertex capacity");
    int n = head - 63;
    if (n > SmallGraph::kMaxVertices)
        throw CapacityError("graph6 order " + std::to_string(n) + " exceeds the 32-vertex capacity");
    ++pos;

    int nbits = n * (n - 1) / 2;
    int nbytes = (nbits + 5) / 6;
    if (text.size() - pos < static_cast<std::size_t>(nbytes))
        throw ParseError("truncated graph6 body", text.size());
    if (text.size() - pos > static_cast<std::size_t>(nbytes))
        throw ParseError("trailing bytes after graph6 body", pos + nbytes);

    SmallGraph g(n);
    int bit = 0;
    for (int byte = 0; byte < nbytes; ++byte) {
        unsigned char raw = static_cast<unsigned char>(text[pos + byte]);
        if (raw < 63 || raw > 126) throw ParseError("invalid graph6 byte", pos + byte);
        unsigned value = raw - 63;
        for (int k = 5; k >= 0; --k, ++bit) {
            bool set = (value >> k) & 1u;
            if (bit >= nbits) {
                if (set) throw ParseError("nonzero graph6 padding", pos + byte);
                continue;
            }
            if (set) {
                // bit index -> (i, j) with j the column, i < j
                int j = 1, acc = 0;
                while (acc + j <= bit) acc += j++;
                g.add_edge(bit - acc, j);
            }
        }
    }
    return g;
}

std::string to_graph6(const SmallGraph& g) {
    int n = g.vertex_count();
    std::string out;
    out.push_back(static_cast<char>(n + 63));
    int nbits = n * (n - 1) / 2;
    int nbytes = (nbits + 5) / 6;
    int bit = 0;
    for (int byte = 0; byte < nbytes; ++byte) {
        unsigned value = 0;
        for (int k = 5; k >= 0; --k, ++bit) {
            if (bit >= nbits) continue;
            int j = 1, acc = 0;
            while (acc + j <= bit) acc += j++;
            if (g.has_edge(bit - acc, j)) value |= 1u << k;
        }
        out.push_back(static_cast<char>(value + 63));
    }
    return out;
}

}  // namespace cutforge::graphs
