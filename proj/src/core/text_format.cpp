#include <istream>
#include <ostream>
#include <sstream>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

namespace {

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

Hypergraph parse_hypergraph(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    long long k = 0, n = 0;
    std::vector<std::vector<Vertex>> edges;

    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(line);
        if (blank(line)) continue;
        std::istringstream fields(line);
        if (!have_header) {
            if (!(fields >> k >> n) || k < 1 || n < 0)
                throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": expected header `k n`");
            std::string rest;
            if (fields >> rest) throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": trailing text in header");
            have_header = true;
            continue;
        }
        std::vector<Vertex> e;
        std::string tok;
        while (fields >> tok) {
            std::size_t used = 0;
            long long v = -1;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || v < 0)
                throw Error(Errc::parse_error, "line " + std::to_string(lineno) + ": bad vertex `" + tok + "`");
            if (v >= n)
                throw Error(Errc::vertex_range, "line " + std::to_string(lineno) + ": vertex " + tok + " >= n");
            e.push_back(static_cast<Vertex>(v));
        }
        edges.push_back(std::move(e));
    }
    if (!have_header) throw Error(Errc::parse_error, "missing header `k n`");
    return Hypergraph(static_cast<int>(k), static_cast<int>(n), edges);
}

Hypergraph parse_hypergraph(const std::string& text) {
    std::istringstream in(text);
    return parse_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
    out << h.uniformity() << ' ' << h.order() << '\n';
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto e = h.edge(i);
        for (std::size_t j = 0; j < e.size(); ++j) out << (j ? " " : "") << e[j];
        out << '\n';
    }
}

std::string to_text(const Hypergraph& h) {
    std::ostringstream out;
    write_hypergraph(out, h);
    return out.str();
}

std::string edges_compact(const Hypergraph& h) {
    std::string s;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (i) s += ',';
        auto e = h.edge(i);
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j) s += ' ';
            s += std::to_string(e[j]);
        }
    }
    return s;
}

}  // namespace hyperspec
