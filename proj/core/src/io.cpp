#include "kpm/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace kpm {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (static_cast<unsigned char>(c) > 127)
            throw ParseFailure(Errc::parse_error, static_cast<int>(lines.size()) + 1,
                               "non-ASCII byte");
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);  // tolerate a missing final newline
    return lines;
}

std::vector<int> parse_ints(const std::string& line, int lineno) {
    std::vector<int> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseFailure(Errc::parse_error, lineno, "bad integer '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || lines[0] != "kpg 1")
        throw ParseFailure(Errc::parse_error, 1, "expected header 'kpg 1'");
    if (lines.size() < 3) throw ParseFailure(Errc::parse_error, 2, "truncated header");

    std::vector<int> kline = parse_ints(lines[1], 2);
    if (kline.size() != 1 || kline[0] < 2)
        throw ParseFailure(Errc::parse_error, 2, "k must be a single integer >= 2");
    const int k = kline[0];
    std::vector<int> sizes = parse_ints(lines[2], 3);
    if (static_cast<int>(sizes.size()) != k)
        throw ParseFailure(Errc::parse_error, 3, "expected k part sizes");
    for (int s : sizes)
        if (s <= 0) throw ParseFailure(Errc::parse_error, 3, "part sizes must be positive");

    std::vector<Edge> edges;
    std::size_t lineno = 3;
    std::size_t bip_start = 0;
    for (std::size_t i = 3; i < lines.size(); ++i) {
        lineno = i + 1;
        if (lines[i] == "bip") {
            bip_start = i + 1;
            break;
        }
        if (lines[i].empty() && i + 1 == lines.size()) break;  // trailing blank
        std::vector<int> vs = parse_ints(lines[i], static_cast<int>(lineno));
        if (static_cast<int>(vs.size()) != k)
            throw ParseFailure(Errc::parse_error, static_cast<int>(lineno),
                               "edge needs exactly k indices");
        for (int j = 0; j < k; ++j)
            if (vs[j] < 0 || vs[j] >= sizes[j])
                throw ParseFailure(Errc::out_of_range, static_cast<int>(lineno),
                                   "vertex index " + std::to_string(vs[j]) +
                                       " outside part " + std::to_string(j));
        if (std::find(edges.begin(), edges.end(), vs) != edges.end())
            throw ParseFailure(Errc::duplicate_edge, static_cast<int>(lineno),
                               "edge repeats an earlier line");
        edges.push_back(std::move(vs));
    }

    Instance inst{Hypergraph(k, sizes, std::move(edges)), std::nullopt};
    if (bip_start > 0) {
        if (lines.size() < bip_start + static_cast<std::size_t>(k))
            throw ParseFailure(Errc::parse_error, static_cast<int>(lines.size()),
                               "bipartition block needs k lines");
        std::vector<std::vector<int>> a_lists(k);
        for (int i = 0; i < k; ++i) {
            int ln = static_cast<int>(bip_start + i + 1);
            a_lists[i] = parse_ints(lines[bip_start + i], ln);
            for (std::size_t j = 0; j < a_lists[i].size(); ++j) {
                if (a_lists[i][j] < 0 || a_lists[i][j] >= sizes[i])
                    throw ParseFailure(Errc::out_of_range, ln, "bipartition index out of part");
                if (j > 0 && a_lists[i][j] <= a_lists[i][j - 1])
                    throw ParseFailure(Errc::parse_error, ln,
                                       "bipartition indices must be strictly ascending");
            }
        }
        if (lines.size() > bip_start + static_cast<std::size_t>(k)) {
            for (std::size_t i = bip_start + k; i < lines.size(); ++i)
                if (!lines[i].empty())
                    throw ParseFailure(Errc::parse_error, static_cast<int>(i + 1),
                                       "unexpected content after the bipartition block");
        }
        inst.bip = Bipartition::from_sets(sizes, a_lists);
    }
    return inst;
}

std::string render_instance(const Hypergraph& h, const std::optional<Bipartition>& bip) {
    std::ostringstream os;
    os << "kpg 1\n" << h.k() << "\n";
    for (int i = 0; i < h.k(); ++i) os << (i ? " " : "") << h.part_size(i);
    os << "\n";
    for (const Edge& e : h.edges()) {
        for (int j = 0; j < h.k(); ++j) os << (j ? " " : "") << e[j];
        os << "\n";
    }
    if (bip) {
        os << "bip\n";
        for (int i = 0; i < h.k(); ++i) {
            auto lst = bip->a_list(i);
            for (std::size_t j = 0; j < lst.size(); ++j) os << (j ? " " : "") << lst[j];
            os << "\n";
        }
    }
    return os.str();
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::usage, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

void save_instance(const std::string& path, const Hypergraph& h,
                   const std::optional<Bipartition>& bip) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::usage, "cannot write '" + path + "'");
    out << render_instance(h, bip);
}

}  // namespace kpm
