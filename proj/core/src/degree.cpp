#include "kpm/degree.hpp"

#include <algorithm>

#include "kpm/enumerate.hpp"

namespace kpm {

std::int64_t codegree(const Hypergraph& h, const CrossingSet& s) {
    if (s.k() != h.k() || s.size() != h.k() - 1)
        throw Error(Errc::malformed_set, "codegree wants a crossing set of size k-1");
    int missing = -1;
    for (int i = 0; i < h.k(); ++i)
        if (!s.has(i)) { missing = i; break; }
    Edge e(h.k());
    for (int i = 0; i < h.k(); ++i)
        if (i != missing) e[i] = s.at(i);
    std::int64_t d = 0;
    for (int x = 0; x < h.part_size(missing); ++x) {
        e[missing] = x;
        if (h.has_edge(e)) ++d;
    }
    return d;
}

std::int64_t min_degree_over(const Hypergraph& h, const std::vector<int>& parts) {
    std::vector<int> radix;
    radix.reserve(parts.size());
    std::int64_t cells = 1;
    for (int p : parts) {
        if (p < 0 || p >= h.k()) throw Error(Errc::out_of_range, "part id out of range");
        radix.push_back(h.part_size(p));
        cells *= h.part_size(p);
    }
    // Count edges per projection onto the chosen parts, then take the minimum
    // over all cells (untouched cells have degree zero).
    std::vector<std::int64_t> count(cells, 0);
    for (const Edge& e : h.edges()) {
        std::int64_t idx = 0;
        for (std::size_t j = 0; j < parts.size(); ++j) idx = idx * radix[j] + e[parts[j]];
        ++count[idx];
    }
    return *std::min_element(count.begin(), count.end());
}

int partite_min_codegree(const Hypergraph& h, int part) {
    if (part < 0 || part >= h.k()) throw Error(Errc::out_of_range, "part id out of range");
    std::vector<int> parts;
    for (int i = 0; i < h.k(); ++i)
        if (i != part) parts.push_back(i);
    return static_cast<int>(min_degree_over(h, parts));
}

std::vector<int> partite_codegrees(const Hypergraph& h) {
    std::vector<int> a(h.k());
    for (int i = 0; i < h.k(); ++i) a[i] = partite_min_codegree(h, i);
    return a;
}

std::int64_t partite_min_d_degree(const Hypergraph& h, int d) {
    if (d < 1 || d > h.k() - 1)
        throw Error(Errc::out_of_range, "d must lie in [1, k-1]");
    std::int64_t best = -1;
    for_each_combination(h.k(), d, [&](const std::vector<int>& parts) {
        std::int64_t v = min_degree_over(h, parts);
        if (best < 0 || v < best) best = v;
        return true;
    });
    return best;
}

std::int64_t complement_degree(const Hypergraph& h, Vertex v) {
    h.check_vertex(v);
    std::int64_t full = 1;
    for (int i = 0; i < h.k(); ++i)
        if (i != v.part) full *= h.part_size(i);
    return full - h.degree(v);
}

std::int64_t max_complement_degree(const Hypergraph& h) {
    std::int64_t best = 0;
    for (int i = 0; i < h.k(); ++i)
        for (int x = 0; x < h.part_size(i); ++x)
            best = std::max(best, complement_degree(h, {i, x}));
    return best;
}

}  // namespace kpm
