#include "kpm/oracle.hpp"

#include <algorithm>
#include <set>

namespace kpm::oracle {

namespace {

int enumerate(const Hypergraph& h, int vertex, CoverMask& used, int size) {
    if (vertex == h.part_size(0)) return size;
    // leave vertex unmatched
    int best = enumerate(h, vertex + 1, used, size);
    if (used.test(0, vertex)) return best;
    for (int id : h.incident(0, vertex)) {
        const Edge& e = h.edges()[id];
        if (used.any(e)) continue;
        used.add(e);
        best = std::max(best, enumerate(h, vertex + 1, used, size + 1));
        used.remove(e);
    }
    return best;
}

}  // namespace

int naive_max_matching(const Hypergraph& h) {
    CoverMask used(h);
    return enumerate(h, 0, used, 0);
}

bool naive_is_absorbing(const Hypergraph& h, const std::vector<Vertex>& s, const Edge& e) {
    // Pool = S union e as explicit vertices.
    std::set<Vertex> pool(s.begin(), s.end());
    for (int i = 0; i < h.k(); ++i) pool.insert({i, e[i]});
    auto in_s = [&](Vertex v) { return std::find(s.begin(), s.end(), v) != s.end(); };
    auto in_e = [&](Vertex v) { return e[v.part] == v.index; };

    // All edges of H fully inside the pool.
    std::vector<Edge> inside;
    for (const Edge& f : h.edges()) {
        bool ok = true;
        for (int i = 0; i < h.k(); ++i)
            if (!pool.count({i, f[i]})) { ok = false; break; }
        if (ok) inside.push_back(f);
    }
    auto profile = [&](const Edge& f, int& with_s, int& with_e) {
        with_s = with_e = 0;
        for (int i = 0; i < h.k(); ++i) {
            Vertex v{i, f[i]};
            if (in_s(v)) ++with_s;
            if (in_e(v)) ++with_e;
        }
    };
    for (std::size_t i = 0; i < inside.size(); ++i)
        for (std::size_t j = 0; j < inside.size(); ++j) {
            if (i == j || !edges_disjoint(inside[i], inside[j])) continue;
            int s1, e1, s2, e2;
            profile(inside[i], s1, e1);
            profile(inside[j], s2, e2);
            if (s1 == h.k() - 1 && e1 == 1 && s2 == 2 && e2 == h.k() - 2) return true;
        }
    return false;
}

}  // namespace kpm::oracle
