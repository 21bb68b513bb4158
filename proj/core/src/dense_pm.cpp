#include "kpm/dense_pm.hpp"

#include <algorithm>

#include "kpm/constructions.hpp"
#include "kpm/degree.hpp"
#include "kpm/solver.hpp"

namespace kpm {

bool check_dense_condition(const Hypergraph& h, const DenseSpec& spec) {
    if (!h.equal_parts())
        throw Error(Errc::unequal_parts, "dense conditions are stated for equal parts");
    const int k = h.k();
    const std::int64_t m = h.part_size(0);
    if (spec.kind == DenseSpec::Kind::daykin_haggkvist) {
        std::int64_t d1 = partite_min_d_degree(h, 1);
        return static_cast<__int128>(k) * d1 >=
               static_cast<__int128>(k - 1) * (ipow(m, k - 1) - 1);
    }
    std::vector<int> comp;
    std::vector<char> in_l(k, 0);
    for (int p : spec.L) {
        if (p < 0 || p >= k || in_l[p])
            throw Error(Errc::malformed_input, "bad part subset for the pikhurko condition");
        in_l[p] = 1;
    }
    for (int i = 0; i < k; ++i)
        if (!in_l[i]) comp.push_back(i);
    if (spec.L.empty() || comp.empty())
        throw Error(Errc::malformed_input, "pikhurko subset must be proper and nonempty");
    std::int64_t dl = min_degree_over(h, spec.L);
    std::int64_t dc = min_degree_over(h, comp);
    __int128 lhs = static_cast<__int128>(dl) * ipow(m, static_cast<int>(spec.L.size())) +
                   static_cast<__int128>(dc) * ipow(m, k - static_cast<int>(spec.L.size()));
    return 2 * lhs >= static_cast<__int128>(3) * ipow(m, k);
}

Matching dense_pm(const Hypergraph& h, const DenseSpec& spec) {
    if (!check_dense_condition(h, spec))
        throw Error(Errc::condition_not_met, "degree condition fails on this instance");
    const int n = h.part_size(0);

    Matching m;
    CoverMask used(h);
    auto remaining_degree = [&](int part, int index) {
        int d = 0;
        for (int id : h.incident(part, index))
            if (!used.any(h.edges()[id])) ++d;
        return d;
    };
    bool stalled = false;
    while (m.size() < n && !stalled) {
        int bp = -1, bi = -1, bd = 0;
        for (int i = 0; i < h.k() && !stalled; ++i)
            for (int x = 0; x < n; ++x) {
                if (used.test(i, x)) continue;
                int d = remaining_degree(i, x);
                if (d == 0) { stalled = true; break; }
                if (bp < 0 || d < bd) { bp = i; bi = x; bd = d; }
            }
        if (stalled || bp < 0) break;
        for (int id : h.incident(bp, bi)) {
            const Edge& e = h.edges()[id];
            if (used.any(e)) continue;
            used.add(e);
            m.add(e);
            break;
        }
    }
    if (m.size() == n) return m;

    // Greedy stalled: finish the uncovered remainder exactly.
    std::vector<std::vector<int>> left(h.k());
    for (int i = 0; i < h.k(); ++i) left[i] = used.free_vertices(i);
    auto rest = find_pm_within(h, left);
    if (!rest) {
        // The greedy prefix may be the obstruction; certify from scratch.
        auto full = has_perfect_matching(h);
        if (!full.exists)
            throw Error(Errc::no_perfect_matching,
                        "condition held but the instance has no perfect matching");
        return *full.certificate;
    }
    for (const Edge& e : *rest) m.add(e);
    return m;
}

}  // namespace kpm
