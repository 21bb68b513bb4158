#include "kpm/greedy.hpp"

#include <algorithm>
#include <numeric>

#include "kpm/degree.hpp"

namespace kpm {

void maximalize(const Hypergraph& h, Matching& m, CoverMask& used) {
    for (const Edge& e : h.edges())
        if (!used.any(e)) {
            used.add(e);
            m.add(e);
        }
}

Matching maximal_matching(const Hypergraph& h) {
    Matching m;
    CoverMask used(h);
    maximalize(h, m, used);
    return m;
}

namespace {

// Build r disjoint crossing (k-1)-sets over unmatched vertices, the j-th
// avoiding part avoid[j], then find a matched edge hosting neighbors of two
// different sets and replace it.  Scans the matching in insertion order and
// set pairs lexicographically.  Returns false only if the unmatched supply is
// too small; the pigeonhole step itself cannot fail when sum of the involved
// codegrees exceeds |M| and M is maximal.
bool fact_augment(const Hypergraph& h, Matching& m, CoverMask& used,
                  const std::vector<int>& avoid) {
    const int k = h.k();
    const int r = static_cast<int>(avoid.size());
    std::vector<std::vector<int>> free(k);
    for (int i = 0; i < k; ++i) {
        free[i] = used.free_vertices(i);
        int needed = 0;
        for (int j = 0; j < r; ++j) needed += (avoid[j] != i);
        if (static_cast<int>(free[i].size()) < needed) return false;
    }
    // u_sets[j][i] = index used in part i (or -1 for the avoided part)
    std::vector<std::vector<int>> u_sets(r, std::vector<int>(k, -1));
    std::vector<int> cursor(k, 0);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < k; ++i)
            if (avoid[j] != i) u_sets[j][i] = free[i][cursor[i]++];

    for (std::size_t mi = 0; mi < m.edges.size(); ++mi) {
        const Edge& host = m.edges[mi];
        for (int j1 = 0; j1 < r; ++j1)
            for (int j2 = j1 + 1; j2 < r; ++j2) {
                if (avoid[j1] == avoid[j2]) continue;
                Edge e1 = u_sets[j1];
                e1[avoid[j1]] = host[avoid[j1]];
                Edge e2 = u_sets[j2];
                e2[avoid[j2]] = host[avoid[j2]];
                if (!h.has_edge(e1) || !h.has_edge(e2)) continue;
                used.remove(host);
                m.edges.erase(m.edges.begin() + mi);
                used.add(e1);
                used.add(e2);
                m.add(e1);
                m.add(e2);
                return true;
            }
    }
    return false;
}

}  // namespace

Matching greedy_fact_matching(const Hypergraph& h) {
    const int k = h.k();
    const int n = *std::min_element(h.part_sizes().begin(), h.part_sizes().end());
    if (n < k - 2)
        throw Error(Errc::precondition_violated, "smallest part must have at least k-2 vertices");

    std::vector<int> a = partite_codegrees(h);
    std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a[x] > a[y]; });
    const int top1 = order[0], top2 = order[1];

    const std::int64_t target_sum = std::min<std::int64_t>(n - k + 2, sum_a);
    const std::int64_t target_pair = std::min<std::int64_t>(n - 1, a[top1] + a[top2]);
    const std::int64_t target = std::max(target_sum, target_pair);

    Matching m;
    CoverMask used(h);
    while (true) {
        maximalize(h, m, used);
        if (m.size() >= target) break;
        bool grown = false;
        if (m.size() < target_sum) {
            std::vector<int> avoid(k);
            std::iota(avoid.begin(), avoid.end(), 0);
            grown = fact_augment(h, m, used, avoid);
        }
        if (!grown && m.size() < target_pair)
            grown = fact_augment(h, m, used, {top1, top2});
        if (!grown)
            throw Error(Errc::internal, "replacement step found no host edge");
    }
    return m;
}

}  // namespace kpm
