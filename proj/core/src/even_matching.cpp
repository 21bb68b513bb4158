#include "kpm/even_matching.hpp"

#include <algorithm>

namespace kpm {

namespace {

struct SideLists {
    // available vertex indices per part, split by side, ascending
    std::vector<std::vector<int>> a, b;

    int take(int part, bool a_side) {
        auto& lst = a_side ? a[part] : b[part];
        int v = lst.front();
        lst.erase(lst.begin());
        return v;
    }
    int avail(int part) const { return static_cast<int>(a[part].size() + b[part].size()); }
};

// All-even matching; |A| restricted to the available vertices must be even
// and each of parts 0, 1 must hold equally many available A and B vertices.
Matching even_core(int k, SideLists lists, const Bipartition& parity_ref) {
    Matching m;
    int remaining = lists.avail(0);
    while (remaining > 2) {
        // one same-side pair inside every part >= 2
        std::vector<std::pair<Vertex, Vertex>> pairs(k);
        for (int i = 2; i < k; ++i) {
            if (lists.a[i].size() >= 2) {
                pairs[i] = {{i, lists.take(i, true)}, {i, lists.take(i, true)}};
            } else if (lists.b[i].size() >= 2) {
                pairs[i] = {{i, lists.take(i, false)}, {i, lists.take(i, false)}};
            } else {
                throw Error(Errc::internal, "no same-side pair available");
            }
        }
        Edge e1(k), e2(k);
        int par = 0;
        for (int i = 2; i < k; ++i) {
            e1[i] = pairs[i].first.index;
            e2[i] = pairs[i].second.index;
            par += parity_ref.in_a(pairs[i].first) ? 1 : 0;
        }
        int va = lists.take(0, true), vb = lists.take(0, false);
        int wa = lists.take(1, true), wb = lists.take(1, false);
        if (par % 2 == 0) {  // pair A with A and B with B
            e1[0] = va; e1[1] = wa;
            e2[0] = vb; e2[1] = wb;
        } else {             // pair across so one A-vertex lands in each edge
            e1[0] = va; e1[1] = wb;
            e2[0] = vb; e2[1] = wa;
        }
        m.add(e1);
        m.add(e2);
        remaining -= 2;
    }
    // base: two vertices left per part
    Edge e1(k), e2(k);
    int par1 = 0, par2 = 0;
    for (int i = 1; i < k; ++i) {
        std::vector<int> both = lists.a[i];
        for (int x : lists.b[i]) both.push_back(x);
        std::sort(both.begin(), both.end());
        e1[i] = both[0];
        e2[i] = both[1];
        par1 += parity_ref.in_a({i, both[0]}) ? 1 : 0;
        par2 += parity_ref.in_a({i, both[1]}) ? 1 : 0;
    }
    if ((par1 + par2) % 2 != 1)
        throw Error(Errc::internal, "base split parities should differ");
    int a0 = lists.a[0].front(), b0 = lists.b[0].front();
    e1[0] = (par1 % 2 == 1) ? a0 : b0;
    e2[0] = (par1 % 2 == 1) ? b0 : a0;
    m.add(e1);
    m.add(e2);
    return m;
}

}  // namespace

Matching even_matching(int k, int n, const Bipartition& bip) {
    if (k < 2 || n < 2 || n % 2 != 0)
        throw Error(Errc::precondition_violated, "even part size n >= 2 required");
    if (bip.k() != k)
        throw Error(Errc::precondition_violated, "bipartition k mismatch");
    for (int i = 0; i < k; ++i)
        if (bip.part_sizes()[i] != n)
            throw Error(Errc::precondition_violated, "all parts must have size n");
    if (2 * bip.a_size(0) != n || 2 * bip.a_size(1) != n)
        throw Error(Errc::precondition_violated, "|A_1| = |A_2| = n/2 required");

    const bool odd_total = bip.total_a() % 2 != 0;
    Bipartition work = bip;
    Vertex moved{-1, -1};
    if (odd_total) {
        // some part >= 2 has an A-vertex: |A| odd while |A_1| + |A_2| = n even
        for (int i = 2; i < k && moved.part < 0; ++i)
            for (int x = 0; x < n; ++x)
                if (work.in_a(i, x)) { moved = {i, x}; break; }
        if (moved.part < 0) throw Error(Errc::internal, "odd total without A-vertex beyond part 1");
        work.move_to_b(moved);
    }

    SideLists lists;
    lists.a.resize(k);
    lists.b.resize(k);
    for (int i = 0; i < k; ++i) {
        lists.a[i] = work.a_list(i);
        lists.b[i] = work.b_list(i);
    }
    Matching m = even_core(k, std::move(lists), work);

    if (odd_total) {
        // exactly one edge contains the reassigned vertex; its parity under
        // the original bipartition is wrong, so it is dropped
        Matching trimmed;
        for (const Edge& e : m.edges)
            if (e[moved.part] != moved.index) trimmed.add(e);
        if (trimmed.size() != n - 1)
            throw Error(Errc::internal, "expected to drop exactly one edge");
        m = std::move(trimmed);
    }
    for (const Edge& e : m.edges)
        if (bip.edge_parity(e) != Parity::even)
            throw Error(Errc::internal, "constructed edge is not even");
    return m;
}

}  // namespace kpm
