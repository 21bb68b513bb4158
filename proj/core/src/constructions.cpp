#include "kpm/constructions.hpp"

#include <algorithm>

#include "kpm/enumerate.hpp"
#include "kpm/rng.hpp"

namespace kpm {

const char* side_name(Side s) { return s == Side::even ? "even" : "odd"; }

BarrierSpec::Validation BarrierSpec::validate() const {
    Validation v;
    v.sizes_ok = static_cast<int>(a.size()) == k;
    std::int64_t sum = 0;
    for (int ai : a) {
        if (ai < 0 || ai > n) v.sizes_ok = false;
        sum += ai;
    }
    v.space_sum_ok = v.sizes_ok && sum <= n - 1;
    v.odd_total = v.sizes_ok && (sum % 2 == 1);
    v.window_ok = v.sizes_ok;
    for (int ai : a)
        if (2 * ai < n - 2 || 2 * ai > n + 2) v.window_ok = false;
    return v;
}

Hypergraph realize(const BarrierSpec& spec) {
    if (spec.kind == BarrierSpec::Kind::space) return space_barrier(spec.k, spec.n, spec.a);
    Bipartition bip = Bipartition::prefixes(std::vector<int>(spec.k, spec.n), spec.a);
    return parity_family(spec.k, spec.n, bip, spec.side);
}

Hypergraph complete_kpartite(int k, const std::vector<int>& sizes) {
    std::vector<Edge> edges;
    for_each_tuple(sizes, [&](const std::vector<int>& t) {
        edges.push_back(t);
        return true;
    });
    return Hypergraph(k, sizes, std::move(edges));
}

Hypergraph space_barrier(int k, int n, const std::vector<int>& a) {
    if (static_cast<int>(a.size()) != k)
        throw Error(Errc::malformed_input, "space barrier needs one a_i per part");
    for (int ai : a)
        if (ai < 0 || ai > n) throw Error(Errc::out_of_range, "a_i out of [0, n]");
    std::vector<int> sizes(k, n);
    std::vector<Edge> edges;
    for_each_tuple(sizes, [&](const std::vector<int>& t) {
        for (int i = 0; i < k; ++i)
            if (t[i] < a[i]) {
                edges.push_back(t);
                break;
            }
        return true;
    });
    return Hypergraph(k, sizes, std::move(edges));
}

Hypergraph parity_family(int k, int n, const Bipartition& bip, Side side) {
    if (bip.k() != k) throw Error(Errc::malformed_input, "bipartition k mismatch");
    std::vector<int> sizes(k, n);
    if (bip.part_sizes() != sizes)
        throw Error(Errc::malformed_input, "bipartition part sizes mismatch");
    Parity want = side_parity(side);
    std::vector<Edge> edges;
    for_each_tuple(sizes, [&](const std::vector<int>& t) {
        if (bip.edge_parity(t) == want) edges.push_back(t);
        return true;
    });
    return Hypergraph(k, sizes, std::move(edges));
}

LocationSubgraph location_subgraph(const Hypergraph& h, const Bipartition& bip,
                                   const std::vector<char>& location) {
    if (static_cast<int>(location.size()) != h.k())
        throw Error(Errc::malformed_input, "location vector length mismatch");
    LocationSubgraph out;
    std::vector<std::vector<int>> keep(h.k());
    for (int i = 0; i < h.k(); ++i) {
        keep[i] = bip.side_list(i, location[i] != 0);
        if (keep[i].empty()) {
            out.empty_part = i;
            return out;
        }
    }
    Induced ind = induced_subgraph(h, keep);
    out.graph = std::move(ind.graph);
    out.to_parent = std::move(ind.to_parent);
    return out;
}

Hypergraph random_instance(int k, int n, const Ratio& p, std::uint64_t seed) {
    if (p.num < 0 || !p.le_scaled(p.den, p.den) /* p <= 1 */)
        throw Error(Errc::malformed_input, "probability out of [0, 1]");
    std::vector<int> sizes(k, n);
    std::vector<Edge> edges;
    if (p.num == 0) return Hypergraph(k, sizes, {});
    if (p.num == p.den) return complete_kpartite(k, sizes);
    // threshold = floor(p * 2^64); a candidate set is kept iff draw < threshold
    unsigned __int128 threshold =
        (static_cast<unsigned __int128>(p.num) << 64) / static_cast<unsigned __int128>(p.den);
    SplitMix64 rng(seed);
    for_each_tuple(sizes, [&](const std::vector<int>& t) {
        if (static_cast<unsigned __int128>(rng.next()) < threshold) edges.push_back(t);
        return true;
    });
    return Hypergraph(k, sizes, std::move(edges));
}

Hypergraph perturb(const Hypergraph& h, std::int64_t add, std::int64_t remove,
                   std::uint64_t seed) {
    if (remove < 0 || remove > h.edge_count())
        throw Error(Errc::budget_exceeded, "cannot remove more edges than exist");
    std::int64_t non_edges = h.crossing_count() - h.edge_count();
    if (add < 0 || add > non_edges)
        throw Error(Errc::budget_exceeded, "cannot add more edges than missing");

    SplitMix64 rng(seed);
    // Partial Fisher-Yates: pick `remove` distinct edge ids, then `add`
    // distinct non-edge ids, in that order from one stream.
    std::vector<Edge> edges = h.edges();
    for (std::int64_t i = 0; i < remove; ++i) {
        std::uint64_t j = i + rng.below(static_cast<std::uint64_t>(edges.size() - i));
        std::swap(edges[i], edges[j]);
    }
    edges.erase(edges.begin(), edges.begin() + remove);

    std::vector<Edge> pool;
    for_each_tuple(h.part_sizes(), [&](const std::vector<int>& t) {
        if (!h.has_edge(t)) pool.push_back(t);
        return true;
    });
    for (std::int64_t i = 0; i < add; ++i) {
        std::uint64_t j = i + rng.below(static_cast<std::uint64_t>(pool.size() - i));
        std::swap(pool[i], pool[j]);
        edges.push_back(pool[i]);
    }
    return Hypergraph(h.k(), h.part_sizes(), std::move(edges));
}

Hypergraph permute_parts(const Hypergraph& h, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != h.k())
        throw Error(Errc::malformed_input, "permutation length mismatch");
    std::vector<int> sizes(h.k());
    for (int j = 0; j < h.k(); ++j) sizes[j] = h.part_size(perm[j]);
    std::vector<Edge> edges;
    edges.reserve(h.edges().size());
    for (const Edge& e : h.edges()) {
        Edge f(h.k());
        for (int j = 0; j < h.k(); ++j) f[j] = e[perm[j]];
        edges.push_back(std::move(f));
    }
    return Hypergraph(h.k(), sizes, std::move(edges));
}

Edge unpermute_edge(const Edge& e, const std::vector<int>& perm) {
    Edge f(e.size());
    for (std::size_t j = 0; j < e.size(); ++j) f[perm[j]] = e[j];
    return f;
}

Matching unpermute_matching(const Matching& m, const std::vector<int>& perm) {
    Matching out;
    for (const Edge& e : m.edges) out.add(unpermute_edge(e, perm));
    return out;
}

Edge Induced::edge_to_parent(const Edge& e) const {
    Edge f(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) f[i] = to_parent[i][e[i]];
    return f;
}

Matching Induced::matching_to_parent(const Matching& m) const {
    Matching out;
    for (const Edge& e : m.edges) out.add(edge_to_parent(e));
    return out;
}

Induced induced_subgraph(const Hypergraph& h, const std::vector<std::vector<int>>& keep) {
    if (static_cast<int>(keep.size()) != h.k())
        throw Error(Errc::malformed_input, "keep lists count mismatch");
    std::vector<std::vector<int>> from(h.k());
    std::vector<int> sizes(h.k());
    for (int i = 0; i < h.k(); ++i) {
        if (keep[i].empty()) throw Error(Errc::empty_part, "part " + std::to_string(i));
        if (!std::is_sorted(keep[i].begin(), keep[i].end()))
            throw Error(Errc::malformed_input, "keep lists must be ascending");
        from[i].assign(h.part_size(i), -1);
        for (int j = 0; j < static_cast<int>(keep[i].size()); ++j) {
            int idx = keep[i][j];
            if (idx < 0 || idx >= h.part_size(i) || from[i][idx] != -1)
                throw Error(Errc::malformed_input, "bad keep list entry");
            from[i][idx] = j;
        }
        sizes[i] = static_cast<int>(keep[i].size());
    }
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
        Edge f(h.k());
        bool inside = true;
        for (int i = 0; i < h.k(); ++i) {
            int m = from[i][e[i]];
            if (m < 0) { inside = false; break; }
            f[i] = m;
        }
        if (inside) edges.push_back(std::move(f));
    }
    Induced out{Hypergraph(h.k(), sizes, std::move(edges)), keep, std::move(from)};
    return out;
}

}  // namespace kpm
