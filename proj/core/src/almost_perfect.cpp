#include "kpm/almost_perfect.hpp"

#include <algorithm>
#include <numeric>

#include "kpm/degree.hpp"
#include "kpm/enumerate.hpp"
#include "kpm/greedy.hpp"

namespace kpm {

namespace {

// Crossing (k-1)-sets avoiding `part` with degree below `target`, counted
// exactly.
std::int64_t low_codegree_sets(const Hypergraph& h, int part, int target) {
    std::vector<int> parts;
    for (int i = 0; i < h.k(); ++i)
        if (i != part) parts.push_back(i);
    std::vector<int> radix;
    std::int64_t cells = 1;
    for (int p : parts) { radix.push_back(h.part_size(p)); cells *= h.part_size(p); }
    std::vector<std::int64_t> count(cells, 0);
    for (const Edge& e : h.edges()) {
        std::int64_t idx = 0;
        for (std::size_t j = 0; j < parts.size(); ++j) idx = idx * radix[j] + e[parts[j]];
        ++count[idx];
    }
    std::int64_t low = 0;
    for (std::int64_t c : count) low += (c < target);
    return low;
}

struct HelperFamily {
    std::vector<std::vector<Vertex>> sets;  // kt sets; set j avoids part j mod k
    std::vector<Edge> as_partial;           // per set: indices with -1 at the avoided part
};

// Greedy lexicographic construction of the helper family over vertices not
// covered by `used`.  Sets are pairwise disjoint; set j avoids part j % k and
// must have degree at least targets[j % k].
std::optional<HelperFamily> build_family(const Hypergraph& h, const CoverMask& used,
                                         const std::vector<int>& targets, int t,
                                         std::string& diag) {
    const int k = h.k();
    HelperFamily fam;
    std::vector<std::vector<char>> taken(k);
    for (int i = 0; i < k; ++i) taken[i].assign(h.part_size(i), 0);

    for (int j = 0; j < k * t; ++j) {
        const int avoided = j % k;
        std::vector<int> parts;
        std::vector<int> radix;
        for (int i = 0; i < k; ++i)
            if (i != avoided) parts.push_back(i);
        std::vector<std::vector<int>> pool(parts.size());
        for (std::size_t pi = 0; pi < parts.size(); ++pi) {
            int p = parts[pi];
            for (int x = 0; x < h.part_size(p); ++x)
                if (!used.test(p, x) && !taken[p][x]) pool[pi].push_back(x);
            if (pool[pi].empty()) {
                diag = "built " + std::to_string(j) + " of " + std::to_string(k * t) +
                       " helper sets; part " + std::to_string(p) + " ran out of free vertices";
                return std::nullopt;
            }
            radix.push_back(static_cast<int>(pool[pi].size()));
        }
        bool found = false;
        for_each_tuple(radix, [&](const std::vector<int>& pick) {
            Edge partial(k, -1);
            for (std::size_t pi = 0; pi < parts.size(); ++pi)
                partial[parts[pi]] = pool[pi][pick[pi]];
            // degree of the candidate set
            std::int64_t deg = 0;
            Edge e = partial;
            for (int x = 0; x < h.part_size(avoided); ++x) {
                e[avoided] = x;
                if (h.has_edge(e)) ++deg;
            }
            if (deg < targets[avoided]) return true;
            std::vector<Vertex> vs;
            for (std::size_t pi = 0; pi < parts.size(); ++pi)
                vs.push_back({parts[pi], partial[parts[pi]]});
            for (const Vertex& v : vs) taken[v.part][v.index] = 1;
            fam.sets.push_back(std::move(vs));
            fam.as_partial.push_back(std::move(partial));
            found = true;
            return false;
        });
        if (!found) {
            diag = "built " + std::to_string(j) + " of " + std::to_string(k * t) +
                   " helper sets; no qualifying set avoiding part " + std::to_string(avoided);
            return std::nullopt;
        }
    }
    return fam;
}

}  // namespace

AlmostPerfectResult almost_perfect_matching(const Hypergraph& h, const Params& params,
                                            const std::optional<std::vector<int>>& targets_in,
                                            std::uint64_t node_budget) {
    const int k = h.k();
    if (params.gamma.num <= 0)
        throw Error(Errc::precondition_violated, "gamma must be positive");

    std::vector<int> targets = targets_in ? *targets_in : partite_codegrees(h);
    if (static_cast<int>(targets.size()) != k)
        throw Error(Errc::malformed_input, "one codegree target per part required");
    if (targets_in) {
        // at most eta * prod(n_j, j != i) crossing sets may fall below target i
        for (int i = 0; i < k; ++i) {
            std::int64_t scale = 1;
            for (int j = 0; j < k; ++j)
                if (j != i) scale *= h.part_size(j);
            std::int64_t low = low_codegree_sets(h, i, targets[i]);
            if (params.eta.lt_scaled(low, scale))
                throw Error(Errc::precondition_violated,
                            "part " + std::to_string(i) + " has " + std::to_string(low) +
                                " low-codegree sets, above the eta allowance");
        }
    }
    const int n_min = *std::min_element(h.part_sizes().begin(), h.part_sizes().end());
    std::int64_t sum_targets = std::accumulate(targets.begin(), targets.end(), std::int64_t{0});
    // guarantee regime: sum of targets at least (1-gamma) n
    if (!Ratio(params.gamma.den - params.gamma.num, params.gamma.den).le_scaled(sum_targets, n_min))
        throw Error(Errc::family_construction_failed,
                    "codegree target sum " + std::to_string(sum_targets) +
                        " is below (1-gamma)n; the guarantee regime does not apply");

    // t = ceil(k(k-1)/gamma)
    const int t = static_cast<int>(
        Ratio(params.gamma.den, params.gamma.num).ceil_scaled(std::int64_t{k} * (k - 1)));

    auto rep = max_matching(h, node_budget);
    bool heuristic = !rep.optimal;
    Matching m = heuristic ? maximal_matching(h) : std::move(rep.matching);

    while (true) {
        CoverMask used(h);
        for (const Edge& e : m.edges) used.add(e);
        if (heuristic) maximalize(h, m, used);

        bool small_leftover = true;
        for (int i = 0; i < k; ++i) {
            std::int64_t uncovered = h.part_size(i) - m.size();
            if (params.alpha.lt_scaled(uncovered, h.part_size(i))) { small_leftover = false; break; }
        }
        if (small_leftover) return {std::move(m), heuristic};

        std::string diag;
        auto fam = build_family(h, used, targets, t, diag);
        if (!fam)
            throw Error(Errc::family_construction_failed, diag);

        // Completions of the helper sets.  A completion by an uncovered
        // vertex contradicts maximality: repair and restart.
        bool restart = false;
        std::vector<std::vector<std::vector<int>>> completions(k);  // [part][index] -> set ids
        for (int i = 0; i < k; ++i) completions[i].resize(h.part_size(i));
        for (int j = 0; j < static_cast<int>(fam->sets.size()) && !restart; ++j) {
            const int avoided = j % k;
            Edge e = fam->as_partial[j];
            for (int x = 0; x < h.part_size(avoided); ++x) {
                e[avoided] = x;
                if (!h.has_edge(e)) continue;
                if (!used.test(avoided, x)) {
                    if (!heuristic)
                        throw Error(Errc::internal, "uncovered completion beside a maximum matching");
                    m.add(e);
                    restart = true;
                    break;
                }
                completions[avoided][x].push_back(j);
            }
        }
        if (restart) continue;

        std::vector<std::vector<int>> d_sets(k);
        std::vector<std::vector<char>> in_d(k);
        for (int i = 0; i < k; ++i) {
            in_d[i].assign(h.part_size(i), 0);
            for (int x = 0; x < h.part_size(i); ++x)
                if (static_cast<int>(completions[i][x].size()) >= k) {
                    d_sets[i].push_back(x);
                    in_d[i][x] = 1;
                }
        }

        // Every base edge may meet D at most once; two hits yield a
        // replacement that grows the matching.
        for (std::size_t mi = 0; mi < m.edges.size() && !restart; ++mi) {
            const Edge& e = m.edges[mi];
            std::vector<Vertex> hits;
            for (int i = 0; i < k; ++i)
                if (in_d[i][e[i]]) hits.push_back({i, e[i]});
            if (hits.size() <= 1) continue;
            if (!heuristic)
                throw Error(Errc::internal, "double D-hit beside a maximum matching");
            Vertex x = hits[0], y = hits[1];
            int jx = completions[x.part][x.index][0];
            int jy = -1;
            for (int cand : completions[y.part][y.index])
                if (cand != jx) { jy = cand; break; }
            if (jy < 0) throw Error(Errc::internal, "no disjoint second helper set");
            Edge ex = fam->as_partial[jx];
            ex[x.part] = x.index;
            Edge ey = fam->as_partial[jy];
            ey[y.part] = y.index;
            m.edges.erase(m.edges.begin() + mi);
            m.add(ex);
            m.add(ey);
            restart = true;
        }
        if (restart) continue;

        SExtremalEvidence ev;
        ev.targets = targets;
        ev.heuristic_base = heuristic;
        ev.d_sets = d_sets;
        ev.d_floor.resize(k);
        for (int i = 0; i < k; ++i) {
            // |D_i| >= a_i - n_i (k-1)/t, forced by counting completions
            std::int64_t floor_i =
                targets[i] - Ratio(std::int64_t{k} - 1, t).ceil_scaled(h.part_size(i));
            ev.d_floor[i] = floor_i;
            if (static_cast<std::int64_t>(d_sets[i].size()) < floor_i)
                throw Error(Errc::internal, "completion count bound violated");
        }
        ev.base = m;
        ev.family = fam->sets;
        // m_prime and the uncovered-by-D complement inside V(M')
        std::vector<std::vector<char>> in_c(k);
        for (int i = 0; i < k; ++i) in_c[i].assign(h.part_size(i), 0);
        for (const Edge& e : m.edges) {
            bool meets_d = false;
            for (int i = 0; i < k; ++i)
                if (in_d[i][e[i]]) { meets_d = true; break; }
            if (!meets_d) continue;
            ev.m_prime.add(e);
            for (int i = 0; i < k; ++i)
                if (!in_d[i][e[i]]) in_c[i][e[i]] = 1;
        }
        ev.c_sizes.resize(k);
        for (int i = 0; i < k; ++i)
            ev.c_sizes[i] = std::count(in_c[i].begin(), in_c[i].end(), 1);

        // An edge inside V(M') minus D lets the base matching grow by
        // cascading replacements; with a maximum base none can exist.
        const Edge* e0 = nullptr;
        for (const Edge& e : h.edges()) {
            bool inside = true;
            for (int i = 0; i < k; ++i)
                if (!in_c[i][e[i]]) { inside = false; break; }
            if (inside) { e0 = &e; break; }
        }
        if (!e0) return {std::move(ev), heuristic};
        if (!heuristic)
            throw Error(Errc::internal, "edge inside V(M') minus D beside a maximum matching");

        // Replace the hosts of e0 by e0 plus one helper completion per host.
        std::vector<std::size_t> hosts;
        for (std::size_t mi = 0; mi < m.edges.size(); ++mi)
            if (!edges_disjoint(m.edges[mi], *e0)) hosts.push_back(mi);
        std::vector<char> used_set(fam->sets.size(), 0);
        std::vector<Edge> additions{*e0};
        for (std::size_t host : hosts) {
            const Edge& e = m.edges[host];
            Vertex v{-1, -1};
            for (int i = 0; i < k; ++i)
                if (in_d[i][e[i]]) { v = {i, e[i]}; break; }
            if (v.part < 0) throw Error(Errc::internal, "host edge without D vertex");
            int pick = -1;
            for (int cand : completions[v.part][v.index])
                if (!used_set[cand]) { pick = cand; break; }
            if (pick < 0) throw Error(Errc::internal, "helper sets exhausted during rebuild");
            used_set[pick] = 1;
            Edge grown = fam->as_partial[pick];
            grown[v.part] = v.index;
            additions.push_back(std::move(grown));
        }
        std::vector<Edge> kept;
        for (std::size_t mi = 0; mi < m.edges.size(); ++mi)
            if (std::find(hosts.begin(), hosts.end(), mi) == hosts.end())
                kept.push_back(m.edges[mi]);
        for (Edge& e : additions) kept.push_back(std::move(e));
        m.edges = std::move(kept);
    }
}

}  // namespace kpm
