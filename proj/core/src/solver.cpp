#include "kpm/solver.hpp"

#include <algorithm>

namespace kpm {

namespace {

struct SearchState {
    const Hypergraph& h;
    std::vector<std::vector<char>> covered;  // covered by an edge
    std::vector<std::vector<char>> skipped;  // committed to stay uncovered
    std::vector<int> avail;                  // per part: not covered, not skipped
    std::vector<Edge> current;
    std::vector<Edge> best;
    std::uint64_t nodes = 0;
    std::uint64_t budget;
    bool exhausted = true;

    SearchState(const Hypergraph& hg, std::uint64_t b) : h(hg), budget(b) {
        covered.resize(h.k());
        skipped.resize(h.k());
        avail.resize(h.k());
        for (int i = 0; i < h.k(); ++i) {
            covered[i].assign(h.part_size(i), 0);
            skipped[i].assign(h.part_size(i), 0);
            avail[i] = h.part_size(i);
        }
    }

    bool free_vertex(int part, int index) const {
        return !covered[part][index] && !skipped[part][index];
    }
    bool edge_available(const Edge& e) const {
        for (int i = 0; i < h.k(); ++i)
            if (!free_vertex(i, e[i])) return false;
        return true;
    }
    int remaining_degree(int part, int index) const {
        int d = 0;
        for (int id : h.incident(part, index))
            if (edge_available(h.edges()[id])) ++d;
        return d;
    }
    int bound() const {
        int m = avail[0];
        for (int i = 1; i < h.k(); ++i) m = std::min(m, avail[i]);
        if (m > 0) {
            // residual matching also cannot beat the available edge count
            int live = 0;
            for (const Edge& e : h.edges())
                if (edge_available(e) && ++live >= m) break;
            m = std::min(m, live);
        }
        return static_cast<int>(current.size()) + m;
    }
    void take(const Edge& e) {
        for (int i = 0; i < h.k(); ++i) { covered[i][e[i]] = 1; --avail[i]; }
        current.push_back(e);
    }
    void untake(const Edge& e) {
        for (int i = 0; i < h.k(); ++i) { covered[i][e[i]] = 0; ++avail[i]; }
        current.pop_back();
    }

    void search() {
        if (++nodes > budget) { exhausted = false; return; }
        if (current.size() > best.size()) best = current;
        if (bound() <= static_cast<int>(best.size())) return;

        // Fail-first: branch on the free vertex with the fewest available
        // incident edges; deterministic tie-break by (part, index).
        int bp = -1, bi = -1, bd = 0;
        for (int i = 0; i < h.k(); ++i)
            for (int x = 0; x < h.part_size(i); ++x) {
                if (!free_vertex(i, x)) continue;
                int d = remaining_degree(i, x);
                if (bp < 0 || d < bd) { bp = i; bi = x; bd = d; }
            }
        if (bp < 0) return;  // everything covered or skipped

        for (int id : h.incident(bp, bi)) {
            const Edge& e = h.edges()[id];
            if (!edge_available(e)) continue;
            take(e);
            search();
            untake(e);
            if (!exhausted) return;
        }
        // leave (bp, bi) uncovered
        skipped[bp][bi] = 1;
        --avail[bp];
        search();
        skipped[bp][bi] = 0;
        ++avail[bp];
    }
};

}  // namespace

SolveReport max_matching(const Hypergraph& h, std::uint64_t node_budget) {
    auto start = std::chrono::steady_clock::now();
    SearchState st(h, node_budget);
    st.search();
    SolveReport r;
    r.matching.edges = st.best;
    r.optimal = st.exhausted;
    r.nodes = st.nodes;
    r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return r;
}

PerfectMatchingResult has_perfect_matching(const Hypergraph& h, std::uint64_t node_budget) {
    if (!h.equal_parts()) throw Error(Errc::unequal_parts, "perfect matching needs equal parts");
    SolveReport r = max_matching(h, node_budget);
    if (!r.optimal && r.nu() < h.part_size(0))
        throw Error(Errc::budget_exceeded, "search did not finish within the node budget");
    PerfectMatchingResult out;
    out.exists = r.nu() == h.part_size(0);
    if (out.exists) {
        if (!validate_matching(h, r.matching))
            throw Error(Errc::internal, "solver returned an invalid certificate");
        out.certificate = std::move(r.matching);
    }
    return out;
}

namespace {

bool pm_search(const Hypergraph& h, const std::vector<std::vector<int>>& verts,
               std::vector<std::vector<char>>& used, int depth, std::vector<Edge>& out);

// Complete the partially built edge e over parts [part, k) using unused
// listed vertices, then continue matching the next part-0 vertex.
bool pm_extend(const Hypergraph& h, const std::vector<std::vector<int>>& verts,
               std::vector<std::vector<char>>& used, Edge& e, int part, int depth,
               std::vector<Edge>& out) {
    if (part == h.k()) {
        if (!h.has_edge(e)) return false;
        for (int i = 1; i < h.k(); ++i) used[i][e[i]] = 1;
        out.push_back(e);
        if (pm_search(h, verts, used, depth + 1, out)) return true;
        out.pop_back();
        for (int i = 1; i < h.k(); ++i) used[i][e[i]] = 0;
        return false;
    }
    for (int cand : verts[part]) {
        if (used[part][cand]) continue;
        e[part] = cand;
        if (pm_extend(h, verts, used, e, part + 1, depth, out)) return true;
    }
    return false;
}

bool pm_search(const Hypergraph& h, const std::vector<std::vector<int>>& verts,
               std::vector<std::vector<char>>& used, int depth, std::vector<Edge>& out) {
    if (depth == static_cast<int>(verts[0].size())) return true;
    Edge e(h.k());
    e[0] = verts[0][depth];
    return pm_extend(h, verts, used, e, 1, depth, out);
}

}  // namespace

std::optional<std::vector<Edge>> find_pm_within(const Hypergraph& h,
                                                const std::vector<std::vector<int>>& verts) {
    if (static_cast<int>(verts.size()) != h.k())
        throw Error(Errc::malformed_input, "vertex lists count mismatch");
    std::size_t m = verts[0].size();
    for (const auto& vs : verts)
        if (vs.size() != m) throw Error(Errc::malformed_input, "vertex lists must be balanced");
    if (m == 0) return std::vector<Edge>{};
    std::vector<std::vector<char>> used(h.k());
    for (int i = 0; i < h.k(); ++i) used[i].assign(h.part_size(i), 0);
    std::vector<Edge> out;
    if (pm_search(h, verts, used, 0, out)) return out;
    return std::nullopt;
}

bool perfectly_matchable(const Hypergraph& h, const std::vector<std::vector<int>>& verts) {
    return find_pm_within(h, verts).has_value();
}

}  // namespace kpm
