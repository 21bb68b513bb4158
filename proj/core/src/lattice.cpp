#include "kpm/lattice.hpp"

#include <algorithm>
#include <map>

namespace kpm {

IndexVector index_vector(const RefinedPartition& p, std::span<const Vertex> s) {
    IndexVector v(p.dimension(), 0);
    for (const Vertex& x : s) {
        int c = p.cell_of(x);
        if (c == 0)
            throw Error(Errc::touches_residue, "set meets the residue at " + to_string(x));
        ++v[c - 1];
    }
    return v;
}

IndexVector edge_index_vector(const RefinedPartition& p, const Edge& e) {
    std::vector<Vertex> vs;
    vs.reserve(e.size());
    for (int i = 0; i < static_cast<int>(e.size()); ++i) vs.push_back({i, e[i]});
    return index_vector(p, vs);
}

RobustIndexSet robust_index_set(const Hypergraph& h, const RefinedPartition& p, const Ratio& mu) {
    RobustIndexSet out;
    out.unequal_parts = !h.equal_parts();
    std::int64_t scale = h.crossing_count();
    out.threshold = mu.ceil_scaled(scale);

    std::map<IndexVector, std::int64_t> tally;
    for (const Edge& e : h.edges()) {
        bool residue = false;
        IndexVector v(p.dimension(), 0);
        for (int i = 0; i < h.k(); ++i) {
            int c = p.cell_of({i, e[i]});
            if (c == 0) { residue = true; break; }
            ++v[c - 1];
        }
        if (residue) { ++out.residue_edges; continue; }
        ++tally[v];
    }
    for (auto& [vec, count] : tally) {
        if (mu.le_scaled(count, scale)) {
            out.vectors.push_back(vec);
            out.counts.push_back(count);
        }
    }
    return out;
}

bool in_lattice(const std::vector<long long>& v,
                const std::vector<std::vector<long long>>& generators) {
    const std::size_t d = v.size();
    for (const auto& g : generators)
        if (g.size() != d)
            throw Error(Errc::dimension_mismatch, "generator dimension differs from vector");

    // Integer row echelon form by repeated euclidean steps within each column.
    std::vector<std::vector<long long>> rows = generators;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column)
    std::size_t r = 0;
    for (std::size_t c = 0; c < d && r < rows.size(); ++c) {
        while (true) {
            std::size_t p = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 &&
                    (p == rows.size() || std::abs(rows[i][c]) < std::abs(rows[p][c])))
                    p = i;
            if (p == rows.size()) break;  // column is zero at and below r
            std::swap(rows[p], rows[r]);
            bool leftover = false;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                long long q = rows[i][c] / rows[r][c];
                for (std::size_t j = c; j < d; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) leftover = true;
            }
            if (!leftover) {
                if (rows[r][c] < 0)
                    for (std::size_t j = c; j < d; ++j) rows[r][j] = -rows[r][j];
                pivots.emplace_back(r, c);
                ++r;
                break;
            }
        }
    }

    // Reduce v against the echelon rows in pivot order.
    std::vector<long long> w = v;
    for (auto [row, col] : pivots) {
        if (w[col] % rows[row][col] != 0) return false;
        long long q = w[col] / rows[row][col];
        for (std::size_t j = col; j < d; ++j) w[j] -= q * rows[row][j];
    }
    return std::all_of(w.begin(), w.end(), [](long long x) { return x == 0; });
}

std::vector<long long> to_ll(const IndexVector& v) {
    return std::vector<long long>(v.begin(), v.end());
}

std::vector<long long> unit_difference(const RefinedPartition& p, int cell_a, int cell_b) {
    if (cell_a < 1 || cell_b < 1 || cell_a > p.dimension() || cell_b > p.dimension())
        throw Error(Errc::out_of_range, "cell id out of range");
    std::vector<long long> v(p.dimension(), 0);
    v[cell_a - 1] += 1;
    v[cell_b - 1] -= 1;
    return v;
}

}  // namespace kpm
