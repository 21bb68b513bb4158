#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "kpm/constructions.hpp"
#include "kpm/degree.hpp"
#include "kpm/enumerate.hpp"
#include "kpm/lattice.hpp"
#include "kpm/rng.hpp"

using namespace kpm;

namespace {

CrossingSet make_set(const Hypergraph& h, std::vector<Vertex> vs) {
    return CrossingSet::of(h, vs);
}

Hypergraph edgeless(int k, int n) { return Hypergraph(k, std::vector<int>(k, n), {}); }

}  // namespace

TEST_CASE("codegree on the named instances") {
    Hypergraph complete = complete_kpartite(3, {2, 2, 2});
    CHECK(codegree(complete, make_set(complete, {{0, 0}, {1, 1}})) == 2);
    CHECK(codegree(complete, make_set(complete, {{1, 0}, {2, 0}})) == 2);

    // in the space barrier only the A_1 vertex completes a pair of B-vertices
    Hypergraph h0 = space_barrier(3, 3, {1, 1, 1});
    CHECK(codegree(h0, make_set(h0, {{1, 2}, {2, 2}})) == 1);

    CHECK(codegree(edgeless(3, 2), make_set(edgeless(3, 2), {{0, 0}, {1, 0}})) == 0);

    CHECK_THROWS_AS(codegree(complete, make_set(complete, {{0, 0}})), Error);
    CHECK_THROWS_AS(make_set(complete, {{0, 0}, {0, 1}}), Error);
}

TEST_CASE("partite minimum codegrees") {
    for (int n : {2, 3, 4})
        CHECK(partite_min_codegree(complete_kpartite(3, {n, n, n}), 0) == n);
    Hypergraph h0 = space_barrier(3, 5, {1, 2, 0});
    for (int i = 0; i < 3; ++i)
        CHECK(partite_min_codegree(h0, i) == std::vector<int>{1, 2, 0}[i]);

    // parity family with both sides of size 2: every pair extends to exactly
    // one side of part i, so the minimum is 2 (checked against enumeration)
    Bipartition bip = Bipartition::prefixes({4, 4, 4}, {2, 2, 2});
    Hypergraph he = parity_family(3, 4, bip, Side::even);
    for (int i = 0; i < 3; ++i) {
        std::int64_t brute = -1;
        std::vector<int> others;
        for (int j = 0; j < 3; ++j)
            if (j != i) others.push_back(j);
        for_each_tuple({4, 4}, [&](const std::vector<int>& t) {
            std::int64_t d = 0;
            Edge e(3);
            e[others[0]] = t[0];
            e[others[1]] = t[1];
            for (int x = 0; x < 4; ++x) {
                e[i] = x;
                if (he.has_edge(e)) ++d;
            }
            if (brute < 0 || d < brute) brute = d;
            return true;
        });
        CHECK(brute == 2);
        CHECK(partite_min_codegree(he, i) == 2);
    }
}

TEST_CASE("partite minimum d-degree") {
    Hypergraph c3 = complete_kpartite(3, {3, 3, 3});
    CHECK(partite_min_d_degree(c3, 2) == 3);
    CHECK(partite_min_d_degree(c3, 1) == 9);

    // exhaustive reference over all part pairs and crossing pairs
    Hypergraph h0 = space_barrier(3, 4, {1, 1, 1});
    std::int64_t brute = -1;
    for (int p = 0; p < 3; ++p)
        for (int q = p + 1; q < 3; ++q)
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y) {
                    std::int64_t d = 0;
                    for (const Edge& e : h0.edges())
                        if (e[p] == x && e[q] == y) ++d;
                    if (brute < 0 || d < brute) brute = d;
                }
    CHECK(brute == 1);
    CHECK(partite_min_d_degree(h0, 2) == 1);
    CHECK_THROWS_AS(partite_min_d_degree(c3, 0), Error);
    CHECK_THROWS_AS(partite_min_d_degree(c3, 3), Error);
}

TEST_CASE("complement degree") {
    Hypergraph c2 = complete_kpartite(3, {2, 2, 2});
    for (int i = 0; i < 3; ++i)
        for (int x = 0; x < 2; ++x) CHECK(complement_degree(c2, {i, x}) == 0);
    CHECK(complement_degree(edgeless(3, 2), {1, 1}) == 4);
    CHECK(max_complement_degree(edgeless(3, 2)) == 4);

    // even family at n = 2 with singleton A-sides: two even edges through
    // each vertex, so the complement degree is 4 - 2 = 2
    Bipartition bip = Bipartition::prefixes({2, 2, 2}, {1, 1, 1});
    Hypergraph he = parity_family(3, 2, bip, Side::even);
    for (int i = 0; i < 3; ++i)
        for (int x = 0; x < 2; ++x) CHECK(complement_degree(he, {i, x}) == 2);
}

TEST_CASE("degree identities over random instances") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        Hypergraph h = random_instance(3, 4, {1, 2}, rng.next());
        for (int i = 0; i < 3; ++i) {
            CHECK(partite_min_codegree(h, i) <= h.part_size(i));
            // every edge is counted once when codegrees over one omitted
            // part are summed
            std::int64_t total = 0;
            std::vector<int> others;
            for (int j = 0; j < 3; ++j)
                if (j != i) others.push_back(j);
            for_each_tuple({4, 4}, [&](const std::vector<int>& t) {
                CrossingSet s(3);
                s.set(others[0], t[0]);
                s.set(others[1], t[1]);
                total += codegree(h, s);
                return true;
            });
            CHECK(total == h.edge_count());
        }
        for (int i = 0; i < 3; ++i)
            for (int x = 0; x < 4; ++x)
                CHECK(complement_degree(h, {i, x}) + h.degree({i, x}) == 16);
    }
}

TEST_CASE("set parity") {
    Bipartition bip = Bipartition::prefixes({3, 3, 3}, {1, 1, 1});
    CHECK(set_parity({}, bip) == Parity::even);
    std::vector<Vertex> one{{0, 0}};
    CHECK(set_parity(one, bip) == Parity::odd);
    Hypergraph he = parity_family(3, 3, bip, Side::even);
    for (const Edge& e : he.edges()) CHECK(bip.edge_parity(e) == Parity::even);
}

TEST_CASE("index vectors") {
    Hypergraph h = complete_kpartite(3, {4, 4, 4});
    // split part 0 into two cells, keep the others whole
    std::vector<std::vector<Vertex>> cells(1);
    cells.push_back({{0, 0}, {0, 1}});
    cells.push_back({{0, 2}, {0, 3}});
    cells.push_back({{1, 0}, {1, 1}, {1, 2}, {1, 3}});
    cells.push_back({{2, 0}, {2, 1}, {2, 2}, {2, 3}});
    RefinedPartition p = RefinedPartition::build(h, cells);
    CHECK(p.dimension() == 4);

    CHECK(index_vector(p, {}) == IndexVector{0, 0, 0, 0});
    CHECK(edge_index_vector(p, {0, 2, 3}) == IndexVector{1, 0, 1, 1});
    CHECK(edge_index_vector(p, {2, 2, 3}) == IndexVector{0, 1, 1, 1});
    std::vector<Vertex> w1 = p.cell(1);
    CHECK(index_vector(p, w1) == IndexVector{2, 0, 0, 0});

    // additive over disjoint sets away from the residue
    std::vector<Vertex> s1{{0, 0}, {1, 2}};
    std::vector<Vertex> s2{{0, 3}, {2, 1}};
    IndexVector sum = index_vector(p, s1);
    IndexVector v2 = index_vector(p, s2);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v2[i];
    std::vector<Vertex> joined = s1;
    joined.insert(joined.end(), s2.begin(), s2.end());
    CHECK(index_vector(p, joined) == sum);

    // residue rejection
    std::vector<std::vector<Vertex>> cells2 = cells;
    cells2[0] = {{1, 0}};
    cells2[3] = {{1, 1}, {1, 2}, {1, 3}};
    RefinedPartition p2 = RefinedPartition::build(h, cells2);
    std::vector<Vertex> touching{{1, 0}};
    CHECK_THROWS_AS(index_vector(p2, touching), Error);
}

TEST_CASE("robust index sets") {
    Hypergraph c3 = complete_kpartite(3, {3, 3, 3});
    RobustIndexSet r = robust_index_set(c3, RefinedPartition::trivial(c3), {1, 2});
    REQUIRE(r.vectors.size() == 1);
    CHECK(r.vectors[0] == IndexVector{1, 1, 1});
    CHECK(r.counts[0] == 27);

    Hypergraph none = edgeless(3, 3);
    CHECK(robust_index_set(none, RefinedPartition::trivial(none), {1, 10}).vectors.empty());

    // the even family realizes exactly the even side-selection patterns
    Bipartition bip = Bipartition::prefixes({4, 4, 4}, {2, 2, 2});
    Hypergraph he = parity_family(3, 4, bip, Side::even);
    std::vector<std::vector<Vertex>> cells(1);
    for (int i = 0; i < 3; ++i) {
        std::vector<Vertex> av, bv;
        for (int x = 0; x < 4; ++x) (bip.in_a(i, x) ? av : bv).push_back({i, x});
        cells.push_back(av);
        cells.push_back(bv);
    }
    RefinedPartition p = RefinedPartition::build(he, cells);
    RobustIndexSet re = robust_index_set(he, p, {1, 16});
    CHECK(re.vectors.size() == 4);
    for (std::size_t vi = 0; vi < re.vectors.size(); ++vi) {
        int a_hits = re.vectors[vi][0] + re.vectors[vi][2] + re.vectors[vi][4];
        CHECK(a_hits % 2 == 0);
        CHECK(re.counts[vi] == 8);
    }
}

TEST_CASE("lattice membership") {
    CHECK(in_lattice({2, 0}, {{2, 0}}));
    CHECK(in_lattice({0, 0}, {{2, 0}}));
    CHECK_FALSE(in_lattice({1, 0}, {{2, 0}}));
    CHECK(in_lattice({1, 1, 0}, {{1, 0, 1}, {0, 1, -1}}));
    CHECK_THROWS_AS(in_lattice({1, 0}, {{1, 0, 0}}), Error);
}

TEST_CASE("lattice membership agrees with bounded search") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + static_cast<int>(rng.below(5));  // dimension up to 6
        std::vector<std::vector<long long>> gens(3, std::vector<long long>(d));
        for (auto& g : gens)
            for (auto& x : g) x = static_cast<long long>(rng.below(7)) - 3;
        std::vector<long long> v(d);
        for (auto& x : v) x = static_cast<long long>(rng.below(9)) - 4;

        bool brute = false;
        for (int c0 = -8; c0 <= 8 && !brute; ++c0)
            for (int c1 = -8; c1 <= 8 && !brute; ++c1)
                for (int c2 = -8; c2 <= 8 && !brute; ++c2) {
                    bool eq = true;
                    for (int i = 0; i < d; ++i)
                        if (c0 * gens[0][i] + c1 * gens[1][i] + c2 * gens[2][i] != v[i]) {
                            eq = false;
                            break;
                        }
                    brute = eq;
                }
        if (brute) {
            CHECK(in_lattice(v, gens));
        } else if (!in_lattice(v, gens)) {
            CHECK(true);
        }
        // membership without a bounded-coefficient witness stays possible in
        // principle, but the exact decision must cover every brute hit
    }
}

TEST_CASE("params parsing") {
    Params p;
    p.set("epsilon", "0.25");
    CHECK(p.epsilon == Ratio{1, 4});
    p.set("gamma", "3/10");
    CHECK(p.gamma == Ratio{3, 10});
    p.set("t", "5");
    CHECK(p.t == 5);
    CHECK_THROWS_AS(p.set("bogus", "1"), Error);
    CHECK_THROWS_AS(p.set("retries", "0"), Error);
}

TEST_CASE("exact ratio comparisons") {
    Ratio half{1, 2};
    CHECK(half.le_scaled(3, 6));       // 3 >= 3
    CHECK_FALSE(half.le_scaled(2, 6)); // 2 < 3
    CHECK(half.ceil_scaled(5) == 3);
    CHECK(half.floor_scaled(5) == 2);
    RootRatio r{{1, 4}, 2};  // 1/2 expressed as sqrt(1/4)
    CHECK(r.ge_scaled(3, 6));
    CHECK_FALSE(r.ge_scaled(2, 6));
    CHECK(r.ceil_scaled(5) == 3);
    Ratio s = rational_sqrt_at_least({1, 4});
    CHECK(s == Ratio{1, 2});
}
