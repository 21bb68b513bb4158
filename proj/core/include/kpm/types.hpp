#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kpm/error.hpp"
#include "kpm/ratio.hpp"

namespace kpm {

// A vertex of a k-partite hypergraph: position `index` inside part `part`.
struct Vertex {
    int part = 0;
    int index = 0;
    auto operator<=>(const Vertex&) const = default;
};

std::string to_string(const Vertex&);

// A crossing k-set with exactly one vertex per part, stored as the per-part
// vertex indices.  Every edge has this shape, which makes the "one vertex
// from each class" invariant structural.
using Edge = std::vector<int>;

// True iff the two edges share no vertex (same part, same index).
inline bool edges_disjoint(const Edge& a, const Edge& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == b[i]) return false;
    return true;
}

// Immutable k-partite k-uniform hypergraph.  Edges are deduplicated and kept
// in lexicographic order, so identical edge sets compare bit-exactly.
class Hypergraph {
public:
    Hypergraph(int k, std::vector<int> part_sizes, std::vector<Edge> edges);

    int k() const { return k_; }
    const std::vector<int>& part_sizes() const { return part_sizes_; }
    int part_size(int i) const { return part_sizes_[i]; }
    bool equal_parts() const;
    std::int64_t vertex_count() const;
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(const Edge& e) const;
    // Edge ids incident to a vertex, ascending.
    const std::vector<int>& incident(int part, int index) const { return incidence_[part][index]; }
    const std::vector<int>& incident(Vertex v) const { return incidence_[v.part][v.index]; }
    std::int64_t degree(Vertex v) const { return static_cast<std::int64_t>(incident(v).size()); }
    // Number of crossing k-sets, i.e. the product of the part sizes.
    std::int64_t crossing_count() const;
    void check_vertex(Vertex v) const;

private:
    int k_;
    std::vector<int> part_sizes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::vector<int>>> incidence_;  // [part][index] -> edge ids
    std::vector<std::int64_t> stride_;  // mixed-radix key weights
    std::vector<char> member_;          // dense membership table (small universes)
};

// A crossing set of size 0..k: at most one vertex per part.
class CrossingSet {
public:
    explicit CrossingSet(int k) : slot_(k, -1) {}
    static CrossingSet of(const Hypergraph& h, std::span<const Vertex> vs);

    int k() const { return static_cast<int>(slot_.size()); }
    int size() const { return size_; }
    bool has(int part) const { return slot_[part] >= 0; }
    int at(int part) const { return slot_[part]; }
    void set(int part, int index);
    std::vector<Vertex> vertices() const;

private:
    std::vector<int> slot_;
    int size_ = 0;
};

// An ordered collection of edges; validity against a hypergraph is checked
// separately so partial results can be assembled freely.
struct Matching {
    std::vector<Edge> edges;

    int size() const { return static_cast<int>(edges.size()); }
    bool empty() const { return edges.empty(); }
    void add(const Edge& e) { edges.push_back(e); }
};

bool validate_matching(const Hypergraph& h, const Matching& m);

// Per-vertex occupancy bookkeeping for greedy procedures.
class CoverMask {
public:
    explicit CoverMask(const Hypergraph& h);
    bool test(int part, int index) const { return covered_[part][index] != 0; }
    bool any(const Edge& e) const;
    void add(const Edge& e);
    void remove(const Edge& e);
    void add_vertex(Vertex v) { covered_[v.part][v.index] = 1; }
    int free_in_part(int part) const;
    std::vector<int> free_vertices(int part) const;

private:
    std::vector<std::vector<char>> covered_;
};

enum class Parity { even, odd };
inline Parity opposite(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }
const char* parity_name(Parity p);

// A two-coloring A|B of the vertex set, held per part.  A_i = A cap V_i.
class Bipartition {
public:
    Bipartition() = default;
    explicit Bipartition(std::vector<int> part_sizes);  // all vertices on the B side
    static Bipartition from_sets(std::vector<int> part_sizes,
                                 const std::vector<std::vector<int>>& a_lists);
    static Bipartition prefixes(std::vector<int> part_sizes, const std::vector<int>& a_sizes);

    int k() const { return static_cast<int>(part_sizes_.size()); }
    const std::vector<int>& part_sizes() const { return part_sizes_; }
    bool in_a(int part, int index) const { return in_a_[part][index] != 0; }
    bool in_a(Vertex v) const { return in_a(v.part, v.index); }
    int a_size(int part) const { return a_sizes_[part]; }
    int b_size(int part) const { return part_sizes_[part] - a_sizes_[part]; }
    int total_a() const;
    std::vector<int> a_list(int part) const;
    std::vector<int> b_list(int part) const;
    std::vector<int> side_list(int part, bool a_side) const { return a_side ? a_list(part) : b_list(part); }
    void flip_part(int part);
    // Move a single vertex to the other side.
    void move_to_b(Vertex v);
    void move_to_a(Vertex v);

    Parity edge_parity(const Edge& e) const;
    // 0/1 per part: 1 iff the edge takes its vertex from the A side.
    std::vector<char> location_vector(const Edge& e) const;

private:
    std::vector<int> part_sizes_;
    std::vector<std::vector<char>> in_a_;
    std::vector<int> a_sizes_;
};

Parity set_parity(std::span<const Vertex> s, const Bipartition& bip);

// An ordered partition W_0, W_1, ..., W_d of the vertex set refining the
// k-partition.  Cells 1..d each lie inside a single part; the residue W_0
// collects leftovers and may span parts.
class RefinedPartition {
public:
    static RefinedPartition build(const Hypergraph& h, std::vector<std::vector<Vertex>> cells);
    static RefinedPartition trivial(const Hypergraph& h);

    int k() const { return static_cast<int>(part_sizes_.size()); }
    int dimension() const { return static_cast<int>(cells_.size()) - 1; }
    const std::vector<Vertex>& cell(int j) const { return cells_[j]; }
    const std::vector<Vertex>& residue() const { return cells_[0]; }
    // Cell id 0..d containing v.
    int cell_of(Vertex v) const;
    // Owning part of cell j (j >= 1).
    int part_of_cell(int j) const { return cell_part_[j]; }

private:
    std::vector<int> part_sizes_;
    std::vector<std::vector<Vertex>> cells_;
    std::vector<int> cell_part_;           // index 0 unused (-1)
    std::vector<std::vector<int>> cell_of_;  // [part][index] -> cell id
};

// The named constants of the procedures, exposed as explicit configuration.
// Defaults follow the documented desk-scale choices; individual runs override
// via `--params key=value`.
struct Params {
    Ratio epsilon{1, 5};
    Ratio gamma{1, 100};
    Ratio alpha{1, 4};
    Ratio beta{1, 100};
    Ratio mu{1, 10};
    Ratio eta{0, 1};
    Ratio epsilon0{1, 4};
    int t = 2;
    int i0 = 1;
    int c = 2;
    std::uint64_t seed = 1;
    int retries = 8;

    void set(const std::string& key, const std::string& value);
    std::string str() const;
};

}  // namespace kpm
