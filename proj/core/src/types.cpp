#include "kpm/types.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kpm {

std::string to_string(const Vertex& v) {
    return std::to_string(v.part) + ":" + std::to_string(v.index);
}

const char* parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

// ---------------------------------------------------------------------------
// Ratio

Ratio Ratio::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Ratio: empty text");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::int64_t n = std::stoll(text.substr(0, slash));
        std::int64_t d = std::stoll(text.substr(slash + 1));
        return Ratio(n, d);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        int frac = static_cast<int>(text.size() - dot - 1);
        if (frac > 15) throw std::invalid_argument("Ratio: too many decimals");
        std::int64_t n = std::stoll(digits.empty() ? "0" : digits);
        return Ratio(n, ipow(10, frac));
    }
    return Ratio(std::stoll(text), 1);
}

std::string Ratio::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

static __int128 ipow128(std::int64_t base, int exp) {
    __int128 r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

bool RootRatio::ge_scaled(std::int64_t value, std::int64_t scale) const {
    // value >= (num/den)^(1/root) * scale, with value, scale >= 0
    if (base.num <= 0) return value >= 0;
    if (value < 0) return false;
    return ipow128(value, root) * base.den >= ipow128(scale, root) * base.num;
}

bool RootRatio::gt_scaled(std::int64_t value, std::int64_t scale) const {
    if (base.num <= 0) return value > 0 || (value == 0 && base.num < 0);
    if (value < 0) return false;
    return ipow128(value, root) * base.den > ipow128(scale, root) * base.num;
}

std::int64_t RootRatio::ceil_scaled(std::int64_t scale) const {
    std::int64_t v = 0;
    while (!ge_scaled(v, scale)) ++v;
    return v;
}

Ratio rational_sqrt_at_least(const Ratio& x) {
    if (x.num < 0) throw std::invalid_argument("rational_sqrt_at_least: negative");
    // smallest m with (m/64)^2 >= x
    std::int64_t m = 0;
    while (static_cast<__int128>(m) * m * x.den < static_cast<__int128>(x.num) * 64 * 64) ++m;
    return Ratio(m, 64);
}

// ---------------------------------------------------------------------------
// Hypergraph

Hypergraph::Hypergraph(int k, std::vector<int> part_sizes, std::vector<Edge> edges)
    : k_(k), part_sizes_(std::move(part_sizes)), edges_(std::move(edges)) {
    if (k_ < 2) throw Error(Errc::malformed_input, "k must be at least 2");
    if (static_cast<int>(part_sizes_.size()) != k_)
        throw Error(Errc::malformed_input, "part size list does not match k");
    for (int s : part_sizes_)
        if (s <= 0) throw Error(Errc::malformed_input, "part sizes must be positive");
    for (const Edge& e : edges_) {
        if (static_cast<int>(e.size()) != k_)
            throw Error(Errc::malformed_input, "edge arity does not match k");
        for (int i = 0; i < k_; ++i)
            if (e[i] < 0 || e[i] >= part_sizes_[i])
                throw Error(Errc::out_of_range, "edge vertex out of range");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    incidence_.resize(k_);
    for (int i = 0; i < k_; ++i) incidence_[i].resize(part_sizes_[i]);
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
        for (int i = 0; i < k_; ++i) incidence_[i][edges_[id][i]].push_back(id);

    stride_.assign(k_, 1);
    for (int i = k_ - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * part_sizes_[i + 1];
    if (std::int64_t u = crossing_count(); u <= (1 << 22)) {
        member_.assign(static_cast<std::size_t>(u), 0);
        for (const Edge& e : edges_) {
            std::int64_t key = 0;
            for (int i = 0; i < k_; ++i) key += stride_[i] * e[i];
            member_[static_cast<std::size_t>(key)] = 1;
        }
    }
}

bool Hypergraph::equal_parts() const {
    for (int s : part_sizes_)
        if (s != part_sizes_[0]) return false;
    return true;
}

std::int64_t Hypergraph::vertex_count() const {
    std::int64_t t = 0;
    for (int s : part_sizes_) t += s;
    return t;
}

bool Hypergraph::has_edge(const Edge& e) const {
    if (!member_.empty()) {
        std::int64_t key = 0;
        for (int i = 0; i < k_; ++i) key += stride_[i] * e[i];
        return member_[static_cast<std::size_t>(key)] != 0;
    }
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::int64_t Hypergraph::crossing_count() const {
    std::int64_t p = 1;
    for (int s : part_sizes_) p *= s;
    return p;
}

void Hypergraph::check_vertex(Vertex v) const {
    if (v.part < 0 || v.part >= k_ || v.index < 0 || v.index >= part_sizes_[v.part])
        throw Error(Errc::out_of_range, "vertex " + to_string(v) + " out of range");
}

// ---------------------------------------------------------------------------
// CrossingSet

CrossingSet CrossingSet::of(const Hypergraph& h, std::span<const Vertex> vs) {
    CrossingSet s(h.k());
    for (const Vertex& v : vs) {
        h.check_vertex(v);
        s.set(v.part, v.index);
    }
    return s;
}

void CrossingSet::set(int part, int index) {
    if (slot_[part] >= 0)
        throw Error(Errc::malformed_set, "two vertices share part " + std::to_string(part));
    slot_[part] = index;
    ++size_;
}

std::vector<Vertex> CrossingSet::vertices() const {
    std::vector<Vertex> vs;
    for (int i = 0; i < k(); ++i)
        if (slot_[i] >= 0) vs.push_back({i, slot_[i]});
    return vs;
}

// ---------------------------------------------------------------------------
// Matching / CoverMask

bool validate_matching(const Hypergraph& h, const Matching& m) {
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
        if (!h.has_edge(m.edges[i])) return false;
        for (std::size_t j = i + 1; j < m.edges.size(); ++j)
            if (!edges_disjoint(m.edges[i], m.edges[j])) return false;
    }
    return true;
}

CoverMask::CoverMask(const Hypergraph& h) {
    covered_.resize(h.k());
    for (int i = 0; i < h.k(); ++i) covered_[i].assign(h.part_size(i), 0);
}

bool CoverMask::any(const Edge& e) const {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (covered_[i][e[i]]) return true;
    return false;
}

void CoverMask::add(const Edge& e) {
    for (std::size_t i = 0; i < e.size(); ++i) covered_[i][e[i]] = 1;
}

void CoverMask::remove(const Edge& e) {
    for (std::size_t i = 0; i < e.size(); ++i) covered_[i][e[i]] = 0;
}

int CoverMask::free_in_part(int part) const {
    int n = 0;
    for (char c : covered_[part]) n += (c == 0);
    return n;
}

std::vector<int> CoverMask::free_vertices(int part) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(covered_[part].size()); ++i)
        if (!covered_[part][i]) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------
// Bipartition

Bipartition::Bipartition(std::vector<int> part_sizes)
    : part_sizes_(std::move(part_sizes)), a_sizes_(part_sizes_.size(), 0) {
    in_a_.resize(part_sizes_.size());
    for (std::size_t i = 0; i < part_sizes_.size(); ++i) in_a_[i].assign(part_sizes_[i], 0);
}

Bipartition Bipartition::from_sets(std::vector<int> part_sizes,
                                   const std::vector<std::vector<int>>& a_lists) {
    Bipartition b(std::move(part_sizes));
    if (a_lists.size() != b.in_a_.size())
        throw Error(Errc::malformed_input, "bipartition list count does not match k");
    for (std::size_t i = 0; i < a_lists.size(); ++i)
        for (int idx : a_lists[i]) {
            if (idx < 0 || idx >= b.part_sizes_[i])
                throw Error(Errc::out_of_range, "bipartition index out of range");
            if (b.in_a_[i][idx]) throw Error(Errc::malformed_input, "duplicate bipartition index");
            b.in_a_[i][idx] = 1;
            ++b.a_sizes_[i];
        }
    return b;
}

Bipartition Bipartition::prefixes(std::vector<int> part_sizes, const std::vector<int>& a_sizes) {
    Bipartition b(std::move(part_sizes));
    if (a_sizes.size() != b.in_a_.size())
        throw Error(Errc::malformed_input, "bipartition size count does not match k");
    for (std::size_t i = 0; i < a_sizes.size(); ++i) {
        if (a_sizes[i] < 0 || a_sizes[i] > b.part_sizes_[i])
            throw Error(Errc::out_of_range, "bipartition prefix size out of range");
        for (int j = 0; j < a_sizes[i]; ++j) b.in_a_[i][j] = 1;
        b.a_sizes_[i] = a_sizes[i];
    }
    return b;
}

int Bipartition::total_a() const {
    int t = 0;
    for (int s : a_sizes_) t += s;
    return t;
}

std::vector<int> Bipartition::a_list(int part) const {
    std::vector<int> out;
    for (int i = 0; i < part_sizes_[part]; ++i)
        if (in_a_[part][i]) out.push_back(i);
    return out;
}

std::vector<int> Bipartition::b_list(int part) const {
    std::vector<int> out;
    for (int i = 0; i < part_sizes_[part]; ++i)
        if (!in_a_[part][i]) out.push_back(i);
    return out;
}

void Bipartition::flip_part(int part) {
    for (char& c : in_a_[part]) c = !c;
    a_sizes_[part] = part_sizes_[part] - a_sizes_[part];
}

void Bipartition::move_to_b(Vertex v) {
    if (!in_a_[v.part][v.index]) throw Error(Errc::malformed_input, "vertex not on the A side");
    in_a_[v.part][v.index] = 0;
    --a_sizes_[v.part];
}

void Bipartition::move_to_a(Vertex v) {
    if (in_a_[v.part][v.index]) throw Error(Errc::malformed_input, "vertex already on the A side");
    in_a_[v.part][v.index] = 1;
    ++a_sizes_[v.part];
}

Parity Bipartition::edge_parity(const Edge& e) const {
    int c = 0;
    for (std::size_t i = 0; i < e.size(); ++i) c += in_a_[i][e[i]];
    return (c % 2 == 0) ? Parity::even : Parity::odd;
}

std::vector<char> Bipartition::location_vector(const Edge& e) const {
    std::vector<char> v(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) v[i] = in_a_[i][e[i]] ? 1 : 0;
    return v;
}

Parity set_parity(std::span<const Vertex> s, const Bipartition& bip) {
    int c = 0;
    for (const Vertex& v : s) c += bip.in_a(v);
    return (c % 2 == 0) ? Parity::even : Parity::odd;
}

// ---------------------------------------------------------------------------
// RefinedPartition

RefinedPartition RefinedPartition::build(const Hypergraph& h,
                                         std::vector<std::vector<Vertex>> cells) {
    if (cells.empty()) throw Error(Errc::malformed_input, "partition needs at least the residue");
    RefinedPartition p;
    p.part_sizes_ = h.part_sizes();
    p.cell_of_.resize(h.k());
    for (int i = 0; i < h.k(); ++i) p.cell_of_[i].assign(h.part_size(i), -1);
    p.cell_part_.assign(cells.size(), -1);
    for (std::size_t j = 0; j < cells.size(); ++j) {
        std::sort(cells[j].begin(), cells[j].end());
        for (const Vertex& v : cells[j]) {
            h.check_vertex(v);
            if (p.cell_of_[v.part][v.index] != -1)
                throw Error(Errc::malformed_input, "partition cells overlap at " + to_string(v));
            p.cell_of_[v.part][v.index] = static_cast<int>(j);
            if (j >= 1) {
                if (p.cell_part_[j] == -1) p.cell_part_[j] = v.part;
                else if (p.cell_part_[j] != v.part)
                    throw Error(Errc::malformed_input, "cell spans more than one part");
            }
        }
    }
    for (int i = 0; i < h.k(); ++i)
        for (int x = 0; x < h.part_size(i); ++x)
            if (p.cell_of_[i][x] == -1)
                throw Error(Errc::malformed_input, "partition does not cover the vertex set");
    p.cells_ = std::move(cells);
    return p;
}

RefinedPartition RefinedPartition::trivial(const Hypergraph& h) {
    std::vector<std::vector<Vertex>> cells(1 + h.k());
    for (int i = 0; i < h.k(); ++i)
        for (int x = 0; x < h.part_size(i); ++x) cells[1 + i].push_back({i, x});
    return build(h, std::move(cells));
}

int RefinedPartition::cell_of(Vertex v) const { return cell_of_[v.part][v.index]; }

// ---------------------------------------------------------------------------
// Params

void Params::set(const std::string& key, const std::string& value) {
    if (key == "epsilon" || key == "eps") epsilon = Ratio::parse(value);
    else if (key == "gamma") gamma = Ratio::parse(value);
    else if (key == "alpha") alpha = Ratio::parse(value);
    else if (key == "beta") beta = Ratio::parse(value);
    else if (key == "mu") mu = Ratio::parse(value);
    else if (key == "eta") eta = Ratio::parse(value);
    else if (key == "epsilon0" || key == "eps0") epsilon0 = Ratio::parse(value);
    else if (key == "t") t = std::stoi(value);
    else if (key == "i0") i0 = std::stoi(value);
    else if (key == "c") c = std::stoi(value);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "retries") retries = std::stoi(value);
    else throw Error(Errc::usage, "unknown parameter '" + key + "'");
    if (t <= 0 || i0 <= 0 || c <= 0 || retries <= 0)
        throw Error(Errc::usage, "integer parameters must be positive");
}

std::string Params::str() const {
    std::ostringstream os;
    os << "eps=" << epsilon.str() << " gamma=" << gamma.str() << " alpha=" << alpha.str()
       << " beta=" << beta.str() << " mu=" << mu.str() << " eta=" << eta.str()
       << " eps0=" << epsilon0.str() << " t=" << t << " i0=" << i0 << " c=" << c
       << " retries=" << retries;
    return os.str();
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::malformed_set: return "MalformedSet";
        case Errc::touches_residue: return "TouchesResidue";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::budget_exceeded: return "BudgetExceeded";
        case Errc::unequal_parts: return "UnequalParts";
        case Errc::precondition_violated: return "PreconditionViolated";
        case Errc::malformed_input: return "MalformedInput";
        case Errc::invalid_certificate: return "InvalidCertificate";
        case Errc::same_part_violation: return "SamePartViolation";
        case Errc::too_many_classes: return "TooManyClasses";
        case Errc::selection_failed: return "SelectionFailed";
        case Errc::degree_too_low: return "DegreeTooLow";
        case Errc::not_closed: return "NotClosed";
        case Errc::condition_not_met: return "ConditionNotMet";
        case Errc::no_perfect_matching: return "NoPerfectMatching";
        case Errc::family_construction_failed: return "FamilyConstructionFailed";
        case Errc::empty_part: return "EmptyPart";
        case Errc::parse_error: return "ParseError";
        case Errc::duplicate_edge: return "DuplicateEdge";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::pipeline_failed: return "PipelineFailed";
        case Errc::stage_failed: return "StageFailed";
        case Errc::usage: return "Usage";
        case Errc::internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace kpm
