#include "kpm/absorbing.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "kpm/degree.hpp"
#include "kpm/enumerate.hpp"
#include "kpm/rng.hpp"
#include "kpm/solver.hpp"

namespace kpm {

namespace {

// S as two sorted vertex indices per part; throws unless balanced 2k.
std::vector<std::array<int, 2>> balanced_pairs(const Hypergraph& h,
                                               const std::vector<Vertex>& s) {
    if (static_cast<int>(s.size()) != 2 * h.k())
        throw Error(Errc::malformed_input, "balanced 2k-set expected");
    std::vector<std::vector<int>> per(h.k());
    for (const Vertex& v : s) {
        h.check_vertex(v);
        per[v.part].push_back(v.index);
    }
    std::vector<std::array<int, 2>> out(h.k());
    for (int i = 0; i < h.k(); ++i) {
        if (per[i].size() != 2 || per[i][0] == per[i][1])
            throw Error(Errc::malformed_input, "set must hold two distinct vertices per part");
        std::sort(per[i].begin(), per[i].end());
        out[i] = {per[i][0], per[i][1]};
    }
    return out;
}

}  // namespace

std::optional<AbsorbingCertificate> is_absorbing_edge(const Hypergraph& h,
                                                      const std::vector<Vertex>& s,
                                                      const Edge& e) {
    const int k = h.k();
    auto pairs = balanced_pairs(h, s);
    if (!h.has_edge(e)) throw Error(Errc::malformed_input, "e must be an edge");
    for (int i = 0; i < k; ++i)
        if (pairs[i][0] == e[i] || pairs[i][1] == e[i])
            throw Error(Errc::malformed_input, "S and e must be disjoint");

    // e1 = e's vertex in part p plus one S-vertex in every other part;
    // e2 = S-vertices in parts {p, o} plus e's vertices elsewhere.
    for (int p = 0; p < k; ++p) {
        std::vector<int> radix(k, 2);
        radix[p] = 1;
        std::optional<AbsorbingCertificate> found;
        for_each_tuple(radix, [&](const std::vector<int>& chooser) {
            Edge e1(k);
            for (int i = 0; i < k; ++i) e1[i] = (i == p) ? e[p] : pairs[i][chooser[i]];
            if (!h.has_edge(e1)) return true;
            for (int o = 0; o < k; ++o) {
                if (o == p) continue;
                for (int sp = 0; sp < 2; ++sp) {
                    Edge e2(k);
                    for (int i = 0; i < k; ++i) e2[i] = e[i];
                    e2[p] = pairs[p][sp];
                    e2[o] = pairs[o][1 - chooser[o]];  // the S-vertex e1 did not take
                    if (!h.has_edge(e2)) continue;
                    found = AbsorbingCertificate{e1, e2};
                    return false;
                }
            }
            return true;
        });
        if (found) return found;
    }
    return std::nullopt;
}

Matching absorb_step(const Hypergraph& h, const Matching& m, const std::vector<Vertex>& s,
                     const Edge& e, const AbsorbingCertificate& cert) {
    auto pairs = balanced_pairs(h, s);
    if (!h.has_edge(cert.e1) || !h.has_edge(cert.e2) || !edges_disjoint(cert.e1, cert.e2))
        throw Error(Errc::invalid_certificate, "certificate edges invalid");
    int s1 = 0, in_e1 = 0, s2 = 0, in_e2 = 0;
    for (int i = 0; i < h.k(); ++i) {
        bool c1s = cert.e1[i] == pairs[i][0] || cert.e1[i] == pairs[i][1];
        bool c2s = cert.e2[i] == pairs[i][0] || cert.e2[i] == pairs[i][1];
        s1 += c1s;
        s2 += c2s;
        in_e1 += cert.e1[i] == e[i];
        in_e2 += cert.e2[i] == e[i];
    }
    if (s1 != h.k() - 1 || in_e1 != 1 || s2 != 2 || in_e2 != h.k() - 2)
        throw Error(Errc::invalid_certificate, "certificate intersection profile wrong");
    auto it = std::find(m.edges.begin(), m.edges.end(), e);
    if (it == m.edges.end()) throw Error(Errc::invalid_certificate, "e is not in the matching");
    CoverMask covered(h);
    for (const Edge& f : m.edges) covered.add(f);
    for (const Vertex& v : s)
        if (covered.test(v.part, v.index))
            throw Error(Errc::invalid_certificate, "S meets the matched vertex set");

    Matching out;
    for (const Edge& f : m.edges)
        if (f != e) out.add(f);
    out.add(cert.e1);
    out.add(cert.e2);
    if (!validate_matching(h, out)) throw Error(Errc::invalid_certificate, "result not a matching");
    return out;
}

bool is_perfect_absorbing(const Hypergraph& h, const Edge& s,
                          const std::vector<std::vector<int>>& t_lists) {
    if (static_cast<int>(s.size()) != h.k())
        throw Error(Errc::malformed_input, "S must be a crossing k-set");
    if (static_cast<int>(t_lists.size()) != h.k())
        throw Error(Errc::malformed_input, "T needs one vertex list per part");
    std::size_t t0 = t_lists[0].size();
    for (int i = 0; i < h.k(); ++i) {
        if (t_lists[i].size() != t0)
            throw Error(Errc::malformed_input, "T must be balanced");
        if (s[i] < 0 || s[i] >= h.part_size(i))
            throw Error(Errc::out_of_range, "S vertex out of range");
        if (std::find(t_lists[i].begin(), t_lists[i].end(), s[i]) != t_lists[i].end())
            throw Error(Errc::malformed_input, "S and T must be disjoint");
    }
    if (!perfectly_matchable(h, t_lists)) return false;
    std::vector<std::vector<int>> joint = t_lists;
    for (int i = 0; i < h.k(); ++i) {
        joint[i].push_back(s[i]);
        std::sort(joint[i].begin(), joint[i].end());
    }
    return perfectly_matchable(h, joint);
}

ReachRecord reach_count(const Hypergraph& h, Vertex u, Vertex v, int i, const Ratio& beta) {
    h.check_vertex(u);
    h.check_vertex(v);
    if (u.part != v.part || u.index == v.index)
        throw Error(Errc::same_part_violation, "u and v must be distinct vertices of one part");
    if (i < 1 || i > *std::min_element(h.part_sizes().begin(), h.part_sizes().end()))
        throw Error(Errc::out_of_range, "infeasible reach order i");
    const int k = h.k();
    const int p = u.part;

    ReachRecord rec;
    rec.u = u;
    rec.v = v;
    rec.i = i;
    std::int64_t scale = ipow(h.part_size(0), i * k - 1);
    rec.threshold = beta.ceil_scaled(scale);

    if (i == 1) {
        // W is a crossing (k-1)-set avoiding p; both unions must be edges.
        std::vector<int> radix;
        std::vector<int> parts;
        for (int j = 0; j < k; ++j)
            if (j != p) { radix.push_back(h.part_size(j)); parts.push_back(j); }
        for_each_tuple(radix, [&](const std::vector<int>& t) {
            Edge a(k), b(k);
            a[p] = u.index;
            b[p] = v.index;
            for (std::size_t j = 0; j < parts.size(); ++j) a[parts[j]] = b[parts[j]] = t[j];
            if (h.has_edge(a) && h.has_edge(b)) ++rec.count;
            return true;
        });
    } else {
        // W holds i-1 vertices of part p (avoiding u, v) and i of every other
        // part; test both unions for perfect matchability.
        std::vector<std::vector<std::vector<int>>> choices(k);
        for (int j = 0; j < k; ++j) {
            std::vector<int> pool;
            for (int x = 0; x < h.part_size(j); ++x)
                if (j != p || (x != u.index && x != v.index)) pool.push_back(x);
            int want = (j == p) ? i - 1 : i;
            for_each_combination(static_cast<int>(pool.size()), want,
                                 [&](const std::vector<int>& c) {
                                     std::vector<int> pick;
                                     for (int ci : c) pick.push_back(pool[ci]);
                                     choices[j].push_back(std::move(pick));
                                     return true;
                                 });
        }
        std::vector<int> radix;
        for (int j = 0; j < k; ++j) radix.push_back(static_cast<int>(choices[j].size()));
        for_each_tuple(radix, [&](const std::vector<int>& t) {
            std::vector<std::vector<int>> with_u(k), with_v(k);
            for (int j = 0; j < k; ++j) with_u[j] = with_v[j] = choices[j][t[j]];
            with_u[p].push_back(u.index);
            with_v[p].push_back(v.index);
            std::sort(with_u[p].begin(), with_u[p].end());
            std::sort(with_v[p].begin(), with_v[p].end());
            if (perfectly_matchable(h, with_u) && perfectly_matchable(h, with_v)) ++rec.count;
            return true;
        });
    }
    rec.reachable = rec.count >= rec.threshold && rec.count > 0;
    return rec;
}

std::vector<Vertex> reachable_neighborhood(const Hypergraph& h, Vertex v, const Ratio& beta,
                                           int i) {
    std::vector<Vertex> out;
    for (int x = 0; x < h.part_size(v.part); ++x) {
        if (x == v.index) continue;
        if (reach_count(h, v, {v.part, x}, i, beta).reachable) out.push_back({v.part, x});
    }
    return out;
}

bool is_closed(const Hypergraph& h, const std::vector<Vertex>& x, const Ratio& beta, int i) {
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = a + 1; b < x.size(); ++b)
            if (!reach_count(h, x[a], x[b], i, beta).reachable) return false;
    return true;
}

PartPartition closed_partition(const Hypergraph& h, int part, const Ratio& beta, int i, int c,
                               std::int64_t min_nbhd) {
    if (c < 1) throw Error(Errc::malformed_input, "class budget must be positive");
    const int n = h.part_size(part);
    PartPartition out;
    out.part = part;
    out.threshold = beta.ceil_scaled(ipow(h.part_size(0), i * h.k() - 1));

    std::vector<std::vector<std::int64_t>> count(n, std::vector<std::int64_t>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            auto rec = reach_count(h, {part, a}, {part, b}, i, beta);
            count[a][b] = count[b][a] = rec.count;
        }
    auto related = [&](int a, int b) {
        return count[a][b] >= out.threshold && count[a][b] > 0;
    };

    std::vector<char> residue_mask(n, 0);
    for (int a = 0; a < n; ++a) {
        std::int64_t nbhd = 0;
        for (int b = 0; b < n; ++b)
            if (b != a && related(a, b)) ++nbhd;
        if (nbhd < min_nbhd) residue_mask[a] = 1;
    }

    // connected components of the reach relation over non-residue vertices
    std::vector<int> comp(n, -1);
    int comps = 0;
    for (int a = 0; a < n; ++a) {
        if (residue_mask[a] || comp[a] != -1) continue;
        std::vector<int> stack{a};
        comp[a] = comps;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int b = 0; b < n; ++b)
                if (!residue_mask[b] && comp[b] == -1 && related(x, b)) {
                    comp[b] = comps;
                    stack.push_back(b);
                }
        }
        ++comps;
    }
    if (comps > c)
        throw Error(Errc::too_many_classes, "part " + std::to_string(part) + " splits into " +
                                                std::to_string(comps) + " classes, budget " +
                                                std::to_string(c));

    std::vector<std::vector<int>> classes(comps);
    for (int a = 0; a < n; ++a)
        if (comp[a] != -1) classes[comp[a]].push_back(a);

    for (auto& cls : classes) {
        std::int64_t min_count = -1;
        for (std::size_t a = 0; a < cls.size(); ++a)
            for (std::size_t b = a + 1; b < cls.size(); ++b) {
                std::int64_t cc = count[cls[a]][cls[b]];
                if (min_count < 0 || cc < min_count) min_count = cc;
            }
        if (min_count == 0) {
            // connected only through paths; closedness cannot be certified
            // at any positive threshold, so the class joins the residue
            for (int x : cls) residue_mask[x] = 1;
            continue;
        }
        out.classes.push_back(cls);
        out.class_min_count.push_back(min_count);
    }
    for (int a = 0; a < n; ++a)
        if (residue_mask[a]) out.residue.push_back(a);
    return out;
}

// ---------------------------------------------------------------------------
// Family selection

FamilyReport select_family(const Hypergraph& h,
                           const std::vector<std::vector<std::vector<Vertex>>>& targets,
                           const Ratio& lambda, int i0, std::uint64_t seed, int retries) {
    if (!h.equal_parts())
        throw Error(Errc::unequal_parts, "family selection is stated for equal parts");
    if (targets.empty()) throw Error(Errc::precondition_violated, "no target families");
    for (const auto& fam : targets)
        if (fam.empty())
            throw Error(Errc::precondition_violated, "a target family is empty");
    const int k = h.k();
    const int n = h.part_size(0);
    if (i0 < 1 || i0 > n) throw Error(Errc::malformed_input, "infeasible i0");

    // sorted copies for membership tests
    std::vector<std::vector<std::vector<Vertex>>> sorted_targets = targets;
    for (auto& fam : sorted_targets) {
        for (auto& s : fam) std::sort(s.begin(), s.end());
        std::sort(fam.begin(), fam.end());
    }

    const std::int64_t denom_scale = ipow(n, i0 * k - 1) * 8 * i0 * k;
    // per-candidate acceptance threshold: floor(lambda / (8 i0 k n^(i0k-1)) * 2^64)
    unsigned __int128 p_threshold =
        (static_cast<unsigned __int128>(lambda.num) << 64) /
        (static_cast<unsigned __int128>(lambda.den) * denom_scale);
    const std::int64_t size_cap =
        Ratio(lambda.num, lambda.den * 4 * i0 * k).floor_scaled(n);
    const std::int64_t per_target_floor =
        Ratio(lambda.num * lambda.num, lambda.den * lambda.den * 32 * i0 * k).ceil_scaled(n);

    // materialize the per-part i0-subsets once
    std::vector<std::vector<std::vector<int>>> subsets(k);
    for (int j = 0; j < k; ++j)
        for_each_combination(n, i0, [&](const std::vector<int>& cmb) {
            subsets[j].push_back(cmb);
            return true;
        });
    std::vector<int> radix(k, static_cast<int>(subsets[0].size()));

    FamilyReport best;
    for (int attempt = 0; attempt < retries; ++attempt) {
        FamilyReport rep;
        rep.seed = seed + static_cast<std::uint64_t>(attempt);
        rep.attempts = attempt + 1;
        rep.size_cap = size_cap;
        rep.per_target_floor = per_target_floor;

        SplitMix64 rng(rep.seed);
        std::vector<std::vector<Vertex>> sampled;
        for_each_tuple(radix, [&](const std::vector<int>& t) {
            bool take = static_cast<unsigned __int128>(rng.next()) < p_threshold;
            if (!take) return true;
            std::vector<Vertex> vs;
            for (int j = 0; j < k; ++j)
                for (int x : subsets[j][t[j]]) vs.push_back({j, x});
            sampled.push_back(std::move(vs));
            return true;
        });

        // keep-first disjoint repair, then drop members in no target family
        std::vector<std::vector<char>> used(k, std::vector<char>(n, 0));
        for (auto& cand : sampled) {
            bool clash = false;
            for (const Vertex& v : cand)
                if (used[v.part][v.index]) { clash = true; break; }
            if (clash) continue;
            bool member = false;
            for (const auto& fam : sorted_targets)
                if (std::binary_search(fam.begin(), fam.end(), cand)) { member = true; break; }
            if (!member) continue;
            for (const Vertex& v : cand) used[v.part][v.index] = 1;
            rep.members.push_back(cand);
        }

        rep.target_hits.assign(sorted_targets.size(), 0);
        for (std::size_t f = 0; f < sorted_targets.size(); ++f)
            for (const auto& mem : rep.members)
                if (std::binary_search(sorted_targets[f].begin(), sorted_targets[f].end(), mem))
                    ++rep.target_hits[f];

        std::int64_t min_hits =
            rep.target_hits.empty() ? 0
                                    : *std::min_element(rep.target_hits.begin(), rep.target_hits.end());
        rep.success = static_cast<std::int64_t>(rep.members.size()) <= size_cap &&
                      min_hits >= per_target_floor;
        if (rep.success) return rep;
        std::int64_t best_min =
            best.target_hits.empty() ? -1
                                     : *std::min_element(best.target_hits.begin(), best.target_hits.end());
        if (min_hits > best_min) best = rep;
    }
    best.attempts = retries;
    throw SelectionFailed("family selection missed the bounds after " + std::to_string(retries) +
                              " attempts (cap " + std::to_string(size_cap) + ", per-target floor " +
                              std::to_string(per_target_floor) + ")",
                          std::move(best));
}

// ---------------------------------------------------------------------------
// Absorbing matching (three large codegrees)

std::int64_t count_absorbing(const Hypergraph& h, const std::vector<Vertex>& s,
                             const Matching& m) {
    std::int64_t c = 0;
    auto pairs = balanced_pairs(h, s);
    for (const Edge& e : m.edges) {
        bool disjoint = true;
        for (int i = 0; i < h.k(); ++i)
            if (e[i] == pairs[i][0] || e[i] == pairs[i][1]) { disjoint = false; break; }
        if (disjoint && is_absorbing_edge(h, s, e)) ++c;
    }
    return c;
}

Matching absorbing_matching_I(const Hypergraph& h, const Params& params) {
    if (!h.equal_parts()) throw Error(Errc::unequal_parts, "equal parts required");
    const int k = h.k();
    const int n = h.part_size(0);
    if (k < 3) throw Error(Errc::malformed_input, "needs k >= 3");
    for (int i = 0; i < 3; ++i) {
        int ai = partite_min_codegree(h, i);
        if (!params.epsilon.le_scaled(ai, n))
            throw Error(Errc::degree_too_low, "codegree of part " + std::to_string(i) +
                                                  " is " + std::to_string(ai) +
                                                  ", below epsilon * n");
    }

    // lambda with lambda^2 >= 32 k alpha, kept below the sqrt(alpha) cap
    Ratio lambda = rational_sqrt_at_least(params.alpha * (32 * k));

    // target families: per balanced 2k-set S, the S-absorbing edges
    std::vector<std::vector<std::vector<Vertex>>> targets;
    std::vector<std::vector<int>> combos;
    for_each_combination(n, 2, [&](const std::vector<int>& c) {
        combos.push_back(c);
        return true;
    });
    std::vector<int> radix(k, static_cast<int>(combos.size()));
    for_each_tuple(radix, [&](const std::vector<int>& t) {
        std::vector<Vertex> s;
        for (int j = 0; j < k; ++j)
            for (int x : combos[t[j]]) s.push_back({j, x});
        std::vector<std::vector<Vertex>> fam;
        for (const Edge& e : h.edges()) {
            bool disjoint = true;
            for (int j = 0; j < k; ++j)
                if (e[j] == combos[t[j]][0] || e[j] == combos[t[j]][1]) { disjoint = false; break; }
            if (!disjoint) continue;
            if (!is_absorbing_edge(h, s, e)) continue;
            std::vector<Vertex> vs;
            for (int j = 0; j < k; ++j) vs.push_back({j, e[j]});
            fam.push_back(std::move(vs));
        }
        targets.push_back(std::move(fam));
        return true;
    });

    FamilyReport rep = select_family(h, targets, lambda, 1, params.seed, params.retries);
    Matching m;
    for (const auto& mem : rep.members) {
        Edge e(k);
        for (const Vertex& v : mem) e[v.part] = v.index;
        m.add(e);
    }
    // enforced bound: |M'| <= sqrt(alpha) n
    if (RootRatio(params.alpha, 2).lt_scaled(m.size(), n))
        throw SelectionFailed("selected matching exceeds the sqrt(alpha) n cap", std::move(rep));
    if (!validate_matching(h, m))
        throw Error(Errc::internal, "selected members are not a matching");
    return m;
}

// ---------------------------------------------------------------------------
// Perfect-absorbing family

FamilyReport perfect_absorbing_family(const Hypergraph& h, int closed_part,
                                      const Params& params) {
    if (!h.equal_parts()) throw Error(Errc::unequal_parts, "equal parts required");
    const int k = h.k();
    const int n = h.part_size(0);
    const int i0 = params.i0;
    int a_cp = partite_min_codegree(h, closed_part);
    if (!params.epsilon.le_scaled(a_cp, n))
        throw Error(Errc::degree_too_low,
                    "codegree avoiding part " + std::to_string(closed_part) + " is below epsilon n");
    std::vector<Vertex> whole;
    for (int x = 0; x < n; ++x) whole.push_back({closed_part, x});
    if (!is_closed(h, whole, params.beta, i0))
        throw Error(Errc::not_closed,
                    "part " + std::to_string(closed_part) + " is not (beta, i0)-closed");

    Ratio lambda = rational_sqrt_at_least(params.alpha * (32 * i0 * k));

    // one target family per crossing k-set S: the S-perfect-absorbing
    // balanced i0k-sets
    std::vector<std::vector<std::vector<int>>> subsets(k);
    for (int j = 0; j < k; ++j)
        for_each_combination(n, i0, [&](const std::vector<int>& cmb) {
            subsets[j].push_back(cmb);
            return true;
        });
    std::vector<int> sub_radix(k, static_cast<int>(subsets[0].size()));

    std::vector<std::vector<std::vector<Vertex>>> targets;
    for_each_tuple(std::vector<int>(k, n), [&](const std::vector<int>& s_tuple) {
        Edge s(s_tuple);
        std::vector<std::vector<Vertex>> fam;
        for_each_tuple(sub_radix, [&](const std::vector<int>& t) {
            std::vector<std::vector<int>> t_lists(k);
            bool disjoint = true;
            for (int j = 0; j < k; ++j) {
                t_lists[j] = subsets[j][t[j]];
                for (int x : t_lists[j])
                    if (x == s[j]) { disjoint = false; break; }
                if (!disjoint) break;
            }
            if (!disjoint) return true;
            if (!is_perfect_absorbing(h, s, t_lists)) return true;
            std::vector<Vertex> vs;
            for (int j = 0; j < k; ++j)
                for (int x : t_lists[j]) vs.push_back({j, x});
            fam.push_back(std::move(vs));
            return true;
        });
        targets.push_back(std::move(fam));
        return true;
    });

    FamilyReport rep = select_family(h, targets, lambda, i0, params.seed, params.retries);
    // every member spans a matching of size i0 by construction; verify
    for (const auto& mem : rep.members) {
        std::vector<std::vector<int>> lists(k);
        for (const Vertex& v : mem) lists[v.part].push_back(v.index);
        for (auto& l : lists) std::sort(l.begin(), l.end());
        if (!perfectly_matchable(h, lists))
            throw Error(Errc::internal, "selected member does not span a matching");
    }
    return rep;
}

std::int64_t count_perfect_absorbing(const Hypergraph& h, const Edge& s,
                                     const FamilyReport& fam) {
    std::int64_t c = 0;
    for (const auto& mem : fam.members) {
        std::vector<std::vector<int>> lists(h.k());
        bool disjoint = true;
        for (const Vertex& v : mem) {
            if (v.index == s[v.part]) { disjoint = false; break; }
            lists[v.part].push_back(v.index);
        }
        if (!disjoint) continue;
        for (auto& l : lists) std::sort(l.begin(), l.end());
        if (is_perfect_absorbing(h, s, lists)) ++c;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Lattice merge

MergeOutcome lattice_merge(const Hypergraph& h, const RefinedPartition& p,
                           std::vector<CellPair> pairs, const Ratio& mu) {
    // working copy of the cells
    std::vector<std::vector<Vertex>> cells;
    for (int j = 0; j <= p.dimension(); ++j) cells.push_back(p.cell(j));

    MergeOutcome out{RefinedPartition::build(h, cells), pairs, {}};
    bool merged_something = true;
    while (merged_something) {
        merged_something = false;
        std::sort(out.remaining_pairs.begin(), out.remaining_pairs.end(),
                  [](const CellPair& a, const CellPair& b) { return a.part < b.part; });
        for (std::size_t pi = 0; pi < out.remaining_pairs.size(); ++pi) {
            CellPair pair = out.remaining_pairs[pi];
            RobustIndexSet robust = robust_index_set(h, out.partition, mu);
            std::vector<std::vector<long long>> gens;
            for (const auto& v : robust.vectors) gens.push_back(to_ll(v));
            std::vector<long long> diff =
                unit_difference(out.partition, pair.cell_a, pair.cell_b);
            if (!in_lattice(diff, gens)) continue;

            out.steps.push_back({pair.part, diff, robust.vectors});
            // merge: union into cell_a, drop cell_b, renumber
            cells[pair.cell_a].insert(cells[pair.cell_a].end(), cells[pair.cell_b].begin(),
                                      cells[pair.cell_b].end());
            std::sort(cells[pair.cell_a].begin(), cells[pair.cell_a].end());
            cells.erase(cells.begin() + pair.cell_b);
            out.remaining_pairs.erase(out.remaining_pairs.begin() + pi);
            for (CellPair& q : out.remaining_pairs) {
                if (q.cell_a > pair.cell_b) --q.cell_a;
                if (q.cell_b > pair.cell_b) --q.cell_b;
            }
            out.partition = RefinedPartition::build(h, cells);
            merged_something = true;
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dichotomy pipeline

namespace {

[[noreturn]] void pipeline_fail(const std::string& stage, const std::string& detail) {
    throw Error(Errc::pipeline_failed, stage + ": " + detail);
}

}  // namespace

DichotomyOutcome absorbing_or_extremal(const Hypergraph& h, const Params& params) {
    if (!h.equal_parts()) throw Error(Errc::unequal_parts, "equal parts required");
    const int k = h.k();
    const int n = h.part_size(0);
    const Ratio& eps = params.epsilon;
    std::vector<int> a = partite_codegrees(h);
    std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    if (!Ratio(eps.den - eps.num, eps.den).le_scaled(sum_a, n))
        throw Error(Errc::precondition_violated, "codegree sum below (1-eps) n");
    if (a[0] < a[1] || !eps.le_scaled(a[1], n))
        throw Error(Errc::precondition_violated, "need a_1 >= a_2 >= eps n in part order");
    for (int j = 2; j < k; ++j)
        if (eps.le_scaled(a[j], n))
            throw Error(Errc::precondition_violated,
                        "part " + std::to_string(j) + " codegree not below eps n");

    DichotomyOutcome out{FamilyReport{}, {}};
    auto family_branch = [&](int part) {
        std::vector<Vertex> whole;
        for (int x = 0; x < n; ++x) whole.push_back({part, x});
        if (!is_closed(h, whole, params.beta, params.i0))
            pipeline_fail("closed-check",
                          "part " + std::to_string(part) + " failed the explicit (beta, i0) check");
        out.transcript.closed_part = part;
        out.outcome = perfect_absorbing_family(h, part, params);
    };

    // top-codegree shortcut: a_1 >= (1/2 + eps) n forces part 1 closed
    Ratio half_plus = Ratio(1, 2) + eps;
    if (half_plus.le_scaled(a[0], n)) {
        out.transcript.shortcut = true;
        family_branch(1);
        return out;
    }

    // per-part reachability partitions at gamma = (k-1) eps / k
    Ratio gamma_reach = eps * (k - 1) / k;
    Ratio big_floor = Ratio(1, 2) - eps * (2 * k);
    Ratio small_floor = eps * k;
    std::vector<PartPartition> parts;
    for (int j = 0; j < k; ++j) {
        std::int64_t floor_j = std::max<std::int64_t>(
            1, (j < 2 ? big_floor : small_floor).ceil_scaled(n));
        try {
            parts.push_back(closed_partition(h, j, gamma_reach, 1, params.c, floor_j));
        } catch (const Error& e) {
            pipeline_fail("closed-partition", "part " + std::to_string(j) + ": " + e.what());
        }
    }
    out.transcript.partitions = parts;

    // single-class part among {0, 1} means that part is closed
    for (int j = 0; j < 2; ++j)
        if (parts[j].classes.size() == 1 && parts[j].residue.empty()) {
            family_branch(j);
            return out;
        }

    // assemble the refined partition: residue first, then cells per part,
    // the smaller class of a split part named A
    std::vector<std::vector<Vertex>> cells(1);
    std::vector<CellPair> pairs;
    std::vector<int> a_cell_of_part(k, -1);
    for (int j = 0; j < k; ++j) {
        for (int x : parts[j].residue) cells[0].push_back({j, x});
        if (parts[j].classes.size() == 2) {
            auto cls = parts[j].classes;
            if (cls[1].size() < cls[0].size()) std::swap(cls[0], cls[1]);
            int ca = static_cast<int>(cells.size());
            std::vector<Vertex> va, vb;
            for (int x : cls[0]) va.push_back({j, x});
            for (int x : cls[1]) vb.push_back({j, x});
            cells.push_back(va);
            cells.push_back(vb);
            pairs.push_back({j, ca, ca + 1});
            a_cell_of_part[j] = ca;
        } else if (parts[j].classes.size() == 1) {
            std::vector<Vertex> vc;
            for (int x : parts[j].classes[0]) vc.push_back({j, x});
            cells.push_back(vc);
        } else {
            pipeline_fail("closed-partition",
                          "part " + std::to_string(j) + " produced no certified class");
        }
    }
    RefinedPartition p0 = RefinedPartition::build(h, cells);
    MergeOutcome merged = lattice_merge(h, p0, pairs, params.mu);
    out.transcript.merges = merged.steps;

    std::vector<char> pair_left(k, 0);
    for (const CellPair& q : merged.remaining_pairs) pair_left[q.part] = 1;
    // a merged pair in part 0 or 1 means that whole part became closed;
    // merges in the small-codegree parts are the expected outcome
    for (int j = 0; j < 2; ++j)
        if (a_cell_of_part[j] >= 0 && !pair_left[j]) {
            family_branch(j);
            return out;
        }
    for (const CellPair& q : merged.remaining_pairs)
        out.transcript.unmerged_parts.push_back(q.part);

    // witness branch over the final partition
    RobustIndexSet robust = robust_index_set(h, merged.partition, params.mu);
    out.transcript.robust = robust.vectors;
    if (robust.vectors.empty()) pipeline_fail("parity-classification", "no robust vectors");

    // flip check: a robust vector plus a pair difference is never robust
    out.transcript.flip_check_ok = true;
    {
        std::vector<IndexVector> set = robust.vectors;
        for (const IndexVector& w : robust.vectors)
            for (const CellPair& q : merged.remaining_pairs) {
                IndexVector w2 = w;
                std::swap(w2[q.cell_a - 1], w2[q.cell_b - 1]);
                if (w2 != w && std::binary_search(set.begin(), set.end(), w2))
                    out.transcript.flip_check_ok = false;
            }
    }
    // instance-level degree slack used by the completion argument
    {
        __int128 lhs = ipow(eps.ceil_scaled(n), k - 1);
        lhs *= a[0];
        __int128 rhs = 2 * static_cast<__int128>(params.mu.ceil_scaled(ipow(n, k)));
        out.transcript.degree_bound_ok = lhs >= rhs;
    }

    // all robust vectors must share one parity over the surviving pairs
    int side_seen = -1;  // 0 even, 1 odd, 2 mixed
    for (const IndexVector& w : robust.vectors) {
        int ones = 0;
        for (const CellPair& q : merged.remaining_pairs) ones += w[q.cell_a - 1] != 0;
        int par = ones % 2;
        if (side_seen == -1) side_seen = par;
        else if (side_seen != par) side_seen = 2;
    }
    out.transcript.parity = side_seen == 0 ? "even" : side_seen == 1 ? "odd" : "mixed";
    if (side_seen == 2)
        pipeline_fail("parity-classification", "robust vectors of mixed parity");

    // witness bipartition: A = union of the A-classes of surviving pairs
    std::vector<std::vector<int>> a_lists(k);
    for (const CellPair& q : merged.remaining_pairs)
        for (const Vertex& v : merged.partition.cell(q.cell_a)) a_lists[v.part].push_back(v.index);
    for (auto& l : a_lists) std::sort(l.begin(), l.end());
    Bipartition bip = Bipartition::from_sets(h.part_sizes(), a_lists);

    Side side = side_seen == 0 ? Side::even : Side::odd;
    Parity want = side_parity(side);
    std::int64_t defect = 0;
    for_each_tuple(h.part_sizes(), [&](const std::vector<int>& t) {
        if (bip.edge_parity(t) == want && !h.has_edge(t)) ++defect;
        return true;
    });
    out.outcome = ParityWitness{std::move(bip), side, defect};
    return out;
}

}  // namespace kpm
