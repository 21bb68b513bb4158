#include "kpm/extremal.hpp"

#include <algorithm>
#include <numeric>

#include "kpm/almost_perfect.hpp"
#include "kpm/constructions.hpp"
#include "kpm/degree.hpp"
#include "kpm/dense_pm.hpp"
#include "kpm/enumerate.hpp"
#include "kpm/even_matching.hpp"
#include "kpm/greedy.hpp"
#include "kpm/solver.hpp"

namespace kpm {

StageRecord& PipelineTranscript::stage(const std::string& name) {
    for (auto& s : stages)
        if (s.name == name) return s;
    stages.push_back({name, {}, {}});
    return stages.back();
}

// ---------------------------------------------------------------------------
// Space-barrier closeness

namespace {

std::vector<std::int64_t> s_floors(const Hypergraph& h, const Ratio& eps,
                                   const std::vector<int>& a) {
    std::vector<std::int64_t> f(h.k());
    for (int i = 0; i < h.k(); ++i)
        f[i] = std::max<std::int64_t>(
            0, (h.part_size(i) - a[i]) - eps.floor_scaled(h.part_size(i)));
    return f;
}

bool independent(const Hypergraph& h, const std::vector<std::vector<char>>& mask) {
    for (const Edge& e : h.edges()) {
        bool inside = true;
        for (int i = 0; i < h.k(); ++i)
            if (!mask[i][e[i]]) { inside = false; break; }
        if (inside) return false;
    }
    return true;
}

// Greedy lexicographic extension to a maximal independent set.
void extend_independent(const Hypergraph& h, std::vector<std::vector<char>>& mask) {
    for (int i = 0; i < h.k(); ++i)
        for (int x = 0; x < h.part_size(i); ++x) {
            if (mask[i][x]) continue;
            mask[i][x] = 1;
            bool ok = true;
            for (int id : h.incident(i, x)) {
                const Edge& e = h.edges()[id];
                bool inside = true;
                for (int j = 0; j < h.k(); ++j)
                    if (!mask[j][e[j]]) { inside = false; break; }
                if (inside) { ok = false; break; }
            }
            if (!ok) mask[i][x] = 0;
        }
}

}  // namespace

bool verify_s_witness(const Hypergraph& h, const Ratio& eps,
                      const std::vector<std::vector<int>>& c_lists, SExtremalWitness* out) {
    if (static_cast<int>(c_lists.size()) != h.k()) return false;
    std::vector<int> a = partite_codegrees(h);
    std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const int n = *std::max_element(h.part_sizes().begin(), h.part_sizes().end());
    // degree-sum side of the definition: sum a_i <= (1 + eps) n
    if (Ratio(eps.den + eps.num, eps.den).lt_scaled(sum_a, n)) return false;
    std::vector<std::int64_t> floors = s_floors(h, eps, a);
    std::vector<std::vector<char>> mask(h.k());
    for (int i = 0; i < h.k(); ++i) {
        mask[i].assign(h.part_size(i), 0);
        for (int x : c_lists[i]) {
            if (x < 0 || x >= h.part_size(i) || mask[i][x]) return false;
            mask[i][x] = 1;
        }
        if (static_cast<std::int64_t>(c_lists[i].size()) < floors[i]) return false;
    }
    if (!independent(h, mask)) return false;
    if (out) {
        out->c_lists = c_lists;
        out->floors = floors;
        out->codegrees = a;
        out->eps = eps;
    }
    return true;
}

std::optional<SExtremalWitness> check_s_extremal(const Hypergraph& h, const Ratio& eps) {
    std::vector<int> a = partite_codegrees(h);
    std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const int n = *std::max_element(h.part_sizes().begin(), h.part_sizes().end());
    if (Ratio(eps.den + eps.num, eps.den).lt_scaled(sum_a, n)) return std::nullopt;
    std::vector<std::int64_t> floors = s_floors(h, eps, a);

    std::int64_t total_bits = h.vertex_count();
    SExtremalWitness w;
    if (total_bits <= 24) {
        // exhaustive over per-part subsets of exactly the floor size; the
        // first hit is extended greedily to a maximal independent set
        std::vector<std::vector<std::vector<int>>> choices(h.k());
        for (int i = 0; i < h.k(); ++i)
            for_each_combination(h.part_size(i), static_cast<int>(floors[i]),
                                 [&](const std::vector<int>& c) {
                                     choices[i].push_back(c);
                                     return true;
                                 });
        std::vector<int> radix;
        for (int i = 0; i < h.k(); ++i) radix.push_back(static_cast<int>(choices[i].size()));
        bool found = false;
        for_each_tuple(radix, [&](const std::vector<int>& t) {
            std::vector<std::vector<char>> mask(h.k());
            for (int i = 0; i < h.k(); ++i) {
                mask[i].assign(h.part_size(i), 0);
                for (int x : choices[i][t[i]]) mask[i][x] = 1;
            }
            if (!independent(h, mask)) return true;
            extend_independent(h, mask);
            for (int i = 0; i < h.k(); ++i) {
                w.c_lists.emplace_back();
                for (int x = 0; x < h.part_size(i); ++x)
                    if (mask[i][x]) w.c_lists.back().push_back(x);
            }
            found = true;
            return false;
        });
        if (!found) return std::nullopt;
        w.heuristic = false;
    } else {
        std::vector<std::vector<char>> mask(h.k());
        for (int i = 0; i < h.k(); ++i) mask[i].assign(h.part_size(i), 0);
        extend_independent(h, mask);
        for (int i = 0; i < h.k(); ++i) {
            w.c_lists.emplace_back();
            for (int x = 0; x < h.part_size(i); ++x)
                if (mask[i][x]) w.c_lists.back().push_back(x);
            if (static_cast<std::int64_t>(w.c_lists.back().size()) < floors[i])
                return std::nullopt;
        }
        w.heuristic = true;
    }
    w.floors = floors;
    w.codegrees = a;
    w.eps = eps;
    return w;
}

// ---------------------------------------------------------------------------
// Divisibility-barrier closeness

namespace {

// Exact defect counts against both parities in one sweep.
std::pair<std::int64_t, std::int64_t> parity_defects(const Hypergraph& h,
                                                     const Bipartition& bip) {
    std::int64_t even = 0, odd = 0;
    for_each_tuple(h.part_sizes(), [&](const std::vector<int>& t) {
        if (h.has_edge(t)) return true;
        if (bip.edge_parity(t) == Parity::even) ++even;
        else ++odd;
        return true;
    });
    return {even, odd};
}

bool d_degree_condition(const std::vector<int>& a, int n, const Ratio& eps) {
    Ratio lo = Ratio(1, 2) - eps;
    Ratio hi = Ratio(1, 2) + eps;
    for (int i = 0; i < 2; ++i)
        if (!lo.le_scaled(a[i], n) || hi.lt_scaled(a[i], n)) return false;
    for (std::size_t i = 2; i < a.size(); ++i)
        if (eps.lt_scaled(a[i], n)) return false;
    return true;
}

}  // namespace

std::optional<DExtremalWitness> check_d_extremal(const Hypergraph& h, const Ratio& eps,
                                                 const std::optional<Bipartition>& candidate,
                                                 const Params* pipeline_params) {
    if (!h.equal_parts()) return std::nullopt;
    const int n = h.part_size(0);
    const int k = h.k();
    std::vector<int> a = partite_codegrees(h);
    if (!d_degree_condition(a, n, eps)) return std::nullopt;
    const std::int64_t cap = eps.floor_scaled(ipow(n, k));
    Ratio lo = Ratio(1, 2) - eps;
    Ratio hi = Ratio(1, 2) + eps;

    auto judge = [&](const Bipartition& bip) -> std::optional<DExtremalWitness> {
        for (int i = 0; i < 2; ++i) {
            int ai = bip.a_size(i);
            if (!lo.le_scaled(ai, n) || hi.lt_scaled(ai, n)) return std::nullopt;
        }
        auto [even, odd] = parity_defects(h, bip);
        DExtremalWitness w;
        w.bip = bip;
        w.codegrees = a;
        w.eps = eps;
        if (even <= cap) {
            w.side = Side::even;
            w.defect = even;
            return w;
        }
        if (odd <= cap) {
            w.side = Side::odd;
            w.defect = odd;
            return w;
        }
        return std::nullopt;
    };

    if (candidate) return judge(*candidate);

    if (h.vertex_count() <= 24) {
        // exhaustive scan over bipartitions whose first two A-sides sit in
        // the window; lexicographically least witness wins
        std::optional<DExtremalWitness> best;
        std::vector<std::vector<std::vector<int>>> choices(k);
        for (int i = 0; i < k; ++i) {
            for (int s = 0; s <= n; ++s) {
                if (i < 2 && (!lo.le_scaled(s, n) || hi.lt_scaled(s, n))) continue;
                for_each_combination(n, s, [&](const std::vector<int>& c) {
                    choices[i].push_back(c);
                    return true;
                });
            }
        }
        std::vector<int> radix;
        for (int i = 0; i < k; ++i) radix.push_back(static_cast<int>(choices[i].size()));
        for_each_tuple(radix, [&](const std::vector<int>& t) {
            std::vector<std::vector<int>> lists(k);
            for (int i = 0; i < k; ++i) lists[i] = choices[i][t[i]];
            auto w = judge(Bipartition::from_sets(h.part_sizes(), lists));
            if (w) { best = std::move(w); return false; }
            return true;
        });
        return best;
    }
    if (pipeline_params) {
        try {
            DichotomyOutcome dich = absorbing_or_extremal(h, *pipeline_params);
            if (!dich.family())
                return judge(std::get<ParityWitness>(dich.outcome).bip);
        } catch (const Error&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Space-extremal pipeline

namespace {

struct Avail {
    const Hypergraph& h;
    CoverMask used;
    explicit Avail(const Hypergraph& hg) : h(hg), used(hg) {}
    std::vector<int> list(const std::vector<char>& mask, int part) const {
        std::vector<int> out;
        for (int x = 0; x < h.part_size(part); ++x)
            if (mask[x] && !used.test(part, x)) out.push_back(x);
        return out;
    }
    std::int64_t count(const std::vector<char>& mask, int part) const {
        std::int64_t c = 0;
        for (int x = 0; x < h.part_size(part); ++x)
            if (mask[x] && !used.test(part, x)) ++c;
        return c;
    }
};

}  // namespace

SExtremalOutcome s_extremal_matching(const Hypergraph& h, const Ratio& eps, const Ratio& gamma,
                                     const SExtremalWitness& witness) {
    const int k = h.k();
    if (!h.equal_parts()) throw Error(Errc::unequal_parts, "equal parts required");
    const int n = h.part_size(0);
    std::vector<int> a = partite_codegrees(h);
    std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});

    SExtremalOutcome out;
    out.transcript.route = "s-extremal";
    out.transcript.part_order.resize(k);
    std::iota(out.transcript.part_order.begin(), out.transcript.part_order.end(), 0);

    if (sum_a <= n - k + 2) {
        out.transcript.route = "s-extremal/fact-delegate";
        out.result = greedy_fact_matching(h);
        return out;
    }
    for (int i = 0; i + 1 < k; ++i)
        if (a[i] < a[i + 1])
            throw Error(Errc::precondition_violated, "codegrees must be in descending part order");
    if (Ratio(eps.den - eps.num, eps.den).lt_scaled(a[0], n))
        throw Error(Errc::precondition_violated, "a_1 exceeds (1 - eps) n");
    if (!eps.le_scaled(a[1], n))
        throw Error(Errc::precondition_violated, "a_2 below eps n");
    SExtremalWitness w;
    if (!verify_s_witness(h, witness.eps.num ? witness.eps : eps, witness.c_lists, &w))
        throw Error(Errc::precondition_violated, "invalid space-barrier witness");

    const RootRatio alpha(gamma, 2);  // alpha = sqrt(gamma)
    std::vector<std::vector<char>> c_mask(k), a_mask(k), b_mask(k);
    std::vector<std::int64_t> c_size(k), a_size(k), b_size(k);
    for (int i = 0; i < k; ++i) {
        c_mask[i].assign(n, 0);
        for (int x : w.c_lists[i]) c_mask[i][x] = 1;
        c_size[i] = static_cast<std::int64_t>(w.c_lists[i].size());
    }
    std::vector<std::int64_t> c_prod(k);
    for (int i = 0; i < k; ++i) {
        std::int64_t p = 1;
        for (int j = 0; j < k; ++j)
            if (j != i) p *= c_size[j];
        c_prod[i] = p;
    }
    for (int i = 0; i < k; ++i) {
        a_mask[i].assign(n, 0);
        b_mask[i].assign(n, 0);
        for (int x = 0; x < n; ++x) {
            if (c_mask[i][x]) continue;
            std::int64_t deg_c = 0;
            for (int id : h.incident(i, x)) {
                const Edge& e = h.edges()[id];
                bool into_c = true;
                for (int j = 0; j < k; ++j)
                    if (j != i && !c_mask[j][e[j]]) { into_c = false; break; }
                if (into_c) ++deg_c;
            }
            // x joins A_i iff deg into C is at least (1 - alpha) prod |C_j|,
            // i.e. the missing count stays within alpha prod |C_j|
            if (alpha.le_scaled(c_prod[i] - deg_c, c_prod[i]))
                a_mask[i][x] = 1;
            else
                b_mask[i][x] = 1;
        }
        a_size[i] = std::count(a_mask[i].begin(), a_mask[i].end(), 1);
        b_size[i] = std::count(b_mask[i].begin(), b_mask[i].end(), 1);
    }

    // Size audit forced by the witness: a_i <= |A_i| + |B_i| <= a_i + gamma n
    // and |B_i| <= alpha n.
    for (int i = 0; i < k; ++i) {
        std::int64_t ab = a_size[i] + b_size[i];
        if (ab < a[i] || gamma.lt_scaled(ab - a[i], n))
            throw StageFailed("s-extremal/size-audit",
                              "part " + std::to_string(i) + ": |A|+|B| = " + std::to_string(ab) +
                                  " outside [a_i, a_i + gamma n]");
        if (alpha.gt_scaled(b_size[i], n))
            throw StageFailed("s-extremal/size-audit",
                              "part " + std::to_string(i) + ": |B_i| exceeds alpha n");
    }

    Avail av(h);
    Matching result;

    // Stage 1: hit the codegree targets with edges ending in B_i.
    StageRecord& st1 = out.transcript.stage("cover-b-target");
    for (int i = 0; i < k; ++i) {
        std::int64_t t_i = std::max<std::int64_t>(0, a[i] - a_size[i]);
        st1.stats.emplace_back("t_" + std::to_string(i), t_i);
        for (std::int64_t r = 0; r < t_i; ++r) {
            std::vector<int> parts;
            std::vector<int> radix;
            std::vector<std::vector<int>> pools;
            for (int j = 0; j < k; ++j)
                if (j != i) {
                    parts.push_back(j);
                    pools.push_back(av.list(c_mask[j], j));
                    radix.push_back(static_cast<int>(pools.back().size()));
                }
            bool placed = false;
            for_each_tuple(radix, [&](const std::vector<int>& t) {
                Edge e(k);
                for (std::size_t j = 0; j < parts.size(); ++j) e[parts[j]] = pools[j][t[j]];
                for (int x : av.list(b_mask[i], i)) {
                    e[i] = x;
                    if (!h.has_edge(e)) continue;
                    av.used.add(e);
                    result.add(e);
                    st1.removed.add(e);
                    placed = true;
                    return false;
                }
                return true;
            });
            if (!placed)
                throw StageFailed("s-extremal/cover-b-target",
                                  "no edge into B_" + std::to_string(i) + " available");
        }
    }

    // Stage 2: cover what is left of B.
    StageRecord& st2 = out.transcript.stage("cover-b");
    for (int i = 0; i < k; ++i) {
        for (int v : av.list(b_mask[i], i)) {
            const int anchor = (i == 0) ? 1 : 0;  // neighbor part
            std::vector<int> parts;
            std::vector<std::vector<int>> pools;
            std::vector<int> radix;
            for (int j = 0; j < k; ++j)
                if (j != i && j != anchor) {
                    parts.push_back(j);
                    pools.push_back(av.list(c_mask[j], j));
                    radix.push_back(static_cast<int>(pools.back().size()));
                }
            bool placed = false;
            for_each_tuple(radix, [&](const std::vector<int>& t) {
                Edge e(k);
                e[i] = v;
                for (std::size_t j = 0; j < parts.size(); ++j) e[parts[j]] = pools[j][t[j]];
                for (int u = 0; u < n; ++u) {
                    if (av.used.test(anchor, u)) continue;
                    e[anchor] = u;
                    if (!h.has_edge(e)) continue;
                    av.used.add(e);
                    result.add(e);
                    st2.removed.add(e);
                    placed = true;
                    return false;
                }
                return true;
            });
            if (!placed)
                throw StageFailed("s-extremal/cover-b", "vertex " + to_string({i, v}) +
                                                            " of B has no available edge");
        }
    }

    // Stage 3: adjust |C'| against |A'| until the slack lands in {0, 1}.
    StageRecord& st3 = out.transcript.stage("balance-adjust");
    auto slack = [&]() {
        std::int64_t free0 = av.used.free_in_part(0);
        std::int64_t sum_a_avail = 0;
        for (int j = 0; j < k; ++j) sum_a_avail += av.count(a_mask[j], j);
        return free0 - sum_a_avail;
    };
    std::int64_t s0 = slack();
    st3.stats.emplace_back("s0", s0);
    if (s0 < 0) {
        // case selection: a_3 >= 2 k alpha n, else |A_1| >= (1/2 + eps) n,
        // else the divisibility witness
        bool a3_large = alpha.ge_scaled(a[2], 2LL * k * n);
        bool a1_large = (Ratio(1, 2) + eps).le_scaled(a_size[0], n);
        st3.stats.emplace_back("case", a3_large ? 1 : a1_large ? 2 : 3);
        if (a3_large) {
            while (slack() < 0) {
                bool placed = false;
                auto a1_pool = av.list(a_mask[1], 1);
                auto a2_pool = av.list(a_mask[2], 2);
                std::vector<int> parts;
                std::vector<std::vector<int>> pools;
                std::vector<int> radix;
                for (int j = 3; j < k; ++j) {
                    parts.push_back(j);
                    pools.push_back(av.list(c_mask[j], j));
                    radix.push_back(static_cast<int>(pools.back().size()));
                }
                for (int u2 : a1_pool) {
                    for (int u3 : a2_pool) {
                        for_each_tuple(radix, [&](const std::vector<int>& t) {
                            Edge e(k);
                            e[1] = u2;
                            e[2] = u3;
                            for (std::size_t j = 0; j < parts.size(); ++j)
                                e[parts[j]] = pools[j][t[j]];
                            for (int u = 0; u < n; ++u) {
                                if (av.used.test(0, u)) continue;
                                e[0] = u;
                                if (!h.has_edge(e)) continue;
                                av.used.add(e);
                                result.add(e);
                                st3.removed.add(e);
                                placed = true;
                                return false;
                            }
                            return true;
                        });
                        if (placed) break;
                    }
                    if (placed) break;
                }
                if (!placed)
                    throw StageFailed("s-extremal/balance-a3", "no balancing edge available");
            }
        } else if (a1_large) {
            while (slack() < 0) {
                bool placed = false;
                auto a1_pool = av.list(a_mask[1], 1);
                std::vector<int> parts;
                std::vector<std::vector<int>> pools;
                std::vector<int> radix;
                for (int j = 2; j < k; ++j) {
                    parts.push_back(j);
                    pools.push_back(av.list(c_mask[j], j));
                    radix.push_back(static_cast<int>(pools.back().size()));
                }
                for (int u2 : a1_pool) {
                    for_each_tuple(radix, [&](const std::vector<int>& t) {
                        Edge e(k);
                        e[1] = u2;
                        for (std::size_t j = 0; j < parts.size(); ++j)
                            e[parts[j]] = pools[j][t[j]];
                        for (int u : av.list(a_mask[0], 0)) {
                            e[0] = u;
                            if (!h.has_edge(e)) continue;
                            av.used.add(e);
                            result.add(e);
                            st3.removed.add(e);
                            placed = true;
                            return false;
                        }
                        return true;
                    });
                    if (placed) break;
                }
                if (!placed)
                    throw StageFailed("s-extremal/balance-a1", "no balancing edge available");
            }
        } else {
            // divisibility branch: A = union of the computed A_i, odd side
            std::vector<std::vector<int>> a_lists(k);
            for (int i = 0; i < k; ++i)
                for (int x = 0; x < n; ++x)
                    if (a_mask[i][x]) a_lists[i].push_back(x);
            DExtremalWitness dw;
            dw.bip = Bipartition::from_sets(h.part_sizes(), a_lists);
            dw.side = Side::odd;
            auto [de, doo] = parity_defects(h, dw.bip);
            dw.defect = doo;
            (void)de;
            dw.codegrees = a;
            dw.eps = eps * 3;
            out.transcript.route = "s-extremal/divisibility-witness";
            out.result = std::move(dw);
            return out;
        }
    }
    std::int64_t r = slack();
    st3.stats.emplace_back("r", r);
    if (r < 0 || r > std::max<std::int64_t>(1, static_cast<std::int64_t>(n) - sum_a))
        throw StageFailed("s-extremal/balance-adjust",
                          "slack " + std::to_string(r) + " escaped its window");

    // Stage 4: cover A_3 .. A_k into C.
    StageRecord& st4 = out.transcript.stage("cover-small-a");
    for (int i = 2; i < k; ++i) {
        for (int v : av.list(a_mask[i], i)) {
            std::vector<int> parts;
            std::vector<std::vector<int>> pools;
            std::vector<int> radix;
            for (int j = 0; j < k; ++j)
                if (j != i) {
                    parts.push_back(j);
                    pools.push_back(av.list(c_mask[j], j));
                    radix.push_back(static_cast<int>(pools.back().size()));
                }
            bool placed = false;
            for_each_tuple(radix, [&](const std::vector<int>& t) {
                Edge e(k);
                e[i] = v;
                for (std::size_t j = 0; j < parts.size(); ++j) e[parts[j]] = pools[j][t[j]];
                if (!h.has_edge(e)) return true;
                av.used.add(e);
                result.add(e);
                st4.removed.add(e);
                placed = true;
                return false;
            });
            if (!placed)
                throw StageFailed("s-extremal/cover-small-a",
                                  "vertex " + to_string({i, v}) + " has no free C-neighborhood");
        }
    }

    // Stage 5: two dense blocks finish A_1 and A_2.
    StageRecord& st5 = out.transcript.stage("finish-dense");
    std::int64_t m0 = av.count(a_mask[0], 0);
    std::int64_t m1 = av.count(a_mask[1], 1);
    st5.stats.emplace_back("m1", m0);
    st5.stats.emplace_back("m2", m1);
    st5.stats.emplace_back("r", r);
    {
        std::int64_t c0 = av.count(c_mask[0], 0), c1 = av.count(c_mask[1], 1);
        if (c0 != m1 + r || c1 != m0 + r)
            throw StageFailed("s-extremal/final-count",
                              "C remainders do not match the block sizes");
        for (int j = 2; j < k; ++j)
            if (av.count(c_mask[j], j) != m0 + m1 + r)
                throw StageFailed("s-extremal/final-count",
                                  "part " + std::to_string(j) + " C remainder mismatch");
    }
    for (int side = 0; side < 2; ++side) {
        // block 0 pairs A_1 with fresh C-vertices, block 1 does the same for
        // A_2 afterwards; marking block 0 used makes the pools disjoint
        std::int64_t mm = side == 0 ? m0 : m1;
        if (mm == 0) continue;
        std::vector<std::vector<int>> keep(k);
        for (int j = 0; j < k; ++j) {
            if (j == side) {
                keep[j] = av.list(a_mask[j], j);
            } else {
                auto pool = av.list(c_mask[j], j);
                keep[j].assign(pool.begin(), pool.begin() + mm);
            }
        }
        Induced block = induced_subgraph(h, keep);
        Matching pm;
        try {
            pm = dense_pm(block.graph, DenseSpec::pikhurko({side}));
        } catch (const Error& e) {
            if (e.code() != Errc::condition_not_met && e.code() != Errc::no_perfect_matching)
                throw;
            out.transcript.notes["dense-fallback-block" + std::to_string(side)] = e.what();
            auto res = has_perfect_matching(block.graph);
            if (!res.exists)
                throw StageFailed("s-extremal/finish-dense",
                                  "block " + std::to_string(side) + " has no perfect matching");
            pm = *res.certificate;
        }
        Matching mapped = block.matching_to_parent(pm);
        for (const Edge& e : mapped.edges) {
            av.used.add(e);
            result.add(e);
            st5.removed.add(e);
        }
    }

    if (!validate_matching(h, result))
        throw Error(Errc::internal, "assembled result is not a matching");
    std::int64_t want = std::min<std::int64_t>(n - 1, sum_a);
    if (result.size() < want)
        throw StageFailed("s-extremal/final-size", "matching of size " +
                                                       std::to_string(result.size()) +
                                                       " below the target " + std::to_string(want));
    out.result = std::move(result);
    return out;
}

// ---------------------------------------------------------------------------
// Even-location pipeline

namespace {

std::vector<std::vector<char>> even_location_vectors(int k) {
    std::vector<std::vector<char>> out;
    for_each_tuple(std::vector<int>(k, 2), [&](const std::vector<int>& t) {
        int ones = std::accumulate(t.begin(), t.end(), 0);
        if (ones % 2 == 0) out.emplace_back(t.begin(), t.end());
        return true;
    });
    return out;
}

bool matches_location(const Bipartition& bip, const Edge& e, const std::vector<char>& loc) {
    for (std::size_t i = 0; i < e.size(); ++i)
        if ((bip.in_a(static_cast<int>(i), e[i]) ? 1 : 0) != loc[i]) return false;
    return true;
}

}  // namespace

EvenExtremalOutcome even_extremal_matching(const Hypergraph& h, const Bipartition& bip,
                                           const RootRatio& eta, const Ratio& eps0) {
    const int k = h.k();
    if (!h.equal_parts()) throw Error(Errc::unequal_parts, "equal parts required");
    const int n = h.part_size(0);
    if (n % 2 != 0) throw Error(Errc::precondition_violated, "part size must be even");
    if (2 * bip.a_size(0) != n || 2 * bip.a_size(1) != n)
        throw Error(Errc::precondition_violated, "|A_1| = |A_2| = n/2 required");
    for (int i = 2; i < k; ++i) {
        int ai = bip.a_size(i);
        if (ai == 0) continue;
        if (!eps0.le_scaled(ai, n) || !eps0.le_scaled(n - ai, n))
            throw Error(Errc::precondition_violated,
                        "|A_" + std::to_string(i + 1) + "| outside {0} and [eps0 n, (1-eps0) n]");
    }
    const std::int64_t scale_deg = ipow(n, k - 1);
    std::vector<std::vector<char>> evens = even_location_vectors(k);
    for (const auto& loc : evens) {
        LocationSubgraph sub = location_subgraph(h, bip, loc);
        if (!sub.ok()) continue;  // an empty side makes the class vacuous
        std::int64_t bar = max_complement_degree(*sub.graph);
        if (!eta.le_scaled(bar, scale_deg))
            throw Error(Errc::precondition_violated,
                        "a location class misses the complement-degree bound");
    }

    EvenExtremalOutcome out;
    out.transcript.route = "even-extremal";

    // template matching inside the exact parity family
    Matching tmpl = even_matching(k, n, bip);
    StageRecord& st0 = out.transcript.stage("template");
    st0.stats.emplace_back("template_size", tmpl.size());

    std::map<std::vector<char>, std::int64_t> m_v;
    for (const Edge& e : tmpl.edges) ++m_v[bip.location_vector(e)];

    RootRatio small_bar = eta.nth_root(2 * k);  // eta^(1/(2k))
    CoverMask used(h);
    Matching result;

    // rare classes first, greedily inside their location subgraph
    StageRecord& st1 = out.transcript.stage("greedy-classes");
    StageRecord& st2 = out.transcript.stage("dense-blocks");
    for (const auto& loc : evens) {
        auto it = m_v.find(loc);
        if (it == m_v.end() || it->second == 0) continue;
        std::int64_t quota = it->second;
        std::string loc_name;
        for (char c : loc) loc_name += c ? 'A' : 'B';
        if (small_bar.gt_scaled(quota, n)) {
            // dense block: balanced slice of the remaining side vertices
            std::vector<std::vector<int>> keep(k);
            for (int i = 0; i < k; ++i) {
                for (int x : bip.side_list(i, loc[i] != 0)) {
                    if (used.test(i, x)) continue;
                    keep[i].push_back(x);
                    if (static_cast<std::int64_t>(keep[i].size()) == quota) break;
                }
                if (static_cast<std::int64_t>(keep[i].size()) != quota)
                    throw StageFailed("even-extremal/dense-block",
                                      "side pool of part " + std::to_string(i) +
                                          " exhausted for class " + loc_name);
            }
            Induced block = induced_subgraph(h, keep);
            Matching pm;
            try {
                pm = dense_pm(block.graph, DenseSpec::daykin_haggkvist());
            } catch (const Error& e) {
                if (e.code() != Errc::condition_not_met && e.code() != Errc::no_perfect_matching)
                    throw;
                out.transcript.notes["dense-fallback-" + loc_name] = e.what();
                auto res = has_perfect_matching(block.graph);
                if (!res.exists)
                    throw StageFailed("even-extremal/dense-block",
                                      "class " + loc_name + " block has no perfect matching");
                pm = *res.certificate;
            }
            Matching mapped = block.matching_to_parent(pm);
            for (const Edge& e : mapped.edges) {
                used.add(e);
                result.add(e);
                st2.removed.add(e);
            }
            st2.stats.emplace_back(loc_name, quota);
        } else {
            std::int64_t placed = 0;
            for (const Edge& e : h.edges()) {
                if (placed == quota) break;
                if (used.any(e) || !matches_location(bip, e, loc)) continue;
                used.add(e);
                result.add(e);
                st1.removed.add(e);
                ++placed;
            }
            if (placed != quota)
                throw StageFailed("even-extremal/greedy-class",
                                  "class " + loc_name + " filled " + std::to_string(placed) +
                                      " of " + std::to_string(quota));
            st1.stats.emplace_back(loc_name, quota);
        }
    }

    if (result.size() != tmpl.size())
        throw Error(Errc::internal, "class quotas do not add up to the template size");
    if (!validate_matching(h, result))
        throw Error(Errc::internal, "assembled result is not a matching");
    out.matching = std::move(result);
    return out;
}

// ---------------------------------------------------------------------------
// Divisibility-extremal pipeline

namespace {

struct DContext {
    const Hypergraph& h;
    int k, n;
    Bipartition bip;   // sides after parity/side normalizations
    Bipartition bip0;  // sides after the atypical reassignment in parts 0, 1
    std::vector<std::vector<char>> in_w;  // atypical vertices
    std::vector<std::vector<char>> in_x;  // tiny-A vertices to clear
    std::int64_t q = 0;
};

// Atypical set: vertices with a large complement degree inside some even
// location subgraph; threshold sqrt(eps) n^(k-1) / 2, compared exactly.
std::vector<std::vector<char>> atypical_set(const Hypergraph& h, const Bipartition& bip,
                                            const Ratio& eps) {
    const int k = h.k();
    const int n = h.part_size(0);
    std::vector<std::vector<char>> in_w(k);
    for (int i = 0; i < k; ++i) in_w[i].assign(n, 0);
    for (const auto& loc : even_location_vectors(k)) {
        LocationSubgraph sub = location_subgraph(h, bip, loc);
        if (!sub.ok()) continue;
        for (int i = 0; i < k; ++i)
            for (int xi = 0; xi < sub.graph->part_size(i); ++xi) {
                std::int64_t cd = complement_degree(*sub.graph, {i, xi});
                // 2 cd > sqrt(eps) n^(k-1)  <=>  4 cd^2 > eps n^(2k-2)
                if (static_cast<__int128>(4) * cd * cd * eps.den >
                    static_cast<__int128>(eps.num) * ipow(n, k - 1) * ipow(n, k - 1))
                    in_w[i][sub.to_parent[i][xi]] = 1;
            }
    }
    return in_w;
}

std::int64_t horizontal_count(const Hypergraph& h, const Bipartition& bip, Vertex v) {
    std::int64_t c = 0;
    for (int id : h.incident(v)) {
        const Edge& e = h.edges()[id];
        if (bip.in_a(0, e[0]) == bip.in_a(1, e[1])) ++c;
    }
    return c;
}

// One orientation attempt; returns the matching or q < 0 as a signal to
// relabel the first two parts.
struct DAttempt {
    bool need_swap = false;
    Matching matching;
};

DAttempt d_extremal_run(const Hypergraph& h, const Ratio& eps, const Ratio& eps0,
                        Bipartition bip, PipelineTranscript& tr) {
    const int k = h.k();
    const int n = h.part_size(0);
    std::vector<int> a = partite_codegrees(h);
    std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    const std::int64_t deg_scale = ipow(n, k - 1);

    DContext ctx{h, k, n, bip, bip, {}, {}, 0};
    ctx.in_w = atypical_set(h, bip, eps);

    // reclassification of parts 0 and 1 by horizontal-edge supply
    std::vector<std::vector<int>> b0_lists(k);
    for (int i = 0; i < k; ++i) b0_lists[i] = bip.b_list(i);
    StageRecord& st0 = tr.stage("atypical");
    std::int64_t w_total = 0;
    for (int i = 0; i < k; ++i)
        w_total += std::count(ctx.in_w[i].begin(), ctx.in_w[i].end(), 1);
    st0.stats.emplace_back("w_size", w_total);
    for (int i = 0; i < 2; ++i) {
        std::vector<int> b_new;
        for (int x = 0; x < n; ++x) {
            bool in_b = !bip.in_a(i, x);
            if (ctx.in_w[i][x]) {
                std::int64_t hc = horizontal_count(h, bip, {i, x});
                bool few_horizontal = !eps0.le_scaled(hc, deg_scale);
                if (few_horizontal) in_b = bip.in_a(i, x);  // move across
            }
            if (in_b) b_new.push_back(x);
        }
        b0_lists[i] = b_new;
    }
    std::vector<std::vector<int>> a0_lists(k);
    for (int i = 0; i < k; ++i) {
        std::vector<char> isb(n, 0);
        for (int x : b0_lists[i]) isb[x] = 1;
        for (int x = 0; x < n; ++x)
            if (!isb[x]) a0_lists[i].push_back(x);
    }
    ctx.bip0 = Bipartition::from_sets(h.part_sizes(), a0_lists);

    ctx.q = ctx.bip0.b_size(1) - ctx.bip0.b_size(0);
    st0.stats.emplace_back("q", ctx.q);
    if (ctx.q < 0) return {true, {}};

    // X: typical vertices of tiny A-sides (parts >= 2)
    ctx.in_x.assign(k, std::vector<char>(n, 0));
    for (int i = 2; i < k; ++i) {
        if (bip.a_size(i) == 0) continue;
        bool tiny = !Ratio(eps0.num * 2, eps0.den).lt_scaled(bip.a_size(i), n);
        if (!tiny) continue;
        for (int x = 0; x < n; ++x)
            if (bip.in_a(i, x) && !ctx.in_w[i][x]) ctx.in_x[i][x] = 1;
    }

    CoverMask used(h);
    Matching result;
    auto in_avoid = [&](int part, int idx) {
        return ctx.in_w[part][idx] || ctx.in_x[part][idx] || used.test(part, idx);
    };

    // Stage 1: reduce the B-side gap between parts 0 and 1.
    StageRecord& st1 = tr.stage("gap-reduce");
    std::int64_t gap_target = ctx.q - n + sum_a;
    st1.stats.emplace_back("target", gap_target);
    if (gap_target > 0) {
        std::int64_t m1_size = sum_a > n ? ctx.q : gap_target;
        if (m1_size > 0) {
            std::vector<std::vector<int>> keep(k);
            keep[0] = ctx.bip0.a_list(0);
            keep[1] = ctx.bip0.b_list(1);
            for (int j = 2; j < k; ++j) {
                keep[j].resize(n);
                std::iota(keep[j].begin(), keep[j].end(), 0);
            }
            if (keep[0].empty() || keep[1].empty())
                throw StageFailed("d-extremal/gap-reduce", "an anchor side is empty");
            Induced sub = induced_subgraph(h, keep);
            Matching inner = greedy_fact_matching(sub.graph);
            if (inner.size() < m1_size)
                throw StageFailed("d-extremal/gap-reduce",
                                  "gap matching of size " + std::to_string(inner.size()) +
                                      " below " + std::to_string(m1_size));
            inner.edges.resize(static_cast<std::size_t>(m1_size));
            Matching mapped = sub.matching_to_parent(inner);
            for (const Edge& e : mapped.edges) {
                used.add(e);
                result.add(e);
                st1.removed.add(e);
            }
        }
    }

    // Stage 2: cover the atypical vertices of parts 0 and 1 with edges whose
    // first two sides agree (equal draw from both A-sides or both B-sides).
    StageRecord& st2 = tr.stage("clean-first-parts");
    for (int i = 0; i < 2; ++i)
        for (int x = 0; x < n; ++x) {
            if (!ctx.in_w[i][x] || used.test(i, x)) continue;
            bool placed = false;
            for (int id : h.incident(i, x)) {
                const Edge& e = h.edges()[id];
                if (ctx.bip0.in_a(0, e[0]) != ctx.bip0.in_a(1, e[1])) continue;
                bool clean = true;
                for (int j = 0; j < k && clean; ++j)
                    if (!(j == i && e[j] == x) && in_avoid(j, e[j])) clean = false;
                if (!clean) continue;
                used.add(e);
                result.add(e);
                st2.removed.add(e);
                placed = true;
                break;
            }
            if (!placed)
                throw StageFailed("d-extremal/clean-first-parts",
                                  "no clean aligned edge covers " + to_string({i, x}));
        }
    {
        std::int64_t b0_used = 0, b1_used = 0;
        for (const Edge& e : result.edges) {
            if (!ctx.bip0.in_a(0, e[0])) ++b0_used;
            if (!ctx.bip0.in_a(1, e[1])) ++b1_used;
        }
        std::int64_t diff = (ctx.bip0.b_size(1) - b1_used) - (ctx.bip0.b_size(0) - b0_used);
        st2.stats.emplace_back("b_gap", diff);
        if (diff < 0 || diff > std::max<std::int64_t>(0, static_cast<std::int64_t>(n) - sum_a))
            throw StageFailed("d-extremal/clean-first-parts",
                              "B-side gap " + std::to_string(diff) + " escaped its window");
    }

    // Stage 3: cover the remaining atypical vertices and the tiny A-sides.
    StageRecord& st3 = tr.stage("clean-rest");
    {
        std::vector<Vertex> w_rest, x_rest;
        const std::int64_t bar3 = Ratio(eps0.num * 3 * k * k, eps0.den).ceil_scaled(deg_scale);
        for (int i = 2; i < k; ++i)
            for (int x = 0; x < n; ++x) {
                if (used.test(i, x)) continue;
                if (ctx.in_w[i][x]) {
                    if (horizontal_count(h, bip, {i, x}) >= bar3)
                        w_rest.push_back({i, x});
                    else
                        x_rest.push_back({i, x});
                } else if (ctx.in_x[i][x]) {
                    x_rest.push_back({i, x});
                }
            }
        st3.stats.emplace_back("horizontal_covers", static_cast<std::int64_t>(w_rest.size()));
        st3.stats.emplace_back("diagonal_covers", static_cast<std::int64_t>(x_rest.size()));
        // horizontal covers first
        for (const Vertex& u : w_rest) {
            bool placed = false;
            for (int id : h.incident(u)) {
                const Edge& e = h.edges()[id];
                if (ctx.bip0.in_a(0, e[0]) != ctx.bip0.in_a(1, e[1])) continue;
                bool clean = true;
                for (int j = 0; j < k && clean; ++j)
                    if (!(j == u.part && e[j] == u.index) && in_avoid(j, e[j])) clean = false;
                if (!clean) continue;
                used.add(e);
                result.add(e);
                st3.removed.add(e);
                placed = true;
                break;
            }
            if (!placed)
                throw StageFailed("d-extremal/clean-rest",
                                  "no horizontal cover for " + to_string(u));
        }
        // diagonal covers in two balanced halves
        const std::size_t half = x_rest.size() / 2;
        for (std::size_t idx = 0; idx < x_rest.size(); ++idx) {
            const Vertex& u = x_rest[idx];
            const bool first_half = idx < half;  // B-side of part 0, A-side of part 1
            bool placed = false;
            for (int id : h.incident(u)) {
                const Edge& e = h.edges()[id];
                bool a0 = ctx.bip0.in_a(0, e[0]);
                bool a1 = ctx.bip0.in_a(1, e[1]);
                if (first_half ? !(a0 == false && a1 == true) : !(a0 == true && a1 == false))
                    continue;
                bool clean = true;
                for (int j = 0; j < k && clean; ++j)
                    if (!(j == u.part && e[j] == u.index) && in_avoid(j, e[j])) clean = false;
                if (!clean) continue;
                // a tiny-A vertex must not drag other A-sides in
                if (ctx.in_x[u.part][u.index]) {
                    bool loc_ok = true;
                    for (int j = 2; j < k && loc_ok; ++j)
                        if (j != u.part && ctx.bip0.in_a(j, e[j])) loc_ok = false;
                    if (!loc_ok) continue;
                }
                used.add(e);
                result.add(e);
                st3.removed.add(e);
                placed = true;
                break;
            }
            if (!placed)
                throw StageFailed("d-extremal/clean-rest",
                                  std::string("no ") +
                                      (first_half ? "B1-A2 diagonal" : "A1-B2 diagonal") +
                                      " cover for " + to_string(u) +
                                      (ctx.in_x[u.part][u.index] ? " (tiny-A location)" : ""));
        }
    }

    // Stage 4: make |B_1| match |A_2| using all-B or A_1A_2-located edges.
    StageRecord& st4 = tr.stage("balance-diag");
    auto side_free = [&](int part, bool a_side) {
        std::int64_t c = 0;
        for (int x = 0; x < n; ++x)
            if (!used.test(part, x) && ctx.bip0.in_a(part, x) == a_side) ++c;
        return c;
    };
    {
        std::int64_t m = side_free(0, false) - side_free(1, true);
        st4.stats.emplace_back("m", m);
        std::vector<char> want(k, 0);
        if (m < 0) { want[0] = 1; want[1] = 1; }
        std::int64_t need = m < 0 ? -m : m;
        for (std::int64_t placed = 0; placed < need; ++placed) {
            bool done = false;
            for (const Edge& e : h.edges()) {
                if (used.any(e)) continue;
                bool ok = true;
                for (int j = 0; j < k && ok; ++j) {
                    if ((ctx.bip0.in_a(j, e[j]) ? 1 : 0) != want[j]) ok = false;
                    if (ok && (ctx.in_w[j][e[j]] || ctx.in_x[j][e[j]])) ok = false;
                }
                if (!ok) continue;
                used.add(e);
                result.add(e);
                st4.removed.add(e);
                done = true;
                break;
            }
            if (!done)
                throw StageFailed("d-extremal/balance-diag",
                                  "no located edge for the balance step");
        }
    }

    // Stage 5: trim a balanced set to equalize the B-sides with even |A|.
    StageRecord& st5 = tr.stage("parity-trim");
    {
        std::int64_t t5 = side_free(1, false) - side_free(0, false);
        st5.stats.emplace_back("t", t5);
        if (t5 < -1 || t5 > k - 3)
            throw StageFailed("d-extremal/parity-trim",
                              "B-gap " + std::to_string(t5) + " outside [-1, k-3]");
        if (t5 > 0 && static_cast<std::int64_t>(n) - sum_a < t5)
            throw StageFailed("d-extremal/parity-trim", "positive gap beyond n - sum a_i");
        std::int64_t picks = t5 == -1 ? 1 : t5;
        if (picks > 0) {
            // per part: part 0 from the A side (B side when t = -1), part 1
            // from the B side (A side when t = -1), parts >= 2 default B
            std::vector<Vertex> chosen;
            auto take_side = [&](int part, bool a_side, std::int64_t cnt) {
                for (int x = 0; x < n && cnt > 0; ++x)
                    if (!used.test(part, x) && ctx.bip0.in_a(part, x) == a_side) {
                        chosen.push_back({part, x});
                        --cnt;
                    }
                if (cnt > 0)
                    throw StageFailed("d-extremal/parity-trim", "side pool exhausted");
            };
            take_side(0, t5 != -1, picks);
            take_side(1, t5 == -1, picks);
            std::vector<std::int64_t> b_picks(k, picks);
            for (int j = 2; j < k; ++j) take_side(j, false, picks);
            // parity fix: |A^0 minus trimmed| must be even
            std::int64_t a_free = 0;
            for (int j = 0; j < k; ++j) a_free += side_free(j, true);
            std::int64_t a_trimmed = 0;
            for (const Vertex& v : chosen) a_trimmed += ctx.bip0.in_a(v) ? 1 : 0;
            if ((a_free - a_trimmed) % 2 != 0) {
                bool fixed = false;
                for (int j = 2; j < k && !fixed; ++j) {
                    if (side_free(j, true) == 0) continue;
                    // swap one part-j pick from B to A
                    for (std::size_t ci = 0; ci < chosen.size() && !fixed; ++ci) {
                        if (chosen[ci].part != j || ctx.bip0.in_a(chosen[ci])) continue;
                        for (int x = 0; x < n; ++x)
                            if (!used.test(j, x) && ctx.bip0.in_a(j, x)) {
                                chosen[ci] = {j, x};
                                fixed = true;
                                break;
                            }
                    }
                }
                if (!fixed)
                    throw StageFailed("d-extremal/parity-trim",
                                      "could not make the remaining A-side even");
            }
            for (const Vertex& v : chosen) used.add_vertex(v);
            st5.stats.emplace_back("trimmed", static_cast<std::int64_t>(chosen.size()));
        }
    }

    // Final stage: even-location pipeline on the remainder.
    StageRecord& st6 = tr.stage("even-finish");
    std::vector<std::vector<int>> keep(k);
    for (int i = 0; i < k; ++i) keep[i] = used.free_vertices(i);
    for (int i = 1; i < k; ++i)
        if (keep[i].size() != keep[0].size())
            throw StageFailed("d-extremal/even-finish", "remainder is unbalanced");
    if (keep[0].empty()) {
        st6.stats.emplace_back("n_rest", 0);
        return {false, result};
    }
    Induced rest = induced_subgraph(h, keep);
    std::vector<std::vector<int>> a5(k);
    for (int i = 0; i < k; ++i)
        for (std::size_t xi = 0; xi < keep[i].size(); ++xi)
            if (ctx.bip0.in_a(i, keep[i][xi])) a5[i].push_back(static_cast<int>(xi));
    Bipartition bip5 = Bipartition::from_sets(rest.graph.part_sizes(), a5);
    st6.stats.emplace_back("n_rest", static_cast<std::int64_t>(keep[0].size()));
    try {
        EvenExtremalOutcome fin =
            even_extremal_matching(rest.graph, bip5, RootRatio(eps, 2), eps0);
        Matching mapped = rest.matching_to_parent(fin.matching);
        for (const Edge& e : mapped.edges) {
            result.add(e);
            st6.removed.add(e);
        }
    } catch (const Error& e) {
        if (e.code() == Errc::stage_failed) throw;
        throw StageFailed("d-extremal/even-finish", e.what());
    }
    return {false, result};
}

}  // namespace

DExtremalOutcome d_extremal_matching(const Hypergraph& h, const Ratio& eps, const Ratio& eps0,
                                     const DExtremalWitness& witness) {
    const int k = h.k();
    if (!h.equal_parts()) throw Error(Errc::unequal_parts, "equal parts required");
    const int n = h.part_size(0);
    std::vector<int> a = partite_codegrees(h);
    std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});

    DExtremalOutcome out;
    out.transcript.route = "d-extremal";
    out.transcript.part_order.resize(k);
    std::iota(out.transcript.part_order.begin(), out.transcript.part_order.end(), 0);

    if (sum_a <= n - k + 2) {
        out.transcript.route = "d-extremal/fact-delegate";
        out.matching = greedy_fact_matching(h);
        return out;
    }
    if (!d_degree_condition(a, n, eps))
        throw Error(Errc::precondition_violated, "codegree pattern violates the witness window");
    {
        auto [even, odd] = parity_defects(h, witness.bip);
        std::int64_t claimed = witness.side == Side::even ? even : odd;
        if (claimed != witness.defect || eps.lt_scaled(claimed, ipow(n, k)))
            throw Error(Errc::precondition_violated, "witness defect does not verify");
        Ratio lo = Ratio(1, 2) - eps, hi = Ratio(1, 2) + eps;
        for (int i = 0; i < 2; ++i) {
            int ai = witness.bip.a_size(i);
            if (!lo.le_scaled(ai, n) || hi.lt_scaled(ai, n))
                throw Error(Errc::precondition_violated, "witness A-side outside its window");
        }
    }

    // normalizations: even side, |A_i| <= |B_i| beyond the first two parts
    Bipartition bip = witness.bip;
    if (witness.side == Side::odd) bip.flip_part(0);
    bool flip_first = false;
    for (int i = 2; i < k; ++i)
        if (2 * bip.a_size(i) > n) {
            bip.flip_part(i);
            flip_first = !flip_first;
        }
    if (flip_first) bip.flip_part(0);

    try {
        DAttempt attempt = d_extremal_run(h, eps, eps0, bip, out.transcript);
        if (!attempt.need_swap) {
            out.matching = std::move(attempt.matching);
        } else {
            // relabel the first two parts and retry once
            std::vector<int> perm(k);
            std::iota(perm.begin(), perm.end(), 0);
            std::swap(perm[0], perm[1]);
            Hypergraph hs = permute_parts(h, perm);
            std::vector<std::vector<int>> a_lists(k);
            for (int j = 0; j < k; ++j) a_lists[j] = bip.a_list(perm[j]);
            Bipartition bs = Bipartition::from_sets(hs.part_sizes(), a_lists);
            out.transcript.notes["relabeled"] = "parts 0 and 1 swapped";
            out.transcript.part_order = perm;
            DAttempt second = d_extremal_run(hs, eps, eps0, bs, out.transcript);
            if (second.need_swap)
                throw StageFailed("d-extremal/orientation", "gap negative in both orientations");
            out.matching = unpermute_matching(second.matching, perm);
        }
    } catch (const StageFailed&) {
        throw;
    } catch (const Error& e) {
        throw StageFailed("d-extremal/run", e.what());
    }

    if (!validate_matching(h, out.matching))
        throw Error(Errc::internal, "assembled result is not a matching");
    std::int64_t want = std::min<std::int64_t>(n - 1, sum_a);
    if (out.matching.size() < want)
        throw StageFailed("d-extremal/final-size",
                          "matching of size " + std::to_string(out.matching.size()) +
                              " below the target " + std::to_string(want));
    return out;
}

// ---------------------------------------------------------------------------
// Dispatcher

MainOutcome main_matching(const Hypergraph& h, const Params& params) {
    if (!h.equal_parts()) throw Error(Errc::unequal_parts, "equal parts required");
    const int k = h.k();
    const int n = h.part_size(0);
    const Ratio& eps = params.epsilon;

    // work in codegree-descending part order
    std::vector<int> a_orig = partite_codegrees(h);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int x, int y) { return a_orig[x] > a_orig[y]; });
    Hypergraph hs = permute_parts(h, perm);
    std::vector<int> a = partite_codegrees(hs);
    std::int64_t sum_a = std::accumulate(a.begin(), a.end(), std::int64_t{0});

    MainOutcome out;
    out.transcript.part_order = perm;
    auto finish = [&](Matching m, const std::string& route) {
        out.matching = unpermute_matching(m, perm);
        out.transcript.route = route;
        if (!validate_matching(h, out.matching))
            throw Error(Errc::internal, "dispatcher produced an invalid matching");
        return std::move(out);
    };

    // greedy shortcuts: small codegree sum, or one dominant part
    bool small_sum = sum_a <= n - k + 2;
    bool dominant = Ratio(eps.den - eps.num, eps.den).le_scaled(a[0], n);
    if (small_sum || dominant)
        return finish(greedy_fact_matching(hs), small_sum ? "fact/small-sum" : "fact/dominant");

    // outside the guarded regime (second codegree too small): best effort
    // through the replacement matcher, verified against the target bound
    if (!eps.le_scaled(a[1], n)) {
        Matching m = greedy_fact_matching(hs);
        if (m.size() < std::min<std::int64_t>(n - 1, sum_a))
            throw StageFailed("dispatcher/low-a2",
                              "second codegree below eps n and the replacement matcher reached "
                              "only " + std::to_string(m.size()));
        return finish(std::move(m), "fact/low-a2");
    }

    // space-barrier closeness
    if (auto ws = check_s_extremal(hs, params.gamma)) {
        SExtremalOutcome so = s_extremal_matching(hs, eps, params.gamma, *ws);
        for (auto& st : so.transcript.stages) out.transcript.stages.push_back(st);
        for (auto& [key, val] : so.transcript.notes) out.transcript.notes[key] = val;
        if (so.matched()) return finish(so.matching(), so.transcript.route);
        DExtremalOutcome dd =
            d_extremal_matching(hs, so.witness().eps, params.epsilon0, so.witness());
        for (auto& st : dd.transcript.stages) out.transcript.stages.push_back(st);
        return finish(dd.matching, "s-extremal/divisibility-witness/d-extremal");
    }

    // divisibility-barrier closeness
    if (auto wd = check_d_extremal(hs, eps, std::nullopt, &params)) {
        DExtremalOutcome dd = d_extremal_matching(hs, eps, params.epsilon0, *wd);
        for (auto& st : dd.transcript.stages) out.transcript.stages.push_back(st);
        return finish(dd.matching, "d-extremal");
    }

    // non-extremal route: absorber, almost-perfect matching, absorption
    std::string route = "non-extremal";
    std::optional<Matching> absorber_edges;
    std::optional<FamilyReport> absorber_family;
    std::string absorber_note;
    if (eps.le_scaled(a[2], n)) {
        try {
            absorber_edges = absorbing_matching_I(hs, params);
            route += "/absorbing-edges";
        } catch (const SelectionFailed& e) {
            absorber_note = e.what();
            route += "/no-absorber";
        }
    } else {
        try {
            DichotomyOutcome dich = absorbing_or_extremal(hs, params);
            if (dich.family()) {
                absorber_family = std::get<FamilyReport>(dich.outcome);
                route += "/absorbing-family";
            } else {
                const ParityWitness& pw = std::get<ParityWitness>(dich.outcome);
                auto wd = check_d_extremal(hs, eps, pw.bip);
                if (!wd)
                    throw StageFailed("dispatcher/dichotomy-witness",
                                      "emitted parity witness failed verification");
                DExtremalOutcome dd = d_extremal_matching(hs, eps, params.epsilon0, *wd);
                for (auto& st : dd.transcript.stages) out.transcript.stages.push_back(st);
                return finish(dd.matching, "non-extremal/dichotomy/d-extremal");
            }
        } catch (const SelectionFailed& e) {
            absorber_note = e.what();
            route += "/no-absorber";
        } catch (const Error& e) {
            if (e.code() != Errc::pipeline_failed && e.code() != Errc::precondition_violated)
                throw;
            absorber_note = e.what();
            route += "/no-absorber";
        }
    }
    if (!absorber_note.empty()) out.transcript.notes["absorber"] = absorber_note;

    CoverMask reserved(hs);
    if (absorber_edges)
        for (const Edge& e : absorber_edges->edges) reserved.add(e);
    if (absorber_family)
        for (const auto& mem : absorber_family->members)
            for (const Vertex& v : mem) reserved.add_vertex(v);

    std::vector<std::vector<int>> keep(k);
    for (int i = 0; i < k; ++i) keep[i] = reserved.free_vertices(i);
    Induced sub = induced_subgraph(hs, keep);
    AlmostPerfectResult ap = [&] {
        try {
            return almost_perfect_matching(sub.graph, params);
        } catch (const StageFailed&) {
            throw;
        } catch (const Error& e) {
            throw StageFailed("dispatcher/almost-perfect", e.what());
        }
    }();
    if (!ap.matched()) {
        // the escape evidence certifies space-barrier closeness of the whole
        // instance; reroute if the witness verifies
        const SExtremalEvidence& ev = ap.evidence();
        std::vector<std::vector<int>> c_lists(k);
        for (int i = 0; i < k; ++i) {
            std::vector<char> mask(sub.graph.part_size(i), 0);
            for (const Edge& e : ev.m_prime.edges) mask[e[i]] = 1;
            for (int x : ev.d_sets[i]) mask[x] = 0;
            for (int xi = 0; xi < sub.graph.part_size(i); ++xi)
                if (mask[xi]) c_lists[i].push_back(keep[i][xi]);
        }
        SExtremalWitness ws;
        if (!verify_s_witness(hs, params.gamma, c_lists, &ws))
            throw StageFailed("dispatcher/evidence-conversion",
                              "escape evidence did not verify as a space-barrier witness");
        SExtremalOutcome so = s_extremal_matching(hs, eps, params.gamma, ws);
        for (auto& st : so.transcript.stages) out.transcript.stages.push_back(st);
        if (so.matched()) return finish(so.matching(), route + "/evidence/s-extremal");
        DExtremalOutcome dd =
            d_extremal_matching(hs, so.witness().eps, params.epsilon0, so.witness());
        return finish(dd.matching, route + "/evidence/d-extremal");
    }

    Matching current;
    if (absorber_edges)
        for (const Edge& e : absorber_edges->edges) current.add(e);
    Matching inner = sub.matching_to_parent(ap.matching());
    std::vector<std::vector<Edge>> family_matchings;
    if (absorber_family) {
        for (const auto& mem : absorber_family->members) {
            std::vector<std::vector<int>> lists(k);
            for (const Vertex& v : mem) lists[v.part].push_back(v.index);
            for (auto& l : lists) std::sort(l.begin(), l.end());
            auto pm = find_pm_within(hs, lists);
            if (!pm) throw Error(Errc::internal, "family member lost its spanned matching");
            family_matchings.push_back(*pm);
        }
    }

    CoverMask covered(hs);
    for (const Edge& e : current.edges) covered.add(e);
    for (const Edge& e : inner.edges) covered.add(e);
    for (const auto& fm : family_matchings)
        for (const Edge& e : fm) covered.add(e);

    StageRecord& sta = out.transcript.stage("absorb");
    auto leftover_lists = [&]() {
        std::vector<std::vector<int>> l(k);
        for (int i = 0; i < k; ++i) l[i] = covered.free_vertices(i);
        return l;
    };
    if (absorber_edges) {
        // trade one matched edge for two while two free vertices per part
        // remain; each round shrinks the leftover by one per part
        std::vector<Edge> pool = current.edges;
        for (const Edge& e : inner.edges) pool.push_back(e);
        Matching work;
        work.edges = pool;
        while (true) {
            auto lists = leftover_lists();
            bool enough = true;
            for (int i = 0; i < k; ++i)
                if (static_cast<int>(lists[i].size()) < 2) { enough = false; break; }
            if (!enough) break;
            std::vector<Vertex> s;
            for (int i = 0; i < k; ++i) {
                s.push_back({i, lists[i][0]});
                s.push_back({i, lists[i][1]});
            }
            bool stepped = false;
            for (const Edge& host : work.edges) {
                bool disj = true;
                for (int i = 0; i < k; ++i)
                    if (host[i] == lists[i][0] || host[i] == lists[i][1]) { disj = false; break; }
                if (!disj) continue;
                auto cert = is_absorbing_edge(hs, s, host);
                if (!cert) continue;
                work = absorb_step(hs, work, s, host, *cert);
                CoverMask fresh(hs);
                for (const Edge& e : work.edges) fresh.add(e);
                covered = fresh;
                stepped = true;
                break;
            }
            if (!stepped)
                throw StageFailed("dispatcher/absorb",
                                  "no absorbing edge for the leftover balanced set");
            sta.stats.emplace_back("absorbed", 1);
        }
        current = work;
    } else if (absorber_family) {
        std::vector<char> family_used(family_matchings.size(), 0);
        while (true) {
            auto lists = leftover_lists();
            bool any = false;
            for (int i = 0; i < k; ++i) any = any || !lists[i].empty();
            if (!any) break;
            for (int i = 0; i < k; ++i)
                if (lists[i].empty())
                    throw StageFailed("dispatcher/absorb", "unbalanced leftover");
            Edge s(k);
            for (int i = 0; i < k; ++i) s[i] = lists[i][0];
            bool stepped = false;
            for (std::size_t f = 0; f < absorber_family->members.size() && !stepped; ++f) {
                if (family_used[f]) continue;
                std::vector<std::vector<int>> t_lists(k);
                bool disj = true;
                for (const Vertex& v : absorber_family->members[f]) {
                    if (v.index == s[v.part]) { disj = false; break; }
                    t_lists[v.part].push_back(v.index);
                }
                if (!disj) continue;
                for (auto& l : t_lists) std::sort(l.begin(), l.end());
                if (!is_perfect_absorbing(hs, s, t_lists)) continue;
                std::vector<std::vector<int>> joint = t_lists;
                for (int i = 0; i < k; ++i) {
                    joint[i].push_back(s[i]);
                    std::sort(joint[i].begin(), joint[i].end());
                }
                auto pm = find_pm_within(hs, joint);
                if (!pm) continue;
                family_used[f] = 1;
                family_matchings[f] = *pm;
                for (int i = 0; i < k; ++i) covered.add_vertex({i, s[i]});
                stepped = true;
            }
            if (!stepped)
                throw StageFailed("dispatcher/absorb",
                                  "no perfect-absorbing member for the leftover k-set");
            sta.stats.emplace_back("absorbed", 1);
        }
        for (const Edge& e : inner.edges) current.add(e);
        for (const auto& fm : family_matchings)
            for (const Edge& e : fm) current.add(e);
    } else {
        // no absorber available; accept only if the leftover is at most one
        // vertex per part
        auto lists = leftover_lists();
        for (int i = 0; i < k; ++i)
            if (lists[i].size() > 1)
                throw StageFailed("dispatcher/absorb",
                                  "leftover needs absorption but no absorber was selected (" +
                                      absorber_note + ")");
        for (const Edge& e : inner.edges) current.add(e);
    }

    std::int64_t want = std::min<std::int64_t>(n - 1, sum_a);
    if (current.size() < want)
        throw StageFailed("dispatcher/final-size",
                          "matching of size " + std::to_string(current.size()) +
                              " below the target " + std::to_string(want));
    return finish(current, route);
}

}  // namespace kpm
