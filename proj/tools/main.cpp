// kpm: generators, solvers, verifiers and reports for k-partite k-uniform
// hypergraph matchings.  Exit codes: 0 success, 1 check failure, 2 usage or
// parse error, 3 stage failure.

#include <iostream>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kpm/absorbing.hpp"
#include "kpm/constructions.hpp"
#include "kpm/degree.hpp"
#include "kpm/extremal.hpp"
#include "kpm/greedy.hpp"
#include "kpm/io.hpp"
#include "kpm/report.hpp"
#include "kpm/solver.hpp"
#include "kpm/verify.hpp"

namespace {

struct Common {
    std::uint64_t seed = 1;
    std::uint64_t budget = kpm::kDefaultNodeBudget;
    std::vector<std::string> params_kv;
    std::string format = "text";

    kpm::Params params() const {
        kpm::Params p;
        p.seed = seed;
        for (const std::string& kv : params_kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw kpm::Error(kpm::Errc::usage, "--params expects key=value, got '" + kv + "'");
            p.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        return p;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "seed for all randomized steps");
    cmd->add_option("--budget", c.budget, "node budget for the exact solver");
    cmd->add_option("--params", c.params_kv, "named constants as key=value")->delimiter(',');
    cmd->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',' || ch == ' ') {
            if (!cur.empty()) out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    return out;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
}

nlohmann::json matching_json(const kpm::Matching& m) {
    nlohmann::json j = nlohmann::json::array();
    for (const kpm::Edge& e : m.edges) j.push_back(e);
    return j;
}

void print_matching(const kpm::Matching& m) {
    for (const kpm::Edge& e : m.edges) {
        for (std::size_t i = 0; i < e.size(); ++i) std::cout << (i ? " " : "") << e[i];
        std::cout << "\n";
    }
}

nlohmann::json transcript_json(const kpm::PipelineTranscript& tr) {
    nlohmann::json j;
    j["route"] = tr.route;
    j["part_order"] = tr.part_order;
    j["stages"] = nlohmann::json::array();
    for (const auto& st : tr.stages) {
        nlohmann::json s;
        s["name"] = st.name;
        s["removed"] = matching_json(st.removed);
        for (const auto& [key, val] : st.stats) s["stats"][key] = val;
        j["stages"].push_back(s);
    }
    for (const auto& [key, val] : tr.notes) j["notes"][key] = val;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-partite hypergraph matching toolkit"};
    app.require_subcommand(1);
    Common c;

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->require_subcommand(1);
    std::string out_path;
    int g_k = 3, g_n = 4;
    std::string g_sizes, g_a, g_side = "even";
    std::string g_p = "1/2", g_in;
    std::int64_t g_add = 0, g_remove = 0;

    auto* g_complete = gen->add_subcommand("complete", "all crossing k-sets");
    g_complete->add_option("--k", g_k)->required();
    g_complete->add_option("--sizes", g_sizes, "comma-separated part sizes")->required();
    g_complete->add_option("--out", out_path);

    auto* g_space = gen->add_subcommand("space", "crossing sets meeting a prefix A_i");
    g_space->add_option("--k", g_k)->required();
    g_space->add_option("--n", g_n)->required();
    g_space->add_option("--a", g_a, "comma-separated |A_i|")->required();
    g_space->add_option("--out", out_path);

    auto* g_parity = gen->add_subcommand("parity", "crossing sets of one parity");
    g_parity->add_option("--k", g_k)->required();
    g_parity->add_option("--n", g_n)->required();
    g_parity->add_option("--a", g_a, "comma-separated |A_i| (prefix sets)")->required();
    g_parity->add_option("--side", g_side)->check(CLI::IsMember({"even", "odd"}));
    g_parity->add_option("--out", out_path);

    auto* g_random = gen->add_subcommand("random", "each crossing set kept with probability p");
    g_random->add_option("--k", g_k)->required();
    g_random->add_option("--n", g_n)->required();
    g_random->add_option("--p", g_p, "probability as a fraction or decimal");
    g_random->add_option("--out", out_path);
    add_common(g_random, c);

    auto* g_perturb = gen->add_subcommand("perturb", "seeded edge additions and removals");
    g_perturb->add_option("--in", g_in, "input instance file")->required();
    g_perturb->add_option("--add", g_add);
    g_perturb->add_option("--remove", g_remove);
    g_perturb->add_option("--out", out_path);
    add_common(g_perturb, c);

    // ---- solve ---------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "exact maximum matching");
    std::string solve_in;
    solve->add_option("file", solve_in)->required();
    add_common(solve, c);

    // ---- check ---------------------------------------------------------
    auto* check = app.add_subcommand("check", "validate an instance and print degree statistics");
    std::string check_in;
    check->add_option("file", check_in)->required();
    add_common(check, c);

    // ---- absorb --------------------------------------------------------
    auto* absorb = app.add_subcommand("absorb", "absorbing certificates, reach records, families");
    absorb->require_subcommand(1);
    std::string ab_in, ab_set, ab_edge;
    int ab_part = 0, ab_i = 1;
    auto* ab_cert = absorb->add_subcommand("cert", "certificate for one (S, e) pair");
    ab_cert->add_option("file", ab_in)->required();
    ab_cert->add_option("--set", ab_set, "balanced 2k-set, two indices per part, ';' separated")
        ->required();
    ab_cert->add_option("--edge", ab_edge, "comma-separated edge")->required();
    add_common(ab_cert, c);
    auto* ab_reach = absorb->add_subcommand("reach", "reach records for all pairs of one part");
    ab_reach->add_option("file", ab_in)->required();
    ab_reach->add_option("--part", ab_part);
    ab_reach->add_option("--i", ab_i);
    add_common(ab_reach, c);
    auto* ab_closed = absorb->add_subcommand("closed", "reachability classes of one part");
    ab_closed->add_option("file", ab_in)->required();
    ab_closed->add_option("--part", ab_part);
    ab_closed->add_option("--i", ab_i);
    add_common(ab_closed, c);
    auto* ab_family = absorb->add_subcommand("family", "absorbing matching via family selection");
    ab_family->add_option("file", ab_in)->required();
    add_common(ab_family, c);
    auto* ab_dich = absorb->add_subcommand("dichotomy", "family or parity witness");
    ab_dich->add_option("file", ab_in)->required();
    add_common(ab_dich, c);

    // ---- classify ------------------------------------------------------
    auto* classify = app.add_subcommand("classify", "extremality witnesses");
    std::string cls_in;
    classify->add_option("file", cls_in)->required();
    add_common(classify, c);

    // ---- match ---------------------------------------------------------
    auto* match = app.add_subcommand("match", "dispatcher with transcript");
    std::string match_in;
    match->add_option("file", match_in)->required();
    add_common(match, c);

    // ---- verify --------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    verify->add_option("suite", suite, "barriers|greedy|even|absorbing|pipelines|threshold-scan")
        ->required();
    add_common(verify, c);

    CLI11_PARSE(app, argc, argv);

    try {
        const bool json = c.format == "json";

        if (g_complete->parsed()) {
            auto sizes = parse_int_list(g_sizes);
            emit(kpm::render_instance(kpm::complete_kpartite(g_k, sizes)), out_path);
        } else if (g_space->parsed()) {
            emit(kpm::render_instance(kpm::space_barrier(g_k, g_n, parse_int_list(g_a))),
                 out_path);
        } else if (g_parity->parsed()) {
            auto bip =
                kpm::Bipartition::prefixes(std::vector<int>(g_k, g_n), parse_int_list(g_a));
            auto side = g_side == "even" ? kpm::Side::even : kpm::Side::odd;
            emit(kpm::render_instance(kpm::parity_family(g_k, g_n, bip, side), bip), out_path);
        } else if (g_random->parsed()) {
            emit(kpm::render_instance(
                     kpm::random_instance(g_k, g_n, kpm::Ratio::parse(g_p), c.seed)),
                 out_path);
        } else if (g_perturb->parsed()) {
            kpm::Instance inst = kpm::load_instance(g_in);
            emit(kpm::render_instance(kpm::perturb(inst.graph, g_add, g_remove, c.seed),
                                      inst.bip),
                 out_path);
        } else if (solve->parsed()) {
            kpm::Instance inst = kpm::load_instance(solve_in);
            kpm::SolveReport r = kpm::max_matching(inst.graph, c.budget);
            if (json) {
                nlohmann::json j;
                j["nu"] = r.nu();
                j["optimal"] = r.optimal;
                j["nodes"] = r.nodes;
                j["matching"] = matching_json(r.matching);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "nu " << r.nu() << "\noptimal " << (r.optimal ? 1 : 0)
                          << "\nnodes " << r.nodes << "\n";
                print_matching(r.matching);
            }
            return r.optimal ? 0 : 1;
        } else if (check->parsed()) {
            kpm::Instance inst = kpm::load_instance(check_in);
            const kpm::Hypergraph& h = inst.graph;
            std::vector<int> a = kpm::partite_codegrees(h);
            nlohmann::json j;
            j["k"] = h.k();
            j["part_sizes"] = h.part_sizes();
            j["edges"] = h.edge_count();
            j["codegrees"] = a;
            std::int64_t sum = 0;
            for (int x : a) sum += x;
            j["codegree_sum"] = sum;
            j["max_complement_degree"] = kpm::max_complement_degree(h);
            if (h.k() >= 2) j["partite_min_1_degree"] = kpm::partite_min_d_degree(h, 1);
            if (inst.bip) {
                j["bip_a_total"] = inst.bip->total_a();
                std::int64_t even = 0;
                for (const kpm::Edge& e : h.edges())
                    even += inst.bip->edge_parity(e) == kpm::Parity::even;
                j["even_edges"] = even;
                j["odd_edges"] = h.edge_count() - even;
            }
            if (json) std::cout << j.dump(2) << "\n";
            else
                for (auto& [key, val] : j.items())
                    std::cout << key << " " << val.dump() << "\n";
        } else if (ab_cert->parsed()) {
            kpm::Instance inst = kpm::load_instance(ab_in);
            std::vector<kpm::Vertex> s;
            int part = 0;
            std::string tok;
            for (char ch : ab_set + ";") {
                if (ch == ';') {
                    for (int idx : parse_int_list(tok)) s.push_back({part, idx});
                    tok.clear();
                    ++part;
                } else {
                    tok.push_back(ch);
                }
            }
            kpm::Edge e = parse_int_list(ab_edge);
            auto cert = kpm::is_absorbing_edge(inst.graph, s, e);
            if (cert) {
                std::cout << "absorbing 1\n";
                print_matching(kpm::Matching{{cert->e1, cert->e2}});
            } else {
                std::cout << "absorbing 0\n";
            }
        } else if (ab_reach->parsed()) {
            kpm::Instance inst = kpm::load_instance(ab_in);
            kpm::Params p = c.params();
            const int n = inst.graph.part_size(ab_part);
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y) {
                    auto rec =
                        kpm::reach_count(inst.graph, {ab_part, x}, {ab_part, y}, ab_i, p.beta);
                    std::cout << "reach u=" << x << " v=" << y << " i=" << ab_i
                              << " count=" << rec.count << " threshold=" << rec.threshold
                              << " reachable=" << (rec.reachable ? 1 : 0) << "\n";
                }
        } else if (ab_closed->parsed()) {
            kpm::Instance inst = kpm::load_instance(ab_in);
            kpm::Params p = c.params();
            auto pp = kpm::closed_partition(inst.graph, ab_part, p.beta, ab_i, p.c);
            for (std::size_t ci = 0; ci < pp.classes.size(); ++ci) {
                std::cout << "class " << ci << " min_count=" << pp.class_min_count[ci] << " ";
                for (int x : pp.classes[ci]) std::cout << x << " ";
                std::cout << "\n";
            }
            std::cout << "residue ";
            for (int x : pp.residue) std::cout << x << " ";
            std::cout << "\n";
        } else if (ab_family->parsed()) {
            kpm::Instance inst = kpm::load_instance(ab_in);
            kpm::Params p = c.params();
            kpm::Matching m = kpm::absorbing_matching_I(inst.graph, p);
            std::cout << "size " << m.size() << "\n";
            print_matching(m);
        } else if (ab_dich->parsed()) {
            kpm::Instance inst = kpm::load_instance(ab_in);
            kpm::Params p = c.params();
            kpm::DichotomyOutcome out = kpm::absorbing_or_extremal(inst.graph, p);
            if (out.family()) {
                const auto& fam = std::get<kpm::FamilyReport>(out.outcome);
                std::cout << "outcome family members=" << fam.members.size()
                          << " attempts=" << fam.attempts << "\n";
            } else {
                const auto& pw = std::get<kpm::ParityWitness>(out.outcome);
                std::cout << "outcome witness side=" << kpm::side_name(pw.side)
                          << " defect=" << pw.defect << "\n";
            }
        } else if (classify->parsed()) {
            kpm::Instance inst = kpm::load_instance(cls_in);
            kpm::Params p = c.params();
            nlohmann::json j;
            if (auto ws = kpm::check_s_extremal(inst.graph, p.gamma)) {
                j["s_extremal"] = true;
                j["s_heuristic"] = ws->heuristic;
                j["independent_set"] = ws->c_lists;
            } else {
                j["s_extremal"] = false;
            }
            std::optional<kpm::Bipartition> cand = inst.bip;
            if (auto wd = kpm::check_d_extremal(inst.graph, p.epsilon, cand, &p)) {
                j["d_extremal"] = true;
                j["side"] = kpm::side_name(wd->side);
                j["defect"] = wd->defect;
            } else {
                j["d_extremal"] = false;
            }
            if (json) std::cout << j.dump(2) << "\n";
            else
                for (auto& [key, val] : j.items())
                    std::cout << key << " " << val.dump() << "\n";
        } else if (match->parsed()) {
            kpm::Instance inst = kpm::load_instance(match_in);
            kpm::Params p = c.params();
            kpm::MainOutcome out = kpm::main_matching(inst.graph, p);
            if (json) {
                nlohmann::json j;
                j["size"] = out.matching.size();
                j["matching"] = matching_json(out.matching);
                j["transcript"] = transcript_json(out.transcript);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "route " << out.transcript.route << "\nsize "
                          << out.matching.size() << "\n";
                print_matching(out.matching);
            }
        } else if (verify->parsed()) {
            kpm::Params p = c.params();
            kpm::RunReport r = kpm::verify::run_suite(suite, p, c.seed);
            std::cout << (json ? kpm::report_json(r) : kpm::render_report(r));
            return r.pass() ? 0 : 1;
        }
        return 0;
    } catch (const kpm::StageFailed& e) {
        std::cerr << "stage failure: " << e.what() << "\n";
        return 3;
    } catch (const kpm::ParseFailure& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const kpm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case kpm::Errc::usage:
            case kpm::Errc::parse_error:
            case kpm::Errc::duplicate_edge:
            case kpm::Errc::out_of_range:
                return 2;
            case kpm::Errc::pipeline_failed:
            case kpm::Errc::stage_failed:
                return 3;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
