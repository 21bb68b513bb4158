#include "kpm/report.hpp"

#include <sstream>

#include <json.hpp>

namespace kpm {

int RunReport::failed() const {
    int f = 0;
    for (const Check& c : checks) f += !c.pass;
    return f;
}

std::string render_report(const RunReport& r, bool with_timings) {
    std::ostringstream os;
    os << "report " << r.tool << " " << r.schema << "\n";
    os << "command " << r.command << "\n";
    os << "seed " << r.seed << "\n";
    os << "params " << r.params << "\n";
    for (const Check& c : r.checks) {
        os << "check id=" << c.id << " pass=" << (c.pass ? 1 : 0);
        if (!c.detail.empty()) os << " " << c.detail;
        os << "\n";
    }
    os << "summary checks=" << r.checks.size() << " failed=" << r.failed() << "\n";
    if (with_timings) os << "elapsed_ms " << r.elapsed_ms << "\n";
    os << "hash " << std::hex << report_hash(r) << std::dec << "\n";
    return os.str();
}

std::uint64_t report_hash(const RunReport& r) {
    RunReport copy = r;
    copy.elapsed_ms = 0;
    std::ostringstream os;
    os << copy.command << '\n' << copy.seed << '\n' << copy.params << '\n';
    for (const Check& c : copy.checks)
        os << c.id << '\x1f' << c.pass << '\x1f' << c.detail << '\n';
    return fnv1a64(os.str());
}

std::string report_json(const RunReport& r, bool with_timings) {
    nlohmann::json j;
    j["tool"] = r.tool;
    j["schema"] = r.schema;
    j["command"] = r.command;
    j["seed"] = r.seed;
    j["params"] = r.params;
    j["checks"] = nlohmann::json::array();
    for (const Check& c : r.checks)
        j["checks"].push_back({{"id", c.id}, {"pass", c.pass}, {"detail", c.detail}});
    j["failed"] = r.failed();
    if (with_timings) j["elapsed_ms"] = r.elapsed_ms;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(report_hash(r)));
    j["hash"] = buf;
    return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace kpm
