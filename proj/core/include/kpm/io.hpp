#pragma once

#include <optional>
#include <string>

#include "kpm/types.hpp"

namespace kpm {

// Instance file grammar (LF line endings, ASCII):
//   line 1:  "kpg 1"
//   line 2:  k
//   line 3:  k space-separated part sizes
//   then one edge per line: k space-separated 0-based indices, index j being
//   the vertex position in part j
//   optional block: a line "bip" followed by k lines, line i listing the
//   A_i indices ascending (possibly empty)
// Rendering is canonical: edges deduplicated and sorted, single spaces, a
// trailing newline.  parse(render(h)) reproduces h bit-exactly.
struct Instance {
    Hypergraph graph;
    std::optional<Bipartition> bip;
};

Instance parse_instance(const std::string& text);
std::string render_instance(const Hypergraph& h,
                            const std::optional<Bipartition>& bip = std::nullopt);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Hypergraph& h,
                   const std::optional<Bipartition>& bip = std::nullopt);

}  // namespace kpm
