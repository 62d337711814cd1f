#pragma once

#include <iosfwd>
#include <string>

#include "dfactor/graph.hpp"
#include "dfactor/rng.hpp"

namespace dfactor {

// JSON object {"n": int, "d": int, "forbidden": [[u,v],...]}
HostInstance load_instance_json(const std::string& path);
// plain-text edge list, one "u v" per line; n and d supplied by the caller
HostInstance load_instance_edge_list(const std::string& path, int n, int d);

std::string instance_to_json(const HostInstance& inst);

// a random delta-regular forbidden graph via the pairing sampler
HostInstance make_random_instance(int n, int d, int delta, RngStream& rng);

// factors as "u v" lines, blank line separated, or as a JSON array
void write_factor_text(std::ostream& os, const std::vector<uint64_t>& edges);
std::string factor_to_json(const std::vector<uint64_t>& edges);

}  // namespace dfactor
