#include "dfactor/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dfactor/regular_gen.hpp"

namespace dfactor {

HostInstance load_instance_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::BadInput, "cannot open instance file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(Errc::BadInput, std::string("bad instance JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("d"))
        throw Error(Errc::BadInput, "instance JSON needs \"n\" and \"d\"");
    int n = j["n"].get<int>();
    int d = j["d"].get<int>();
    std::vector<VertexPair> forbidden;
    if (j.contains("forbidden")) {
        for (const auto& e : j["forbidden"]) {
            if (!e.is_array() || e.size() != 2)
                throw Error(Errc::BadInput, "forbidden entries must be [u,v] pairs");
            forbidden.push_back({e[0].get<int>(), e[1].get<int>()});
        }
    }
    return load_instance(n, d, forbidden);
}

HostInstance load_instance_edge_list(const std::string& path, int n, int d) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::BadInput, "cannot open edge list: " + path);
    std::vector<VertexPair> forbidden;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        long long u, v;
        if (ls >> u >> v) forbidden.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    return load_instance(n, d, forbidden);
}

std::string instance_to_json(const HostInstance& inst) {
    nlohmann::json j;
    j["n"] = inst.n();
    j["d"] = inst.d();
    auto arr = nlohmann::json::array();
    for (uint64_t k : inst.red_pair_keys()) {
        auto [u, v] = key_pair(k);
        arr.push_back({u, v});
    }
    j["forbidden"] = std::move(arr);
    return j.dump();
}

HostInstance make_random_instance(int n, int d, int delta, RngStream& rng) {
    if (delta == 0) return load_instance(n, d, {});
    auto forbidden = pairing_edges(n, delta, rng);
    return load_instance(n, d, forbidden);
}

void write_factor_text(std::ostream& os, const std::vector<uint64_t>& edges) {
    for (uint64_t k : edges) {
        auto [u, v] = key_pair(k);
        os << u << ' ' << v << '\n';
    }
}

std::string factor_to_json(const std::vector<uint64_t>& edges) {
    auto arr = nlohmann::json::array();
    for (uint64_t k : edges) {
        auto [u, v] = key_pair(k);
        arr.push_back({u, v});
    }
    return arr.dump();
}

}  // namespace dfactor
