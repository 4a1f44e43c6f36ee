#include "slicegeo/space_json.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace slicegeo {

namespace {

using nlohmann::json;

json p_to_json(double p) {
    if (std::isinf(p)) return "inf";
    return p;
}

double p_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        fail(Errc::invalid_spec, "unrecognized exponent string; use a number or \"inf\"");
    }
    return j.get<double>();
}

json spec_to_json_obj(const SpaceSpec& s) {
    json j;
    j["kind"] = kind_name(s.kind);
    j["dim"] = s.dim;
    if (!s.name.empty()) j["name"] = s.name;
    switch (s.kind) {
        case SpaceKind::polytope_v:
            j["vertices"] = s.vertices;
            break;
        case SpaceKind::polytope_h: {
            json fs = json::array();
            for (const auto& f : s.facets) fs.push_back({{"normal", f.normal}, {"offset", f.offset}});
            j["facets"] = fs;
            break;
        }
        case SpaceKind::lp:
            j["p"] = p_to_json(s.p);
            break;
        case SpaceKind::lip:
            j["metric"] = s.metric;
            j["base_index"] = s.base_index;
            break;
        case SpaceKind::sum:
            j["p"] = p_to_json(s.p);
            j["left"] = spec_to_json_obj(*s.left);
            j["right"] = spec_to_json_obj(*s.right);
            break;
    }
    return j;
}

SpaceSpec spec_from_json_obj(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    SpaceSpec s;
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    if (kind == "lp") {
        s = lp_space(j.at("dim").get<int>(), p_from_json(j.at("p")), s.name);
    } else if (kind == "polytope_v") {
        s = polytope_v_space(j.at("vertices").get<std::vector<Vec>>(), s.name);
        if (j.contains("dim")) s.dim = j["dim"].get<int>();
    } else if (kind == "polytope_h") {
        std::vector<Facet> fs;
        for (const auto& f : j.at("facets"))
            fs.push_back({f.at("normal").get<Vec>(), f.at("offset").get<double>()});
        s = polytope_h_space(j.at("dim").get<int>(), std::move(fs), s.name);
    } else if (kind == "lip") {
        s = lip_space(j.at("metric").get<Matrix>(), j.value("base_index", 0), s.name);
    } else if (kind == "sum") {
        s = sum_space(spec_from_json_obj(j.at("left")), spec_from_json_obj(j.at("right")),
                      p_from_json(j.at("p")), s.name);
    } else {
        fail(Errc::invalid_spec, "unknown space kind \"" + kind + "\"");
    }
    return s;
}

}  // namespace

std::string space_to_json(const SpaceSpec& spec) { return spec_to_json_obj(spec).dump(2) + "\n"; }

SpaceSpec space_from_json(const std::string& text) {
    json j = json::parse(text);
    return spec_from_json_obj(j);
}

SpaceSpec load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::invalid_spec, "cannot open space file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return space_from_json(ss.str());
}

void save_space(const SpaceSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(Errc::invalid_spec, "cannot write space file " + path);
    out << space_to_json(spec);
}

bool same_spec(const SpaceSpec& a, const SpaceSpec& b) {
    return space_to_json(a) == space_to_json(b);
}

}  // namespace slicegeo
