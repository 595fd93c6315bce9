#pragma once

#include "posetdyn/families.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace posetdyn {

// {"elements": [sorted labels], "covers": [[lo, hi], ...] sorted}
inline nlohmann::json poset_to_json(const Poset& P)
{
    std::vector<std::string> el = P.labels();
    std::sort(el.begin(), el.end());
    std::vector<std::pair<std::string, std::string>> cv;
    for (auto [a, b] : P.covers()) cv.emplace_back(P.label(a), P.label(b));
    std::sort(cv.begin(), cv.end());
    nlohmann::json j;
    j["elements"] = el;
    j["covers"] = nlohmann::json::array();
    for (auto& [a, b] : cv) j["covers"].push_back({a, b});
    return j;
}

inline Poset poset_from_json(const nlohmann::json& j)
{
    std::vector<std::string> el;
    for (auto& e : j.at("elements")) el.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    std::vector<std::pair<std::string, std::string>> cv;
    for (auto& c : j.at("covers")) {
        if (!c.is_array() || c.size() != 2) throw poset_error("each cover must be a pair");
        auto s = [](const nlohmann::json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
        cv.emplace_back(s(c[0]), s(c[1]));
    }
    return build_poset(el, cv);
}

// A family spec string, or a path to a poset JSON file.
inline Poset load_poset(const std::string& arg)
{
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        return poset_from_json(nlohmann::json::parse(in));
    }
    return make(arg);
}

} // namespace posetdyn
