#pragma once

// JSON renderings of models and interpolation reports.

#include <json.hpp>

#include "interp.hpp"
#include "semantics.hpp"

namespace pdl {

inline nlohmann::ordered_json model_to_json(const KripkeModel& m, int point) {
  nlohmann::ordered_json rels = nlohmann::ordered_json::object();
  for (const auto& [a, rel] : m.relations) {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (auto [i, j] : rel) pairs.push_back({i, j});  // std::set keeps them sorted
    rels[a] = std::move(pairs);
  }
  nlohmann::ordered_json val = nlohmann::ordered_json::object();
  for (const auto& [p, set] : m.valuation) val[p] = nlohmann::ordered_json(std::vector<int>(set.begin(), set.end()));
  nlohmann::ordered_json j;
  j["states"] = m.states;
  j["relations"] = std::move(rels);
  j["valuation"] = std::move(val);
  j["point"] = point;
  return j;
}

inline PointedModel model_from_json(const nlohmann::json& j) {
  PointedModel pm;
  pm.model.states = j.at("states").get<int>();
  for (const auto& [a, pairs] : j.at("relations").items())
    for (const auto& pr : pairs) pm.model.relations[a].emplace(pr.at(0).get<int>(), pr.at(1).get<int>());
  for (const auto& [p, states] : j.at("valuation").items())
    for (const auto& s : states) pm.model.valuation[p].insert(s.get<int>());
  pm.point = j.at("point").get<int>();
  pm.model.validate();
  return pm;
}

inline nlohmann::ordered_json interpolation_to_json(const Formula& th, const InterpolantReport& rep,
                                                    const InterpolationStats& st) {
  nlohmann::ordered_json j;
  j["interpolant"] = to_string(th);
  j["verified"] = {{"voc", rep.voc_ok}, {"left", rep.left_ok}, {"right", rep.right_ok}};
  j["stats"] = {{"tableau_nodes", st.tableau_nodes}, {"clusters", st.clusters}, {"proper_clusters", st.proper_clusters}};
  return j;
}

}  // namespace pdl
