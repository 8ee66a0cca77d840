#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "vrp/model.hpp"

namespace vrp {

namespace detail {

inline void require_keys(const nlohmann::json& obj,
                         std::initializer_list<const char*> keys,
                         const std::string& where) {
  for (const char* k : keys)
    if (!obj.contains(k))
      throw std::invalid_argument(where + ": missing key \"" + k + "\"");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known)
      throw std::invalid_argument(where + ": unknown key \"" + it.key() + "\"");
  }
}

}  // namespace detail

// Instance files reject unknown keys; a malformed file should fail loudly
// rather than be half-read.
inline Instance instance_from_json(const nlohmann::json& j) {
  detail::require_keys(j, {"name", "capacity", "depot", "customers"}, "instance");
  Instance inst;
  inst.name = j.at("name").get<std::string>();
  inst.capacity = j.at("capacity").get<double>();
  const auto& d = j.at("depot");
  detail::require_keys(d, {"id", "x", "y"}, "depot");
  inst.depot = Node{d.at("id").get<int>(), d.at("x").get<double>(),
                    d.at("y").get<double>(), 0.0};
  for (const auto& c : j.at("customers")) {
    detail::require_keys(c, {"id", "x", "y", "demand"}, "customer");
    inst.customers.push_back(Node{c.at("id").get<int>(), c.at("x").get<double>(),
                                  c.at("y").get<double>(),
                                  c.at("demand").get<double>()});
  }
  auto violations = validate_instance(inst);
  if (!violations.empty()) {
    std::string msg = "invalid instance:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  return inst;
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["name"] = inst.name;
  j["capacity"] = inst.capacity;
  j["depot"] = {{"id", inst.depot.id}, {"x", inst.depot.x}, {"y", inst.depot.y}};
  j["customers"] = nlohmann::json::array();
  for (const Node& c : inst.customers)
    j["customers"].push_back(
        {{"id", c.id}, {"x", c.x}, {"y", c.y}, {"demand", c.demand}});
  return j;
}

inline nlohmann::json solution_to_json(const Solution& sol) {
  nlohmann::json j;
  j["method"] = sol.method;
  j["total_cost"] = sol.total_cost;
  j["routes"] = nlohmann::json::array();
  for (const Route& r : sol.routes)
    j["routes"].push_back(
        {{"customers", r.customer_ids}, {"load", r.load}, {"cost", r.cost}});
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : sol.params) params[k] = v;
  if (sol.method == "exact") params["optimal"] = sol.optimal ? "true" : "false";
  j["params"] = params;
  return j;
}

// Solution files tolerate unknown keys (forward compatibility of reports).
inline Solution solution_from_json(const nlohmann::json& j) {
  Solution sol;
  sol.method = j.at("method").get<std::string>();
  sol.total_cost = j.at("total_cost").get<double>();
  for (const auto& r : j.at("routes")) {
    Route route;
    route.customer_ids = r.at("customers").get<std::vector<int>>();
    route.load = r.at("load").get<double>();
    route.cost = r.at("cost").get<double>();
    sol.routes.push_back(std::move(route));
  }
  if (j.contains("params"))
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
      std::string v = it.value().is_string() ? it.value().get<std::string>()
                                             : it.value().dump();
      if (it.key() == "optimal")
        sol.optimal = v == "true";
      else
        sol.params[it.key()] = v;
    }
  return sol;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return instance_from_json(j);
}

inline Solution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return solution_from_json(j);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << text;
}

inline void save_instance(const std::string& path, const Instance& inst) {
  write_text(path, instance_to_json(inst).dump(2) + "\n");
}

inline void save_solution(const std::string& path, const Solution& sol) {
  write_text(path, solution_to_json(sol).dump(2) + "\n");
}

}  // namespace vrp
