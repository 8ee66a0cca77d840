#pragma once

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vrp/christofides.hpp"
#include "vrp/dbscan.hpp"
#include "vrp/exact.hpp"
#include "vrp/model.hpp"
#include "vrp/savings.hpp"

namespace vrp {

namespace detail {

inline std::string format_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

// Cluster-first-route-second: capacitated DBSCAN partitions the
// customers, then each cluster (plus the depot) is routed with
// Christofides. A tour and its reversal are the same cycle; the
// lexicographically smaller customer sequence is reported.
inline Solution cluster_first_route_second(const Instance& inst,
                                           const DbscanParams& params,
                                           const DistanceMatrix& matrix) {
  ClusteringOutcome clustering = capacitated_dbscan(inst, params, matrix);

  Solution sol;
  sol.method = "cluster-route";
  sol.params["eps"] = detail::format_param(params.eps);
  sol.params["min_wt"] = detail::format_param(params.min_wt);
  sol.params["max_wt"] = detail::format_param(params.max_wt);

  for (std::size_t k = 0; k < clustering.clusters.size(); ++k) {
    const Cluster& cluster = clustering.clusters[k];
    std::vector<int> subset = cluster.member_ids;
    subset.push_back(0);
    Tour tour;
    try {
      tour = christofides_tour(subset, matrix);
    } catch (const SizeLimitError& e) {
      throw SizeLimitError("cluster " + std::to_string(k) + ": " + e.what());
    }
    std::vector<int> forward(tour.order.begin() + 1, tour.order.end());
    std::vector<int> backward(forward.rbegin(), forward.rend());
    sol.routes.push_back(
        make_route(backward < forward ? backward : forward, inst, matrix));
  }
  finalize_total(sol);
  return sol;
}

struct MethodResult {
  std::string method;
  bool ran = false;
  std::string skip_reason;
  double total_cost = 0.0;
  std::size_t route_count = 0;
  double wall_ms = 0.0;
  bool optimal = true;
  bool winner = false;  // lowest cost among the methods that ran
};

struct ComparisonReport {
  std::string instance_name;
  std::vector<MethodResult> results;
};

// Runs each requested method, validates its output, and reports cost,
// route count, and wall time. A method that trips a size limit is
// reported as skipped rather than aborting the comparison.
inline ComparisonReport run_compare(const Instance& inst,
                                    const DistanceMatrix& matrix,
                                    const std::vector<std::string>& methods,
                                    const DbscanParams& params,
                                    std::uint64_t node_limit = kDefaultNodeLimit) {
  ComparisonReport report;
  report.instance_name = inst.name;

  for (const std::string& method : methods) {
    MethodResult res;
    res.method = method;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Solution sol;
      if (method == "savings")
        sol = clarke_wright(inst, matrix);
      else if (method == "cluster-route")
        sol = cluster_first_route_second(inst, params, matrix);
      else if (method == "exact")
        sol = solve_exact(inst, matrix, node_limit);
      else
        throw std::invalid_argument("unknown method \"" + method + "\"");

      auto violations = check_solution_feasibility(sol, inst, matrix);
      if (!violations.empty())
        throw InvariantError(method + " produced an infeasible solution: " +
                             violations.front());
      res.ran = true;
      res.total_cost = sol.total_cost;
      res.route_count = sol.routes.size();
      res.optimal = sol.optimal;
    } catch (const SizeLimitError& e) {
      res.skip_reason = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    res.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.results.push_back(res);
  }

  double best = std::numeric_limits<double>::infinity();
  for (const MethodResult& r : report.results)
    if (r.ran) best = std::min(best, r.total_cost);
  double exact_cost = std::numeric_limits<double>::quiet_NaN();
  bool exact_optimal = false;
  for (MethodResult& r : report.results) {
    if (r.ran && r.total_cost <= best + kTol) r.winner = true;
    if (r.method == "exact" && r.ran) {
      exact_cost = r.total_cost;
      exact_optimal = r.optimal;
    }
  }
  if (exact_optimal)
    for (const MethodResult& r : report.results)
      if (r.ran && exact_cost > r.total_cost + kTol)
        throw InvariantError("exact solution is not the cheapest despite optimality");
  return report;
}

inline nlohmann::json report_to_json(const ComparisonReport& report) {
  nlohmann::json j;
  j["instance"] = report.instance_name;
  j["methods"] = nlohmann::json::array();
  for (const MethodResult& r : report.results) {
    nlohmann::json m;
    m["method"] = r.method;
    if (r.ran) {
      m["total_cost"] = r.total_cost;
      m["route_count"] = r.route_count;
      m["wall_ms"] = r.wall_ms;
      if (r.method == "exact") m["optimal"] = r.optimal;
      m["winner"] = r.winner;
    } else {
      m["skipped"] = r.skip_reason;
    }
    j["methods"].push_back(m);
  }
  return j;
}

}  // namespace vrp
