#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "vrp/christofides.hpp"
#include "vrp/errors.hpp"
#include "vrp/model.hpp"
#include "vrp/savings.hpp"

namespace vrp {

// The arc-based formulation: binary arc variables x_ij over all ordered
// vertex pairs, load variables u_i per client, capacity Q.
struct ExactModel {
  std::vector<int> vertices;                 // depot 0 first, clients ascending
  std::vector<std::pair<int, int>> arcs;     // {(i,j) in V^2, i != j}
  std::map<int, double> demand;              // clients only
  double capacity = 0.0;
  const DistanceMatrix* matrix = nullptr;

  double cost(int i, int j) const { return matrix->at(i, j); }
};

struct ArcAssignment {
  std::set<std::pair<int, int>> arcs;  // the x_ij = 1 arcs
  std::map<int, double> loads;         // client id -> u_i
};

inline ExactModel build_model(const Instance& inst, const DistanceMatrix& matrix) {
  ExactModel model;
  model.vertices.push_back(0);
  for (const Node& c : inst.customers) model.vertices.push_back(c.id);
  std::sort(model.vertices.begin() + 1, model.vertices.end());
  for (int i : model.vertices)
    for (int j : model.vertices)
      if (i != j) model.arcs.emplace_back(i, j);
  for (const Node& c : inst.customers) model.demand[c.id] = c.demand;
  model.capacity = inst.capacity;
  model.matrix = &matrix;
  return model;
}

// Verifies the formulation's constraint families against an assignment:
// unit out/in degree per client, load propagation u_i + q_j = u_j on
// selected client-to-client arcs, load bounds q_i <= u_i <= Q. The MTZ
// equalities already rule out depot-free client cycles; an explicit
// follow-the-arcs walk to the depot is kept as a cross-check.
inline std::vector<std::string> check_assignment(const ExactModel& model,
                                                 const ArcAssignment& assignment) {
  std::vector<std::string> violations;

  std::map<int, int> out_deg, in_deg;
  std::map<int, int> next;  // successor along selected arcs
  for (const auto& [i, j] : assignment.arcs) {
    if (i == j || !model.matrix->contains(i) || !model.matrix->contains(j)) {
      violations.push_back("arc (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is not in the arc set");
      continue;
    }
    ++out_deg[i];
    ++in_deg[j];
    if (i != 0) next[i] = j;
  }

  for (int v : model.vertices) {
    if (v == 0) continue;
    if (out_deg[v] != 1)
      violations.push_back("client " + std::to_string(v) + " has out-degree " +
                           std::to_string(out_deg[v]) + ", expected 1");
    if (in_deg[v] != 1)
      violations.push_back("client " + std::to_string(v) + " has in-degree " +
                           std::to_string(in_deg[v]) + ", expected 1");
  }

  for (const auto& [client, q] : model.demand) {
    auto it = assignment.loads.find(client);
    if (it == assignment.loads.end()) {
      violations.push_back("client " + std::to_string(client) + " has no load value");
      continue;
    }
    if (it->second < q - kTol || it->second > model.capacity + kTol)
      violations.push_back("load bound violated for client " + std::to_string(client));
  }

  for (const auto& [i, j] : assignment.arcs) {
    if (i == 0 || j == 0) continue;
    auto ui = assignment.loads.find(i);
    auto uj = assignment.loads.find(j);
    if (ui == assignment.loads.end() || uj == assignment.loads.end()) continue;
    if (std::abs(ui->second + model.demand.at(j) - uj->second) > kTol)
      violations.push_back("load propagation violated on (" + std::to_string(i) +
                           "," + std::to_string(j) + ")");
  }

  // Redundant reachability cross-check: every client must reach the depot
  // by following selected arcs.
  std::size_t n = model.vertices.size();
  for (int v : model.vertices) {
    if (v == 0) continue;
    int cur = v;
    std::size_t steps = 0;
    while (cur != 0 && steps <= n) {
      auto it = next.find(cur);
      if (it == next.end()) break;
      cur = it->second;
      ++steps;
    }
    if (cur != 0)
      violations.push_back("client " + std::to_string(v) +
                           " does not reach the depot");
  }
  return violations;
}

// Loads along a route are the running demand prefix sums: the unique
// values satisfying u_i + q_j = u_j with u_first = q_first.
inline ArcAssignment assignment_from_solution(const Solution& sol,
                                              const Instance& inst) {
  ArcAssignment a;
  for (const Route& r : sol.routes) {
    if (r.customer_ids.empty()) continue;
    int prev = 0;
    double load = 0.0;
    for (int c : r.customer_ids) {
      a.arcs.emplace(prev, c);
      load += inst.demand_of(c);
      a.loads[c] = load;
      prev = c;
    }
    a.arcs.emplace(prev, 0);
  }
  return a;
}

namespace detail {

struct BranchState {
  const Instance* inst;
  const DistanceMatrix* matrix;
  std::vector<int> clients;             // ascending
  std::map<int, double> demand;
  std::map<int, double> cheapest_half;  // (e1+e2)/2 over the two cheapest incident edges
  std::uint64_t node_budget;
  std::uint64_t nodes = 0;
  bool budget_hit = false;

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> best_routes;

  std::vector<std::vector<int>> routes;  // finished routes of the partial solution
  std::vector<int> current;              // open route, possibly empty
  double current_load = 0.0;
  double partial_cost = 0.0;             // finished routes + open legs so far
  std::set<int> unserved;
  int open_min = -1;  // lowest-id client unserved when the open route started

  double lower_bound() const {
    double lb = 0.0;
    for (int c : unserved) lb += cheapest_half.at(c);
    return lb;
  }

  void record_if_better() {
    if (partial_cost < best_cost - kTol) {
      best_cost = partial_cost;
      best_routes = routes;
    }
  }

  void search() {
    if (budget_hit) return;
    if (++nodes > node_budget) {
      budget_hit = true;
      return;
    }
    if (unserved.empty() && current.empty()) {
      record_if_better();
      return;
    }
    if (partial_cost + lower_bound() >= best_cost - kTol) return;

    // Route-order symmetry: a route may only close once it has served the
    // lowest-id client that was unserved when it opened, so route k always
    // contains the smallest client outside routes 1..k-1. Reversal
    // symmetry: first visited id must be below last visited id.
    if (!current.empty() && unserved.count(open_min) == 0 &&
        (current.size() == 1 || current.front() < current.back()))
      close_route();

    std::vector<int> candidates(unserved.begin(), unserved.end());
    for (int c : candidates) {
      if (current_load + demand.at(c) > inst->capacity + kTol) continue;
      extend(c);
    }
  }

  void extend(int c) {
    int saved_min = open_min;
    if (current.empty()) open_min = *unserved.begin();
    int prev = current.empty() ? 0 : current.back();
    double leg = matrix->at(prev, c);
    current.push_back(c);
    current_load += demand.at(c);
    partial_cost += leg;
    unserved.erase(c);
    search();
    unserved.insert(c);
    partial_cost -= leg;
    current_load -= demand.at(c);
    current.pop_back();
    open_min = saved_min;
  }

  void close_route() {
    double leg = matrix->at(current.back(), 0);
    partial_cost += leg;
    routes.push_back(current);
    std::vector<int> saved = std::move(current);
    double saved_load = current_load;
    current.clear();
    current_load = 0.0;
    search();
    current = std::move(saved);
    current_load = saved_load;
    routes.pop_back();
    partial_cost -= leg;
  }
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultNodeLimit = 10'000'000;

// Exact solver for the arc formulation via depth-first branch-and-bound
// over routes. Prunes on capacity and on an admissible bound: each
// unserved client still needs two incident edges, each at least its
// cheapest, and every edge is shared by two endpoints, giving
// sum((e1+e2)/2) as a valid completion bound. The Clarke-Wright solution
// seeds the incumbent. If the node budget runs out the incumbent is
// returned flagged non-optimal.
inline Solution solve_exact(const Instance& inst, const DistanceMatrix& matrix,
                            std::uint64_t node_limit = kDefaultNodeLimit) {
  auto violations = validate_instance(inst);
  if (!violations.empty())
    throw std::invalid_argument("infeasible instance: " + violations.front());

  Solution seed = clarke_wright(inst, matrix);

  detail::BranchState state;
  state.inst = &inst;
  state.matrix = &matrix;
  state.node_budget = node_limit;
  for (const Node& c : inst.customers) {
    state.clients.push_back(c.id);
    state.demand[c.id] = c.demand;
  }
  std::sort(state.clients.begin(), state.clients.end());
  state.unserved.insert(state.clients.begin(), state.clients.end());

  for (int c : state.clients) {
    double e1 = std::numeric_limits<double>::infinity();
    double e2 = std::numeric_limits<double>::infinity();
    for (int v : matrix.ids()) {
      if (v == c) continue;
      double w = matrix.at(c, v);
      if (w < e1) {
        e2 = e1;
        e1 = w;
      } else if (w < e2) {
        e2 = w;
      }
    }
    if (!std::isfinite(e2)) e2 = e1;  // single-client instance
    state.cheapest_half[c] = (e1 + e2) / 2.0;
  }

  state.best_cost = seed.total_cost;
  for (const Route& r : seed.routes) state.best_routes.push_back(r.customer_ids);

  if (!state.clients.empty()) state.search();

  Solution sol;
  sol.method = "exact";
  sol.optimal = !state.budget_hit;
  sol.params["node_limit"] = std::to_string(node_limit);
  sol.params["nodes"] = std::to_string(state.nodes);
  std::sort(state.best_routes.begin(), state.best_routes.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  for (const auto& ids : state.best_routes)
    sol.routes.push_back(make_route(ids, inst, matrix));
  finalize_total(sol);
  return sol;
}

inline constexpr std::size_t kPartitionOracleLimit = 8;

namespace detail {

inline void enumerate_partitions(
    const std::vector<int>& clients, std::size_t idx,
    std::vector<std::vector<int>>& groups,
    const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
  if (idx == clients.size()) {
    emit(groups);
    return;
  }
  int c = clients[idx];
  // Index-based: the recursive call grows `groups`, which may reallocate.
  for (std::size_t gi = 0, n = groups.size(); gi < n; ++gi) {
    groups[gi].push_back(c);
    enumerate_partitions(clients, idx + 1, groups, emit);
    groups[gi].pop_back();
  }
  groups.push_back({c});
  enumerate_partitions(clients, idx + 1, groups, emit);
  groups.pop_back();
}

}  // namespace detail

// Independent oracle: enumerates every set partition of the clients,
// keeps capacity-feasible ones, orders each group optimally with the
// brute-force TSP, and returns the cheapest total. Ties resolved by the
// lexicographically smallest sorted route structure.
inline Solution brute_force_partition_oracle(const Instance& inst,
                                             const DistanceMatrix& matrix) {
  if (inst.customers.size() > kPartitionOracleLimit)
    throw SizeLimitError("partition oracle limited to " +
                         std::to_string(kPartitionOracleLimit) + " clients, got " +
                         std::to_string(inst.customers.size()));

  std::vector<int> clients;
  std::map<int, double> demand;
  for (const Node& c : inst.customers) {
    clients.push_back(c.id);
    demand[c.id] = c.demand;
  }
  std::sort(clients.begin(), clients.end());

  // Memoized optimal open-at-depot tour per client group.
  std::map<std::vector<int>, Tour> tsp_cache;
  auto group_tour = [&](std::vector<int> group) -> const Tour& {
    std::sort(group.begin(), group.end());
    auto it = tsp_cache.find(group);
    if (it == tsp_cache.end()) {
      std::vector<int> subset = group;
      subset.push_back(0);
      it = tsp_cache.emplace(group, brute_force_tsp(subset, matrix)).first;
    }
    return it->second;
  };

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> best_structure;

  std::vector<std::vector<int>> groups;
  detail::enumerate_partitions(
      clients, 0, groups, [&](const std::vector<std::vector<int>>& partition) {
        double cost = 0.0;
        std::vector<std::vector<int>> structure;
        for (const auto& g : partition) {
          double load = 0.0;
          for (int c : g) load += demand.at(c);
          if (load > inst.capacity + kTol) return;
          const Tour& t = group_tour(g);
          cost += t.length;
          // Tour order starts at depot; strip it for the route.
          std::vector<int> route(t.order.begin() + 1, t.order.end());
          structure.push_back(route);
        }
        std::sort(structure.begin(), structure.end());
        if (cost < best_cost - kTol ||
            (std::abs(cost - best_cost) <= kTol && structure < best_structure)) {
          best_cost = cost;
          best_structure = structure;
        }
      });

  Solution sol;
  sol.method = "exact";
  sol.params["oracle"] = "partition-enumeration";
  for (const auto& ids : best_structure)
    sol.routes.push_back(make_route(ids, inst, matrix));
  finalize_total(sol);
  return sol;
}

}  // namespace vrp
