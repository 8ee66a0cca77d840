#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "vrp/errors.hpp"
#include "vrp/rng.hpp"

namespace vrp {

inline constexpr double kTol = 1e-9;

struct Node {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;
};

inline double euclidean_distance(const Node& a, const Node& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// A single-depot capacitated routing instance. The depot is always id 0
// with zero demand; customers carry positive demands not exceeding the
// vehicle capacity.
struct Instance {
  std::string name;
  Node depot;
  std::vector<Node> customers;
  double capacity = 0.0;

  const Node* find(int id) const {
    if (id == depot.id) return &depot;
    for (const Node& c : customers)
      if (c.id == id) return &c;
    return nullptr;
  }

  double demand_of(int id) const {
    const Node* n = find(id);
    if (!n) throw std::invalid_argument("unknown node id " + std::to_string(id));
    return n->demand;
  }

  double total_demand() const {
    double s = 0.0;
    for (const Node& c : customers) s += c.demand;
    return s;
  }
};

// Dense symmetric Euclidean distance matrix over depot + customers,
// addressable by vertex id (ids need not be contiguous).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  explicit DistanceMatrix(const Instance& inst) {
    std::vector<Node> verts;
    verts.push_back(inst.depot);
    verts.insert(verts.end(), inst.customers.begin(), inst.customers.end());
    ids_.reserve(verts.size());
    for (std::size_t k = 0; k < verts.size(); ++k) {
      ids_.push_back(verts[k].id);
      index_[verts[k].id] = k;
    }
    n_ = verts.size();
    d_.assign(n_ * n_, 0.0);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = a + 1; b < n_; ++b) {
        double w = euclidean_distance(verts[a], verts[b]);
        d_[a * n_ + b] = w;
        d_[b * n_ + a] = w;
      }
  }

  std::size_t size() const { return n_; }

  bool contains(int id) const { return index_.count(id) != 0; }

  double at(int id_a, int id_b) const {
    auto a = index_.find(id_a);
    auto b = index_.find(id_b);
    if (a == index_.end() || b == index_.end())
      throw std::invalid_argument("id not in matrix: " +
                                  std::to_string(a == index_.end() ? id_a : id_b));
    return d_[a->second * n_ + b->second];
  }

  // Vertex ids in matrix order: depot first, then customers in instance order.
  const std::vector<int>& ids() const { return ids_; }

 private:
  std::size_t n_ = 0;
  std::vector<int> ids_;
  std::unordered_map<int, std::size_t> index_;
  std::vector<double> d_;
};

inline DistanceMatrix build_distance_matrix(const Instance& inst) {
  return DistanceMatrix(inst);
}

// A route is the ordered customer sequence of one vehicle; the depot
// bracketing (depot -> c_1 -> ... -> c_k -> depot) is implicit.
struct Route {
  std::vector<int> customer_ids;
  double load = 0.0;
  double cost = 0.0;
};

struct Solution {
  std::vector<Route> routes;
  double total_cost = 0.0;
  std::string method;                           // savings | cluster-route | exact
  std::map<std::string, std::string> params;    // parameters that produced it
  bool optimal = true;                          // only meaningful for exact
};

inline double route_cost(const std::vector<int>& customer_ids,
                         const DistanceMatrix& matrix) {
  if (customer_ids.empty())
    throw std::invalid_argument("route must contain at least one customer");
  double c = matrix.at(0, customer_ids.front());
  for (std::size_t t = 0; t + 1 < customer_ids.size(); ++t)
    c += matrix.at(customer_ids[t], customer_ids[t + 1]);
  c += matrix.at(customer_ids.back(), 0);
  return c;
}

inline double route_cost(const Route& route, const DistanceMatrix& matrix) {
  return route_cost(route.customer_ids, matrix);
}

// Violations are reported as data, not thrown; an empty list means valid.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> violations;
  if (inst.capacity <= 0.0)
    violations.push_back("capacity must be positive");
  if (inst.depot.id != 0)
    violations.push_back("depot id must be 0");
  if (inst.depot.demand != 0.0)
    violations.push_back("depot demand must be 0");
  std::set<int> seen{inst.depot.id};
  for (const Node& c : inst.customers) {
    if (!seen.insert(c.id).second)
      violations.push_back("duplicate id " + std::to_string(c.id));
    if (c.demand <= 0.0)
      violations.push_back("customer " + std::to_string(c.id) +
                           " demand must be positive");
    else if (c.demand > inst.capacity)
      violations.push_back("customer " + std::to_string(c.id) +
                           " demand exceeds capacity");
  }
  return violations;
}

inline bool nearly_equal(double a, double b, double tol = kTol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Checks the partition property, per-route capacity, and that stored
// loads/costs agree with recomputation from the matrix.
inline std::vector<std::string> check_solution_feasibility(
    const Solution& sol, const Instance& inst, const DistanceMatrix& matrix) {
  std::vector<std::string> violations;
  std::map<int, int> visits;
  for (std::size_t r = 0; r < sol.routes.size(); ++r) {
    const Route& route = sol.routes[r];
    std::string tag = "route " + std::to_string(r);
    if (route.customer_ids.empty()) {
      violations.push_back(tag + " is empty");
      continue;
    }
    double load = 0.0;
    bool known = true;
    for (int id : route.customer_ids) {
      const Node* n = inst.find(id);
      if (!n || id == 0) {
        violations.push_back(tag + " references unknown customer " +
                             std::to_string(id));
        known = false;
        continue;
      }
      load += n->demand;
      ++visits[id];
    }
    if (!known) continue;
    if (load > inst.capacity + kTol)
      violations.push_back("capacity exceeded on " + tag);
    if (!nearly_equal(route.load, load))
      violations.push_back(tag + " stored load mismatch");
    double cost = route_cost(route, matrix);
    if (!nearly_equal(route.cost, cost))
      violations.push_back(tag + " stored cost mismatch");
  }
  for (const Node& c : inst.customers) {
    auto it = visits.find(c.id);
    if (it == visits.end())
      violations.push_back("customer " + std::to_string(c.id) + " unserved");
    else if (it->second > 1)
      violations.push_back("customer " + std::to_string(c.id) +
                           " served more than once");
  }
  double total = 0.0;
  for (const Route& r : sol.routes) total += r.cost;
  if (!nearly_equal(sol.total_cost, total))
    violations.push_back("total_cost mismatch");
  return violations;
}

// Builds a Route from an ordered customer sequence, computing load and cost.
inline Route make_route(std::vector<int> customer_ids, const Instance& inst,
                        const DistanceMatrix& matrix) {
  Route r;
  r.customer_ids = std::move(customer_ids);
  for (int id : r.customer_ids) r.load += inst.demand_of(id);
  r.cost = route_cost(r, matrix);
  return r;
}

inline void finalize_total(Solution& sol) {
  sol.total_cost = 0.0;
  for (const Route& r : sol.routes) sol.total_cost += r.cost;
}

// Seeded instance generator. Deterministic across platforms (splitmix64).
// Depot sits at the midpoint of the coordinate range; customer ids are
// 1..n; per customer the draws are x, y, demand in that order.
inline Instance generate_instance(std::uint64_t seed, int n, double capacity,
                                  double demand_lo, double demand_hi,
                                  double coord_lo, double coord_hi) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (capacity <= 0.0) throw std::invalid_argument("capacity must be positive");
  if (!(0.0 < demand_lo && demand_lo <= demand_hi && demand_hi <= capacity))
    throw std::invalid_argument("demand range must satisfy 0 < lo <= hi <= capacity");
  if (!(coord_lo <= coord_hi))
    throw std::invalid_argument("coordinate range must satisfy lo <= hi");

  SplitMix64 rng(seed);
  Instance inst;
  std::ostringstream name;
  name << "gen-s" << seed << "-n" << n;
  inst.name = name.str();
  inst.capacity = capacity;
  inst.depot = Node{0, (coord_lo + coord_hi) / 2.0, (coord_lo + coord_hi) / 2.0, 0.0};
  inst.customers.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    Node c;
    c.id = i;
    c.x = rng.uniform(coord_lo, coord_hi);
    c.y = rng.uniform(coord_lo, coord_hi);
    c.demand = rng.uniform(demand_lo, demand_hi);
    inst.customers.push_back(c);
  }
  return inst;
}

}  // namespace vrp
