#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "vrp/model.hpp"

namespace vrp {

struct DbscanParams {
  double eps = 0.0;     // longest neighborhood radius
  double min_wt = 0.0;  // minimum neighborhood demand to seed a cluster
  double max_wt = 0.0;  // maximum demand one cluster (vehicle) may carry
};

inline void validate_params(const DbscanParams& p, const Instance& inst) {
  if (p.eps < 0.0) throw std::invalid_argument("eps must be non-negative");
  if (!(0.0 < p.min_wt && p.min_wt <= p.max_wt))
    throw std::invalid_argument("require 0 < min_wt <= max_wt");
  if (p.max_wt > inst.capacity + kTol)
    throw std::invalid_argument("max_wt must not exceed vehicle capacity");
}

struct Cluster {
  std::vector<int> member_ids;
  double total_weight = 0.0;
};

struct ClusteringOutcome {
  std::vector<Cluster> clusters;       // includes promoted singletons
  std::vector<int> noise_ids;          // customers promoted to singletons
  DbscanParams params;
  // Admission log: (parent, child) pairs, child admitted because it lies
  // within eps of parent. Seeds have no entry. Lets tests replay the
  // eps-chain connectivity invariant.
  std::vector<std::pair<int, int>> admissions;
};

// Unassigned customers within the closed eps-ball of center, the center
// itself included, sorted by ascending distance then ascending id.
inline std::vector<int> region_query(int center, double eps,
                                     const DistanceMatrix& matrix,
                                     const std::set<int>& unassigned) {
  std::vector<int> out;
  for (int id : unassigned)
    if (matrix.at(center, id) <= eps + kTol) out.push_back(id);
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    double da = matrix.at(center, a), db = matrix.at(center, b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

// Capacity-constrained DBSCAN. Customers are scanned in ascending id
// order; a customer whose eps-neighborhood demand reaches min_wt seeds a
// cluster, which then grows breadth-first, admitting neighbors
// nearest-first while the running weight stays within max_wt. Customers
// never admitted anywhere are noise and become singleton clusters so the
// whole demand set stays servable.
inline ClusteringOutcome capacitated_dbscan(const Instance& inst,
                                            const DbscanParams& params,
                                            const DistanceMatrix& matrix) {
  validate_params(params, inst);
  for (const Node& c : inst.customers)
    if (c.demand > params.max_wt + kTol)
      throw std::invalid_argument("customer " + std::to_string(c.id) +
                                  " demand exceeds max_wt");

  ClusteringOutcome outcome;
  outcome.params = params;

  std::vector<int> scan_order;
  for (const Node& c : inst.customers) scan_order.push_back(c.id);
  std::sort(scan_order.begin(), scan_order.end());

  std::set<int> unassigned(scan_order.begin(), scan_order.end());

  for (int seed : scan_order) {
    if (!unassigned.count(seed)) continue;

    double neighborhood_wt = 0.0;
    for (int id : region_query(seed, params.eps, matrix, unassigned))
      neighborhood_wt += inst.demand_of(id);
    if (neighborhood_wt < params.min_wt) continue;  // not a core point

    Cluster cluster;
    cluster.member_ids.push_back(seed);
    cluster.total_weight = inst.demand_of(seed);
    unassigned.erase(seed);

    std::deque<int> frontier{seed};
    while (!frontier.empty()) {
      int member = frontier.front();
      frontier.pop_front();
      for (int cand : region_query(member, params.eps, matrix, unassigned)) {
        if (!unassigned.count(cand)) continue;  // admitted earlier this pass
        double q = inst.demand_of(cand);
        if (cluster.total_weight + q > params.max_wt + kTol) continue;
        cluster.member_ids.push_back(cand);
        cluster.total_weight += q;
        unassigned.erase(cand);
        frontier.push_back(cand);
        outcome.admissions.emplace_back(member, cand);
      }
    }
    outcome.clusters.push_back(std::move(cluster));
  }

  // Noise promotion, ascending id.
  for (int id : scan_order) {
    if (!unassigned.count(id)) continue;
    outcome.noise_ids.push_back(id);
    outcome.clusters.push_back(Cluster{{id}, inst.demand_of(id)});
  }
  return outcome;
}

}  // namespace vrp
