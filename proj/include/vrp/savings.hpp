#pragma once

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <vector>

#include "vrp/model.hpp"

namespace vrp {

// Saving for serving i and j on one route instead of two out-and-back
// trips: S_ij = D_0i + D_0j - D_ij. Always i < j.
struct SavingsEntry {
  int i = 0;
  int j = 0;
  double s = 0.0;
};

// One entry per unordered customer pair, sorted by saving descending,
// ties by ascending (i, j). Euclidean savings are non-negative up to
// floating-point noise; small negatives are clamped to zero.
inline std::vector<SavingsEntry> compute_savings(const DistanceMatrix& matrix) {
  std::vector<int> customers(matrix.ids().begin() + 1, matrix.ids().end());
  std::sort(customers.begin(), customers.end());
  std::vector<SavingsEntry> entries;
  if (customers.size() < 2) return entries;
  entries.reserve(customers.size() * (customers.size() - 1) / 2);
  for (std::size_t a = 0; a < customers.size(); ++a)
    for (std::size_t b = a + 1; b < customers.size(); ++b) {
      int i = customers[a], j = customers[b];
      double s = matrix.at(0, i) + matrix.at(0, j) - matrix.at(i, j);
      entries.push_back({i, j, std::max(0.0, s)});
    }
  std::sort(entries.begin(), entries.end(),
            [](const SavingsEntry& a, const SavingsEntry& b) {
              if (a.s != b.s) return a.s > b.s;
              if (a.i != b.i) return a.i < b.i;
              return a.j < b.j;
            });
  return entries;
}

struct MergeRecord {
  int i = 0;
  int j = 0;
  double saving = 0.0;
  double realized = 0.0;  // cost before merge minus cost after
};

struct SavingsRun {
  Solution solution;
  std::vector<MergeRecord> merges;
};

// Clarke-Wright parallel savings. Starts from one out-and-back route per
// customer and walks the sorted savings list, merging the routes of i and
// j when they are in different routes, both are depot-adjacent endpoints,
// and the combined load fits the vehicle. Entries that fail any condition
// are discarded.
inline SavingsRun clarke_wright_detailed(const Instance& inst,
                                         const DistanceMatrix& matrix) {
  SavingsRun run;

  std::vector<std::deque<int>> routes;
  std::vector<double> loads;
  std::unordered_map<int, int> route_of;
  for (const Node& c : inst.customers) {
    route_of[c.id] = static_cast<int>(routes.size());
    routes.push_back({c.id});
    loads.push_back(c.demand);
  }

  auto is_endpoint = [&](int route, int id) {
    return routes[route].front() == id || routes[route].back() == id;
  };

  for (const SavingsEntry& e : compute_savings(matrix)) {
    int ri = route_of[e.i], rj = route_of[e.j];
    if (ri == rj) continue;
    if (!is_endpoint(ri, e.i) || !is_endpoint(rj, e.j)) continue;
    if (loads[ri] + loads[rj] > inst.capacity + kTol) continue;

    double before = route_cost(std::vector<int>(routes[ri].begin(), routes[ri].end()), matrix) +
                    route_cost(std::vector<int>(routes[rj].begin(), routes[rj].end()), matrix);

    // Orient so i sits at the tail of its route and j at the head of its.
    if (routes[ri].front() == e.i)
      std::reverse(routes[ri].begin(), routes[ri].end());
    if (routes[rj].back() == e.j)
      std::reverse(routes[rj].begin(), routes[rj].end());
    for (int id : routes[rj]) {
      routes[ri].push_back(id);
      route_of[id] = ri;
    }
    loads[ri] += loads[rj];
    routes[rj].clear();
    loads[rj] = 0.0;

    double after =
        route_cost(std::vector<int>(routes[ri].begin(), routes[ri].end()), matrix);
    run.merges.push_back({e.i, e.j, e.s, before - after});
  }

  run.solution.method = "savings";
  for (const auto& r : routes) {
    if (r.empty()) continue;
    run.solution.routes.push_back(
        make_route(std::vector<int>(r.begin(), r.end()), inst, matrix));
  }
  finalize_total(run.solution);
  return run;
}

inline Solution clarke_wright(const Instance& inst, const DistanceMatrix& matrix) {
  return clarke_wright_detailed(inst, matrix).solution;
}

}  // namespace vrp
