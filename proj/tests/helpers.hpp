#pragma once

#include <vector>

#include "vrp/model.hpp"

namespace vrp::test {

// Instance from explicit customer tuples (id, x, y, demand); depot at the
// given coordinates.
inline Instance make_instance(double depot_x, double depot_y, double capacity,
                              const std::vector<Node>& customers,
                              const std::string& name = "test") {
  Instance inst;
  inst.name = name;
  inst.capacity = capacity;
  inst.depot = Node{0, depot_x, depot_y, 0.0};
  inst.customers = customers;
  return inst;
}

// Four unit-demand customers at the corners of a 2x2 square, depot at the
// center.
inline Instance square_instance(double capacity) {
  return make_instance(0.0, 0.0, capacity,
                       {Node{1, 1.0, 1.0, 1.0}, Node{2, 1.0, -1.0, 1.0},
                        Node{3, -1.0, -1.0, 1.0}, Node{4, -1.0, 1.0, 1.0}},
                       "square");
}

}  // namespace vrp::test
