#include <catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"
#include "vrp/christofides.hpp"

using namespace vrp;
using vrp::test::make_instance;
using Catch::Matchers::WithinAbs;

namespace {

double edge_weight_sum(const EdgeList& edges) {
  double w = 0.0;
  for (const Edge& e : edges) w += e.w;
  return w;
}

// Exhaustive minimum perfect matching, independent of the DP.
double enumerate_matching_weight(std::vector<int> verts, const DistanceMatrix& m) {
  if (verts.empty()) return 0.0;
  int a = verts.front();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < verts.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t t = 1; t < verts.size(); ++t)
      if (t != k) rest.push_back(verts[t]);
    best = std::min(best, m.at(a, verts[k]) + enumerate_matching_weight(rest, m));
  }
  return best;
}

Instance random_subset_instance(std::uint64_t seed, int n) {
  return generate_instance(seed, n, 1000, 1, 1, 0, 100);
}

}  // namespace

TEST_CASE("minimum spanning tree") {
  SECTION("single vertex") {
    auto inst = make_instance(0, 0, 10, {});
    DistanceMatrix m(inst);
    CHECK(minimum_spanning_tree({0}, m).empty());
  }
  SECTION("3-4-5 triangle keeps the two short edges") {
    auto inst = make_instance(0, 0, 10, {Node{1, 3, 0, 1}, Node{2, 0, 4, 1}});
    DistanceMatrix m(inst);
    auto tree = minimum_spanning_tree({0, 1, 2}, m);
    REQUIRE(tree.size() == 2);
    CHECK_THAT(edge_weight_sum(tree), WithinAbs(7.0, 1e-12));
  }
  SECTION("collinear unit spacing") {
    auto inst = make_instance(0, 0, 10, {Node{1, 1, 0, 1}, Node{2, 2, 0, 1}});
    DistanceMatrix m(inst);
    auto tree = minimum_spanning_tree({0, 1, 2}, m);
    REQUIRE(tree.size() == 2);
    CHECK_THAT(edge_weight_sum(tree), WithinAbs(2.0, 1e-12));
  }
  SECTION("empty subset rejected") {
    auto inst = make_instance(0, 0, 10, {});
    DistanceMatrix m(inst);
    CHECK_THROWS_AS(minimum_spanning_tree({}, m), std::invalid_argument);
  }
}

TEST_CASE("odd degree vertices") {
  SECTION("path endpoints") {
    EdgeList path{{1, 2, 1.0}, {2, 3, 1.0}};
    CHECK(odd_degree_vertices(path) == std::vector<int>{1, 3});
  }
  SECTION("star is all-odd") {
    EdgeList star{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}};
    CHECK(odd_degree_vertices(star) == std::vector<int>{0, 1, 2, 3});
  }
  SECTION("empty tree") {
    CHECK(odd_degree_vertices({}).empty());
  }
  SECTION("handshake lemma on generated trees") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      auto inst = random_subset_instance(seed, 9);
      DistanceMatrix m(inst);
      auto tree = minimum_spanning_tree(m.ids(), m);
      CHECK(odd_degree_vertices(tree).size() % 2 == 0);
    }
  }
}

TEST_CASE("minimum weight perfect matching") {
  SECTION("pair") {
    auto inst = make_instance(0, 0, 10, {Node{1, 1, 0, 1}, Node{2, 5, 0, 1}});
    DistanceMatrix m(inst);
    auto pairs = min_weight_perfect_matching({1, 2}, m);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == std::pair<int, int>{1, 2});
  }
  SECTION("four collinear points pair up adjacently") {
    auto inst = make_instance(10, 10, 10,
                              {Node{1, 0, 0, 1}, Node{2, 1, 0, 1},
                               Node{3, 2, 0, 1}, Node{4, 3, 0, 1}});
    DistanceMatrix m(inst);
    auto pairs = min_weight_perfect_matching({1, 2, 3, 4}, m);
    REQUIRE(pairs.size() == 2);
    CHECK_THAT(matching_weight(pairs, m), WithinAbs(2.0, 1e-12));
    CHECK(pairs[0] == std::pair<int, int>{1, 2});
    CHECK(pairs[1] == std::pair<int, int>{3, 4});
  }
  SECTION("empty set") {
    auto inst = make_instance(0, 0, 10, {});
    DistanceMatrix m(inst);
    CHECK(min_weight_perfect_matching({}, m).empty());
  }
  SECTION("odd cardinality rejected") {
    auto inst = make_instance(0, 0, 10, {Node{1, 1, 0, 1}});
    DistanceMatrix m(inst);
    CHECK_THROWS_AS(min_weight_perfect_matching({0, 1, 99}, m),
                    std::invalid_argument);
  }
  SECTION("size limit enforced") {
    std::vector<Node> customers;
    std::vector<int> odd;
    for (int i = 1; i <= 18; ++i) {
      customers.push_back(Node{i, static_cast<double>(i), 0, 1});
      odd.push_back(i);
    }
    auto inst = make_instance(0, 0, 100, customers);
    DistanceMatrix m(inst);
    CHECK_THROWS_AS(min_weight_perfect_matching(odd, m), SizeLimitError);
  }
  SECTION("DP equals exhaustive enumeration up to 8 vertices") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      for (int k : {2, 4, 6, 8}) {
        auto inst = random_subset_instance(seed * 31 + k, k);
        DistanceMatrix m(inst);
        std::vector<int> verts;
        for (const Node& c : inst.customers) verts.push_back(c.id);
        auto pairs = min_weight_perfect_matching(verts, m);
        CHECK_THAT(matching_weight(pairs, m),
                   WithinAbs(enumerate_matching_weight(verts, m), 1e-9));
        // perfect on the set
        std::set<int> covered;
        for (auto [u, v] : pairs) {
          covered.insert(u);
          covered.insert(v);
        }
        CHECK(covered == std::set<int>(verts.begin(), verts.end()));
      }
    }
  }
}

TEST_CASE("eulerian circuit") {
  SECTION("triangle") {
    EdgeList tree{{0, 1, 1.0}, {1, 2, 1.0}};
    auto walk = eulerian_circuit(tree, {{0, 2}}, 0);
    REQUIRE(walk.size() == 4);  // 3 edges
    CHECK(walk.front() == 0);
    CHECK(walk.back() == 0);
    CHECK(std::set<int>(walk.begin(), walk.end()) == std::set<int>{0, 1, 2});
  }
  SECTION("parallel multiedge") {
    EdgeList tree{{0, 1, 1.0}};
    auto walk = eulerian_circuit(tree, {{0, 1}}, 0);
    CHECK(walk == std::vector<int>{0, 1, 0});
  }
  SECTION("walk length is |T| + |M| edges") {
    auto inst = make_instance(10, 10, 10,
                              {Node{1, 0, 0, 1}, Node{2, 1, 0, 1},
                               Node{3, 2, 0, 1}, Node{4, 3, 0, 1}});
    DistanceMatrix m(inst);
    auto tree = minimum_spanning_tree(m.ids(), m);
    auto odd = odd_degree_vertices(tree);
    auto matching = min_weight_perfect_matching(odd, m);
    auto walk = eulerian_circuit(tree, matching, 0);
    CHECK(walk.size() == tree.size() + matching.size() + 1);
    CHECK(walk.front() == 0);
    CHECK(walk.back() == 0);
  }
  SECTION("odd parity detected") {
    EdgeList tree{{0, 1, 1.0}, {1, 2, 1.0}};
    CHECK_THROWS_AS(eulerian_circuit(tree, {}, 0), InvariantError);
  }
}

TEST_CASE("shortcut") {
  auto inst = make_instance(0, 0, 10,
                            {Node{1, 1, 0, 1}, Node{2, 0, 1, 1}});
  DistanceMatrix m(inst);
  SECTION("first occurrence wins") {
    Tour t = shortcut({0, 1, 0, 2, 0}, m);
    CHECK(t.order == std::vector<int>{0, 1, 2});
  }
  SECTION("no repeats unchanged") {
    Tour t = shortcut({0, 1, 2, 0}, m);
    CHECK(t.order == std::vector<int>{0, 1, 2});
  }
  SECTION("two-vertex walk") {
    Tour t = shortcut({0, 1, 0}, m);
    CHECK(t.order == std::vector<int>{0, 1});
    CHECK_THAT(t.length, WithinAbs(2.0, 1e-12));
  }
}

TEST_CASE("brute force tsp") {
  SECTION("triangle is its own optimum") {
    auto inst = make_instance(0, 0, 10, {Node{1, 3, 0, 1}, Node{2, 0, 4, 1}});
    DistanceMatrix m(inst);
    Tour t = brute_force_tsp({0, 1, 2}, m);
    CHECK_THAT(t.length, WithinAbs(12.0, 1e-12));
    CHECK(t.order == std::vector<int>{0, 1, 2});  // lexicographic tie-break
  }
  SECTION("unit square") {
    auto inst = make_instance(0, 0, 10,
                              {Node{1, 1, 0, 1}, Node{2, 1, 1, 1}, Node{3, 0, 1, 1}});
    DistanceMatrix m(inst);
    CHECK_THAT(brute_force_tsp({0, 1, 2, 3}, m).length, WithinAbs(4.0, 1e-9));
  }
  SECTION("two vertices") {
    auto inst = make_instance(0, 0, 10, {Node{1, 3, 4, 1}});
    DistanceMatrix m(inst);
    CHECK_THAT(brute_force_tsp({0, 1}, m).length, WithinAbs(10.0, 1e-12));
  }
  SECTION("size limit") {
    auto inst = random_subset_instance(1, 12);
    DistanceMatrix m(inst);
    CHECK_THROWS_AS(brute_force_tsp(m.ids(), m), SizeLimitError);
  }
}

TEST_CASE("christofides tour") {
  SECTION("degenerate subsets") {
    auto inst = make_instance(0, 0, 10, {Node{1, 3, 4, 1}});
    DistanceMatrix m(inst);
    Tour depot_only = christofides_tour({0}, m);
    CHECK(depot_only.order == std::vector<int>{0});
    CHECK(depot_only.length == 0.0);
    Tour pair = christofides_tour({0, 1}, m);
    CHECK(pair.order == std::vector<int>{0, 1});
    CHECK_THAT(pair.length, WithinAbs(10.0, 1e-12));
  }
  SECTION("depot required") {
    auto inst = make_instance(0, 0, 10, {Node{1, 1, 0, 1}, Node{2, 2, 0, 1}});
    DistanceMatrix m(inst);
    CHECK_THROWS_AS(christofides_tour({1, 2}, m), std::invalid_argument);
  }
  SECTION("unit square with depot at a corner is optimal") {
    auto inst = make_instance(0, 0, 10,
                              {Node{1, 1, 0, 1}, Node{2, 1, 1, 1}, Node{3, 0, 1, 1}});
    DistanceMatrix m(inst);
    Tour t = christofides_tour({0, 1, 2, 3}, m);
    CHECK(t.order.front() == 0);
    CHECK_THAT(t.length, WithinAbs(4.0, 1e-9));
  }
}

TEST_CASE("christofides bound ingredients on random subsets") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    int size = 4 + static_cast<int>(seed % 7);  // 4..10 vertices
    auto inst = random_subset_instance(seed * 131, size - 1);
    DistanceMatrix m(inst);
    const auto& subset = m.ids();

    Tour opt = brute_force_tsp(subset, m);
    auto tree = minimum_spanning_tree(subset, m);
    auto odd = odd_degree_vertices(tree);
    auto matching = min_weight_perfect_matching(odd, m);
    auto walk = eulerian_circuit(tree, matching, 0);
    Tour approx = shortcut(walk, m);

    double walk_weight = edge_weight_sum(tree) + matching_weight(matching, m);
    CHECK(edge_weight_sum(tree) <= opt.length + 1e-9);
    CHECK(matching_weight(matching, m) <= opt.length / 2.0 + 1e-9);
    CHECK(approx.length <= walk_weight + 1e-9);
    CHECK(approx.length <= 1.5 * opt.length + 1e-9);

    // The composed entry point agrees with the manual composition.
    Tour composed = christofides_tour(subset, m);
    CHECK_THAT(composed.length, WithinAbs(approx.length, 1e-9));

    // Tour shape: permutation of the subset starting at the depot.
    CHECK(composed.order.front() == 0);
    CHECK(std::set<int>(composed.order.begin(), composed.order.end()) ==
          std::set<int>(subset.begin(), subset.end()));
    CHECK(composed.order.size() == subset.size());
  }
}
