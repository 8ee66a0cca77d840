// vrp: capacitated vehicle routing toolkit.
//
// Subcommands: gen (seeded instance generator), solve (savings,
// cluster-route, or exact), compare (side-by-side report), plot (SVG).

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vrp/io.hpp"
#include "vrp/pipeline.hpp"
#include "vrp/svg.hpp"

namespace {

std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& flag) {
  auto sep = text.find(':');
  if (sep == std::string::npos)
    throw std::invalid_argument(flag + " expects lo:hi, got \"" + text + "\"");
  return {std::stod(text.substr(0, sep)), std::stod(text.substr(sep + 1))};
}

vrp::DbscanParams resolve_params(const vrp::Instance& inst, double eps,
                                 double min_wt, double max_wt) {
  vrp::DbscanParams p;
  p.eps = eps;
  p.max_wt = max_wt > 0.0 ? max_wt : inst.capacity;
  if (min_wt > 0.0) {
    p.min_wt = min_wt;
  } else {
    // Weakest density requirement: the smallest demand present.
    p.min_wt = inst.customers.empty() ? 1.0 : inst.customers.front().demand;
    for (const vrp::Node& c : inst.customers)
      p.min_wt = std::min(p.min_wt, c.demand);
  }
  return p;
}

void print_report(const vrp::ComparisonReport& report) {
  std::cout << "instance: " << report.instance_name << "\n";
  for (const auto& r : report.results) {
    std::cout << "  " << r.method << ": ";
    if (!r.ran) {
      std::cout << "skipped (" << r.skip_reason << ")\n";
      continue;
    }
    std::cout << "cost=" << r.total_cost << " routes=" << r.route_count
              << " wall_ms=" << r.wall_ms;
    if (r.method == "exact") std::cout << (r.optimal ? " optimal" : " suboptimal");
    if (r.winner) std::cout << " *";
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacitated vehicle routing toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  std::uint64_t seed = 0;
  int n = 0;
  double capacity = 0.0;
  std::string demand_range, coord_range, out_path;
  gen->add_option("--seed", seed, "PRNG seed")->required();
  gen->add_option("--n", n, "number of customers")->required();
  gen->add_option("--capacity", capacity, "vehicle capacity")->required();
  gen->add_option("--demand", demand_range, "demand range lo:hi")->required();
  gen->add_option("--coord", coord_range, "coordinate range lo:hi")->required();
  gen->add_option("--out", out_path, "output instance file")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "solve an instance");
  std::string in_path, method, solve_out;
  double eps = -1.0, min_wt = -1.0, max_wt = -1.0;
  std::uint64_t node_limit = vrp::kDefaultNodeLimit;
  solve->add_option("--in", in_path, "instance file")->required();
  solve->add_option("--method", method, "savings|cluster-route|exact")->required();
  solve->add_option("--eps", eps, "DBSCAN neighborhood radius");
  solve->add_option("--min-wt", min_wt, "DBSCAN core weight threshold");
  solve->add_option("--max-wt", max_wt, "cluster weight ceiling (default: capacity)");
  solve->add_option("--node-limit", node_limit, "branch-and-bound node budget");
  solve->add_option("--out", solve_out, "output solution file")->required();

  // compare
  auto* compare = app.add_subcommand("compare", "run several methods side by side");
  std::string cmp_in, methods_csv;
  double cmp_eps = -1.0, cmp_min_wt = -1.0, cmp_max_wt = -1.0;
  std::uint64_t cmp_node_limit = vrp::kDefaultNodeLimit;
  bool as_json = false;
  compare->add_option("--in", cmp_in, "instance file")->required();
  compare->add_option("--methods", methods_csv, "comma-separated method list")->required();
  compare->add_option("--eps", cmp_eps, "DBSCAN neighborhood radius");
  compare->add_option("--min-wt", cmp_min_wt, "DBSCAN core weight threshold");
  compare->add_option("--max-wt", cmp_max_wt, "cluster weight ceiling");
  compare->add_option("--node-limit", cmp_node_limit, "branch-and-bound node budget");
  compare->add_flag("--json", as_json, "emit the report as JSON on stdout");

  // plot
  auto* plot = app.add_subcommand("plot", "render a solution as SVG");
  std::string plot_in, plot_solution, plot_out;
  plot->add_option("--in", plot_in, "instance file")->required();
  plot->add_option("--solution", plot_solution, "solution file")->required();
  plot->add_option("--out", plot_out, "output SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      auto [dlo, dhi] = parse_range(demand_range, "--demand");
      auto [clo, chi] = parse_range(coord_range, "--coord");
      vrp::Instance inst = vrp::generate_instance(seed, n, capacity, dlo, dhi, clo, chi);
      vrp::save_instance(out_path, inst);
    } else if (solve->parsed()) {
      vrp::Instance inst = vrp::load_instance(in_path);
      vrp::DistanceMatrix matrix(inst);
      vrp::Solution sol;
      if (method == "savings") {
        sol = vrp::clarke_wright(inst, matrix);
      } else if (method == "cluster-route") {
        if (eps < 0.0)
          throw std::invalid_argument("--eps is required for cluster-route");
        sol = vrp::cluster_first_route_second(
            inst, resolve_params(inst, eps, min_wt, max_wt), matrix);
      } else if (method == "exact") {
        sol = vrp::solve_exact(inst, matrix, node_limit);
      } else {
        throw std::invalid_argument("unknown method \"" + method + "\"");
      }
      auto violations = vrp::check_solution_feasibility(sol, inst, matrix);
      if (!violations.empty())
        throw vrp::InvariantError("solver produced an infeasible solution: " +
                                  violations.front());
      vrp::save_solution(solve_out, sol);
    } else if (compare->parsed()) {
      vrp::Instance inst = vrp::load_instance(cmp_in);
      vrp::DistanceMatrix matrix(inst);
      std::vector<std::string> methods;
      std::stringstream ss(methods_csv);
      for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) methods.push_back(tok);
      if (methods.empty()) throw std::invalid_argument("--methods list is empty");
      auto report = vrp::run_compare(
          inst, matrix, methods,
          resolve_params(inst, cmp_eps < 0.0 ? 0.0 : cmp_eps, cmp_min_wt, cmp_max_wt),
          cmp_node_limit);
      if (as_json)
        std::cout << vrp::report_to_json(report).dump(2) << "\n";
      else
        print_report(report);
    } else if (plot->parsed()) {
      vrp::Instance inst = vrp::load_instance(plot_in);
      vrp::DistanceMatrix matrix(inst);
      vrp::Solution sol = vrp::load_solution(plot_solution);
      vrp::write_text(plot_out, vrp::emit_svg(sol, inst, matrix));
    }
  } catch (const vrp::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vrp::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
