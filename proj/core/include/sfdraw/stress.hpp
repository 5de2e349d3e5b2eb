#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sfdraw/geometry.hpp"
#include "sfdraw/graph.hpp"

namespace sfdraw {

// Linear springs between every node pair. Ideal lengths are unit_length times
// the undirected hop distance; disconnected pairs use (diameter + 1) hops and a
// quarter of the usual 1/d^2 weight.
struct StressModel {
  std::size_t node_count = 0;
  double unit_length = 1.0;
  std::vector<double> ideal;   // row-major n x n
  std::vector<double> weight;  // row-major n x n, zero on the diagonal

  double ideal_at(std::size_t i, std::size_t j) const { return ideal[i * node_count + j]; }
  double weight_at(std::size_t i, std::size_t j) const { return weight[i * node_count + j]; }
};

inline constexpr double kDisconnectedWeightFactor = 0.25;

StressModel build_stress_model(const DirectedGraph& g, double unit_length);

// Sum over i < j of w_ij (|x_i - x_j| - d_ij)^2.
double stress(const StressModel& model, std::span<const Point> positions);
std::vector<Point> stress_gradient(const StressModel& model, std::span<const Point> positions);

// Nodes on a circle in index order, radius proportional to n, with a
// seed-dependent rotation and small radial jitter.
std::vector<Point> initial_positions(std::size_t node_count, std::uint64_t seed, double unit_length);

struct StressOptions {
  double tolerance = 1e-4;         // stop when relative improvement per sweep drops below
  std::size_t max_iterations = 0;  // single-node updates; 0 means 500 * n
};

struct StressResult {
  std::vector<Point> positions;
  std::vector<double> history;  // stress after each accepted sweep, starting with the initial value
  std::size_t iterations = 0;   // single-node updates performed
  std::size_t polish_steps = 0;  // accepted Levenberg-Marquardt steps after the sweeps
  bool converged = false;
  double final_stress = 0.0;
};

// Node-by-node stress majorization: each update moves one node to the
// minimizer of its majorizing quadratic, which never increases stress. A sweep
// that would increase stress (rounding) is rejected and ends the run. Graphs of
// up to 400 nodes then get damped Gauss-Newton steps on the same objective,
// which finish layouts the sweeps approach only slowly (a bent path).
StressResult minimize_stress(const StressModel& model, std::span<const Point> initial,
                             const StressOptions& options = {});
StressResult minimize_stress(const StressModel& model, std::uint64_t seed, const StressOptions& options = {});

}  // namespace sfdraw
