#include "sfdraw/stress.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace sfdraw {

StressModel build_stress_model(const DirectedGraph& g, double unit_length) {
  const std::size_t n = g.node_count();
  StressModel model;
  model.node_count = n;
  model.unit_length = unit_length;
  model.ideal.assign(n * n, 0.0);
  model.weight.assign(n * n, 0.0);

  const auto hops = all_pairs_shortest_paths(g, true);
  const double surrogate = unit_length * static_cast<double>(hops.diameter() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool reachable = hops.reachable(i, j);
      const double d = reachable ? unit_length * hops.at(i, j) : surrogate;
      model.ideal[i * n + j] = d;
      model.weight[i * n + j] = (reachable ? 1.0 : kDisconnectedWeightFactor) / (d * d);
    }
  }
  return model;
}

double stress(const StressModel& model, std::span<const Point> positions) {
  const std::size_t n = model.node_count;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double r = distance(positions[i], positions[j]) - model.ideal_at(i, j);
      total += model.weight_at(i, j) * r * r;
    }
  }
  return total;
}

std::vector<Point> stress_gradient(const StressModel& model, std::span<const Point> positions) {
  const std::size_t n = model.node_count;
  std::vector<Point> grad(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Point diff = positions[i] - positions[j];
      double len = norm(diff);
      if (len == 0.0) continue;
      double scale = 2.0 * model.weight_at(i, j) * (len - model.ideal_at(i, j)) / len;
      grad[i] = grad[i] + diff * scale;
      grad[j] = grad[j] - diff * scale;
    }
  }
  return grad;
}

namespace {

constexpr std::size_t kPolishMaxNodes = 400;
constexpr std::size_t kPolishSteps = 200;
constexpr int kPolishRetries = 12;

// Levenberg-Marquardt on the residuals sqrt(w_ij) (|x_i - x_j| - d_ij). Only
// improving steps are taken. Returns the number of accepted steps.
std::size_t polish(const StressModel& model, std::vector<Point>& x, double& current, std::vector<double>& history,
                   double tolerance) {
  const std::size_t n = model.node_count;
  const auto dim = static_cast<Eigen::Index>(2 * n);
  Eigen::MatrixXd normal(dim, dim);
  Eigen::VectorXd gradient(dim);
  std::vector<Point> trial(n);
  double damping = -1.0;
  std::size_t accepted = 0;
  for (std::size_t step = 0; step < kPolishSteps && current > 0.0; ++step) {
    normal.setZero();
    gradient.setZero();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Point diff = x[i] - x[j];
        const double len = norm(diff);
        if (len == 0.0) continue;
        const double w = model.weight_at(i, j);
        const double u[2] = {diff.x / len, diff.y / len};
        const double r = w * (len - model.ideal_at(i, j));
        const auto a = static_cast<Eigen::Index>(2 * i);
        const auto b = static_cast<Eigen::Index>(2 * j);
        for (int p = 0; p < 2; ++p) {
          gradient(a + p) += r * u[p];
          gradient(b + p) -= r * u[p];
          for (int q = 0; q < 2; ++q) {
            const double h = w * u[p] * u[q];
            normal(a + p, a + q) += h;
            normal(b + p, b + q) += h;
            normal(a + p, b + q) -= h;
            normal(b + p, a + q) -= h;
          }
        }
      }
    }
    if (damping < 0.0) damping = 1e-3 * normal.diagonal().maxCoeff();
    bool improved = false;
    for (int attempt = 0; attempt < kPolishRetries && !improved; ++attempt) {
      Eigen::MatrixXd system = normal;
      system.diagonal().array() += damping;
      const Eigen::VectorXd delta = system.ldlt().solve(-gradient);
      for (std::size_t i = 0; i < n; ++i)
        trial[i] = {x[i].x + delta(static_cast<Eigen::Index>(2 * i)), x[i].y + delta(static_cast<Eigen::Index>(2 * i + 1))};
      const double next = stress(model, trial);
      if (next < current) {
        const double improvement = (current - next) / current;
        x = trial;
        current = next;
        history.push_back(current);
        damping /= 3.0;
        improved = true;
        ++accepted;
        if (improvement < tolerance) return accepted;
      } else {
        damping *= 4.0;
      }
    }
    if (!improved) break;
  }
  return accepted;
}

// Uniform [0, 1) from the top 53 bits; independent of the standard library's
// distribution implementations so layouts match across toolchains.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<Point> initial_positions(std::size_t node_count, std::uint64_t seed, double unit_length) {
  std::mt19937_64 rng(seed);
  const double n = static_cast<double>(node_count);
  const double radius = std::max(unit_length / 2.0, n * unit_length / (2.0 * std::numbers::pi));
  const double rotation = 2.0 * std::numbers::pi * unit_draw(rng);
  std::vector<Point> positions(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    double angle = rotation + 2.0 * std::numbers::pi * static_cast<double>(i) / std::max(1.0, n);
    double r = radius * (0.95 + 0.1 * unit_draw(rng));
    positions[i] = {r * std::cos(angle), r * std::sin(angle)};
  }
  return positions;
}

StressResult minimize_stress(const StressModel& model, std::span<const Point> initial, const StressOptions& options) {
  const std::size_t n = model.node_count;
  StressResult result;
  result.positions.assign(initial.begin(), initial.end());
  double current = stress(model, result.positions);
  result.history.push_back(current);
  if (n < 2) {
    result.converged = true;
    result.final_stress = current;
    return result;
  }

  const std::size_t budget = options.max_iterations ? options.max_iterations : 500 * n;
  std::vector<Point> previous;
  while (result.iterations + n <= budget) {
    previous = result.positions;
    for (std::size_t i = 0; i < n; ++i) {
      Point numerator;
      double weight_sum = 0.0;
      const Point xi = result.positions[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double w = model.weight_at(i, j);
        const Point xj = result.positions[j];
        Point diff = xi - xj;
        double len = norm(diff);
        Point target = xj;
        if (len > 0.0) target = xj + diff * (model.ideal_at(i, j) / len);
        numerator = numerator + target * w;
        weight_sum += w;
      }
      result.positions[i] = numerator * (1.0 / weight_sum);
    }
    result.iterations += n;

    const double next = stress(model, result.positions);
    if (next > current) {
      result.positions = previous;
      result.converged = true;
      break;
    }
    const double improvement = current > 0.0 ? (current - next) / current : 0.0;
    current = next;
    result.history.push_back(current);
    if (improvement < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  if (n <= kPolishMaxNodes)
    result.polish_steps = polish(model, result.positions, current, result.history, options.tolerance);
  result.final_stress = current;
  return result;
}

StressResult minimize_stress(const StressModel& model, std::uint64_t seed, const StressOptions& options) {
  auto start = initial_positions(model.node_count, seed, model.unit_length);
  return minimize_stress(model, start, options);
}

}  // namespace sfdraw
