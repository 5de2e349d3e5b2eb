#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>

#include "sfdraw/overlap.hpp"

namespace sfdraw {

namespace {

constexpr double kViolationTolerance = 1e-9;
constexpr double kMultiplierTolerance = -1e-9;
constexpr std::size_t kMaxRounds = 100000;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

class SeparationSolver {
 public:
  SeparationSolver(std::span<const double> desired, std::span<const SeparationConstraint> constraints) {
    vars_.resize(desired.size());
    blocks_.resize(desired.size());
    for (std::size_t i = 0; i < desired.size(); ++i) {
      vars_[i].desired = desired[i];
      vars_[i].block = i;
      blocks_[i].vars = {i};
      blocks_[i].position = desired[i];
    }
    for (const auto& c : constraints) {
      if (c.left >= desired.size() || c.right >= desired.size() || c.left == c.right)
        throw std::invalid_argument("separation constraint references an invalid variable");
      vars_[c.left].out.push_back(cons_.size());
      vars_[c.right].in.push_back(cons_.size());
      cons_.push_back({c.left, c.right, c.gap});
    }
  }

  std::vector<double> solve() {
    satisfy();
    for (std::size_t round = 0; round < kMaxRounds; ++round) {
      if (!split_blocks()) break;
      satisfy();
    }
    std::vector<double> out(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) out[v] = position(v);
    return out;
  }

 private:
  struct Var {
    double desired = 0.0;
    double offset = 0.0;  // relative to the owning block's reference position
    std::size_t block = 0;
    std::vector<std::size_t> in;
    std::vector<std::size_t> out;
  };
  struct Con {
    std::size_t left;
    std::size_t right;
    double gap;
    bool active = false;
    double multiplier = 0.0;
  };
  struct Block {
    std::vector<std::size_t> vars;
    double position = 0.0;
    bool alive = true;
  };

  double position(std::size_t v) const { return blocks_[vars_[v].block].position + vars_[v].offset; }
  double slack(const Con& c) const { return position(c.right) - position(c.left) - c.gap; }

  // Optimal reference position of a rigid block with unit weights.
  void reposition(std::size_t b) {
    double total = 0.0;
    for (std::size_t v : blocks_[b].vars) total += vars_[v].desired - vars_[v].offset;
    blocks_[b].position = total / static_cast<double>(blocks_[b].vars.size());
  }

  void merge(std::size_t c) {
    Con& con = cons_[c];
    std::size_t lb = vars_[con.left].block;
    std::size_t rb = vars_[con.right].block;
    // Offsets of the absorbed block shift so that the constraint is tight.
    double shift = vars_[con.left].offset + con.gap - vars_[con.right].offset;
    std::size_t keep = lb;
    std::size_t drop = rb;
    if (blocks_[rb].vars.size() > blocks_[lb].vars.size()) {
      keep = rb;
      drop = lb;
      shift = -shift;
    }
    for (std::size_t v : blocks_[drop].vars) {
      vars_[v].offset += shift;
      vars_[v].block = keep;
      blocks_[keep].vars.push_back(v);
    }
    blocks_[drop].vars.clear();
    blocks_[drop].alive = false;
    con.active = true;
    reposition(keep);
  }

  // Vars reachable from `start` over active constraints, never crossing `cut`.
  std::vector<std::size_t> component(std::size_t start, std::size_t cut) const {
    std::vector<std::size_t> out{start};
    std::vector<char> seen(vars_.size(), 0);
    seen[start] = 1;
    for (std::size_t head = 0; head < out.size(); ++head) {
      std::size_t v = out[head];
      auto visit = [&](std::size_t c, std::size_t other) {
        if (c == cut || !cons_[c].active || seen[other]) return;
        seen[other] = 1;
        out.push_back(other);
      };
      for (std::size_t c : vars_[v].out) visit(c, cons_[c].right);
      for (std::size_t c : vars_[v].in) visit(c, cons_[c].left);
    }
    return out;
  }

  void split(std::size_t c) {
    Con& con = cons_[c];
    const std::size_t b = vars_[con.left].block;
    con.active = false;
    auto left_part = component(con.left, kNone);
    auto right_part = component(con.right, kNone);

    const std::size_t nb = blocks_.size();
    blocks_.push_back({});
    blocks_[nb].vars = right_part;
    for (std::size_t v : right_part) vars_[v].block = nb;
    blocks_[b].vars = left_part;
    reposition(b);
    reposition(nb);
  }

  // Derivative of the objective summed over the subtree hanging below `v`
  // when arriving through constraint `from`; stores multipliers on the way.
  double subtree_derivative(std::size_t v, std::size_t from) {
    double df = 2.0 * (position(v) - vars_[v].desired);
    for (std::size_t c : vars_[v].out) {
      if (c == from || !cons_[c].active) continue;
      cons_[c].multiplier = subtree_derivative(cons_[c].right, c);
      df += cons_[c].multiplier;
    }
    for (std::size_t c : vars_[v].in) {
      if (c == from || !cons_[c].active) continue;
      cons_[c].multiplier = -subtree_derivative(cons_[c].left, c);
      df -= cons_[c].multiplier;
    }
    return df;
  }

  // Forward-oriented active constraint with the smallest multiplier on the
  // active path from l to r (multipliers taken with l as root).
  std::size_t path_split_constraint(std::size_t l, std::size_t r) {
    subtree_derivative(l, kNone);
    std::vector<std::size_t> via(vars_.size(), kNone);
    std::vector<char> seen(vars_.size(), 0);
    std::deque<std::size_t> queue{l};
    seen[l] = 1;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      auto visit = [&](std::size_t c, std::size_t other) {
        if (!cons_[c].active || seen[other]) return;
        seen[other] = 1;
        via[other] = c;
        queue.push_back(other);
      };
      for (std::size_t c : vars_[v].out) visit(c, cons_[c].right);
      for (std::size_t c : vars_[v].in) visit(c, cons_[c].left);
    }
    std::size_t best = kNone;
    for (std::size_t v = r; v != l && via[v] != kNone;) {
      const Con& c = cons_[via[v]];
      const bool forward = c.right == v;
      if (forward && (best == kNone || c.multiplier < cons_[best].multiplier)) best = via[v];
      v = forward ? c.left : c.right;
    }
    return best;
  }

  void satisfy() {
    for (std::size_t round = 0; round < kMaxRounds; ++round) {
      std::size_t worst = kNone;
      double worst_slack = -kViolationTolerance;
      for (std::size_t c = 0; c < cons_.size(); ++c) {
        if (cons_[c].active) continue;
        double s = slack(cons_[c]);
        if (s < worst_slack) {
          worst_slack = s;
          worst = c;
        }
      }
      if (worst == kNone) return;
      const Con& c = cons_[worst];
      if (vars_[c.left].block == vars_[c.right].block) {
        std::size_t cut = path_split_constraint(c.left, c.right);
        if (cut == kNone) throw std::runtime_error("separation constraints are cyclic");
        split(cut);
      }
      merge(worst);
    }
  }

  bool split_blocks() {
    bool changed = false;
    const std::size_t count = blocks_.size();
    for (std::size_t b = 0; b < count; ++b) {
      if (!blocks_[b].alive || blocks_[b].vars.size() < 2) continue;
      subtree_derivative(blocks_[b].vars.front(), kNone);
      std::size_t weakest = kNone;
      for (std::size_t v : blocks_[b].vars) {
        for (std::size_t c : vars_[v].out) {
          if (!cons_[c].active) continue;
          if (weakest == kNone || cons_[c].multiplier < cons_[weakest].multiplier) weakest = c;
        }
      }
      if (weakest != kNone && cons_[weakest].multiplier < kMultiplierTolerance) {
        split(weakest);
        changed = true;
      }
    }
    return changed;
  }

  std::vector<Var> vars_;
  std::vector<Con> cons_;
  std::vector<Block> blocks_;
};

}  // namespace

std::vector<double> solve_separation(std::span<const double> desired,
                                     std::span<const SeparationConstraint> constraints) {
  return SeparationSolver(desired, constraints).solve();
}

}  // namespace sfdraw
