#include "tgmc/pose_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace tgmc {

Estimate Estimate::pinned() const {
  if (poses.empty()) return *this;
  const Pose g = inverse(poses[0]);
  Estimate out;
  out.poses.reserve(poses.size());
  for (const Pose& p : poses) out.poses.push_back(compose(p, g));
  out.poses[0] = Pose::Identity();
  return out;
}

PoseGraph::PoseGraph(std::size_t n, std::vector<MeasurementEdge> edges,
                     std::optional<std::vector<Pose>> ground_truth)
    : n_(n), edges_(std::move(edges)), ground_truth_(std::move(ground_truth)) {
  std::stable_sort(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) {
    return std::pair(std::min(a.i, a.j), std::max(a.i, a.j)) <
           std::pair(std::min(b.i, b.j), std::max(b.i, b.j));
  });
}

std::optional<Pose> PoseGraph::measurement(std::size_t a, std::size_t b) const {
  for (const auto& e : edges_) {
    if (e.i == a && e.j == b) return e.rel;
    if (e.i == b && e.j == a) return inverse(e.rel);
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> PoseGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(n_);
  for (const auto& e : edges_) {
    if (e.i >= n_ || e.j >= n_ || e.i == e.j) continue;
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return adj;
}

bool ValidationReport::has(DiagnosticKind k) const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [k](const Diagnostic& d) { return d.kind == k; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < diagnostics.size(); ++k) {
    if (k) os << "; ";
    os << diagnostics[k].message;
  }
  return os.str();
}

bool is_connected(const PoseGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return true;
  const auto adj = g.adjacency();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

ValidationReport validate(const PoseGraph& g) {
  ValidationReport r;
  auto add = [&r](DiagnosticKind k, std::string msg) { r.diagnostics.push_back({k, std::move(msg)}); };
  const std::size_t n = g.node_count();
  if (n < 2) add(DiagnosticKind::kTooFewNodes, "graph needs at least 2 nodes");

  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : g.edges()) {
    const std::string tag = "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ")";
    if (e.i >= n || e.j >= n) {
      add(DiagnosticKind::kIndexOutOfRange, tag + ": node index out of range");
      continue;
    }
    if (e.i == e.j) {
      add(DiagnosticKind::kSelfLoop, tag + ": self-loop");
      continue;
    }
    if (!pairs.emplace(std::min(e.i, e.j), std::max(e.i, e.j)).second) {
      add(DiagnosticKind::kDuplicatePair, tag + ": duplicate pair");
    }
    if (std::abs(e.rel.rotation.coeffs().norm() - 1.0) > 1e-9) {
      add(DiagnosticKind::kNonUnitQuaternion, tag + ": non-unit quaternion");
    }
    if (!e.rel.translation.allFinite()) {
      add(DiagnosticKind::kNonFiniteTranslation, tag + ": non-finite translation");
    }
  }
  if (n >= 1 && !is_connected(g)) add(DiagnosticKind::kDisconnected, "graph is disconnected");
  if (g.ground_truth() && g.ground_truth()->size() != n) {
    add(DiagnosticKind::kGroundTruthSize, "ground truth size does not match node count");
  }
  return r;
}

std::vector<std::size_t> spanning_tree(const PoseGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return {};
  // neighbor -> edge index, ascending by neighbor; first stored edge wins.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& e = g.edges()[k];
    if (e.i >= n || e.j >= n || e.i == e.j) continue;
    adj[e.i].emplace_back(e.j, k);
    adj[e.j].emplace_back(e.i, k);
  }
  for (auto& nb : adj) std::stable_sort(nb.begin(), nb.end(), [](auto& a, auto& b) { return a.first < b.first; });

  std::vector<bool> seen(n, false);
  std::vector<std::size_t> tree;
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (auto [v, k] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      tree.push_back(k);
      frontier.push(v);
    }
  }
  if (tree.size() + 1 != n) throw GraphError("spanning_tree: graph is disconnected");
  return tree;
}

double graph_consistency(const PoseGraph& g, const Estimate& est) {
  if (g.edges().empty()) return 1.0;
  double sum = 0.0;
  for (const auto& e : g.edges()) {
    const UnitQuaternion implied = est.poses.at(e.j).rotation * conjugate(est.poses.at(e.i).rotation);
    sum += riemannian_distance(e.rel.rotation, implied);
  }
  return 1.0 - sum / (std::numbers::pi * static_cast<double>(g.edges().size()));
}

}  // namespace tgmc
