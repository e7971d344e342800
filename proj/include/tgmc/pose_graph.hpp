#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgmc/quaternion.hpp"

namespace tgmc {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative motion measured from frame i to frame j: pose_j ≈ compose(rel, pose_i).
struct MeasurementEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  Pose rel;
};

// Absolute poses, one per node. Node 0 carries the gauge.
struct Estimate {
  std::vector<Pose> poses;

  std::size_t size() const { return poses.size(); }
  // Same relative geometry, re-expressed so that poses[0] is exactly the
  // identity.
  Estimate pinned() const;
};

class PoseGraph {
 public:
  PoseGraph() = default;
  // Edges are reordered by (min(i, j), max(i, j)) so that evaluation order
  // does not depend on input order. Orientation is preserved. No validation
  // happens here; see validate().
  PoseGraph(std::size_t n, std::vector<MeasurementEdge> edges,
            std::optional<std::vector<Pose>> ground_truth = std::nullopt);

  std::size_t node_count() const { return n_; }
  const std::vector<MeasurementEdge>& edges() const { return edges_; }
  const std::optional<std::vector<Pose>>& ground_truth() const { return ground_truth_; }
  void set_ground_truth(std::vector<Pose> gt) { ground_truth_ = std::move(gt); }

  // Measurement from a to b, derived by inversion when only (b, a) is stored.
  std::optional<Pose> measurement(std::size_t a, std::size_t b) const;
  // Sorted neighbor lists.
  std::vector<std::vector<std::size_t>> adjacency() const;

 private:
  std::size_t n_ = 0;
  std::vector<MeasurementEdge> edges_;
  std::optional<std::vector<Pose>> ground_truth_;
};

enum class DiagnosticKind {
  kDisconnected,
  kDuplicatePair,
  kSelfLoop,
  kIndexOutOfRange,
  kNonUnitQuaternion,
  kNonFiniteTranslation,
  kGroundTruthSize,
  kTooFewNodes,
};

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
  bool has(DiagnosticKind k) const;
  std::string summary() const;
};

ValidationReport validate(const PoseGraph& g);
bool is_connected(const PoseGraph& g);

// BFS tree rooted at node 0, neighbors visited in ascending index order.
// Returns indices into g.edges(). Throws GraphError when disconnected.
std::vector<std::size_t> spanning_tree(const PoseGraph& g);

// 1 - (1 / (pi |E|)) sum 2 acos(|q_ij . (q_j q̄_i)|); 1 when there are no edges.
double graph_consistency(const PoseGraph& g, const Estimate& est);

}  // namespace tgmc
