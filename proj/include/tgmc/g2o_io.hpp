#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgmc/pose_graph.hpp"

namespace tgmc {

// g2o-style text persistence.
//
//   VERTEX_SE3:QUAT id tx ty tz qx qy qz qw
//   EDGE_SE3:QUAT i j tx ty tz qx qy qz qw I11 I12 ... I66   (21 entries)
//
// Quaternions are vector-first on disk and scalar-first in memory. Poses
// follow this library's convention: an edge (i, j) holds M_j M_i^-1. Files
// from tools that store T_i^-1 T_j on edges must be converted first.
// Information blocks are parsed and discarded; identity is written.

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct G2oContents {
  std::size_t node_count = 0;
  // Indexed by vertex id; nullopt where the file had no VERTEX line.
  std::vector<std::optional<Pose>> vertices;
  std::vector<MeasurementEdge> edges;
  std::vector<std::string> warnings;

  bool has_vertices() const;
  // Vertex poses; missing ids become identity.
  Estimate vertex_estimate() const;
};

G2oContents parse_g2o(std::istream& in);
G2oContents read_g2o(const std::filesystem::path& path);

// PREFIX.g2o -> PREFIX.gt.g2o
std::filesystem::path ground_truth_path(const std::filesystem::path& graph_path);

// Graph from `path`, with ground truth attached when the sibling .gt.g2o
// file exists.
PoseGraph load_g2o(const std::filesystem::path& path);

void write_vertices(std::ostream& out, const std::vector<Pose>& poses);
void write_g2o(std::ostream& out, const PoseGraph& g, const Estimate* est = nullptr);
// Writes `path` (vertices from `est` when given, then edges) and, when the
// graph has ground truth, the sibling .gt.g2o file.
void save_g2o(const std::filesystem::path& path, const PoseGraph& g,
              const Estimate* est = nullptr);
void save_vertices(const std::filesystem::path& path, const std::vector<Pose>& poses);
// Reads the VERTEX block of a file as an estimate.
Estimate load_vertices(const std::filesystem::path& path);

// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

}  // namespace tgmc
