#include "tgmc/g2o_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tgmc {

namespace {

constexpr const char* kVertexTag = "VERTEX_SE3:QUAT";
constexpr const char* kEdgeTag = "EDGE_SE3:QUAT";
constexpr int kInfoEntries = 21;

double parse_number(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "invalid number '" + tok + "'");
  return v;
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "invalid vertex id '" + tok + "'");
  }
  return v;
}

Pose parse_pose(const std::vector<std::string>& tok, std::size_t offset, std::size_t line,
                std::vector<std::string>& warnings) {
  std::array<double, 7> v{};
  for (std::size_t k = 0; k < 7; ++k) v[k] = parse_number(tok[offset + k], line);
  const Vec4 q(v[6], v[3], v[4], v[5]);
  const double norm = q.norm();
  if (!std::isfinite(norm) || norm == 0.0) throw ParseError(line, "degenerate quaternion");
  if (std::abs(norm - 1.0) > 1e-6) {
    warnings.push_back("line " + std::to_string(line) + ": quaternion renormalized");
  }
  Pose p;
  p.translation = Vec3(v[0], v[1], v[2]);
  if (!p.translation.allFinite()) throw ParseError(line, "non-finite translation");
  // Shortest-form text of a unit quaternion reads back bit-exact; only
  // rescale inputs that are visibly off the sphere.
  p.rotation = std::abs(norm - 1.0) > 1e-12 ? UnitQuaternion(q) : UnitQuaternion::FromUnitCoeffs(q);
  return p;
}

void write_pose(std::ostream& out, const Pose& p) {
  const Vec3& t = p.translation;
  const UnitQuaternion& q = p.rotation;
  out << format_double(t.x()) << ' ' << format_double(t.y()) << ' ' << format_double(t.z()) << ' '
      << format_double(q.x()) << ' ' << format_double(q.y()) << ' ' << format_double(q.z()) << ' '
      << format_double(q.w());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

bool G2oContents::has_vertices() const {
  for (const auto& v : vertices) {
    if (v) return true;
  }
  return false;
}

Estimate G2oContents::vertex_estimate() const {
  Estimate e;
  e.poses.reserve(vertices.size());
  for (const auto& v : vertices) e.poses.push_back(v.value_or(Pose::Identity()));
  return e;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

G2oContents parse_g2o(std::istream& in) {
  G2oContents c;
  std::string raw;
  std::size_t line = 0;
  std::size_t max_id = 0;
  bool any_id = false;
  auto note_id = [&](std::size_t id) {
    max_id = any_id ? std::max(max_id, id) : id;
    any_id = true;
  };
  std::vector<std::pair<std::size_t, Pose>> vertex_lines;

  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(std::move(t));
    if (tok.empty() || tok[0][0] == '#') continue;

    if (tok[0] == kVertexTag) {
      if (tok.size() != 9) throw ParseError(line, "VERTEX_SE3:QUAT expects 8 fields");
      const std::size_t id = parse_index(tok[1], line);
      vertex_lines.emplace_back(id, parse_pose(tok, 2, line, c.warnings));
      note_id(id);
    } else if (tok[0] == kEdgeTag) {
      if (tok.size() != 10 + kInfoEntries) {
        throw ParseError(line, "EDGE_SE3:QUAT expects 30 fields");
      }
      MeasurementEdge e;
      e.i = parse_index(tok[1], line);
      e.j = parse_index(tok[2], line);
      e.rel = parse_pose(tok, 3, line, c.warnings);
      for (int k = 0; k < kInfoEntries; ++k) parse_number(tok[10 + k], line);
      note_id(e.i);
      note_id(e.j);
      c.edges.push_back(e);
    } else {
      c.warnings.push_back("line " + std::to_string(line) + ": skipped unknown tag '" + tok[0] + "'");
    }
  }
  c.node_count = any_id ? max_id + 1 : 0;
  c.vertices.assign(c.node_count, std::nullopt);
  for (auto& [id, p] : vertex_lines) c.vertices[id] = p;
  return c;
}

G2oContents read_g2o(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return parse_g2o(in);
}

std::filesystem::path ground_truth_path(const std::filesystem::path& graph_path) {
  std::filesystem::path p = graph_path;
  if (p.extension() == ".g2o") p.replace_extension();
  p += ".gt.g2o";
  return p;
}

PoseGraph load_g2o(const std::filesystem::path& path) {
  G2oContents c = read_g2o(path);
  std::size_t n = c.node_count;
  std::optional<std::vector<Pose>> gt;
  const auto gt_path = ground_truth_path(path);
  if (gt_path != path && std::filesystem::exists(gt_path)) {
    G2oContents g = read_g2o(gt_path);
    n = std::max(n, g.node_count);
    Estimate e = g.vertex_estimate();
    e.poses.resize(n, Pose::Identity());
    gt = std::move(e.poses);
  }
  return PoseGraph(n, std::move(c.edges), std::move(gt));
}

void write_vertices(std::ostream& out, const std::vector<Pose>& poses) {
  for (std::size_t k = 0; k < poses.size(); ++k) {
    out << kVertexTag << ' ' << k << ' ';
    write_pose(out, poses[k]);
    out << '\n';
  }
}

void write_g2o(std::ostream& out, const PoseGraph& g, const Estimate* est) {
  if (est) write_vertices(out, est->poses);
  for (const auto& e : g.edges()) {
    out << kEdgeTag << ' ' << e.i << ' ' << e.j << ' ';
    write_pose(out, e.rel);
    // Upper triangle of the 6x6 identity, row-major.
    for (int r = 0; r < 6; ++r) {
      for (int col = r; col < 6; ++col) out << (r == col ? " 1" : " 0");
    }
    out << '\n';
  }
}

void save_g2o(const std::filesystem::path& path, const PoseGraph& g, const Estimate* est) {
  {
    auto out = open_out(path);
    write_g2o(out, g, est);
  }
  if (g.ground_truth()) save_vertices(ground_truth_path(path), *g.ground_truth());
}

void save_vertices(const std::filesystem::path& path, const std::vector<Pose>& poses) {
  auto out = open_out(path);
  write_vertices(out, poses);
}

Estimate load_vertices(const std::filesystem::path& path) {
  return read_g2o(path).vertex_estimate();
}

}  // namespace tgmc
