#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tpl/gf.hpp"

namespace tpl {

class ProjectivePlane;
using PlanePtr = std::shared_ptr<const ProjectivePlane>;

using Triple = std::array<std::uint32_t, 3>;

/// Finite projective plane of order q with v = q^2+q+1 points and lines.
class ProjectivePlane {
 public:
  enum class Provenance { Constructed, Ingested };

  /// Validates the axioms; throws AXIOM_VIOLATION with a witness on failure.
  static PlanePtr from_lines(int q, std::vector<std::vector<int>> lines, std::string source = {});
  /// Same, from a v x v 0/1 incidence matrix (rows are points).
  static PlanePtr from_incidence(int q, const std::vector<std::vector<std::uint8_t>>& incidence);

  int order() const noexcept { return q_; }
  int size() const noexcept { return v_; }
  Provenance provenance() const noexcept { return provenance_; }
  const std::string& source() const noexcept { return source_; }

  const std::vector<int>& points_on(int line) const { return lines_[static_cast<std::size_t>(line)]; }
  const std::vector<int>& lines_through(int point) const { return pencils_[static_cast<std::size_t>(point)]; }
  bool incident(int point, int line) const noexcept {
    return inc_[static_cast<std::size_t>(point) * static_cast<std::size_t>(v_) + static_cast<std::size_t>(line)] != 0;
  }
  /// Line through two distinct points.
  int join(int p1, int p2) const noexcept { return join_[index(p1, p2)]; }
  /// Point on two distinct lines.
  int meet(int l1, int l2) const noexcept { return meet_[index(l1, l2)]; }

  /// Coordinates; only for constructed planes.
  const Field* field() const noexcept { return field_; }
  const Triple& point_coordinates(int point) const;
  const Triple& line_coordinates(int line) const;

 private:
  ProjectivePlane() = default;
  std::size_t index(int a, int b) const noexcept {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(v_) + static_cast<std::size_t>(b);
  }
  void validate_and_index();

  friend PlanePtr build_pg2(int q);

  int q_ = 0;
  int v_ = 0;
  Provenance provenance_ = Provenance::Ingested;
  std::string source_;
  const Field* field_ = nullptr;
  std::vector<Triple> point_coords_, line_coords_;
  std::vector<std::vector<int>> lines_, pencils_;
  std::vector<std::uint8_t> inc_;
  std::vector<int> join_, meet_;
};

/// PG(2,q) over the built-in GF(q), points and lines in lexicographic coordinate order.
PlanePtr build_pg2(int q);

PlanePtr ingest_plane(std::istream& in, const std::string& source = "<stream>");
PlanePtr ingest_plane_file(const std::string& path);
std::string dump_plane(const ProjectivePlane& plane);

/// Bipartite graph with rows (points) and columns (lines); edges sorted by (row, col).
class ZeroGraph {
 public:
  ZeroGraph(int rows, int cols, std::vector<std::pair<int, int>> edges);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int vertex_count() const noexcept { return rows_ + cols_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  /// Edge index in the global (row, col) order, or -1.
  int edge_index(int row, int col) const noexcept {
    return edge_id_[static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(col)];
  }
  bool has_edge(int row, int col) const noexcept { return edge_index(row, col) >= 0; }
  const std::vector<int>& row_neighbors(int row) const { return row_adj_[static_cast<std::size_t>(row)]; }
  const std::vector<int>& col_neighbors(int col) const { return col_adj_[static_cast<std::size_t>(col)]; }
  bool connected() const;

 private:
  int rows_, cols_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> edge_id_;
  std::vector<std::vector<int>> row_adj_, col_adj_;
};

ZeroGraph nonincidence_graph(const ProjectivePlane& plane);
/// Throws DISCONNECTED when some pair of vertices is unreachable.
int graph_diameter(const ZeroGraph& graph);

}  // namespace tpl
