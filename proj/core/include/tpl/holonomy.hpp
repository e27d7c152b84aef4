#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpl/gf.hpp"
#include "tpl/plane.hpp"
#include "tpl/residue.hpp"
#include "tpl/tropical.hpp"

namespace tpl {

/// Closed walk p0 - l0 - p1 - l1 - ... - p{m-1} - l{m-1} - p0 using edges (p_i,l_i) and (p_{i+1},l_i).
struct AlternatingCycle {
  std::vector<int> points;
  std::vector<int> lines;
  std::size_t length() const noexcept { return 2 * points.size(); }
};

/// Zero-graph edges carrying nonzero residues, indexed by the graph's edge order.
class LabeledZeroGraph {
 public:
  /// Throws SHAPE_MISMATCH on a label count mismatch and ZERO_ENTRY on a zero label.
  LabeledZeroGraph(std::shared_ptr<const ZeroGraph> graph, std::vector<FieldElement> labels);
  /// Nonincidence graph of the model's plane, labeled by its residues.
  static LabeledZeroGraph from_model(const ResidueModel& model);

  const ZeroGraph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const ZeroGraph>& graph_ptr() const noexcept { return graph_; }
  const Field& field() const noexcept { return *labels_.front().field(); }
  const FieldElement& label(int edge) const { return labels_[static_cast<std::size_t>(edge)]; }
  /// Throws NOT_A_CYCLE when (row, col) is not an edge.
  const FieldElement& label(int row, int col) const;
  const std::vector<FieldElement>& labels() const noexcept { return labels_; }

 private:
  std::shared_ptr<const ZeroGraph> graph_;
  std::vector<FieldElement> labels_;
};

/// Throws NOT_A_CYCLE unless the walk is closed, alternating, and uses distinct edges.
void validate_cycle(const ZeroGraph& graph, const AlternatingCycle& cycle);
FieldElement cycle_holonomy(const LabeledZeroGraph& g, const AlternatingCycle& cycle);
/// (-1)^m times the holonomy, for a cycle of length 2m.
FieldElement signed_cycle_holonomy(const LabeledZeroGraph& g, const AlternatingCycle& cycle);

/// Cycle of the symmetric difference of two matchings of a 4x4 minor, oriented so the
/// first matching uses (p_i, l_i). Throws PRECONDITION_VIOLATED when they coincide.
AlternatingCycle matching_pair_cycle(const Perm4& first, const Perm4& second, const std::array<int, 4>& rows,
                                     const std::array<int, 4>& cols);

// ---------------------------------------------------------------------------

/// Bit vector over a graph's global edge order.
class CycleVector {
 public:
  explicit CycleVector(int edges = 0);
  static CycleVector of(const ZeroGraph& graph, const AlternatingCycle& cycle);

  int size() const noexcept { return edges_; }
  bool test(int edge) const noexcept { return (words_[static_cast<std::size_t>(edge) / 64] >> (edge % 64)) & 1u; }
  void flip(int edge) noexcept { words_[static_cast<std::size_t>(edge) / 64] ^= std::uint64_t{1} << (edge % 64); }
  CycleVector& operator^=(const CycleVector& o);
  bool operator==(const CycleVector&) const = default;
  bool empty() const noexcept;
  int lowest() const noexcept;  ///< lowest set bit, -1 when empty
  /// Even degree at every vertex.
  bool is_cycle(const ZeroGraph& graph) const;
  /// Lowest edge first, four edges per hex digit.
  std::string to_hex() const;

 private:
  int edges_;
  std::vector<std::uint64_t> words_;
};

/// Incremental row-echelon basis over GF(2).
class F2Basis {
 public:
  explicit F2Basis(int edges) : edges_(edges) {}
  /// Returns true when the vector enlarges the span.
  bool insert(CycleVector v);
  int rank() const noexcept { return static_cast<int>(pivots_.size()); }
  const std::vector<CycleVector>& rows() const noexcept { return rows_; }

 private:
  int edges_;
  std::vector<int> pivots_;
  std::vector<CycleVector> rows_;
};

struct CycleSpaceDims {
  int ambientDim = 0;  ///< |E| - |V| + 1
  int spanDim = 0;
};

/// Throws DISCONNECTED.
CycleSpaceDims f2_cycle_space(const ZeroGraph& graph, const std::vector<CycleVector>& vectors);

/// All 4-cycles of the graph, rows in increasing order then columns in increasing order.
std::vector<AlternatingCycle> four_cycles(const ZeroGraph& graph);
/// Whether the 4-cycles span the cycle space; isolated vertices are ignored. Throws DISCONNECTED.
bool square_connected(const ZeroGraph& graph);

struct Factorization {
  bool ok = false;
  std::vector<FieldElement> alpha;  ///< per row, alpha of the root row is 1
  std::vector<FieldElement> beta;   ///< per column
  std::optional<AlternatingCycle> failingCycle;
  FieldElement failingHolonomy;
};

/// Potentials along a BFS spanning tree; the first non-tree edge in global order whose
/// fundamental cycle has nontrivial holonomy is reported. Isolated vertices get no potential.
/// Throws DISCONNECTED.
Factorization factorize_labels(const LabeledZeroGraph& g);

// ---------------------------------------------------------------------------

/// Grid (n \ {W}) x (pencil(W) \ {n, ell}) with base column m.
struct TrimmedChart {
  int n = 0, w = 0, ell = 0, m = 0;
  std::vector<int> rows, cols;
  bool contains(int point, int line) const;
};

/// Throws INVALID_CHART_DATA.
TrimmedChart build_trimmed_chart(const ProjectivePlane& plane, int n, int w, int ell, int m);

struct ChartActivity {
  bool inactive = false;
  std::vector<FieldElement> alpha;  ///< u_{Z,m} per chart row
  std::vector<FieldElement> beta;   ///< u_{Z,r}/u_{Z,m} per chart column, beta_m = 1
  std::optional<std::array<int, 4>> witness;  ///< rows z1,z2 and columns r1,r2 of a nonzero 2x2 determinant
};

/// Exhaustive 2x2 determinant scan over the grid.
ChartActivity lam_inactive_test(const ResidueModel& model, const TrimmedChart& chart);

/// Edges (p, l) lying in both charts.
std::vector<std::pair<int, int>> chart_overlap(const ProjectivePlane& plane, const TrimmedChart& a,
                                               const TrimmedChart& b);

/// c_ij = u_{p,m_j}/u_{p,m_i} with p = n_i meet n_j. Throws CHART_ACTIVE, NO_OVERLAP, OVERLAP_ON_BASE_COLUMN.
FieldElement transition_scalar(const ResidueModel& model, const TrimmedChart& from, const TrimmedChart& to);
/// Product of consecutive transition scalars around the chart cycle.
FieldElement chart_cycle_holonomy(const ResidueModel& model, const std::vector<TrimmedChart>& cycle);

struct AtlasGluing {
  bool glued = false;
  std::vector<std::optional<FieldElement>> alpha;  ///< per point of the plane
  std::vector<std::optional<FieldElement>> beta;   ///< per line of the plane
  std::optional<std::pair<int, int>> conflict;     ///< adjacent charts whose transition closes nontrivially
};

/// Rescales each chart's canonical gauge along a BFS tree of the chart adjacency graph.
/// Throws CHART_ACTIVE and DISCONNECTED.
AtlasGluing glue_atlas(const ResidueModel& model, const std::vector<TrimmedChart>& charts);

// ---------------------------------------------------------------------------

/// Four charts around the skew rectangle {A,B} x {L0,L1} of a witness.
struct BridgeAtlas {
  int t = 0, s = 0;
  std::array<TrimmedChart, 4> charts;
  std::array<int, 4> overlapPoints{};  ///< n_i meet n_{i+1}
};

/// Validates the bridge lines and builds the charts with index-order auxiliary lines.
/// Throws NO_VALID_BRIDGE.
BridgeAtlas plan_bridge(const ProjectivePlane& plane, const BStarWitness& w, int t, int s);
/// First valid (t, s) in index order. Throws NO_VALID_BRIDGE.
BridgeAtlas find_bridge(const ProjectivePlane& plane, const BStarWitness& w);

struct BridgeCycle {
  BridgeAtlas atlas;
  FieldElement holonomy;
  FieldElement rho;
  FieldElement delta;
  bool holonomyEqualsRho = false;
  bool skewDeltaIdentity = false;    ///< delta = u_{A,L0} u_{B,L1} (1 - Hol)
  bool initialFormRelation = false;  ///< u_{C,L2} delta = u_{A,L2} u_{B,L1} u_{C,L0}
  bool affineRewrite = false;        ///< Hol = 1 - (u_{C,L0}/u_{C,L2})(u_{A,L2}/u_{A,L0}); meaningful with the relation
};

/// Throws NO_VALID_BRIDGE and CHART_ACTIVE.
BridgeCycle bridge_cycle(const ResidueModel& model, const BStarWitness& w, int t, int s);
BridgeCycle bridge_cycle(const ResidueModel& model, const BStarWitness& w);

struct ThreeChartCycle {
  std::array<TrimmedChart, 3> charts;                         ///< base columns L0, L1, L2
  std::array<std::vector<std::pair<int, int>>, 3> overlaps;  ///< R0R1, R1R2, R2R0
};

/// Index-order search over W0, W1, W2 then the auxiliary lines. Throws SEARCH_EXHAUSTED.
ThreeChartCycle three_chart_cycle(const ProjectivePlane& plane, const BStarWitness& w);

}  // namespace tpl
