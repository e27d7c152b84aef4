#include "tpl/holonomy.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <deque>
#include <iomanip>
#include <sstream>

#include "tpl/error.hpp"

namespace tpl {

namespace {

bool contains(const std::vector<int>& xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

}  // namespace

LabeledZeroGraph::LabeledZeroGraph(std::shared_ptr<const ZeroGraph> graph, std::vector<FieldElement> labels)
    : graph_(std::move(graph)), labels_(std::move(labels)) {
  if (!graph_ || labels_.size() != sz(graph_->edge_count())) fail(ErrorCode::ShapeMismatch, "one label per edge");
  if (labels_.empty()) fail(ErrorCode::ShapeMismatch, "graph has no edges");
  const Field* f = labels_.front().field();
  for (std::size_t e = 0; e < labels_.size(); ++e) {
    if (labels_[e].field() == nullptr || labels_[e].is_zero()) {
      fail(ErrorCode::ZeroEntry, "edge " + std::to_string(e) + " carries a zero label");
    }
    if (labels_[e].field() != f) fail(ErrorCode::DescriptorMismatch);
  }
}

LabeledZeroGraph LabeledZeroGraph::from_model(const ResidueModel& model) {
  auto graph = std::make_shared<const ZeroGraph>(nonincidence_graph(model.plane()));
  std::vector<FieldElement> labels;
  labels.reserve(sz(graph->edge_count()));
  for (const auto& [p, l] : graph->edges()) labels.push_back(model.u(p, l));
  return LabeledZeroGraph(std::move(graph), std::move(labels));
}

const FieldElement& LabeledZeroGraph::label(int row, int col) const {
  if (row < 0 || row >= graph_->rows() || col < 0 || col >= graph_->cols() || !graph_->has_edge(row, col)) {
    fail(ErrorCode::NotACycle, "(" + std::to_string(row) + "," + std::to_string(col) + ") is not an edge");
  }
  return labels_[sz(graph_->edge_index(row, col))];
}

void validate_cycle(const ZeroGraph& graph, const AlternatingCycle& c) {
  const std::size_t m = c.points.size();
  if (m < 2 || c.lines.size() != m) fail(ErrorCode::NotACycle, "need m >= 2 points and m lines");
  std::vector<int> used;
  for (std::size_t i = 0; i < m; ++i) {
    const int p = c.points[i], next = c.points[(i + 1) % m], l = c.lines[i];
    for (int row : {p, next}) {
      if (row < 0 || row >= graph.rows() || l < 0 || l >= graph.cols() || !graph.has_edge(row, l)) {
        fail(ErrorCode::NotACycle, "(" + std::to_string(row) + "," + std::to_string(l) + ") is not an edge");
      }
      used.push_back(graph.edge_index(row, l));
    }
  }
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) fail(ErrorCode::NotACycle, "repeated edge");
}

FieldElement cycle_holonomy(const LabeledZeroGraph& g, const AlternatingCycle& c) {
  validate_cycle(g.graph(), c);
  FieldElement hol = g.field().one();
  const std::size_t m = c.points.size();
  for (std::size_t i = 0; i < m; ++i) hol *= g.label(c.points[i], c.lines[i]) / g.label(c.points[(i + 1) % m], c.lines[i]);
  return hol;
}

FieldElement signed_cycle_holonomy(const LabeledZeroGraph& g, const AlternatingCycle& c) {
  const FieldElement hol = cycle_holonomy(g, c);
  return c.points.size() % 2 == 0 ? hol : -hol;
}

AlternatingCycle matching_pair_cycle(const Perm4& first, const Perm4& second, const std::array<int, 4>& rows,
                                     const std::array<int, 4>& cols) {
  std::array<int, 4> second_inv{};
  for (std::size_t r = 0; r < 4; ++r) second_inv[second[r]] = static_cast<int>(r);
  int start = -1;
  for (int r = 0; r < 4 && start < 0; ++r)
    if (first[sz(r)] != second[sz(r)]) start = r;
  if (start < 0) fail(ErrorCode::PreconditionViolated, "matchings coincide");
  AlternatingCycle c;
  int visited = 0;
  int p = start;
  do {
    const int l = first[sz(p)];
    c.points.push_back(rows[sz(p)]);
    c.lines.push_back(cols[sz(l)]);
    p = second_inv[sz(l)];
    ++visited;
  } while (p != start);
  int differing = 0;
  for (std::size_t r = 0; r < 4; ++r) differing += first[r] != second[r];
  if (differing != visited) fail(ErrorCode::PreconditionViolated, "symmetric difference is not a single cycle");
  return c;
}

// ---------------------------------------------------------------------------

CycleVector::CycleVector(int edges) : edges_(edges), words_(sz((edges + 63) / 64), 0) {}

CycleVector CycleVector::of(const ZeroGraph& graph, const AlternatingCycle& c) {
  validate_cycle(graph, c);
  CycleVector v(graph.edge_count());
  const std::size_t m = c.points.size();
  for (std::size_t i = 0; i < m; ++i) {
    v.flip(graph.edge_index(c.points[i], c.lines[i]));
    v.flip(graph.edge_index(c.points[(i + 1) % m], c.lines[i]));
  }
  return v;
}

CycleVector& CycleVector::operator^=(const CycleVector& o) {
  if (o.edges_ != edges_) fail(ErrorCode::ShapeMismatch, "cycle vectors over different edge sets");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

bool CycleVector::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

int CycleVector::lowest() const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] != 0) return static_cast<int>(64 * i) + std::countr_zero(words_[i]);
  return -1;
}

bool CycleVector::is_cycle(const ZeroGraph& graph) const {
  if (edges_ != graph.edge_count()) return false;
  std::vector<int> degree(sz(graph.vertex_count()), 0);
  for (int e = 0; e < edges_; ++e) {
    if (!test(e)) continue;
    const auto& [r, c] = graph.edges()[sz(e)];
    ++degree[sz(r)];
    ++degree[sz(graph.rows() + c)];
  }
  return std::all_of(degree.begin(), degree.end(), [](int d) { return d % 2 == 0; });
}

std::string CycleVector::to_hex() const {
  std::ostringstream os;
  os << std::hex;
  for (int start = 0; start < edges_; start += 4) {
    int digit = 0;
    for (int b = 0; b < 4 && start + b < edges_; ++b) digit |= test(start + b) << b;
    os << digit;
  }
  return os.str();
}

bool F2Basis::insert(CycleVector v) {
  if (v.size() != edges_) fail(ErrorCode::ShapeMismatch, "vector length differs from basis length");
  for (int p = v.lowest(); p >= 0; p = v.lowest()) {
    const auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    if (it == pivots_.end() || *it != p) {
      rows_.insert(rows_.begin() + (it - pivots_.begin()), std::move(v));
      pivots_.insert(it, p);
      return true;
    }
    v ^= rows_[sz(static_cast<int>(it - pivots_.begin()))];
  }
  return false;
}

CycleSpaceDims f2_cycle_space(const ZeroGraph& graph, const std::vector<CycleVector>& vectors) {
  if (!graph.connected()) fail(ErrorCode::Disconnected, "cycle space needs a connected graph");
  CycleSpaceDims out;
  out.ambientDim = graph.edge_count() - graph.vertex_count() + 1;
  F2Basis basis(graph.edge_count());
  for (const auto& v : vectors) basis.insert(v);
  out.spanDim = basis.rank();
  return out;
}

std::vector<AlternatingCycle> four_cycles(const ZeroGraph& graph) {
  std::vector<AlternatingCycle> out;
  for (int r1 = 0; r1 < graph.rows(); ++r1) {
    for (int r2 = r1 + 1; r2 < graph.rows(); ++r2) {
      std::vector<int> common;
      const auto& a = graph.row_neighbors(r1);
      const auto& b = graph.row_neighbors(r2);
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = i + 1; j < common.size(); ++j) out.push_back({{r1, r2}, {common[i], common[j]}});
    }
  }
  return out;
}

namespace {

// Component count over non-isolated vertices; vertex ids are rows then rows+cols.
int active_components(const ZeroGraph& graph, int& active) {
  const int n = graph.vertex_count();
  std::vector<int> seen(sz(n), 0);
  active = 0;
  int comps = 0;
  auto neighbors = [&](int v) -> std::vector<int> {
    std::vector<int> out;
    if (v < graph.rows()) {
      for (int c : graph.row_neighbors(v)) out.push_back(graph.rows() + c);
    } else {
      for (int r : graph.col_neighbors(v - graph.rows())) out.push_back(r);
    }
    return out;
  };
  for (int s = 0; s < n; ++s) {
    if (seen[sz(s)] || neighbors(s).empty()) continue;
    ++comps;
    std::deque<int> queue{s};
    seen[sz(s)] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      ++active;
      for (int x : neighbors(v))
        if (!seen[sz(x)]) seen[sz(x)] = 1, queue.push_back(x);
    }
  }
  return comps;
}

}  // namespace

bool square_connected(const ZeroGraph& graph) {
  int active = 0;
  if (active_components(graph, active) != 1) fail(ErrorCode::Disconnected, "graph must be connected");
  const int ambient = graph.edge_count() - active + 1;
  F2Basis basis(graph.edge_count());
  for (const auto& c : four_cycles(graph)) {
    basis.insert(CycleVector::of(graph, c));
    if (basis.rank() == ambient) return true;
  }
  return basis.rank() == ambient;
}

Factorization factorize_labels(const LabeledZeroGraph& g) {
  const ZeroGraph& graph = g.graph();
  const int rows = graph.rows();
  const int n = graph.vertex_count();
  const Field& f = g.field();
  int active = 0;
  if (active_components(graph, active) != 1) fail(ErrorCode::Disconnected, "factorize each component separately");

  std::vector<FieldElement> pot(sz(n));
  std::vector<int> parent(sz(n), -1), depth(sz(n), -1);
  std::vector<std::uint8_t> tree_edge(sz(graph.edge_count()), 0);
  int root = 0;
  while (root < n && (root < rows ? graph.row_neighbors(root).empty() : graph.col_neighbors(root - rows).empty())) ++root;
  pot[sz(root)] = f.one();
  depth[sz(root)] = 0;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v < rows) {
      for (int c : graph.row_neighbors(v)) {
        const int x = rows + c;
        if (depth[sz(x)] >= 0) continue;
        depth[sz(x)] = depth[sz(v)] + 1;
        parent[sz(x)] = v;
        tree_edge[sz(graph.edge_index(v, c))] = 1;
        pot[sz(x)] = g.label(v, c) / pot[sz(v)];
        queue.push_back(x);
      }
    } else {
      for (int r : graph.col_neighbors(v - rows)) {
        if (depth[sz(r)] >= 0) continue;
        depth[sz(r)] = depth[sz(v)] + 1;
        parent[sz(r)] = v;
        tree_edge[sz(graph.edge_index(r, v - rows))] = 1;
        pot[sz(r)] = g.label(r, v - rows) / pot[sz(v)];
        queue.push_back(r);
      }
    }
  }

  Factorization out;
  out.alpha.assign(pot.begin(), pot.begin() + rows);
  out.beta.assign(pot.begin() + rows, pot.end());
  out.ok = true;
  for (int e = 0; e < graph.edge_count(); ++e) {
    if (tree_edge[sz(e)]) continue;
    const auto& [r, c] = graph.edges()[sz(e)];
    if (g.label(e) == pot[sz(r)] * pot[sz(rows + c)]) continue;
    // Fundamental cycle: tree path from r up to the common ancestor and down to c, closed by (r, c).
    std::vector<int> up{r}, down{rows + c};
    while (up.back() != down.back()) {
      if (depth[sz(up.back())] >= depth[sz(down.back())]) {
        up.push_back(parent[sz(up.back())]);
      } else {
        down.push_back(parent[sz(down.back())]);
      }
    }
    down.pop_back();
    std::vector<int> walk = up;
    walk.insert(walk.end(), down.rbegin(), down.rend());
    AlternatingCycle cyc;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i % 2 == 0) {
        cyc.points.push_back(walk[i]);
      } else {
        cyc.lines.push_back(walk[i] - rows);
      }
    }
    out.ok = false;
    out.failingHolonomy = cycle_holonomy(g, cyc);
    out.failingCycle = std::move(cyc);
    break;
  }
  return out;
}

// ---------------------------------------------------------------------------

bool TrimmedChart::contains(int point, int line) const {
  return tpl::contains(rows, point) && tpl::contains(cols, line);
}

TrimmedChart build_trimmed_chart(const ProjectivePlane& plane, int n, int w, int ell, int m) {
  const int v = plane.size();
  for (int x : {n, w, ell, m})
    if (x < 0 || x >= v) fail(ErrorCode::InvalidChartData, "index out of range");
  if (!plane.incident(w, n)) fail(ErrorCode::InvalidChartData, "W must lie on n");
  if (!plane.incident(w, ell) || ell == n) fail(ErrorCode::InvalidChartData, "ell must pass through W and differ from n");
  if (!plane.incident(w, m) || m == n || m == ell) {
    fail(ErrorCode::InvalidChartData, "base column must pass through W and avoid n and ell");
  }
  TrimmedChart c{n, w, ell, m, {}, {}};
  for (int p : plane.points_on(n))
    if (p != w) c.rows.push_back(p);
  for (int l : plane.lines_through(w))
    if (l != n && l != ell) c.cols.push_back(l);
  return c;
}

ChartActivity lam_inactive_test(const ResidueModel& model, const TrimmedChart& chart) {
  ChartActivity out;
  out.inactive = true;
  for (std::size_t i = 0; i < chart.rows.size() && out.inactive; ++i) {
    for (std::size_t j = i + 1; j < chart.rows.size() && out.inactive; ++j) {
      for (std::size_t a = 0; a < chart.cols.size() && out.inactive; ++a) {
        for (std::size_t b = a + 1; b < chart.cols.size(); ++b) {
          const int z1 = chart.rows[i], z2 = chart.rows[j], r1 = chart.cols[a], r2 = chart.cols[b];
          if (model.u(z1, r1) * model.u(z2, r2) != model.u(z1, r2) * model.u(z2, r1)) {
            out.inactive = false;
            out.witness = std::array<int, 4>{z1, z2, r1, r2};
            break;
          }
        }
      }
    }
  }
  for (int z : chart.rows) out.alpha.push_back(model.u(z, chart.m));
  const int z0 = chart.rows.front();
  for (int r : chart.cols) out.beta.push_back(model.u(z0, r) / model.u(z0, chart.m));
  return out;
}

std::vector<std::pair<int, int>> chart_overlap(const ProjectivePlane& plane, const TrimmedChart& a,
                                               const TrimmedChart& b) {
  std::vector<std::pair<int, int>> out;
  for (int p : a.rows) {
    if (!contains(b.rows, p)) continue;
    for (int l : a.cols)
      if (contains(b.cols, l) && !plane.incident(p, l)) out.emplace_back(p, l);
  }
  return out;
}

namespace {

bool same_chart(const TrimmedChart& a, const TrimmedChart& b) {
  return a.n == b.n && a.w == b.w && a.ell == b.ell && a.m == b.m;
}

FieldElement transition_unchecked(const ResidueModel& model, const TrimmedChart& from, const TrimmedChart& to) {
  const ProjectivePlane& plane = model.plane();
  if (same_chart(from, to)) return model.field().one();
  int p = -1;
  if (from.n != to.n) {
    p = plane.meet(from.n, to.n);
    if (p == from.w || p == to.w) fail(ErrorCode::NoOverlap, "row lines meet at a chart's W");
  } else {
    for (int z : plane.points_on(from.n))
      if (z != from.w && z != to.w && !plane.incident(z, from.m) && !plane.incident(z, to.m)) {
        p = z;
        break;
      }
    if (p < 0) fail(ErrorCode::NoOverlap, "no shared row");
  }
  if (plane.incident(p, from.m) || plane.incident(p, to.m)) {
    fail(ErrorCode::OverlapOnBaseColumn, "overlap point " + std::to_string(p) + " lies on a base column");
  }
  return model.u(p, to.m) / model.u(p, from.m);
}

void require_inactive(const ResidueModel& model, const TrimmedChart& c) {
  if (!lam_inactive_test(model, c).inactive) {
    fail(ErrorCode::ChartActive, "chart (n=" + std::to_string(c.n) + ", W=" + std::to_string(c.w) + ") is active");
  }
}

}  // namespace

FieldElement transition_scalar(const ResidueModel& model, const TrimmedChart& from, const TrimmedChart& to) {
  require_inactive(model, from);
  require_inactive(model, to);
  return transition_unchecked(model, from, to);
}

FieldElement chart_cycle_holonomy(const ResidueModel& model, const std::vector<TrimmedChart>& cycle) {
  if (cycle.empty()) fail(ErrorCode::InvalidArgument, "empty chart cycle");
  for (const auto& c : cycle) require_inactive(model, c);
  FieldElement hol = model.field().one();
  for (std::size_t i = 0; i < cycle.size(); ++i) hol *= transition_unchecked(model, cycle[i], cycle[(i + 1) % cycle.size()]);
  return hol;
}

AtlasGluing glue_atlas(const ResidueModel& model, const std::vector<TrimmedChart>& charts) {
  const ProjectivePlane& plane = model.plane();
  const Field& f = model.field();
  const std::size_t k = charts.size();
  if (k == 0) fail(ErrorCode::InvalidArgument, "empty atlas");
  for (const auto& c : charts) require_inactive(model, c);

  // Scalar of an overlap from its first shared row: ratio of the canonical row factors.
  std::vector<std::vector<std::optional<FieldElement>>> scalar(k, std::vector<std::optional<FieldElement>>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const auto ov = chart_overlap(plane, charts[i], charts[j]);
      if (ov.empty()) continue;
      const int p = ov.front().first;
      scalar[i][j] = model.u(p, charts[j].m) / model.u(p, charts[i].m);
    }
  }
  std::vector<std::optional<FieldElement>> lambda(k);
  lambda[0] = f.one();
  std::deque<std::size_t> queue{0};
  std::vector<std::pair<std::size_t, std::size_t>> tree;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < k; ++j) {
      if (!scalar[i][j] || lambda[j]) continue;
      lambda[j] = *lambda[i] * *scalar[i][j];
      tree.emplace_back(i, j);
      queue.push_back(j);
    }
  }
  if (std::any_of(lambda.begin(), lambda.end(), [](const auto& x) { return !x.has_value(); })) {
    fail(ErrorCode::Disconnected, "chart adjacency graph is disconnected");
  }

  AtlasGluing out;
  out.alpha.resize(sz(plane.size()));
  out.beta.resize(sz(plane.size()));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (scalar[i][j] && *lambda[j] != *lambda[i] * *scalar[i][j]) {
        out.conflict = std::pair{static_cast<int>(i), static_cast<int>(j)};
        return out;
      }
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    const TrimmedChart& c = charts[j];
    const ChartActivity act = lam_inactive_test(model, c);
    const FieldElement inv = lambda[j]->inverse();
    for (std::size_t r = 0; r < c.rows.size(); ++r) {
      const FieldElement a = act.alpha[r] * inv;
      auto& slot = out.alpha[sz(c.rows[r])];
      if (slot && *slot != a) return out;
      slot = a;
    }
    for (std::size_t r = 0; r < c.cols.size(); ++r) {
      const FieldElement b = act.beta[r] * *lambda[j];
      auto& slot = out.beta[sz(c.cols[r])];
      if (slot && *slot != b) return out;
      slot = b;
    }
  }
  for (const auto& c : charts)
    for (int p : c.rows)
      for (int l : c.cols)
        if (model.u(p, l) != *out.alpha[sz(p)] * *out.beta[sz(l)]) return out;
  out.glued = true;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<BridgeAtlas> try_plan_bridge(const ProjectivePlane& plane, const BStarWitness& w, int t, int s,
                                           std::string& why) {
  const int v = plane.size();
  if (t < 0 || t >= v || s < 0 || s >= v) return why = "line index out of range", std::nullopt;
  if (t == s) return why = "bridge lines must differ", std::nullopt;
  if (plane.incident(w.a, t) || plane.incident(w.d, t)) return why = "t must avoid A and D", std::nullopt;
  if (plane.incident(w.b, s) || plane.incident(w.d, s)) return why = "s must avoid B and D", std::nullopt;
  const int w0 = plane.meet(t, w.l0), w1 = plane.meet(t, w.l1);
  const int v1 = plane.meet(s, w.l1), v0 = plane.meet(s, w.l0);
  if (w1 == v1 || w0 == v0) return why = "bridges meet L0 or L1 in the same point", std::nullopt;

  BridgeAtlas out;
  out.t = t;
  out.s = s;
  const std::array<int, 4> ws{w0, w1, v1, v0};
  const std::array<int, 4> ns{plane.join(w.a, w0), plane.join(w.a, w1), plane.join(w.b, v1), plane.join(w.b, v0)};
  const std::array<int, 4> ms{w.l0, t, w.l1, s};
  for (std::size_t i = 0; i < 4; ++i) {
    const int next_m = ms[(i + 1) % 4];
    int ell = -1;
    for (int l : plane.lines_through(ws[i]))
      if (l != ns[i] && l != ms[i] && l != next_m) {
        ell = l;
        break;
      }
    if (ell < 0 || ms[i] == ns[i] || !plane.incident(ws[i], next_m)) return why = "chart data degenerate", std::nullopt;
    out.charts[i] = build_trimmed_chart(plane, ns[i], ws[i], ell, ms[i]);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& a = out.charts[i];
    const auto& b = out.charts[(i + 1) % 4];
    if (a.n == b.n) return why = "consecutive charts share a row line", std::nullopt;
    const int p = plane.meet(a.n, b.n);
    if (p == a.w || p == b.w || plane.incident(p, a.m) || plane.incident(p, b.m)) {
      return why = "overlap point is not a valid row", std::nullopt;
    }
    if (chart_overlap(plane, a, b).empty()) return why = "consecutive charts do not overlap", std::nullopt;
    out.overlapPoints[i] = p;
  }
  return out;
}

}  // namespace

BridgeAtlas plan_bridge(const ProjectivePlane& plane, const BStarWitness& w, int t, int s) {
  std::string why;
  auto atlas = try_plan_bridge(plane, w, t, s, why);
  if (!atlas) fail(ErrorCode::NoValidBridge, why);
  return *atlas;
}

BridgeAtlas find_bridge(const ProjectivePlane& plane, const BStarWitness& w) {
  std::string why;
  for (int t = 0; t < plane.size(); ++t) {
    if (plane.incident(w.a, t) || plane.incident(w.d, t)) continue;
    for (int s = 0; s < plane.size(); ++s) {
      if (auto atlas = try_plan_bridge(plane, w, t, s, why)) return *atlas;
    }
  }
  fail(ErrorCode::NoValidBridge, "no bridge lines satisfy the conditions");
}

BridgeCycle bridge_cycle(const ResidueModel& model, const BStarWitness& w, int t, int s) {
  const ProjectivePlane& plane = model.plane();
  if (!is_valid_witness(plane, w)) fail(ErrorCode::PreconditionViolated, "not a witness datum");
  BridgeCycle out;
  out.atlas = plan_bridge(plane, w, t, s);
  out.holonomy = chart_cycle_holonomy(model, {out.atlas.charts.begin(), out.atlas.charts.end()});
  const auto u = [&](int p, int l) { return model.u(p, l); };
  out.rho = cross_ratio(model, w.a, w.b, w.l0, w.l1);
  out.delta = u(w.a, w.l0) * u(w.b, w.l1) - u(w.a, w.l1) * u(w.b, w.l0);
  out.holonomyEqualsRho = out.holonomy == out.rho;
  out.skewDeltaIdentity = out.delta == u(w.a, w.l0) * u(w.b, w.l1) * (model.field().one() - out.holonomy);
  out.initialFormRelation = u(w.c, w.l2) * out.delta == u(w.a, w.l2) * u(w.b, w.l1) * u(w.c, w.l0);
  out.affineRewrite =
      out.holonomy == model.field().one() - (u(w.c, w.l0) / u(w.c, w.l2)) * (u(w.a, w.l2) / u(w.a, w.l0));
  return out;
}

BridgeCycle bridge_cycle(const ResidueModel& model, const BStarWitness& w) {
  const BridgeAtlas atlas = find_bridge(model.plane(), w);
  return bridge_cycle(model, w, atlas.t, atlas.s);
}

ThreeChartCycle three_chart_cycle(const ProjectivePlane& plane, const BStarWitness& w) {
  if (!is_valid_witness(plane, w)) fail(ErrorCode::PreconditionViolated, "not a witness datum");
  const auto others = [&](int point, int n, int base) {
    std::vector<int> out;
    for (int l : plane.lines_through(point))
      if (l != n && l != base) out.push_back(l);
    return out;
  };
  for (int w0 : plane.points_on(w.l0)) {
    if (w0 == w.d) continue;
    const int n0 = plane.join(w.a, w0);
    for (int w1 : plane.points_on(w.l1)) {
      if (w1 == w.d || w1 == w.c) continue;
      const int n1 = plane.join(w.b, w1);
      for (int w2 : plane.points_on(w.l2)) {
        if (w2 == w.d || w2 == w.b) continue;
        const int n2 = plane.join(w.c, w2);
        for (int e0 : others(w0, n0, w.l0)) {
          const TrimmedChart r0 = build_trimmed_chart(plane, n0, w0, e0, w.l0);
          if (!r0.contains(w.a, w.l0)) continue;
          for (int e1 : others(w1, n1, w.l1)) {
            const TrimmedChart r1 = build_trimmed_chart(plane, n1, w1, e1, w.l1);
            if (!r1.contains(w.b, w.l1)) continue;
            auto o01 = chart_overlap(plane, r0, r1);
            if (o01.empty()) continue;
            for (int e2 : others(w2, n2, w.l2)) {
              const TrimmedChart r2 = build_trimmed_chart(plane, n2, w2, e2, w.l2);
              if (!r2.contains(w.c, w.l2)) continue;
              auto o12 = chart_overlap(plane, r1, r2);
              auto o20 = chart_overlap(plane, r2, r0);
              if (o12.empty() || o20.empty()) continue;
              return {{r0, r1, r2}, {std::move(o01), std::move(o12), std::move(o20)}};
            }
          }
        }
      }
    }
  }
  fail(ErrorCode::SearchExhausted, "no three-chart cycle around the witness");
}

}  // namespace tpl
