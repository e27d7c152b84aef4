#include "tpl/plane.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <queue>
#include <sstream>

#include "tpl/error.hpp"

namespace tpl {

namespace {

constexpr int kMaxConstructedOrder = 27;

std::string pair_text(const char* kind, int a, int b) {
  return std::string(kind) + " " + std::to_string(a) + " and " + std::to_string(b);
}

}  // namespace

PlanePtr ProjectivePlane::from_lines(int q, std::vector<std::vector<int>> lines, std::string source) {
  std::shared_ptr<ProjectivePlane> plane(new ProjectivePlane());
  plane->q_ = q;
  plane->v_ = q * q + q + 1;
  plane->source_ = std::move(source);
  plane->lines_ = std::move(lines);
  plane->validate_and_index();
  return plane;
}

PlanePtr ProjectivePlane::from_incidence(int q, const std::vector<std::vector<std::uint8_t>>& incidence) {
  const std::size_t v = incidence.size();
  std::vector<std::vector<int>> lines(v);
  for (std::size_t p = 0; p < v; ++p) {
    if (incidence[p].size() != v) fail(ErrorCode::AxiomViolation, "incidence matrix is not square");
    for (std::size_t l = 0; l < v; ++l) {
      if (incidence[p][l] != 0) lines[l].push_back(static_cast<int>(p));
    }
  }
  return from_lines(q, std::move(lines), "<incidence>");
}

void ProjectivePlane::validate_and_index() {
  const int q = q_, v = v_;
  if (q < 2) fail(ErrorCode::AxiomViolation, "order must be at least 2");
  if (static_cast<int>(lines_.size()) != v) {
    fail(ErrorCode::AxiomViolation, "expected " + std::to_string(v) + " lines, found " + std::to_string(lines_.size()));
  }
  const auto uv = static_cast<std::size_t>(v);
  inc_.assign(uv * uv, 0);
  for (int l = 0; l < v; ++l) {
    auto& pts = lines_[static_cast<std::size_t>(l)];
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
      fail(ErrorCode::AxiomViolation, "line " + std::to_string(l) + " repeats a point");
    }
    if (static_cast<int>(pts.size()) != q + 1) {
      fail(ErrorCode::AxiomViolation, "line " + std::to_string(l) + " has " + std::to_string(pts.size()) +
                                          " points, expected " + std::to_string(q + 1));
    }
    for (int p : pts) {
      if (p < 0 || p >= v) fail(ErrorCode::AxiomViolation, "point index out of range on line " + std::to_string(l));
      inc_[index(p, l)] = 1;
    }
  }
  pencils_.assign(uv, {});
  for (int l = 0; l < v; ++l) {
    for (int p : lines_[static_cast<std::size_t>(l)]) pencils_[static_cast<std::size_t>(p)].push_back(l);
  }

  // Two distinct lines meet in exactly one point.
  meet_.assign(uv * uv, -1);
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      const auto& la = lines_[static_cast<std::size_t>(a)];
      const auto& lb = lines_[static_cast<std::size_t>(b)];
      int common = 0, witness = -1;
      for (std::size_t i = 0, j = 0; i < la.size() && j < lb.size();) {
        if (la[i] == lb[j]) {
          ++common;
          witness = la[i];
          ++i;
          ++j;
        } else if (la[i] < lb[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      if (common > 1) fail(ErrorCode::AxiomViolation, "two lines meet in >1 point: " + pair_text("lines", a, b));
      if (common == 0) fail(ErrorCode::AxiomViolation, "two lines do not meet: " + pair_text("lines", a, b));
      meet_[index(a, b)] = meet_[index(b, a)] = witness;
    }
  }
  for (int p = 0; p < v; ++p) {
    const auto deg = pencils_[static_cast<std::size_t>(p)].size();
    if (static_cast<int>(deg) != q + 1) {
      fail(ErrorCode::AxiomViolation, "point " + std::to_string(p) + " lies on " + std::to_string(deg) +
                                          " lines, expected " + std::to_string(q + 1));
    }
  }
  // Two distinct points lie on exactly one line.
  join_.assign(uv * uv, -1);
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      const auto& pa = pencils_[static_cast<std::size_t>(a)];
      const auto& pb = pencils_[static_cast<std::size_t>(b)];
      int common = 0, witness = -1;
      for (std::size_t i = 0, j = 0; i < pa.size() && j < pb.size();) {
        if (pa[i] == pb[j]) {
          ++common;
          witness = pa[i];
          ++i;
          ++j;
        } else if (pa[i] < pb[j]) {
          ++i;
        } else {
          ++j;
        }
      }
      if (common != 1) {
        fail(ErrorCode::AxiomViolation, "two points share " + std::to_string(common) + " lines: " + pair_text("points", a, b));
      }
      join_[index(a, b)] = join_[index(b, a)] = witness;
    }
  }
  // Four points, no three collinear.
  bool found = false;
  for (int c = 2; c < v && !found; ++c) {
    const int ab = join(0, 1);
    if (incident(c, ab)) continue;
    const int ac = join(0, c), bc = join(1, c);
    for (int d = 2; d < v; ++d) {
      if (!incident(d, ab) && !incident(d, ac) && !incident(d, bc)) {
        found = true;
        break;
      }
    }
  }
  if (!found) fail(ErrorCode::AxiomViolation, "no four points with no three collinear");
}

const Triple& ProjectivePlane::point_coordinates(int point) const {
  if (provenance_ != Provenance::Constructed) fail(ErrorCode::NotConstructed, "plane has no coordinates");
  return point_coords_.at(static_cast<std::size_t>(point));
}

const Triple& ProjectivePlane::line_coordinates(int line) const {
  if (provenance_ != Provenance::Constructed) fail(ErrorCode::NotConstructed, "plane has no coordinates");
  return line_coords_.at(static_cast<std::size_t>(line));
}

PlanePtr build_pg2(int q) {
  std::uint32_t p = 0, k = 0;
  if (q < 2 || q > kMaxConstructedOrder || !prime_power(static_cast<std::uint32_t>(q), p, k)) {
    fail(ErrorCode::UnsupportedOrder, std::to_string(q) + " is not a supported prime power (2..27)");
  }
  const Field& f = Field::of_order(static_cast<std::uint32_t>(q));
  const auto uq = static_cast<std::uint32_t>(q);

  // Normalized triples: first nonzero coordinate equals 1, lexicographic order.
  std::vector<Triple> triples;
  triples.push_back({0, 0, 1});
  for (std::uint32_t z = 0; z < uq; ++z) triples.push_back({0, 1, z});
  for (std::uint32_t y = 0; y < uq; ++y) {
    for (std::uint32_t z = 0; z < uq; ++z) triples.push_back({1, y, z});
  }

  const int v = static_cast<int>(triples.size());
  std::vector<std::vector<int>> lines(static_cast<std::size_t>(v));
  for (int l = 0; l < v; ++l) {
    const Triple& lc = triples[static_cast<std::size_t>(l)];
    for (int pt = 0; pt < v; ++pt) {
      const Triple& pc = triples[static_cast<std::size_t>(pt)];
      std::uint32_t dot = 0;
      for (int i = 0; i < 3; ++i) dot = f.add(dot, f.mul(pc[static_cast<std::size_t>(i)], lc[static_cast<std::size_t>(i)]));
      if (dot == 0) lines[static_cast<std::size_t>(l)].push_back(pt);
    }
  }

  std::shared_ptr<ProjectivePlane> plane(new ProjectivePlane());
  plane->q_ = q;
  plane->v_ = v;
  plane->lines_ = std::move(lines);
  plane->validate_and_index();
  plane->provenance_ = ProjectivePlane::Provenance::Constructed;
  plane->source_ = "PG(2," + std::to_string(q) + ")";
  plane->field_ = &f;
  plane->point_coords_ = triples;
  plane->line_coords_ = triples;
  return plane;
}

std::string dump_plane(const ProjectivePlane& plane) {
  std::ostringstream os;
  os << "plane q=" << plane.order() << " v=" << plane.size() << '\n';
  for (int l = 0; l < plane.size(); ++l) {
    os << "line " << l << ':';
    for (int p : plane.points_on(l)) os << ' ' << p;
    os << '\n';
  }
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(int lineno, const std::string& what) {
  fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + what);
}

int parse_int(const std::string& tok, int lineno) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    parse_fail(lineno, "expected a nonnegative integer, got '" + tok + "'");
  }
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    parse_fail(lineno, "integer out of range");
  }
}

}  // namespace

PlanePtr ingest_plane(std::istream& in, const std::string& source) {
  std::string text;
  int lineno = 1;
  if (!std::getline(in, text)) parse_fail(lineno, "missing header");
  int q = 0, v = 0;
  {
    std::istringstream hs(text);
    std::string word, qtok, vtok, extra;
    hs >> word >> qtok >> vtok;
    if (word != "plane" || qtok.rfind("q=", 0) != 0 || vtok.rfind("v=", 0) != 0 || (hs >> extra)) {
      parse_fail(lineno, "header must be 'plane q=<int> v=<int>'");
    }
    q = parse_int(qtok.substr(2), lineno);
    v = parse_int(vtok.substr(2), lineno);
    if (q < 2 || q > 1000) parse_fail(lineno, "order out of range");
    if (v != q * q + q + 1) parse_fail(lineno, "v must equal q^2+q+1");
  }
  std::vector<std::vector<int>> lines;
  while (std::getline(in, text)) {
    ++lineno;
    if (text.empty()) parse_fail(lineno, "empty line");
    std::istringstream ls(text);
    std::string word, label;
    ls >> word >> label;
    if (word != "line" || label.size() < 2 || label.back() != ':') parse_fail(lineno, "expected 'line <i>:'");
    const int idx = parse_int(label.substr(0, label.size() - 1), lineno);
    if (idx != static_cast<int>(lines.size())) parse_fail(lineno, "line indices must be consecutive from 0");
    std::vector<int> pts;
    std::string tok;
    while (ls >> tok) {
      const int p = parse_int(tok, lineno);
      if (p >= v) parse_fail(lineno, "point index out of range");
      if (!pts.empty() && p <= pts.back()) parse_fail(lineno, "point indices must be strictly increasing");
      pts.push_back(p);
    }
    lines.push_back(std::move(pts));
  }
  if (static_cast<int>(lines.size()) != v) {
    parse_fail(lineno, "expected " + std::to_string(v) + " lines, found " + std::to_string(lines.size()));
  }
  return ProjectivePlane::from_lines(q, std::move(lines), source);
}

PlanePtr ingest_plane_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  return ingest_plane(in, path);
}

// ---------------------------------------------------------------------------

ZeroGraph::ZeroGraph(int rows, int cols, std::vector<std::pair<int, int>> edges)
    : rows_(rows), cols_(cols), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  edge_id_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), -1);
  row_adj_.assign(static_cast<std::size_t>(rows), {});
  col_adj_.assign(static_cast<std::size_t>(cols), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [r, c] = edges_[e];
    if (r < 0 || r >= rows || c < 0 || c >= cols) fail(ErrorCode::InvalidArgument, "edge endpoint out of range");
    edge_id_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)] = static_cast<int>(e);
    row_adj_[static_cast<std::size_t>(r)].push_back(c);
    col_adj_[static_cast<std::size_t>(c)].push_back(r);
  }
}

namespace {

// Distances from one vertex; rows are 0..R-1, columns R..R+C-1.
std::vector<int> bfs(const ZeroGraph& g, int start) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(start)] = 0;
  frontier.push(start);
  while (!frontier.empty()) {
    const int x = frontier.front();
    frontier.pop();
    const bool is_row = x < g.rows();
    const auto& nbrs = is_row ? g.row_neighbors(x) : g.col_neighbors(x - g.rows());
    for (int y : nbrs) {
      const int id = is_row ? y + g.rows() : y;
      if (dist[static_cast<std::size_t>(id)] < 0) {
        dist[static_cast<std::size_t>(id)] = dist[static_cast<std::size_t>(x)] + 1;
        frontier.push(id);
      }
    }
  }
  return dist;
}

}  // namespace

bool ZeroGraph::connected() const {
  if (vertex_count() == 0) return true;
  const auto dist = bfs(*this, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

ZeroGraph nonincidence_graph(const ProjectivePlane& plane) {
  const int v = plane.size();
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(v) * static_cast<std::size_t>(plane.order() * plane.order()));
  for (int p = 0; p < v; ++p) {
    for (int l = 0; l < v; ++l) {
      if (!plane.incident(p, l)) edges.emplace_back(p, l);
    }
  }
  return ZeroGraph(v, v, std::move(edges));
}

int graph_diameter(const ZeroGraph& graph) {
  int diameter = 0;
  for (int s = 0; s < graph.vertex_count(); ++s) {
    for (int d : bfs(graph, s)) {
      if (d < 0) fail(ErrorCode::Disconnected, "vertex " + std::to_string(s) + " does not reach every vertex");
      diameter = std::max(diameter, d);
    }
  }
  return diameter;
}

}  // namespace tpl
