#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "tpl/holonomy.hpp"

using namespace tpl;
using namespace tpl::testing;

namespace {

std::shared_ptr<const ZeroGraph> complete_bipartite(int rows, int cols) {
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) edges.emplace_back(r, c);
  return std::make_shared<const ZeroGraph>(rows, cols, edges);
}

// Random closed alternating walk through distinct points.
template <class Rng>
AlternatingCycle random_cycle(const ProjectivePlane& plane, int m, Rng& rng) {
  AlternatingCycle c;
  std::uniform_int_distribution<int> pick(0, plane.size() - 1);
  while (static_cast<int>(c.points.size()) < m) {
    const int p = pick(rng);
    if (std::find(c.points.begin(), c.points.end(), p) == c.points.end()) c.points.push_back(p);
  }
  for (int i = 0; i < m; ++i) {
    const int a = c.points[static_cast<std::size_t>(i)], b = c.points[static_cast<std::size_t>((i + 1) % m)];
    int l = pick(rng);
    while (plane.incident(a, l) || plane.incident(b, l) || std::find(c.lines.begin(), c.lines.end(), l) != c.lines.end()) {
      l = pick(rng);
    }
    c.lines.push_back(l);
  }
  return c;
}

std::vector<FieldElement> product_labels(const ZeroGraph& g, const std::vector<FieldElement>& al,
                                         const std::vector<FieldElement>& be) {
  std::vector<FieldElement> out;
  for (const auto& [r, c] : g.edges()) out.push_back(al[static_cast<std::size_t>(r)] * be[static_cast<std::size_t>(c)]);
  return out;
}

}  // namespace

TEST_CASE("cycle holonomy examples") {
  const Field& f = Field::prime(5);
  const auto k22 = complete_bipartite(2, 2);
  // Edge order (0,0), (0,1), (1,0), (1,1).
  const LabeledZeroGraph g(k22, {f.one(), f.one(), f.one(), f.from_integer(2)});
  const FieldElement forward = cycle_holonomy(g, {{0, 1}, {0, 1}});
  const FieldElement backward = cycle_holonomy(g, {{1, 0}, {0, 1}});
  CHECK(forward == f.from_integer(2));
  CHECK(backward == f.from_integer(2).inverse());
  CHECK(signed_cycle_holonomy(g, {{0, 1}, {0, 1}}) == forward);

  const LabeledZeroGraph flat(k22, product_labels(*k22, {f.from_integer(2), f.from_integer(3)}, {f.from_integer(4), f.one()}));
  CHECK(cycle_holonomy(flat, {{0, 1}, {0, 1}}).is_one());

  CHECK(code_of([&] { (void)cycle_holonomy(g, {{0, 0}, {0, 1}}); }) == ErrorCode::NotACycle);
  CHECK(code_of([&] { (void)cycle_holonomy(g, {{0}, {0}}); }) == ErrorCode::NotACycle);
  CHECK(code_of([&] { (void)cycle_holonomy(g, {{0, 1}, {0, 2}}); }) == ErrorCode::NotACycle);
  CHECK(code_of([&] { LabeledZeroGraph(k22, {f.one(), f.zero(), f.one(), f.one()}); }) == ErrorCode::ZeroEntry);
}

TEST_CASE("product labels have trivial holonomy on random cycles") {
  const auto plane = build_pg2(3);
  const Field& f = Field::prime(7);
  std::mt19937_64 rng(3);
  std::vector<FieldElement> al, be;
  const ResidueModel model = pure_gauge_model(plane, f, rng, &al, &be);
  const auto g = LabeledZeroGraph::from_model(model);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = random_cycle(*plane, 2 + trial % 5, rng);
    REQUIRE(cycle_holonomy(g, c).is_one());
    REQUIRE(CycleVector::of(g.graph(), c).is_cycle(g.graph()));
  }
}

TEST_CASE("two-matching minors impose signed holonomy") {
  const auto plane = build_pg2(3);
  const Field& f = Field::prime(7);
  std::mt19937_64 rng(17);
  const ResidueModel model = random_model(plane, f, rng);
  const auto graph = std::make_shared<const ZeroGraph>(nonincidence_graph(*plane));
  std::uniform_int_distribution<int> pick(0, plane->size() - 1);
  std::uniform_int_distribution<std::uint32_t> unit(1, 6);
  int raised = 0, plain = 0;
  std::set<int> lengths;
  for (int found = 0; found < 600;) {
    std::array<int, 4> rows{}, cols{};
    std::set<int> rs, cs;
    while (rs.size() < 4) rs.insert(pick(rng));
    while (cs.size() < 4) cs.insert(pick(rng));
    std::copy(rs.begin(), rs.end(), rows.begin());
    std::copy(cs.begin(), cs.end(), cols.begin());
    const auto prof = tropical_profile(pattern_of(*plane, rows, cols));
    if (prof.type() != std::pair{0, 2}) continue;
    ++found;
    std::vector<FieldElement> labels;
    for (const auto& [p, l] : graph->edges()) labels.push_back(model.u(p, l));
    const AlternatingCycle cyc = matching_pair_cycle(prof.minimizers[0], prof.minimizers[1], rows, cols);
    lengths.insert(static_cast<int>(cyc.length()));
    if (found % 2 == 0) {
      // Rescale one cycle edge so that the signed holonomy becomes 1.
      const FieldElement s = signed_cycle_holonomy(LabeledZeroGraph(graph, labels), cyc);
      auto& e = labels[static_cast<std::size_t>(graph->edge_index(cyc.points[0], cyc.lines[0]))];
      e = e / s;
    }
    const LabeledZeroGraph g(graph, labels);
    std::vector<Jet> jets;
    for (int r : rows) {
      for (int c : cols) {
        if (plane->incident(r, c)) {
          jets.push_back(Jet::monomial(f.element(unit(rng)), 1, 3));
        } else {
          jets.push_back(Jet::constant(g.label(r, c), 3) + Jet::monomial(f.element(unit(rng)), 1, 3));
        }
      }
    }
    const Valuation v = jet_determinant4(jets).valuation();
    const bool positive = v.kind() != Valuation::Kind::Finite || v.value() > 0;
    const int k = static_cast<int>(cyc.points.size());
    const FieldElement hol = cycle_holonomy(g, cyc);
    REQUIRE(positive == (hol == f.from_integer(k % 2 == 0 ? 1 : -1)));
    REQUIRE(positive == signed_cycle_holonomy(g, cyc).is_one());
    (positive ? raised : plain)++;
  }
  CHECK(raised >= 300);
  CHECK(plain > 0);
  CHECK(lengths == std::set<int>{4, 6, 8});
}

TEST_CASE("factorization round trip and perturbation") {
  const auto plane = build_pg2(3);
  const Field& f = Field::prime(11);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> d(1, 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FieldElement> al, be;
    const ResidueModel model = pure_gauge_model(plane, f, rng, &al, &be);
    const auto g = LabeledZeroGraph::from_model(model);
    const Factorization fac = factorize_labels(g);
    REQUIRE(fac.ok);
    for (const auto& [p, l] : g.graph().edges())
      REQUIRE(fac.alpha[static_cast<std::size_t>(p)] * fac.beta[static_cast<std::size_t>(l)] == model.u(p, l));
    // Potentials agree with the generating ones up to one global scalar.
    const FieldElement c = fac.alpha[0] / al[0];
    for (std::size_t p = 0; p < al.size(); ++p) REQUIRE(fac.alpha[p] == c * al[p]);

    auto labels = g.labels();
    const std::size_t e = std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng);
    labels[e] = labels[e] * f.element(1 + d(rng) % 9 + 1);
    const LabeledZeroGraph bent(g.graph_ptr(), labels);
    const Factorization bad = factorize_labels(bent);
    REQUIRE_FALSE(bad.ok);
    REQUIRE(bad.failingCycle.has_value());
    REQUIRE_FALSE(cycle_holonomy(bent, *bad.failingCycle).is_one());
    REQUIRE(bad.failingHolonomy == cycle_holonomy(bent, *bad.failingCycle));
    REQUIRE(CycleVector::of(bent.graph(), *bad.failingCycle).test(static_cast<int>(e)));
  }
  const auto split = std::make_shared<const ZeroGraph>(2, 2, std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK(code_of([&] { (void)factorize_labels(LabeledZeroGraph(split, {f.one(), f.one()})); }) == ErrorCode::Disconnected);
}

TEST_CASE("characteristic two labels satisfying all two-matching constraints factor") {
  for (int q : {2, 3}) {
    const auto plane = build_pg2(q);
    const Field& f = Field::of_order(8);
    std::mt19937_64 rng(static_cast<unsigned>(q));
    const ResidueModel model = pure_gauge_model(plane, f, rng);
    const auto g = LabeledZeroGraph::from_model(model);
    // Every (0,2) minor constraint holds for these labels.
    std::mt19937_64 pick_rng(1);
    std::uniform_int_distribution<int> pick(0, plane->size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
      std::set<int> rs, cs;
      while (rs.size() < 4) rs.insert(pick(pick_rng));
      while (cs.size() < 4) cs.insert(pick(pick_rng));
      std::array<int, 4> rows{}, cols{};
      std::copy(rs.begin(), rs.end(), rows.begin());
      std::copy(cs.begin(), cs.end(), cols.begin());
      const auto prof = tropical_profile(pattern_of(*plane, rows, cols));
      if (prof.type() != std::pair{0, 2}) continue;
      REQUIRE(signed_cycle_holonomy(g, matching_pair_cycle(prof.minimizers[0], prof.minimizers[1], rows, cols)).is_one());
    }
    CHECK(factorize_labels(g).ok);
  }
}

TEST_CASE("cycle space dimensions") {
  const auto g2 = nonincidence_graph(*build_pg2(2));
  const auto g3 = nonincidence_graph(*build_pg2(3));
  CHECK(f2_cycle_space(g2, {}).ambientDim == 15);
  CHECK(f2_cycle_space(g3, {}).ambientDim == 92);
  CHECK(f2_cycle_space(g3, {}).spanDim == 0);

  std::vector<CycleVector> squares;
  for (const auto& c : four_cycles(g3)) squares.push_back(CycleVector::of(g3, c));
  // Any two points miss six common lines: 78 pairs with C(6,2) squares each.
  CHECK(squares.size() == 78 * 15);
  const auto dims = f2_cycle_space(g3, squares);
  CHECK(dims.spanDim <= 92);
  CHECK(square_connected(g3) == (dims.spanDim == 92));

  CycleVector v(10);
  v.flip(0);
  v.flip(5);
  CHECK(v.to_hex() == "120");
  CHECK(v.lowest() == 0);
}

TEST_CASE("square connectivity examples") {
  CHECK(square_connected(*complete_bipartite(3, 3)));
  const auto hexagon = std::make_shared<const ZeroGraph>(
      3, 3, std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {0, 2}});
  CHECK_FALSE(square_connected(*hexagon));
  const auto split = std::make_shared<const ZeroGraph>(2, 2, std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK(code_of([&] { (void)square_connected(*split); }) == ErrorCode::Disconnected);

  // Square-connected with trivial square holonomy implies a factorization.
  const Field& f = Field::prime(5);
  const auto k33 = complete_bipartite(3, 3);
  const LabeledZeroGraph g(k33, product_labels(*k33, {f.one(), f.from_integer(2), f.from_integer(3)},
                                               {f.from_integer(4), f.one(), f.from_integer(2)}));
  for (const auto& c : four_cycles(*k33)) CHECK(cycle_holonomy(g, c).is_one());
  CHECK(factorize_labels(g).ok);
}

TEST_CASE("trimmed charts") {
  const auto plane = build_pg2(5);
  const Field& f = Field::prime(5);
  std::mt19937_64 rng(2);
  std::vector<FieldElement> al, be;
  const ResidueModel gauge = pure_gauge_model(plane, f, rng, &al, &be);
  const int w = 3;
  const auto& pencil = plane->lines_through(w);
  const int n = pencil[0], ell = pencil[1], m = pencil[2];
  const TrimmedChart chart = build_trimmed_chart(*plane, n, w, ell, m);
  CHECK(chart.rows.size() == 5);
  CHECK(chart.cols.size() == 4);
  const auto act = lam_inactive_test(gauge, chart);
  CHECK(act.inactive);
  for (std::size_t j = 0; j < chart.cols.size(); ++j) {
    CHECK(act.beta[j] == be[static_cast<std::size_t>(chart.cols[j])] / be[static_cast<std::size_t>(m)]);
    if (chart.cols[j] == m) CHECK(act.beta[j].is_one());
  }

  const ResidueModel canonical = canonical_residue_model(plane);
  for (int p = 0; p < plane->size(); ++p)
    for (int nn : plane->lines_through(p)) {
      const auto& pc = plane->lines_through(p);
      const int e = first_except(pc, {nn});
      const int mm = first_except(pc, {nn, e});
      REQUIRE(lam_inactive_test(canonical, build_trimmed_chart(*plane, nn, p, e, mm)).inactive);
    }

  FieldMatrix u = gauge.matrix();
  const auto z = static_cast<std::size_t>(chart.rows[1]), r = static_cast<std::size_t>(chart.cols[2]);
  u.set(z, r, u.at(z, r) * f.from_integer(2));
  const ResidueModel bent(plane, u);
  const auto active = lam_inactive_test(bent, chart);
  CHECK_FALSE(active.inactive);
  REQUIRE(active.witness.has_value());
  const auto [z1, z2, r1, r2] = *active.witness;
  CHECK(bent.u(z1, r1) * bent.u(z2, r2) != bent.u(z1, r2) * bent.u(z2, r1));

  const int off = first_except(plane->points_on(pencil[3]), {w});
  CHECK(code_of([&] { (void)build_trimmed_chart(*plane, n, off, ell, m); }) == ErrorCode::InvalidChartData);
  CHECK(code_of([&] { (void)build_trimmed_chart(*plane, n, w, n, m); }) == ErrorCode::InvalidChartData);
  CHECK(code_of([&] { (void)build_trimmed_chart(*plane, n, w, ell, ell); }) == ErrorCode::InvalidChartData);
}

TEST_CASE("transition scalars") {
  const auto plane = build_pg2(7);
  const ResidueModel model = canonical_residue_model(plane);
  std::mt19937_64 rng(12);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = random_witness(*plane, rng);
    const BridgeAtlas atlas = find_bridge(*plane, w);
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& a = atlas.charts[i];
      const auto& b = atlas.charts[(i + 1) % 4];
      CHECK(transition_scalar(model, a, a).is_one());
      CHECK((transition_scalar(model, a, b) * transition_scalar(model, b, a)).is_one());
    }
    // Direct product of residue ratios at the consecutive row-line meets.
    FieldElement direct = model.field().one();
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& a = atlas.charts[i];
      const auto& b = atlas.charts[(i + 1) % 4];
      const int p = plane->meet(a.n, b.n);
      direct *= model.u(p, b.m) / model.u(p, a.m);
    }
    CHECK(chart_cycle_holonomy(model, {atlas.charts.begin(), atlas.charts.end()}) == direct);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("bridge cycles") {
  for (int q : {3, 5, 7, 8, 9}) {
    const auto plane = build_pg2(q);
    const ResidueModel model = canonical_residue_model(plane);
    std::mt19937_64 rng(static_cast<unsigned>(q));
    const ResidueModel gauge = pure_gauge_model(plane, model.field(), rng);
    for (int trial = 0; trial < 40; ++trial) {
      const auto w = random_witness(*plane, rng);
      const BridgeCycle b = bridge_cycle(model, w);
      CAPTURE(q);
      REQUIRE(b.holonomyEqualsRho);
      REQUIRE(b.rho == cross_ratio(model, w.a, w.b, w.l0, w.l1));
      REQUIRE(b.skewDeltaIdentity);
      REQUIRE(b.initialFormRelation);
      REQUIRE(b.affineRewrite);
      REQUIRE(b.holonomy.is_one() == b.delta.is_zero());
      if (q % 2 == 1) REQUIRE_FALSE(b.holonomy.is_one());
      for (const auto& c : b.atlas.charts) {
        REQUIRE(c.contains(c.rows.front(), c.m));
      }
      const BridgeCycle flat = bridge_cycle(gauge, w, b.atlas.t, b.atlas.s);
      REQUIRE(flat.holonomy.is_one());
      REQUIRE(flat.delta.is_zero());
      REQUIRE(flat.skewDeltaIdentity);
      REQUIRE_FALSE(flat.initialFormRelation);
    }
  }
  const auto plane = build_pg2(5);
  std::mt19937_64 rng(1);
  const auto w = random_witness(*plane, rng);
  const ResidueModel noisy = random_model(plane, Field::prime(7), rng);
  CHECK(code_of([&] { (void)bridge_cycle(noisy, w); }) == ErrorCode::ChartActive);
  CHECK(code_of([&] { (void)plan_bridge(*plane, w, w.l0, w.l1); }) == ErrorCode::NoValidBridge);
}

TEST_CASE("three-chart cycles around witnesses") {
  for (int q : {7, 8}) {
    const auto plane = build_pg2(q);
    std::mt19937_64 rng(static_cast<unsigned>(q) * 7);
    for (int trial = 0; trial < 100; ++trial) {
      const auto w = random_witness(*plane, rng);
      const ThreeChartCycle cyc = three_chart_cycle(*plane, w);
      REQUIRE(cyc.charts[0].contains(w.a, w.l0));
      REQUIRE(cyc.charts[1].contains(w.b, w.l1));
      REQUIRE(cyc.charts[2].contains(w.c, w.l2));
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& a = cyc.charts[i];
        const auto& b = cyc.charts[(i + 1) % 3];
        REQUIRE_FALSE(cyc.overlaps[i].empty());
        for (const auto& [p, l] : cyc.overlaps[i]) {
          REQUIRE(a.contains(p, l));
          REQUIRE(b.contains(p, l));
          REQUIRE_FALSE(plane->incident(p, l));
        }
        REQUIRE(plane->incident(a.w, a.n));
        REQUIRE(a.m == std::array{w.l0, w.l1, w.l2}[i]);
      }
    }
  }
  const auto small = build_pg2(4);
  std::mt19937_64 rng(4);
  const auto w = random_witness(*small, rng);
  try {
    (void)three_chart_cycle(*small, w);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SearchExhausted);
  }
}

TEST_CASE("degenerate rectangles miss skew four-cycles") {
  const auto plane = build_pg2(3);
  const int v = plane->size();
  long long skew = 0;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      for (int l0 = 0; l0 < v; ++l0)
        for (int l1 = l0 + 1; l1 < v; ++l1) {
          if (plane->incident(a, l0) || plane->incident(a, l1) || plane->incident(b, l0) || plane->incident(b, l1)) continue;
          const int d = plane->meet(l0, l1);
          if (plane->incident(d, plane->join(a, b))) continue;
          ++skew;
          for (int n = 0; n < v; ++n)
            for (int w : plane->points_on(n)) {
              const bool rows_in = a != w && b != w && plane->incident(a, n) && plane->incident(b, n);
              const bool cols_in = l0 != n && l1 != n && plane->incident(w, l0) && plane->incident(w, l1);
              REQUIRE_FALSE((rows_in && cols_in));
            }
        }
  CHECK(skew > 0);
}

TEST_CASE("atlas gluing") {
  const auto plane = build_pg2(7);
  const Field& f = Field::prime(7);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const ResidueModel gauge = pure_gauge_model(plane, f, rng);
    const auto w = random_witness(*plane, rng);
    const BridgeAtlas bridge = find_bridge(*plane, w);
    const ThreeChartCycle tri = three_chart_cycle(*plane, w);
    std::vector<TrimmedChart> charts(bridge.charts.begin(), bridge.charts.end());
    charts.insert(charts.end(), tri.charts.begin(), tri.charts.end());
    bool connected = true;
    try {
      const AtlasGluing glued = glue_atlas(gauge, charts);
      REQUIRE(glued.glued);
      for (const auto& c : charts)
        for (int p : c.rows)
          for (int l : c.cols) REQUIRE(gauge.u(p, l) == *glued.alpha[static_cast<std::size_t>(p)] * *glued.beta[static_cast<std::size_t>(l)]);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::Disconnected);
      connected = false;
    }
    // The bridge atlas alone is a connected 4-cycle.
    REQUIRE(glue_atlas(gauge, {bridge.charts.begin(), bridge.charts.end()}).glued);
    (void)connected;

    const ResidueModel canonical = canonical_residue_model(plane);
    const AtlasGluing twisted = glue_atlas(canonical, {bridge.charts.begin(), bridge.charts.end()});
    REQUIRE_FALSE(twisted.glued);
    REQUIRE(twisted.conflict.has_value());
  }
}

TEST_CASE("overlap transition scalar is unique") {
  const auto plane = build_pg2(5);
  const Field& f = Field::prime(11);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::uint32_t> d(1, 10);
  const ResidueModel gauge = pure_gauge_model(plane, f, rng);
  const int w = 0;
  const auto& pencil = plane->lines_through(w);
  const TrimmedChart chart = build_trimmed_chart(*plane, pencil[0], w, pencil[1], pencil[2]);
  const auto act = lam_inactive_test(gauge, chart);
  // A second factorization alpha' = c alpha, beta' = beta / c; the row ratio recovers c everywhere.
  const FieldElement c = f.element(d(rng));
  std::set<std::uint32_t> ratios;
  for (std::size_t i = 0; i < chart.rows.size(); ++i) ratios.insert(((act.alpha[i] * c) / act.alpha[i]).index());
  CHECK(ratios.size() == 1);
  CHECK(*ratios.begin() == c.index());
  // Perturbing one grid label destroys every factorization of the chart.
  FieldMatrix u = gauge.matrix();
  const auto z = static_cast<std::size_t>(chart.rows[0]), r = static_cast<std::size_t>(chart.cols[1]);
  u.set(z, r, u.at(z, r) * f.from_integer(3));
  CHECK_FALSE(lam_inactive_test(ResidueModel(plane, u), chart).inactive);
}
