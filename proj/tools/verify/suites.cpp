#include "suites.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tpl/error.hpp"
#include "tpl/patterns.hpp"

namespace tpl::verify {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

FieldElement random_unit(const Field& f, std::mt19937_64& rng) {
  return f.element(std::uniform_int_distribution<std::uint32_t>(1, f.order() - 1)(rng));
}

FieldElement random_any(const Field& f, std::mt19937_64& rng) {
  return f.element(std::uniform_int_distribution<std::uint32_t>(0, f.order() - 1)(rng));
}

int random_except(const std::vector<int>& xs, std::initializer_list<int> avoid, std::mt19937_64& rng) {
  std::vector<int> ok;
  for (int x : xs)
    if (std::find(avoid.begin(), avoid.end(), x) == avoid.end()) ok.push_back(x);
  return ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
}

// Truncated integer polynomials mod p: an expansion independent of the jet arithmetic.
using Poly = std::vector<long long>;

Poly poly_mul(const Poly& a, const Poly& b, long long p) {
  Poly out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

Poly leibniz4(const std::vector<Poly>& m, long long p) {
  const std::size_t order = m[0].size();
  std::array<int, 4> perm{0, 1, 2, 3};
  Poly det(order, 0);
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += perm[sz(i)] > perm[sz(j)] ? 1 : 0;
    Poly term(order, 0);
    term[0] = inversions % 2 ? p - 1 : 1;
    for (std::size_t r = 0; r < 4; ++r) term = poly_mul(term, m[4 * r + sz(perm[r])], p);
    for (std::size_t i = 0; i < order; ++i) det[i] = (det[i] + term[i]) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::array<int, 4> random_four(int v, std::mt19937_64& rng) {
  std::set<int> s;
  std::uniform_int_distribution<int> pick(0, v - 1);
  while (s.size() < 4) s.insert(pick(rng));
  std::array<int, 4> out{};
  std::copy(s.begin(), s.end(), out.begin());
  return out;
}

FieldMatrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int density = 1) {
  FieldMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m.raw(i, j) = rng() % static_cast<unsigned>(density) == 0 ? random_any(f, rng).index() : 0;
  return m;
}

}  // namespace

void Tally::record(bool ok, const std::string& what) {
  ++samples;
  if (ok) return;
  if (failures == 0) firstFailure = what;
  ++failures;
}

BStarWitness random_witness(const ProjectivePlane& plane, std::mt19937_64& rng) {
  const int d = std::uniform_int_distribution<int>(0, plane.size() - 1)(rng);
  const auto& pencil = plane.lines_through(d);
  const int l0 = random_except(pencil, {}, rng);
  const int l1 = random_except(pencil, {l0}, rng);
  const int l2 = random_except(pencil, {l0, l1}, rng);
  const int b = random_except(plane.points_on(l2), {d}, rng);
  const int c = random_except(plane.points_on(l1), {d}, rng);
  const int l3 = plane.join(b, c);
  const int e = plane.meet(l0, l3);
  const int a = random_except(plane.points_on(l3), {b, c, e}, rng);
  return {a, b, c, d, l0, l1, l2, l3};
}

Tally theta4_rank1(const Field& f, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (int s = 0; s < samples; ++s) {
    std::array<FieldElement, 4> al{}, be{};
    for (auto& x : al) x = random_unit(f, rng);
    for (auto& x : be) x = random_unit(f, rng);
    Block4 b{};
    FieldElement prod = f.from_integer(-3);
    for (std::size_t i = 0; i < 4; ++i) {
      prod *= al[i] * be[i];
      for (std::size_t j = 0; j < 4; ++j) b[i][j] = i == j ? f.zero() : al[i] * be[j];
    }
    const FieldElement th = theta4(b);
    t.record(th == prod && th.is_zero() == (f.characteristic() == 3), "theta4 " + th.to_string());
  }
  return t;
}

Tally jet_identity_blocks(const Field& f, int samples, std::uint64_t seed) {
  if (f.degree() != 1) fail(ErrorCode::InvalidArgument, "integer expansion needs a prime field");
  const auto p = static_cast<long long>(f.characteristic());
  std::mt19937_64 rng(seed);
  Tally t;
  for (int s = 0; s < samples; ++s) {
    IdentityBlockData blk;
    std::vector<Poly> m(16, Poly(3, 0));
    for (std::size_t i = 0; i < 4; ++i) {
      blk.a[i] = random_unit(f, rng);
      for (std::size_t j = 0; j < 4; ++j) {
        if (i == j) {
          blk.u[i][j] = f.zero();
          blk.w[i][j] = f.zero();
          m[4 * i + j][1] = blk.a[i].index();
        } else {
          blk.u[i][j] = random_unit(f, rng);
          blk.w[i][j] = random_any(f, rng);
          m[4 * i + j][0] = blk.u[i][j].index();
          m[4 * i + j][1] = blk.w[i][j].index();
        }
      }
    }
    const Poly det = leibniz4(m, p);
    std::vector<Jet> jets;
    for (std::size_t k = 0; k < 16; ++k)
      jets.push_back(Jet::from_coefficients({f.element(static_cast<std::uint32_t>(m[k][0])),
                                             f.element(static_cast<std::uint32_t>(m[k][1]))},
                                            3));
    const Jet jd = jet_determinant4(jets);
    const bool ok = theta4(blk.u).index() == static_cast<std::uint32_t>(det[0]) &&
                    psi4(blk).index() == static_cast<std::uint32_t>(det[1]) &&
                    jd.coefficient(0).index() == static_cast<std::uint32_t>(det[0]) &&
                    jd.coefficient(1).index() == static_cast<std::uint32_t>(det[1]);
    t.record(ok, "identity block sample " + std::to_string(s));
  }
  return t;
}

Tally initial_form_lifts(const Field& f, int samples, std::uint64_t seed) {
  if (f.degree() != 1) fail(ErrorCode::InvalidArgument, "integer expansion needs a prime field");
  const auto p = static_cast<long long>(f.characteristic());
  constexpr int kOrder = 4;
  std::mt19937_64 rng(seed);
  Tally t;
  std::vector<std::uint16_t> ids;
  for (std::uint32_t id = 0; id < 65536; ++id) {
    const ProfileSummary& s = profile_summary(Pattern4(static_cast<std::uint16_t>(id)));
    if (s.minWeight == 0 && (s.count == 2 || s.count == 3)) ids.push_back(static_cast<std::uint16_t>(id));
  }
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
  for (int s = 0; s < samples; ++s) {
    const std::uint16_t id = ids[pick(rng)];
    std::vector<Jet> jets;
    std::vector<Poly> polys;
    for (int i = 0; i < 16; ++i) {
      const int v = (id >> i) & 1;
      std::vector<FieldElement> c(kOrder, f.zero());
      Poly poly(kOrder, 0);
      for (int k = v; k < kOrder; ++k) {
        // Residues in {1,2} make cancellations frequent in every field.
        const FieldElement x = k == v ? (s % 2 ? f.element(1 + static_cast<std::uint32_t>(rng() % std::min<std::uint32_t>(2, f.order() - 1))) : random_unit(f, rng))
                                      : random_any(f, rng);
        c[sz(k)] = x;
        poly[sz(k)] = x.index();
      }
      jets.push_back(Jet::from_coefficients(c, kOrder));
      polys.push_back(poly);
    }
    const InitialForm form = initial_form(jets);
    const Poly det = leibniz4(polys, p);
    const bool ok = form.minWeight == 0 && form.residueSum.index() == static_cast<std::uint32_t>(det[0]) &&
                    form.raised == (det[0] == 0);
    t.record(ok, "pattern " + Pattern4(id).to_string());
  }
  return t;
}

Tally tie_depth(const Field& f, int samples, std::uint64_t seed) {
  constexpr int kOrder = 4;
  std::mt19937_64 rng(seed);
  Tally t;
  auto jet = [&](bool unit) {
    std::vector<FieldElement> c;
    c.push_back(unit ? random_unit(f, rng) : f.zero());
    for (int k = 1; k < kOrder; ++k) c.push_back(rng() % 2 ? f.zero() : random_any(f, rng));
    return Jet::from_coefficients(c, kOrder);
  };
  for (int s = 0; s < samples; ++s) {
    std::array<Jet, 4> js{jet(true), jet(true), jet(true), jet(true)};
    // Force near-ties so that deep cancellations are sampled.
    if (s % 3 == 0) js[3] = js[1] * js[2] / js[0] + jet(false);
    const TieDepthResult r = tie_depth_crossratio_check(js[0], js[1], js[2], js[3]);
    t.record(r.equal, "lhs " + r.lhs.to_string() + " rhs " + r.rhs.to_string());
  }
  return t;
}

namespace {

ResidueModel product_model(const PlanePtr& plane, const Field& f, std::mt19937_64& rng, std::vector<FieldElement>& al,
                           std::vector<FieldElement>& be) {
  const auto v = sz(plane->size());
  al.clear();
  be.clear();
  for (std::size_t i = 0; i < v; ++i) al.push_back(random_unit(f, rng)), be.push_back(random_unit(f, rng));
  FieldMatrix u(f, v, v);
  for (std::size_t p = 0; p < v; ++p)
    for (std::size_t l = 0; l < v; ++l)
      if (!plane->incident(static_cast<int>(p), static_cast<int>(l))) u.set(p, l, al[p] * be[l]);
  return ResidueModel(plane, std::move(u));
}

}  // namespace

Tally factorization_round_trip(const PlanePtr& plane, const Field& f, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<FieldElement> al, be;
    const ResidueModel model = product_model(plane, f, rng, al, be);
    const auto g = LabeledZeroGraph::from_model(model);
    const Factorization fac = factorize_labels(g);
    bool ok = fac.ok;
    if (ok) {
      for (const auto& [p, l] : g.graph().edges()) ok = ok && fac.alpha[sz(p)] * fac.beta[sz(l)] == model.u(p, l);
      const FieldElement c = fac.alpha[0] / al[0];
      for (std::size_t p = 0; p < al.size(); ++p) ok = ok && fac.alpha[p] == c * al[p];
    }
    t.record(ok, "trial " + std::to_string(trial));
  }
  return t;
}

Tally factorization_perturbation(const PlanePtr& plane, const Field& f, int trials, std::uint64_t seed) {
  if (f.order() < 3) fail(ErrorCode::InvalidArgument, "perturbation needs a unit other than 1");
  std::mt19937_64 rng(seed);
  Tally t;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<FieldElement> al, be;
    const ResidueModel model = product_model(plane, f, rng, al, be);
    const auto g = LabeledZeroGraph::from_model(model);
    auto labels = g.labels();
    const std::size_t e = std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng);
    FieldElement bump = random_unit(f, rng);
    while (bump.is_one()) bump = random_unit(f, rng);
    labels[e] *= bump;
    const LabeledZeroGraph bent(g.graph_ptr(), labels);
    const Factorization bad = factorize_labels(bent);
    bool ok = !bad.ok && bad.failingCycle.has_value();
    if (ok) {
      const FieldElement h = cycle_holonomy(bent, *bad.failingCycle);
      ok = !h.is_one() && h == bad.failingHolonomy &&
           CycleVector::of(bent.graph(), *bad.failingCycle).test(static_cast<int>(e));
    }
    t.record(ok, "trial " + std::to_string(trial) + " edge " + std::to_string(e));
  }
  return t;
}

Tally signed_holonomy_jets(const PlanePtr& plane, const Field& f, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto graph = std::make_shared<const ZeroGraph>(nonincidence_graph(*plane));
  Tally t;
  while (t.samples < samples) {
    const std::array<int, 4> rows = random_four(plane->size(), rng), cols = random_four(plane->size(), rng);
    const TropicalProfile prof = tropical_profile(pattern_of(*plane, rows, cols));
    if (prof.type() != std::pair{0, 2}) continue;
    const AlternatingCycle cyc = matching_pair_cycle(prof.minimizers[0], prof.minimizers[1], rows, cols);
    std::vector<FieldElement> labels;
    for (std::size_t e = 0; e < sz(graph->edge_count()); ++e) labels.push_back(random_unit(f, rng));
    if (t.samples % 2 == 0) {
      // Rescale one cycle edge so that the constraint holds and the t^0 term cancels.
      const FieldElement s = signed_cycle_holonomy(LabeledZeroGraph(graph, labels), cyc);
      labels[sz(graph->edge_index(cyc.points[0], cyc.lines[0]))] /= s;
    }
    const LabeledZeroGraph g(graph, labels);
    std::vector<Jet> jets;
    for (int r : rows)
      for (int c : cols)
        jets.push_back(plane->incident(r, c) ? Jet::monomial(random_unit(f, rng), 1, 3)
                                             : Jet::constant(g.label(r, c), 3) + Jet::monomial(random_unit(f, rng), 1, 3));
    const Valuation v = jet_determinant4(jets).valuation();
    const bool positive = !v.is_finite() || v.value() > 0;
    t.record(positive == signed_cycle_holonomy(g, cyc).is_one(), "cycle length " + std::to_string(cyc.length()));
  }
  return t;
}

Tally characteristic_two_gauge(const PlanePtr& plane, int samples, std::uint64_t seed) {
  // GF(8)* is cyclic of prime order 7, so labels g^x turn holonomy constraints into linear ones mod 7.
  constexpr int kMod = 7;
  const Field& f = Field::of_order(8);
  const FieldElement gen = f.element(2);
  const ZeroGraph graph = nonincidence_graph(*plane);
  const int edges = graph.edge_count();
  const int cycleDim = edges - graph.vertex_count() + 1;
  const auto mod = [](long long x) { return static_cast<int>(((x % kMod) + kMod) % kMod); };
  std::vector<int> inverse(kMod, 0);
  for (int a = 1; a < kMod; ++a)
    for (int b = 1; b < kMod; ++b)
      if (a * b % kMod == 1) inverse[sz(a)] = b;

  // Echelon basis of the constraint rows, one per (0,2) minor.
  std::vector<std::vector<int>> rows;
  std::vector<int> pivots;
  std::vector<AlternatingCycle> cycles;
  const auto subsets = four_subsets(plane->size());
  for (const auto& rs : subsets) {
    for (const auto& cs : subsets) {
      const ProfileSummary& s = profile_summary(pattern_of(*plane, rs, cs));
      if (s.minWeight != 0 || s.count != 2) continue;
      const TropicalProfile prof = expand(s);
      AlternatingCycle cyc = matching_pair_cycle(prof.minimizers[0], prof.minimizers[1], rs, cs);
      if (static_cast<int>(rows.size()) < cycleDim) {
        std::vector<int> row(sz(edges), 0);
        const std::size_t m = cyc.points.size();
        for (std::size_t i = 0; i < m; ++i) {
          row[sz(graph.edge_index(cyc.points[i], cyc.lines[i]))] += 1;
          row[sz(graph.edge_index(cyc.points[(i + 1) % m], cyc.lines[i]))] -= 1;
        }
        for (int& x : row) x = mod(x);
        for (std::size_t k = 0; k < rows.size(); ++k) {
          const int c = row[sz(pivots[k])];
          if (c == 0) continue;
          for (std::size_t j = 0; j < sz(edges); ++j) row[j] = mod(row[j] - static_cast<long long>(c) * rows[k][j]);
        }
        const auto lead = std::find_if(row.begin(), row.end(), [](int x) { return x != 0; });
        if (lead != row.end()) {
          const int inv = inverse[sz(*lead)];
          for (int& x : row) x = mod(static_cast<long long>(x) * inv);
          const int piv = static_cast<int>(lead - row.begin());
          // Keep the basis fully reduced so the null space can be read off.
          for (auto& other : rows) {
            const int c = other[sz(piv)];
            if (c != 0)
              for (std::size_t j = 0; j < sz(edges); ++j) other[j] = mod(other[j] - static_cast<long long>(c) * row[j]);
          }
          rows.push_back(std::move(row));
          pivots.push_back(piv);
        }
      }
      cycles.push_back(std::move(cyc));
    }
  }

  Tally t;
  std::vector<bool> is_pivot(sz(edges), false);
  for (int p : pivots) is_pivot[sz(p)] = true;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    // Random free values; pivot values follow from the reduced rows.
    std::vector<int> x(sz(edges), 0);
    for (int e = 0; e < edges; ++e)
      if (!is_pivot[sz(e)]) x[sz(e)] = static_cast<int>(rng() % kMod);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      long long acc = 0;
      for (int e = 0; e < edges; ++e)
        if (!is_pivot[sz(e)]) acc += static_cast<long long>(rows[k][sz(e)]) * x[sz(e)];
      x[sz(pivots[k])] = mod(-acc);
    }
    std::vector<FieldElement> labels;
    for (int e = 0; e < edges; ++e) labels.push_back(gen.pow(static_cast<unsigned long long>(x[sz(e)])));
    const LabeledZeroGraph g(std::make_shared<const ZeroGraph>(graph), labels);
    bool constraints = true;
    for (const auto& cyc : cycles) constraints = constraints && signed_cycle_holonomy(g, cyc).is_one();
    t.record(constraints && factorize_labels(g).ok, "sample " + std::to_string(s));
  }
  return t;
}

Tally three_chart_cycles(const PlanePtr& plane, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (int s = 0; s < samples; ++s) {
    const BStarWitness w = random_witness(*plane, rng);
    bool ok = true;
    try {
      const ThreeChartCycle cyc = three_chart_cycle(*plane, w);
      ok = cyc.charts[0].contains(w.a, w.l0) && cyc.charts[1].contains(w.b, w.l1) && cyc.charts[2].contains(w.c, w.l2);
      const std::array<int, 3> base{w.l0, w.l1, w.l2};
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& a = cyc.charts[i];
        const auto& b = cyc.charts[(i + 1) % 3];
        ok = ok && !cyc.overlaps[i].empty() && a.m == base[i];
        for (const auto& [p, l] : cyc.overlaps[i]) ok = ok && a.contains(p, l) && b.contains(p, l) && !plane->incident(p, l);
      }
    } catch (const Error&) {
      ok = false;
    }
    t.record(ok, "sample " + std::to_string(s));
  }
  return t;
}

Tally bridge_identities(const ResidueModel& model, const std::vector<BStarWitness>& witnesses) {
  Tally t;
  for (const BStarWitness& w : witnesses) {
    bool ok = true;
    try {
      const BridgeCycle b = bridge_cycle(model, w);
      ok = b.holonomyEqualsRho && b.rho == cross_ratio(model, w.a, w.b, w.l0, w.l1) && b.skewDeltaIdentity &&
           b.initialFormRelation && b.affineRewrite;
    } catch (const Error&) {
      ok = false;
    }
    t.record(ok, "witness at D=" + std::to_string(w.d));
  }
  return t;
}

WitnessRelationTally witness_relations(const ResidueModel& model, const std::vector<BStarWitness>& witnesses) {
  WitnessRelationTally out;
  for (const BStarWitness& w : witnesses) {
    const WitnessEquations eq = witness_equation_checks(model, w);
    const std::string where = "witness at D=" + std::to_string(w.d);
    out.relation.record(eq.initialFormRelation, where);
    out.rhoPlusSigma.record(eq.rhoPlusSigma, where);
    if (eq.rhoNotOneAsserted) out.rhoNotOne.record(eq.rhoNotOne, where);
  }
  return out;
}

Tally degenerate_families(const ProjectivePlane& plane) {
  Tally t;
  for (const DegenerateDiamond& dd : degenerate_diamonds(plane)) {
    const DegenerateSquareFamily f = degenerate_square_family_census(plane, dd);
    t.record(f.allFourMinimizers && f.swapPairPresent && f.familySize == f.expectedSize,
             "diamond " + std::to_string(dd.x) + "," + std::to_string(dd.y));
  }
  return t;
}

Tally monomial_blocks(const ProjectivePlane& plane, const Field& f) {
  Tally t;
  const int q = plane.order();
  for (int line = 0; line < std::min(plane.size(), 3); ++line) {
    for (int k = 0; k < q; ++k) {
      std::vector<int> choices;
      for (int p : plane.points_on(line)) {
        std::vector<int> others;
        for (int l : plane.lines_through(p))
          if (l != line) others.push_back(l);
        choices.push_back(others[sz(k) % others.size()]);
      }
      const MonomialBlockResult r = monomial_block_rank(plane, line, choices, f);
      t.record(r.blockIsDiagonal && r.rank == q + 1, "line " + std::to_string(line) + " choice " + std::to_string(k));
    }
  }
  return t;
}

Tally tangent_rank(int r, int trials, std::uint64_t seed) {
  const Field& f = Field::prime(7);
  constexpr std::size_t n = 13;
  std::mt19937_64 rng(seed);
  Tally t;
  const auto ru = static_cast<std::size_t>(r);
  for (int trial = 0; trial < trials; ++trial) {
    const TangentFactorization fac{random_matrix(f, n, ru, rng), random_matrix(f, ru, n, rng), random_matrix(f, n, ru, rng),
                                   random_matrix(f, ru, n, rng)};
    const int rank = rank_gf(tangent_first_order(fac));
    t.record(rank <= 2 * r, "rank " + std::to_string(rank));
  }
  return t;
}

namespace {

// Random rank-<=6 product with nonzero diagonal; sparse factors stress the support bound.
FieldMatrix rank_six_support(std::size_t n, std::mt19937_64& rng) {
  const Field& f = Field::prime(5);
  for (;;) {
    const FieldMatrix v = random_matrix(f, n, 6, rng, 2) * random_matrix(f, 6, n, rng, 2);
    bool diag = true;
    for (std::size_t i = 0; i < n; ++i) diag = diag && v.raw(i, i) != 0;
    if (diag) return v;
  }
}

}  // namespace

Tally turan_random(int n, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (int trial = 0; trial < trials; ++trial) {
    const TuranResult r = turan_support_check(rank_six_support(static_cast<std::size_t>(n), rng));
    t.record(r.independenceOk && r.edgeBoundOk, "edges " + std::to_string(r.edgeCount) + " bound " + std::to_string(r.bound));
  }
  return t;
}

Tally turan_exhaustive(int perSize, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (int n = 7; n <= 14; ++n) {
    for (int trial = 0; trial < perSize; ++trial) {
      const TuranResult r = turan_support_check(rank_six_support(static_cast<std::size_t>(n), rng));
      t.record(r.maxIndependentSet >= 0 && r.maxIndependentSet <= 6,
               "n " + std::to_string(n) + " independence " + std::to_string(r.maxIndependentSet));
    }
  }
  return t;
}

}  // namespace tpl::verify
