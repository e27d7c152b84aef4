#include "tpl/residue.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <random>
#include <sstream>

#include "tpl/error.hpp"

namespace tpl {

int rank_gf(const FieldMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const Field& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint32_t> a(rows * cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = m.raw(r, c);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((pivot + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    }
    const std::uint32_t inv = f.inv(a[rank * cols + c]);
    for (std::size_t k = c; k < cols; ++k) a[rank * cols + k] = f.mul(a[rank * cols + k], inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint32_t factor = a[r * cols + c];
      if (factor == 0) continue;
      const std::uint32_t neg = f.neg(factor);
      for (std::size_t k = c; k < cols; ++k) {
        a[r * cols + k] = f.add(a[r * cols + k], f.mul(neg, a[rank * cols + k]));
      }
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

ResidueModel::ResidueModel(PlanePtr plane, FieldMatrix u) : plane_(std::move(plane)), u_(std::move(u)) {
  if (!plane_) fail(ErrorCode::InvalidArgument, "model needs a plane");
  const auto v = static_cast<std::size_t>(plane_->size());
  if (u_.rows() != v || u_.cols() != v) fail(ErrorCode::ShapeMismatch, "model must be v x v");
  for (int p = 0; p < plane_->size(); ++p) {
    for (int l = 0; l < plane_->size(); ++l) {
      if ((raw(p, l) == 0) != plane_->incident(p, l)) {
        fail(ErrorCode::PreconditionViolated, "zero pattern differs from incidence at point " + std::to_string(p) +
                                                  ", line " + std::to_string(l));
      }
    }
  }
  rank_ = rank_gf(u_);
}

std::string ResidueModel::dump() const {
  std::ostringstream os;
  const auto& d = field().descriptor();
  os << "model q=" << plane_->order() << " p=" << d.p << " k=" << d.k << '\n';
  for (int p = 0; p < plane_->size(); ++p) {
    for (int l = 0; l < plane_->size(); ++l) {
      if (l > 0) os << ' ';
      os << u(p, l).to_string();
    }
    os << '\n';
  }
  return os.str();
}

ResidueModel load_model(std::istream& in, PlanePtr plane) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::ParseError, "missing model header");
  std::istringstream hs(line);
  std::string word, qt, pt, kt;
  hs >> word >> qt >> pt >> kt;
  if (word != "model" || qt.rfind("q=", 0) != 0 || pt.rfind("p=", 0) != 0 || kt.rfind("k=", 0) != 0) {
    fail(ErrorCode::ParseError, "header must be 'model q=<q> p=<p> k=<k>'");
  }
  int q = 0;
  std::uint32_t p = 0, k = 0;
  try {
    q = std::stoi(qt.substr(2));
    p = static_cast<std::uint32_t>(std::stoul(pt.substr(2)));
    k = static_cast<std::uint32_t>(std::stoul(kt.substr(2)));
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad number in model header");
  }
  if (q != plane->order()) fail(ErrorCode::ParseError, "model order differs from plane order");
  const Field& f = Field::get(FieldDescriptor::standard(p, k));
  const auto v = static_cast<std::size_t>(plane->size());
  FieldMatrix u(f, v, v);
  for (std::size_t r = 0; r < v; ++r) {
    if (!std::getline(in, line)) fail(ErrorCode::ParseError, "missing model row " + std::to_string(r));
    std::istringstream ls(line);
    std::string tok;
    std::size_t c = 0;
    for (; ls >> tok; ++c) {
      if (c >= v) fail(ErrorCode::ParseError, "too many entries in row " + std::to_string(r));
      std::vector<std::uint32_t> coeffs;
      std::istringstream ts(tok);
      std::string part;
      while (std::getline(ts, part, ',')) {
        try {
          const auto x = std::stoul(part);
          if (x >= p) fail(ErrorCode::ParseError, "coefficient out of range");
          coeffs.push_back(static_cast<std::uint32_t>(x));
        } catch (const std::logic_error&) {
          fail(ErrorCode::ParseError, "bad coefficient '" + part + "'");
        }
      }
      if (coeffs.size() != k) fail(ErrorCode::ParseError, "entry must have k coefficients");
      u.set(r, c, f.from_coefficients(coeffs));
    }
    if (c != v) fail(ErrorCode::ParseError, "row " + std::to_string(r) + " has " + std::to_string(c) + " entries");
  }
  return ResidueModel(std::move(plane), std::move(u));
}

ResidueModel canonical_residue_model(const PlanePtr& plane) {
  if (plane->provenance() != ProjectivePlane::Provenance::Constructed || plane->field() == nullptr) {
    fail(ErrorCode::NotConstructed, "ingested planes carry no coordinates");
  }
  const Field& f = *plane->field();
  const auto v = static_cast<std::size_t>(plane->size());
  FieldMatrix u(f, v, v);
  for (std::size_t p = 0; p < v; ++p) {
    const Triple& pc = plane->point_coordinates(static_cast<int>(p));
    for (std::size_t l = 0; l < v; ++l) {
      const Triple& lc = plane->line_coordinates(static_cast<int>(l));
      std::uint32_t dot = 0;
      for (std::size_t i = 0; i < 3; ++i) dot = f.add(dot, f.mul(pc[i], lc[i]));
      u.raw(p, l) = dot;
    }
  }
  return ResidueModel(plane, std::move(u));
}

// ---------------------------------------------------------------------------

namespace {

const Field& block_field(const Block4& u) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      const FieldElement& x = u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (x.field() == nullptr || x.is_zero()) {
        fail(ErrorCode::ZeroEntry, "u[" + std::to_string(i) + "][" + std::to_string(j) + "] is zero");
      }
    }
  }
  const Field& f = *u[0][1].field();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].field() != &f) {
        fail(ErrorCode::DescriptorMismatch);
      }
  return f;
}

const FieldElement& at(const Block4& u, int i, int j) {
  return u[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

bool is_derangement(const Perm4& p) {
  for (std::size_t i = 0; i < 4; ++i)
    if (p[i] == i) return false;
  return true;
}

}  // namespace

FieldElement theta4(const Block4& u) {
  const Field& f = block_field(u);
  FieldElement sum = f.zero();
  for (const Perm4& p : all_perms4()) {
    if (!is_derangement(p)) continue;
    FieldElement term = f.from_integer(perm_sign(p));
    for (int r = 0; r < 4; ++r) term *= at(u, r, p[static_cast<std::size_t>(r)]);
    sum += term;
  }
  return sum;
}

int derangement_sign_sum(int k) {
  if (k < 2 || k > 6) fail(ErrorCode::InvalidArgument, "k must be in 2..6");
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  int sum = 0;
  do {
    bool fixed = false;
    int inversions = 0;
    for (int i = 0; i < k; ++i) {
      fixed |= perm[static_cast<std::size_t>(i)] == i;
      for (int j = i + 1; j < k; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    }
    if (!fixed) sum += inversions % 2 == 0 ? 1 : -1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

std::array<FieldElement, 4> d_terms(const Block4& u) {
  block_field(u);
  std::array<FieldElement, 4> out{};
  for (int i = 0; i < 4; ++i) {
    std::array<int, 3> c{};
    int n = 0;
    for (int x = 0; x < 4; ++x)
      if (x != i) c[static_cast<std::size_t>(n++)] = x;
    const int j = c[0], k = c[1], l = c[2];
    out[static_cast<std::size_t>(i)] = at(u, j, k) * at(u, k, l) * at(u, l, j) + at(u, j, l) * at(u, l, k) * at(u, k, j);
  }
  return out;
}

FieldElement psi4(const IdentityBlockData& block) {
  const Field& f = block_field(block.u);
  for (const auto& a : block.a) {
    if (a.field() != &f) fail(ErrorCode::DescriptorMismatch);
    if (a.is_zero()) fail(ErrorCode::ZeroEntry, "diagonal coefficient is zero");
  }
  const auto d = d_terms(block.u);
  FieldElement sum = f.zero();
  for (std::size_t i = 0; i < 4; ++i) sum += block.a[i] * d[i];
  for (const Perm4& p : all_perms4()) {
    if (!is_derangement(p)) continue;
    FieldElement prod = f.from_integer(perm_sign(p));
    FieldElement corr = f.zero();
    for (int r = 0; r < 4; ++r) {
      const int c = p[static_cast<std::size_t>(r)];
      prod *= at(block.u, r, c);
      const FieldElement& w = at(block.w, r, c);
      if (w.field() != nullptr) corr += w / at(block.u, r, c);
    }
    sum += prod * corr;
  }
  return sum;
}

std::vector<AdmissibleRectangle> admissible_rectangles(const Block4& u) {
  block_field(u);
  std::vector<AdmissibleRectangle> out;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::array<int, 2> cols{};
      int n = 0;
      for (int x = 0; x < 4; ++x)
        if (x != i && x != j) cols[static_cast<std::size_t>(n++)] = x;
      const int a = cols[0], b = cols[1];
      out.push_back({i, j, a, b, (at(u, i, a) * at(u, j, b)) / (at(u, i, b) * at(u, j, a))});
    }
  }
  return out;
}

FlatnessResult flatness_to_rank1(const Block4& u) {
  const Field& f = block_field(u);
  FlatnessResult out;
  for (const auto& rect : admissible_rectangles(u)) {
    if (!rect.rho.is_one()) {
      out.witness = rect;
      return out;
    }
  }
  out.alpha[0] = f.one();
  for (int a = 1; a < 4; ++a) out.beta[static_cast<std::size_t>(a)] = at(u, 0, a);
  for (int i = 1; i < 4; ++i) {
    const int a = i == 1 ? 2 : 1;
    out.alpha[static_cast<std::size_t>(i)] = at(u, i, a) / at(u, 0, a);
  }
  out.beta[0] = at(u, 1, 0) / out.alpha[1];
  out.flat = true;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && at(u, i, j) != out.alpha[static_cast<std::size_t>(i)] * out.beta[static_cast<std::size_t>(j)]) {
        out.flat = false;
      }
  return out;
}

// ---------------------------------------------------------------------------

FieldElement cross_ratio(const ResidueModel& model, int p, int q, int l, int m) {
  if (p == q || l == m) fail(ErrorCode::NotAZeroRectangle, "rectangle needs two points and two lines");
  const FieldElement upl = model.u(p, l), upm = model.u(p, m), uql = model.u(q, l), uqm = model.u(q, m);
  if (upl.is_zero() || upm.is_zero() || uql.is_zero() || uqm.is_zero()) {
    fail(ErrorCode::NotAZeroRectangle, "rectangle touches an incidence");
  }
  return (upm / upl) * (uql / uqm);
}

ResidueModel apply_gauge(const ResidueModel& model, const std::vector<FieldElement>& alpha,
                         const std::vector<FieldElement>& beta) {
  const auto v = static_cast<std::size_t>(model.plane().size());
  if (alpha.size() != v || beta.size() != v) fail(ErrorCode::ShapeMismatch, "gauge vectors must have length v");
  const Field& f = model.field();
  for (const auto* vec : {&alpha, &beta}) {
    for (const auto& x : *vec) {
      if (x.field() != &f) fail(ErrorCode::DescriptorMismatch);
      if (x.is_zero()) fail(ErrorCode::ZeroScalar);
    }
  }
  FieldMatrix u(f, v, v);
  for (std::size_t p = 0; p < v; ++p)
    for (std::size_t l = 0; l < v; ++l) u.raw(p, l) = f.mul(f.mul(alpha[p].index(), model.matrix().raw(p, l)), beta[l].index());
  return ResidueModel(model.plane_ptr(), std::move(u));
}

Jet jet_determinant4(const std::vector<Jet>& m) {
  if (m.size() != 16) fail(ErrorCode::ShapeMismatch, "expected 16 jets");
  Jet det = Jet::exact_zero(m[0].field(), m[0].order());
  const Jet one = Jet::constant(m[0].field().one(), m[0].order());
  for (const Perm4& p : all_perms4()) {
    Jet term = perm_sign(p) > 0 ? one : -one;
    for (std::size_t r = 0; r < 4; ++r) term = term * m[4 * r + p[r]];
    det = det + term;
  }
  return det;
}

InitialForm initial_form(const std::vector<Jet>& minor) {
  if (minor.size() != 16) fail(ErrorCode::ShapeMismatch, "expected 16 jets");
  std::array<std::array<int, 4>, 4> cells{};
  for (std::size_t i = 0; i < 16; ++i) {
    const Valuation v = minor[i].valuation();
    if (!v.is_finite() || v.value() > 1) fail(ErrorCode::PreconditionViolated, "entry valuations must be 0 or 1");
    cells[i / 4][i % 4] = v.value();
  }
  const TropicalProfile prof = tropical_profile(Pattern4::from_rows(cells));
  const int order = minor[0].order();
  if (prof.minWeight >= order) {
    fail(ErrorCode::TruncationTooShallow, "minimal weight " + std::to_string(prof.minWeight) +
                                              " is not below truncation order " + std::to_string(order));
  }
  const Field& f = minor[0].field();
  InitialForm out;
  out.minWeight = prof.minWeight;
  out.residueSum = f.zero();
  for (const Perm4& p : prof.minimizers) {
    FieldElement term = f.from_integer(perm_sign(p));
    for (std::size_t r = 0; r < 4; ++r) term *= minor[4 * r + p[r]].leading_coefficient();
    out.residueSum += term;
  }
  out.detValuation = jet_determinant4(minor).valuation();
  out.raised = out.detValuation.value() > out.minWeight || out.detValuation.kind() == Valuation::Kind::Infinite;
  return out;
}

FieldMatrix tangent_first_order(const TangentFactorization& f) {
  const auto v = f.a0.rows();
  const auto r = f.a0.cols();
  if (f.b0.rows() != r || f.b0.cols() != v || f.a1.rows() != v || f.a1.cols() != r || f.b1.rows() != r ||
      f.b1.cols() != v) {
    fail(ErrorCode::ShapeMismatch, "factor shapes must be v x r and r x v");
  }
  return f.a1 * f.b0 + f.a0 * f.b1;
}

MonomialBlockResult monomial_block_rank(const ProjectivePlane& plane, int line, const std::vector<int>& choices,
                                        const Field& field) {
  const auto& pts = plane.points_on(line);
  if (choices.size() != pts.size()) fail(ErrorCode::InvalidChoice, "need one line per point of the fixed line");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int l = choices[i];
    if (l < 0 || l >= plane.size() || l == line || !plane.incident(pts[i], l)) {
      fail(ErrorCode::InvalidChoice, "line choice " + std::to_string(i) + " does not pass through its point");
    }
  }
  const std::size_t n = pts.size();
  FieldMatrix block(field, n, n);
  MonomialBlockResult out;
  out.blockIsDiagonal = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool inc = plane.incident(pts[i], choices[j]);
      block.raw(i, j) = inc ? 1 : 0;
      if (inc != (i == j)) out.blockIsDiagonal = false;
    }
  }
  out.rank = rank_gf(block);
  return out;
}

TuranResult turan_support_check(const FieldMatrix& v, int maxRank) {
  if (v.rows() != v.cols()) fail(ErrorCode::ShapeMismatch, "matrix must be square");
  const int n = static_cast<int>(v.rows());
  for (int i = 0; i < n; ++i) {
    if (v.raw(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) == 0) {
      fail(ErrorCode::PreconditionViolated, "diagonal entry " + std::to_string(i) + " is zero");
    }
  }
  if (rank_gf(v) > maxRank) fail(ErrorCode::PreconditionViolated, "rank exceeds the budget");
  TuranResult out;
  out.n = n;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (v.raw(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) != 0 ||
          v.raw(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) != 0) {
        adj[static_cast<std::size_t>(i)] |= 1u << (j % 32);
        adj[static_cast<std::size_t>(j)] |= 1u << (i % 32);
        ++out.edgeCount;
      }
    }
  }
  if (n <= 14) {
    int best = 0;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      bool independent = true;
      for (int i = 0; i < n && independent; ++i)
        if ((s >> i) & 1u) independent = (adj[static_cast<std::size_t>(i)] & s) == 0;
      if (independent) best = std::max(best, std::popcount(s));
    }
    out.maxIndependentSet = best;
    out.independenceOk = best <= maxRank;
  } else {
    // An independent set indexes a diagonal principal submatrix of full rank.
    out.independenceOk = true;
  }
  const long long num = static_cast<long long>(n) * (n - 6);
  out.bound = num <= 0 ? 0 : (num + 11) / 12;
  out.edgeBoundOk = out.edgeCount >= out.bound;
  return out;
}

// ---------------------------------------------------------------------------

Pattern4 witness_pattern() {
  return Pattern4::from_rows({{{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 0}}});
}

Pattern4 pattern_of(const ProjectivePlane& plane, const std::array<int, 4>& rows, const std::array<int, 4>& cols) {
  std::uint16_t id = 0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (plane.incident(rows[r], cols[c])) id = static_cast<std::uint16_t>(id | (1u << (4 * r + c)));
  return Pattern4(id);
}

bool is_valid_witness(const ProjectivePlane& plane, const BStarWitness& w) {
  std::array<int, 4> rows{w.a, w.b, w.c, w.d}, cols{w.l0, w.l1, w.l2, w.l3};
  for (auto* arr : {&rows, &cols}) {
    auto s = *arr;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  }
  if (pattern_of(plane, rows, cols) != witness_pattern()) return false;
  return plane.meet(w.l0, w.l1) == w.d && !plane.incident(w.d, plane.join(w.a, w.b));
}

WitnessEquations witness_equation_checks(const ResidueModel& model, const BStarWitness& w, bool strict) {
  if (!is_valid_witness(model.plane(), w)) fail(ErrorCode::PreconditionViolated, "not a witness datum");
  WitnessEquations out;
  out.asserted = model.rank() <= 3;
  if (strict && !out.asserted) fail(ErrorCode::RankTooHigh, "model rank " + std::to_string(model.rank()));
  const auto u = [&](int p, int l) { return model.u(p, l); };
  out.delta = u(w.a, w.l0) * u(w.b, w.l1) - u(w.a, w.l1) * u(w.b, w.l0);
  out.initialFormRelation = u(w.c, w.l2) * out.delta == u(w.a, w.l2) * u(w.b, w.l1) * u(w.c, w.l0);
  out.rho = (u(w.a, w.l1) / u(w.a, w.l0)) * (u(w.b, w.l0) / u(w.b, w.l1));
  out.sigma = (u(w.a, w.l2) / u(w.a, w.l0)) * (u(w.c, w.l0) / u(w.c, w.l2));
  out.rhoPlusSigma = (out.rho + out.sigma).is_one();
  out.rhoNotOne = !out.rho.is_one();
  out.rhoNotOneAsserted = model.field().characteristic() != 2;
  return out;
}

namespace {

FieldElement random_nonzero(const Field& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(1, f.order() - 1);
  return f.element(d(rng));
}

}  // namespace

OverlapEliminationResult overlap_elimination_check(int samples, const Field& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  OverlapEliminationResult out;
  for (int s = 0; s < samples; ++s) {
    const FieldElement u00 = random_nonzero(field, rng), u11 = random_nonzero(field, rng),
                       u22 = random_nonzero(field, rng), u12 = random_nonzero(field, rng),
                       u21 = random_nonzero(field, rng), u20 = random_nonzero(field, rng),
                       u50 = random_nonzero(field, rng);
    const FieldElement delta = u11 * u22 - u12 * u21;
    if (delta.is_zero()) {
      // Both equations then ask a product of nonzero labels to vanish.
      ++out.deltaZeroSamples;
      const FieldElement u02 = random_nonzero(field, rng), u52 = random_nonzero(field, rng);
      const bool a_holds = u00 * delta == u02 * u11 * u20;
      const bool b_holds = u11 * u20 * u52 == delta * u50;
      if (a_holds || b_holds) out.deltaZeroConsistent = false;
      continue;
    }
    ++out.samples;
    const FieldElement u02 = u00 * delta / (u11 * u20);  // first overlap relation
    const FieldElement u52 = delta * u50 / (u11 * u20);  // second overlap relation
    if (u02 * u50 != u00 * u52) {
      ++out.failures;
      if (out.counterexample.empty()) {
        out.counterexample = "u00=" + u00.to_string() + " u11=" + u11.to_string() + " u22=" + u22.to_string() +
                             " u12=" + u12.to_string() + " u21=" + u21.to_string() + " u20=" + u20.to_string() +
                             " u50=" + u50.to_string();
      }
    }
  }
  const FieldElement minus_one = -field.one();
  for (int s = 0; s < samples; ++s) {
    ++out.generalSamples;
    const FieldElement pa = random_nonzero(field, rng), pb = random_nonzero(field, rng),
                       delta = random_nonzero(field, rng);
    const FieldElement ea = rng() & 1 ? field.one() : minus_one, eb = rng() & 1 ? field.one() : minus_one;
    const FieldElement qa = ea * pa * delta;  // P_A Delta = e_A Q_A
    const FieldElement qb = eb * pb * delta;  // P_B Delta = e_B Q_B
    if (pa * qb != ea * eb * pb * qa) ++out.generalFailures;
  }
  return out;
}

int overlap_elimination_negative_control(int samples, const Field& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int broken = 0;
  for (int s = 0; s < samples; ++s) {
    const FieldElement u00 = random_nonzero(field, rng), u11 = random_nonzero(field, rng),
                       u22 = random_nonzero(field, rng), u12 = random_nonzero(field, rng),
                       u21 = random_nonzero(field, rng), u20 = random_nonzero(field, rng),
                       u50 = random_nonzero(field, rng), u02 = random_nonzero(field, rng);
    const FieldElement delta = u11 * u22 - u12 * u21;
    if (delta.is_zero()) continue;
    const FieldElement u52 = delta * u50 / (u11 * u20);
    if (u02 * u50 != u00 * u52) ++broken;
  }
  return broken;
}

TransportChecks degenerate_transport_checks(const ResidueModel& model, const DegenerateDiamond& dd, bool strict) {
  const ProjectivePlane& plane = model.plane();
  if (degenerate_diamond_test(plane, dd.x, dd.y, dd.m, dd.n) != RectangleKind::Degenerate) {
    fail(ErrorCode::NotDegenerate, "rectangle is not a degenerate diamond");
  }
  TransportChecks out;
  out.asserted = model.rank() <= 3;
  if (strict && !out.asserted) fail(ErrorCode::RankTooHigh, "model rank " + std::to_string(model.rank()));

  const int w = plane.meet(dd.m, dd.n);
  const int ell = plane.join(dd.x, dd.y);
  const auto u = [&](int p, int l) { return model.u(p, l); };
  const auto delta = [&](int c1, int c2) { return u(dd.x, c1) * u(dd.y, c2) - u(dd.x, c2) * u(dd.y, c1); };

  std::vector<int> family_lines, grid_lines, zs, ss;
  for (int r : plane.lines_through(w)) {
    if (r == dd.n || r == ell) continue;
    family_lines.push_back(r);
    grid_lines.push_back(r);
  }
  for (int z : plane.points_on(dd.n))
    if (z != w) zs.push_back(z);
  for (int s = 0; s < plane.size(); ++s)
    if (!plane.incident(w, s)) ss.push_back(s);

  const FieldElement delta_mn = delta(dd.m, dd.n);
  out.squareInitialFormFactorizes = true;
  for (int r : family_lines) {
    const FieldElement delta_nr = delta(dd.n, r);
    for (int z : zs) {
      const FieldElement four_term = u(z, r) * delta_mn + u(z, dd.m) * delta_nr;
      for (int s : ss) {
        ++out.familyMembers;
        // Initial form evaluated from the minor's own minimizer set.
        const std::array<int, 4> rows{dd.x, dd.y, z, w}, cols{dd.m, dd.n, r, s};
        const TropicalProfile prof = tropical_profile(pattern_of(plane, rows, cols));
        FieldElement sum = model.field().zero();
        for (const Perm4& p : prof.minimizers) {
          FieldElement term = model.field().from_integer(perm_sign(p));
          for (std::size_t i = 0; i < 4; ++i) term *= u(rows[i], cols[p[i]]);
          sum += term;
        }
        const bool factorizes = prof.type() == std::pair{0, 4} && sum == u(w, s) * four_term;
        if (!factorizes || !four_term.is_zero()) out.squareInitialFormFactorizes = false;
      }
    }
  }

  out.ratioConstancy = true;
  for (int z : zs)
    for (int r1 : family_lines)
      for (int r2 : family_lines)
        if (u(z, r1) * delta(dd.n, r2) != u(z, r2) * delta(dd.n, r1)) out.ratioConstancy = false;

  if (delta_mn.is_zero()) {
    out.deltaZeroBranch = true;
    out.dichotomy = true;
  } else {
    bool constant = true;
    for (int r : grid_lines) {
      const FieldElement ratio = u(zs.front(), r) / u(zs.front(), dd.m);
      for (int z : zs)
        if (u(z, r) / u(z, dd.m) != ratio) constant = false;
    }
    bool minors_vanish = true;
    for (std::size_t i = 0; i < zs.size(); ++i)
      for (std::size_t j = i + 1; j < zs.size(); ++j)
        for (std::size_t a = 0; a < grid_lines.size(); ++a)
          for (std::size_t b = a + 1; b < grid_lines.size(); ++b)
            if (u(zs[i], grid_lines[a]) * u(zs[j], grid_lines[b]) != u(zs[i], grid_lines[b]) * u(zs[j], grid_lines[a])) {
              minors_vanish = false;
            }
    out.gridBranch = constant && minors_vanish;
    out.dichotomy = out.gridBranch;
  }
  return out;
}

}  // namespace tpl
