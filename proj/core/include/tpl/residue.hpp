#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tpl/gf.hpp"
#include "tpl/plane.hpp"
#include "tpl/tropical.hpp"

namespace tpl {

int rank_gf(const FieldMatrix& m);

/// Residues u_{p,l} attached to a plane; zero exactly on incidences.
class ResidueModel {
 public:
  /// Throws PRECONDITION_VIOLATED when the zero pattern differs from the incidence pattern.
  ResidueModel(PlanePtr plane, FieldMatrix u);

  const ProjectivePlane& plane() const noexcept { return *plane_; }
  const PlanePtr& plane_ptr() const noexcept { return plane_; }
  const Field& field() const noexcept { return u_.field(); }
  const FieldMatrix& matrix() const noexcept { return u_; }
  FieldElement u(int point, int line) const {
    return u_.at(static_cast<std::size_t>(point), static_cast<std::size_t>(line));
  }
  std::uint32_t raw(int point, int line) const noexcept {
    return u_.raw(static_cast<std::size_t>(point), static_cast<std::size_t>(line));
  }
  int rank() const noexcept { return rank_; }

  /// Header `model q= p= k=` then v rows of coefficient tuples.
  std::string dump() const;

 private:
  PlanePtr plane_;
  FieldMatrix u_;
  int rank_ = 0;
};

/// Loads a dump; the field uses the built-in modulus for (p, k).
ResidueModel load_model(std::istream& in, PlanePtr plane);

/// U_{p,l} = dot product of homogeneous coordinates over GF(q). Throws NOT_CONSTRUCTED.
ResidueModel canonical_residue_model(const PlanePtr& plane);

// ---------------------------------------------------------------------------
// 4x4 identity-pattern blocks: entries off the diagonal, diagonal ignored.

using Block4 = std::array<std::array<FieldElement, 4>, 4>;

struct IdentityBlockData {
  Block4 u;                      ///< nonzero off-diagonal residues
  std::array<FieldElement, 4> a;  ///< nonzero diagonal first coefficients
  Block4 w;                      ///< off-diagonal first corrections
};

/// Signed sum over the 9 derangements. Throws ZERO_ENTRY.
FieldElement theta4(const Block4& u);
/// Sum of derangement signs of k elements by enumeration.
int derangement_sign_sum(int k);
/// Contribution of the two 3-cycles on the complement of each index.
std::array<FieldElement, 4> d_terms(const Block4& u);
/// First-order coefficient of the identity-block determinant.
FieldElement psi4(const IdentityBlockData& block);

/// Rows {i,j}, columns {a,b}, index sets disjoint; rho = u_ia u_jb / (u_ib u_ja).
struct AdmissibleRectangle {
  int i = 0, j = 0, a = 0, b = 0;
  FieldElement rho;
};

/// The six admissible rectangles of a 4x4 identity block.
std::vector<AdmissibleRectangle> admissible_rectangles(const Block4& u);

struct FlatnessResult {
  bool flat = false;
  std::array<FieldElement, 4> alpha{}, beta{};     ///< valid when flat: u_ij = alpha_i beta_j
  std::optional<AdmissibleRectangle> witness;      ///< set when not flat
};

FlatnessResult flatness_to_rank1(const Block4& u);

// ---------------------------------------------------------------------------

/// rho = (u_{p,m}/u_{p,l}) (u_{q,l}/u_{q,m}). Throws NOT_A_ZERO_RECTANGLE.
FieldElement cross_ratio(const ResidueModel& model, int p, int q, int l, int m);

/// u'_{p,l} = alpha_p u_{p,l} beta_l. Throws ZERO_SCALAR.
ResidueModel apply_gauge(const ResidueModel& model, const std::vector<FieldElement>& alpha,
                         const std::vector<FieldElement>& beta);

/// Jet determinant of a 4x4 matrix given row-major.
Jet jet_determinant4(const std::vector<Jet>& m);

struct InitialForm {
  int minWeight = 0;
  FieldElement residueSum;
  bool raised = false;
  Valuation detValuation = Valuation::infinite();
};

/// Throws TRUNCATION_TOO_SHALLOW when the minimal weight is not below the truncation order.
InitialForm initial_form(const std::vector<Jet>& minor);

struct TangentFactorization {
  FieldMatrix a0, b0, a1, b1;
};

/// V = A1 B0 + A0 B1. Throws SHAPE_MISMATCH.
FieldMatrix tangent_first_order(const TangentFactorization& f);

struct MonomialBlockResult {
  bool blockIsDiagonal = false;
  int rank = 0;
};

/// choices[i] is a line through the i-th point of `line`, different from `line`.
MonomialBlockResult monomial_block_rank(const ProjectivePlane& plane, int line, const std::vector<int>& choices,
                                        const Field& field);

struct TuranResult {
  int n = 0;
  bool independenceOk = false;
  int maxIndependentSet = -1;  ///< exact for n <= 14, otherwise -1
  long long edgeCount = 0;
  long long bound = 0;
  bool edgeBoundOk = false;
};

/// Throws PRECONDITION_VIOLATED when a diagonal entry is zero or rank exceeds maxRank.
TuranResult turan_support_check(const FieldMatrix& v, int maxRank = 6);

// ---------------------------------------------------------------------------

/// Ordered B_* datum: rows (A,B,C,D), columns (L0..L3).
struct BStarWitness {
  int a = 0, b = 0, c = 0, d = 0;
  int l0 = 0, l1 = 0, l2 = 0, l3 = 0;
  bool operator==(const BStarWitness&) const = default;
};

/// Incidence pattern of a witness in row order (A,B,C,D), column order (L0..L3).
Pattern4 witness_pattern();
Pattern4 pattern_of(const ProjectivePlane& plane, const std::array<int, 4>& rows, const std::array<int, 4>& cols);
bool is_valid_witness(const ProjectivePlane& plane, const BStarWitness& w);

struct WitnessEquations {
  bool initialFormRelation = false;
  bool rhoPlusSigma = false;
  bool rhoNotOne = false;
  bool rhoNotOneAsserted = false;  ///< false in characteristic 2
  bool asserted = true;            ///< false when the model rank exceeds 3
  FieldElement rho, sigma, delta;
};

/// Throws RANK_TOO_HIGH when strict and the model rank exceeds 3.
WitnessEquations witness_equation_checks(const ResidueModel& model, const BStarWitness& w, bool strict = true);

struct OverlapEliminationResult {
  int samples = 0;
  int failures = 0;
  int generalSamples = 0;
  int generalFailures = 0;
  int deltaZeroSamples = 0;
  bool deltaZeroConsistent = true;
  std::string counterexample;
  bool pass() const { return failures == 0 && generalFailures == 0 && deltaZeroConsistent; }
};

OverlapEliminationResult overlap_elimination_check(int samples, const Field& field, std::uint64_t seed);
/// Samples violating the first overlap relation; returns how many break the 4-cycle binomial.
int overlap_elimination_negative_control(int samples, const Field& field, std::uint64_t seed);

struct DegenerateDiamond {
  int x = 0, y = 0, m = 0, n = 0;
};

struct TransportChecks {
  bool squareInitialFormFactorizes = false;
  bool ratioConstancy = false;
  bool dichotomy = false;
  bool gridBranch = false;       ///< Delta^{mn} != 0, grid factorizes
  bool deltaZeroBranch = false;  ///< Delta^{mn} == 0
  bool asserted = true;
  int familyMembers = 0;
};

/// Throws NOT_DEGENERATE, and RANK_TOO_HIGH when strict and the rank exceeds 3.
TransportChecks degenerate_transport_checks(const ResidueModel& model, const DegenerateDiamond& diamond,
                                            bool strict = true);

}  // namespace tpl
