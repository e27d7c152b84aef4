#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tpl/plane.hpp"
#include "tpl/residue.hpp"

namespace tpl {

struct CensusOptions {
  int threads = 1;
  /// Lifts the default order cap of each scan by one step.
  bool allowLong = false;
  /// Cycle-length histogram of the (0,2) minors.
  bool cycleTypes = true;
  /// Degenerate-diamond statistics of the (0,3) minors.
  bool degenerateStats = true;
  /// Types with a larger minimum weight are only counted in filteredOut.
  std::optional<int> maxWeight;
};

/// All 4-subsets of {0..v-1} in lexicographic order.
std::vector<std::array<int, 4>> four_subsets(int v);

struct DegenerateDiamondStats {
  long long with03Degenerate = 0;       ///< (0,3) minors containing a degenerate zero 2x2 block
  long long swapPairInMinimizers = 0;   ///< (0,3) minors whose minimizers hold a degenerate swap pair
  bool operator==(const DegenerateDiamondStats&) const = default;
};

struct MinorTypeCensus {
  int q = 0;
  long long totalMinors = 0;  ///< C(v,4)^2
  std::map<std::pair<int, int>, long long> counts;  ///< (minWeight, minimizerCount) -> minors
  long long filteredOut = 0;
  std::map<int, long long> cycleLengths;  ///< (0,2) minors by cycle length 2k
  DegenerateDiamondStats degenerate;

  long long count(int minWeight, int minimizers) const;
  bool operator==(const MinorTypeCensus&) const = default;
};

/// Exhaustive scan of all unordered 4x4 minors. Default cap q <= 4, q = 5 with allowLong.
/// Throws SCAN_TOO_LARGE.
MinorTypeCensus minor_type_census(const ProjectivePlane& plane, const CensusOptions& options = {});
DegenerateDiamondStats degenerate_diamond_census(const ProjectivePlane& plane, const CensusOptions& options = {});

struct CycleSpan {
  int spanDim = 0;
  int ambientDim = 0;
  bool equal = false;
  bool operator==(const CycleSpan&) const = default;
};

/// GF(2) span of the matching-difference cycles of all (0,2) minors inside the nonincidence graph.
/// Default cap q <= 3, q = 4 with allowLong. Throws SCAN_TOO_LARGE.
CycleSpan cycle_span_of_02_minors(const ProjectivePlane& plane, const CensusOptions& options = {});

// ---------------------------------------------------------------------------

struct WitnessEnumeration {
  long long orderedCount = 0;
  long long formulaCount = 0;        ///< v(q+1)q(q-1) q^2(q-2)
  long long perTripleExpected = 0;   ///< q^2(q-2)
  bool perTripleCountCheck = false;  ///< every (D; L0,L1,L2) has exactly perTripleExpected completions
  bool allValid = false;             ///< every emitted witness passes the pattern validator
  long long skewRectangleCount = 0;  ///< ordered (A,B;L0,L1) all zero with L0 meet L1 off line AB
  bool bijectionCheck = false;       ///< witness -> skew rectangle is injective and onto
  long long distinctMinorCount = 0;  ///< distinct (row set, column set) pairs
  std::vector<BStarWitness> witnesses;  ///< in (D; L0,L1,L2; B; C; A) order when kept
};

/// Constructive enumeration. The per-triple count is cross-checked by a search over every
/// line L3 and ordered triple of its points.
WitnessEnumeration enumerate_bstar_witnesses(const ProjectivePlane& plane, const CensusOptions& options = {},
                                             bool keepWitnesses = false);

// ---------------------------------------------------------------------------

/// Ordered quadrangle (P1..P4) with a private line L_i through each P_i avoiding the others.
struct IdentityMinor {
  std::array<int, 4> points{};
  std::array<int, 4> lines{};
};

/// Visits every ordered private-line identity minor, chunked by P1; fn(chunk, minor).
/// Chunks are the points of the plane.
void for_each_identity_minor(const ProjectivePlane& plane, int threads,
                             const std::function<void(std::size_t, const IdentityMinor&)>& fn);

struct IdentityMinorCount {
  long long orderedConstructiveCount = 0;
  long long formulaLowerBound = 0;  ///< v(v-1) q^2 (q-1)^2 (q-2)^4
  bool lowerBoundHolds = false;
  /// Exact number of ordered submatrices equal to I_4, by full scan (q <= 3).
  std::optional<long long> fullScanOrderedCount;
  std::optional<long long> fullScanUnorderedCount;
};

IdentityMinorCount enumerate_identity_minors(const ProjectivePlane& plane, const CensusOptions& options = {});

struct RectangleMultiplicity {
  long long zeroRectangles = 0;  ///< unordered ({p,q},{l,m}) with all four entries zero
  long long identityMinors = 0;
  std::map<long long, long long> histogram;  ///< multiplicity -> rectangles
  long long maxMultiplicity = 0;
  long long bound = 0;  ///< 16 (4!)^2 (q+1)^4
  bool boundCheck = false;
};

/// Counts, for every 0-rectangle, the ordered identity minors holding it as a complement rectangle.
/// Default cap q <= 5, beyond with allowLong. Throws SCAN_TOO_LARGE.
RectangleMultiplicity rectangle_multiplicity(const ProjectivePlane& plane, const CensusOptions& options = {});

struct DegenerateSquareFamily {
  long long familySize = 0;      ///< choices of (r, Z, s)
  long long distinctMinors = 0;  ///< members with r != m, whose columns are distinct lines
  long long expectedSize = 0;    ///< q^3 (q-1)
  bool allFourMinimizers = false;
  bool swapPairPresent = false;
};

/// Rows (X,Y,Z,W), columns (m,n,r,s) with r through W and r != n, XY; Z on n, Z != W; W off s.
/// Throws NOT_DEGENERATE.
DegenerateSquareFamily degenerate_square_family_census(const ProjectivePlane& plane, const DegenerateDiamond& diamond);

/// Degenerate diamonds (X<Y, m<n) in index order.
std::vector<DegenerateDiamond> degenerate_diamonds(const ProjectivePlane& plane);

struct DefectCensus {
  long long zeroRectangles = 0;
  long long defectCount = 0;  ///< 0-rectangles with cross-ratio != 1
  long long identityBlocks = 0;
  long long blocksWithDefect = 0;
  long long thetaVanishing = 0;
  long long maxMultiplicity = 0;
  bool perIdentityBlockWitness = false;
  bool thetaVanishesEverywhere = false;
  bool lowerBoundCheck = false;  ///< defectCount >= identityBlocks / maxMultiplicity
  bool asserted = true;          ///< false in characteristic 3
};

/// Throws RANK_TOO_HIGH when the model rank exceeds 3, and CHAR_THREE when strict in characteristic 3.
/// Same order cap as rectangle_multiplicity.
DefectCensus defect_census(const ResidueModel& model, const CensusOptions& options = {}, bool strict = false);

}  // namespace tpl
