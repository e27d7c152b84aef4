#pragma once

#include <map>
#include <vector>

#include "tpl/tropical.hpp"

namespace tpl {

/// Minimum 16-bit id over the 576 row/column permutation images.
Pattern4 canonical_form(Pattern4 m);

struct PatternOrbit {
  Pattern4 canonicalForm;
  int orbitSize = 0;
  int zeroMatchingCount = 0;
  bool hasDiamond = false;
};

struct Census03 {
  int raw03Count = 0;
  int orbitCount = 0;
  int diamondOrbitCount = 0;
  int rawDiamondCount = 0;
  int rawNonDiamondCount = 0;
  /// Canonical form of the single orbit without a diamond pair (0 if not unique).
  Pattern4 exceptionalCanonical;
  std::vector<PatternOrbit> orbits;  ///< sorted by canonical id
};

/// Whether the zero matchings of m contain a diamond pair.
bool has_zero_diamond(Pattern4 m);

/// Scans all 2^16 patterns with exactly three zero matchings.
Census03 census_03(int threads = 1);

/// Histogram: zero-matching count -> number of patterns (sums to 65536).
std::map<int, long long> census_by_type(int threads = 1);

/// Orbits of all 2^16 patterns grouped by canonical form.
std::vector<PatternOrbit> all_orbits(int threads = 1);

}  // namespace tpl
