#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tpl/plane.hpp"

namespace tpl {

/// Permutation of {0,1,2,3}: row i maps to column perm[i].
using Perm4 = std::array<std::uint8_t, 4>;

/// All 24 permutations in lexicographic order.
const std::array<Perm4, 24>& all_perms4();
int perm_sign(const Perm4& perm);
/// Bit mask of the 4 cells selected by a permutation.
std::uint16_t perm_cells(const Perm4& perm);

/// 4x4 valuation pattern; bit (4*row+col) set iff the entry is 1.
class Pattern4 {
 public:
  constexpr Pattern4() = default;
  constexpr explicit Pattern4(std::uint16_t id) : id_(id) {}
  static Pattern4 from_rows(const std::array<std::array<int, 4>, 4>& rows);

  constexpr std::uint16_t id() const noexcept { return id_; }
  constexpr int entry(int row, int col) const noexcept { return (id_ >> (4 * row + col)) & 1; }
  /// Same pattern with rows and columns reordered: new(i,j) = old(rows[i], cols[j]).
  Pattern4 permuted(const Perm4& rows, const Perm4& cols) const;
  constexpr bool operator==(const Pattern4&) const = default;
  std::string to_string() const;

 private:
  std::uint16_t id_ = 0;
};

struct TropicalProfile {
  int minWeight = 0;
  std::vector<Perm4> minimizers;  ///< lexicographically sorted
  std::pair<int, int> type() const { return {minWeight, static_cast<int>(minimizers.size())}; }
};

/// Compact profile: minimizers encoded as a bit mask over all_perms4() indices.
struct ProfileSummary {
  std::uint8_t minWeight = 0;
  std::uint8_t count = 0;
  std::uint32_t minimizerMask = 0;
};

TropicalProfile tropical_profile(Pattern4 m);
/// Precomputed over all 2^16 patterns.
const ProfileSummary& profile_summary(Pattern4 m);
TropicalProfile expand(const ProfileSummary& s);

struct MatchingCycle {
  int length = 0;     ///< 2k
  int signRatio = 0;  ///< sgn(second)/sgn(first) = (-1)^(k-1)
};

/// Throws NOT_TWO_MINIMIZERS.
MatchingCycle matching_cycle(const TropicalProfile& profile);

struct DiamondPair {
  int r = 0, s = 0;  ///< rows, r < s
  int a = 0, b = 0;  ///< first(r) = a, first(s) = b; second swaps them
  Perm4 first{}, second{};
};

std::vector<DiamondPair> detect_diamond_pairs(const TropicalProfile& profile);

/// Square 0/1 pattern of size k <= 6, row-major.
class SmallPattern {
 public:
  SmallPattern(int k, std::vector<std::uint8_t> entries);
  int size() const noexcept { return k_; }
  int entry(int r, int c) const noexcept { return entries_[static_cast<std::size_t>(r * k_ + c)]; }

 private:
  int k_;
  std::vector<std::uint8_t> entries_;
};

/// Number of permutations using only 0-entries.
int zero_matching_count(Pattern4 m);
long long zero_matching_count(const SmallPattern& m);

enum class RectangleKind { Skew, Degenerate, NotARectangle };
std::string to_string(RectangleKind kind);

/// Classifies the 2x2 point/line rectangle (X,Y;m,n).
RectangleKind degenerate_diamond_test(const ProjectivePlane& plane, int x, int y, int m, int n);

}  // namespace tpl
