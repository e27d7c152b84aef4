#include <doctest.h>

#include <random>
#include <set>

#include "tpl/patterns.hpp"

using namespace tpl;

namespace {

// Orbit enumerated explicitly through Pattern4::permuted.
std::set<std::uint16_t> orbit(Pattern4 m) {
  std::set<std::uint16_t> out;
  for (const auto& r : all_perms4())
    for (const auto& c : all_perms4()) out.insert(m.permuted(r, c).id());
  return out;
}

const Pattern4 kExceptional = Pattern4::from_rows({{{0, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 0}}});

}  // namespace

TEST_CASE("canonical form is the orbit minimum") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const Pattern4 m(static_cast<std::uint16_t>(rng()));
    const auto orb = orbit(m);
    REQUIRE(canonical_form(m).id() == *orb.begin());
  }
  for (int trial = 0; trial < 10000; ++trial) {
    const Pattern4 m(static_cast<std::uint16_t>(rng()));
    REQUIRE(canonical_form(canonical_form(m)) == canonical_form(m));
  }
  const Pattern4 id = Pattern4::from_rows({{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
  for (const auto& r : all_perms4()) CHECK(canonical_form(id.permuted(r, all_perms4()[5])) == canonical_form(id));
}

TEST_CASE("three-matching census") {
  const Census03 c = census_03(4);
  CHECK(c.raw03Count == 4992);
  CHECK(c.orbitCount == 13);
  CHECK(c.diamondOrbitCount == 12);
  CHECK(c.rawDiamondCount == 4896);
  CHECK(c.rawNonDiamondCount == 96);
  CHECK(c.exceptionalCanonical == canonical_form(kExceptional));

  int total = 0;
  for (const auto& o : c.orbits) {
    total += o.orbitSize;
    // Every member shares the diamond flag of its canonical representative.
    for (std::uint16_t member : orbit(o.canonicalForm)) {
      REQUIRE(has_zero_diamond(Pattern4(member)) == o.hasDiamond);
      REQUIRE(zero_matching_count(Pattern4(member)) == 3);
    }
    CHECK(static_cast<int>(orbit(o.canonicalForm).size()) == o.orbitSize);
    if (!o.hasDiamond) CHECK(o.orbitSize == 96);
  }
  CHECK(total == 4992);
}

TEST_CASE("census is independent of worker count") {
  const Census03 a = census_03(1), b = census_03(3);
  CHECK(a.raw03Count == b.raw03Count);
  CHECK(a.orbits.size() == b.orbits.size());
  CHECK(census_by_type(1) == census_by_type(5));
}

TEST_CASE("histogram by zero-matching count") {
  const auto hist = census_by_type(2);
  long long total = 0;
  for (const auto& [k, n] : hist) total += n;
  CHECK(total == 65536);
  CHECK(hist.at(3) == 4992);
  CHECK(hist.at(24) == 1);
  const Pattern4 id = Pattern4::from_rows({{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
  CHECK(hist.at(9) >= static_cast<long long>(orbit(id).size()));
}

TEST_CASE("orbit sizes sum to class sizes") {
  const auto orbits = all_orbits(2);
  const auto hist = census_by_type(2);
  std::map<int, long long> sums;
  for (const auto& o : orbits) sums[o.zeroMatchingCount] += o.orbitSize;
  CHECK(sums == hist);
}
