#include <doctest.h>

#include <algorithm>
#include <random>

#include "tpl/error.hpp"
#include "tpl/tropical.hpp"

using namespace tpl;

namespace {

struct Brute {
  int min = 99;
  std::vector<std::vector<int>> perms;
};

// Recursive expansion along rows, independent of the permutation table.
void expand_rows(Pattern4 m, int row, unsigned used, int weight, std::vector<int>& cur, Brute& out) {
  if (row == 4) {
    if (weight < out.min) {
      out.min = weight;
      out.perms.clear();
    }
    if (weight == out.min) out.perms.push_back(cur);
    return;
  }
  for (int c = 0; c < 4; ++c) {
    if (used & (1u << c)) continue;
    cur.push_back(c);
    expand_rows(m, row + 1, used | (1u << c), weight + m.entry(row, c), cur, out);
    cur.pop_back();
  }
}

Brute brute(Pattern4 m) {
  Brute out;
  std::vector<int> cur;
  expand_rows(m, 0, 0, 0, cur, out);
  return out;
}

// Length of the edge symmetric difference of two perfect matchings, and its component count.
std::pair<int, int> symmetric_difference(const Perm4& s, const Perm4& t) {
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < 4; ++r) {
    if (s[static_cast<std::size_t>(r)] != t[static_cast<std::size_t>(r)]) {
      edges.emplace_back(r, 4 + s[static_cast<std::size_t>(r)]);
      edges.emplace_back(r, 4 + t[static_cast<std::size_t>(r)]);
    }
  }
  std::vector<int> parent(8);
  for (int i = 0; i < 8; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  std::vector<bool> touched(8);
  for (auto [a, b] : edges) {
    touched[static_cast<std::size_t>(a)] = touched[static_cast<std::size_t>(b)] = true;
    parent[static_cast<std::size_t>(find(a))] = find(b);
  }
  int comps = 0;
  for (int i = 0; i < 8; ++i) comps += touched[static_cast<std::size_t>(i)] && find(i) == i;
  return {static_cast<int>(edges.size()), comps};
}

const Pattern4 kIdentity = Pattern4::from_rows({{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}});
// Rows (A,B,C,D), columns (L0..L3) of the constructive witness ordering.
const Pattern4 kWitness = Pattern4::from_rows({{{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 0}}});
const Pattern4 kExceptional = Pattern4::from_rows({{{0, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 0}}});

}  // namespace

TEST_CASE("reference profiles") {
  const auto id = tropical_profile(kIdentity);
  CHECK(id.type() == std::pair{0, 9});
  for (const auto& p : id.minimizers)
    for (std::size_t i = 0; i < 4; ++i) CHECK(p[i] != i);

  const auto w = tropical_profile(kWitness);
  CHECK(w.type() == std::pair{0, 3});
  CHECK(w.minimizers == std::vector<Perm4>{{0, 1, 2, 3}, {1, 0, 2, 3}, {2, 1, 0, 3}});
  CHECK(perm_sign(w.minimizers[0]) == 1);
  CHECK(perm_sign(w.minimizers[1]) == -1);
  CHECK(perm_sign(w.minimizers[2]) == -1);

  CHECK(tropical_profile(Pattern4(0)).type() == std::pair{0, 24});
  CHECK(tropical_profile(Pattern4(0xFFFF)).type() == std::pair{4, 24});
}

TEST_CASE("profiles agree with recursive expansion on every pattern") {
  for (std::uint32_t id = 0; id < 65536; ++id) {
    const Pattern4 m(static_cast<std::uint16_t>(id));
    const auto prof = tropical_profile(m);
    const Brute b = brute(m);
    REQUIRE(prof.minWeight == b.min);
    REQUIRE(prof.minimizers.size() == b.perms.size());
    for (std::size_t i = 0; i < b.perms.size(); ++i)
      for (std::size_t r = 0; r < 4; ++r) REQUIRE(prof.minimizers[i][r] == b.perms[i][r]);
    REQUIRE(profile_summary(m).count == prof.minimizers.size());
  }
}

TEST_CASE("matching cycle examples") {
  TropicalProfile swap{0, {{0, 1, 2, 3}, {1, 0, 2, 3}}};
  CHECK(matching_cycle(swap).length == 4);
  CHECK(matching_cycle(swap).signRatio == -1);
  TropicalProfile three{0, {{0, 1, 2, 3}, {1, 2, 0, 3}}};
  CHECK(matching_cycle(three).length == 6);
  CHECK(matching_cycle(three).signRatio == 1);
  try {
    (void)matching_cycle(tropical_profile(kWitness));
    FAIL("expected NOT_TWO_MINIMIZERS");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTwoMinimizers);
  }
}

TEST_CASE("two-minimizer profiles form a single even cycle") {
  int seen = 0;
  for (std::uint32_t id = 0; id < 65536; ++id) {
    const auto prof = tropical_profile(Pattern4(static_cast<std::uint16_t>(id)));
    if (prof.minimizers.size() != 2) continue;
    ++seen;
    const auto [len, comps] = symmetric_difference(prof.minimizers[0], prof.minimizers[1]);
    REQUIRE(comps == 1);
    const auto mc = matching_cycle(prof);
    REQUIRE(mc.length == len);
    const int k = len / 2;
    REQUIRE(mc.signRatio == (k % 2 == 1 ? 1 : -1));
  }
  CHECK(seen > 0);
}

TEST_CASE("diamond detection") {
  const auto pairs = detect_diamond_pairs(tropical_profile(kWitness));
  const bool has_ab = std::any_of(pairs.begin(), pairs.end(), [](const DiamondPair& d) {
    return d.r == 0 && d.s == 1 && ((d.a == 0 && d.b == 1) || (d.a == 1 && d.b == 0));
  });
  CHECK(has_ab);
  for (const auto& d : pairs) {
    for (int r = 0; r < 4; ++r) {
      if (r == d.r || r == d.s) continue;
      CHECK(d.first[static_cast<std::size_t>(r)] == d.second[static_cast<std::size_t>(r)]);
    }
    CHECK(d.second[static_cast<std::size_t>(d.r)] == d.b);
    CHECK(d.second[static_cast<std::size_t>(d.s)] == d.a);
  }
  CHECK(detect_diamond_pairs(tropical_profile(kExceptional)).empty());
  CHECK(detect_diamond_pairs(TropicalProfile{0, {{0, 1, 2, 3}}}).empty());
}

TEST_CASE("zero matching counts") {
  CHECK(zero_matching_count(kIdentity) == 9);
  CHECK(zero_matching_count(Pattern4(0xFFFF)) == 0);
  CHECK(zero_matching_count(Pattern4(0)) == 24);
  // Rows with identical zero neighbourhoods force an even count.
  for (std::uint32_t id = 0; id < 65536; ++id) {
    const Pattern4 m(static_cast<std::uint16_t>(id));
    bool twin = false;
    for (int r = 0; r < 4 && !twin; ++r)
      for (int s = r + 1; s < 4; ++s) twin |= ((id >> (4 * r)) & 0xF) == ((id >> (4 * s)) & 0xF);
    if (twin) REQUIRE(zero_matching_count(m) % 2 == 0);
    std::vector<std::uint8_t> cells(16);
    for (int i = 0; i < 16; ++i) cells[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((id >> i) & 1);
    REQUIRE(zero_matching_count(SmallPattern(4, cells)) == zero_matching_count(m));
  }
}

TEST_CASE("small pattern permanent matches permutation enumeration") {
  std::mt19937 rng(11);
  for (int k = 1; k <= 6; ++k) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::uint8_t> cells(static_cast<std::size_t>(k * k));
      for (auto& c : cells) c = static_cast<std::uint8_t>(rng() % 3 == 0);
      SmallPattern m(k, cells);
      std::vector<int> perm(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
      long long count = 0;
      do {
        bool ok = true;
        for (int i = 0; i < k; ++i) ok &= m.entry(i, perm[static_cast<std::size_t>(i)]) == 0;
        count += ok;
      } while (std::next_permutation(perm.begin(), perm.end()));
      REQUIRE(zero_matching_count(m) == count);
    }
  }
  // Derangements of 6 elements.
  std::vector<std::uint8_t> diag(36, 0);
  for (int i = 0; i < 6; ++i) diag[static_cast<std::size_t>(7 * i)] = 1;
  CHECK(zero_matching_count(SmallPattern(6, diag)) == 265);
}

TEST_CASE("rectangle classification") {
  const PlanePtr plane = build_pg2(3);
  const int d = 0;
  const auto& pencil = plane->lines_through(d);
  const int l0 = pencil[0], l1 = pencil[1], l2 = pencil[2];
  const auto pick = [&](int line, std::initializer_list<int> avoid) {
    for (int p : plane->points_on(line))
      if (std::find(avoid.begin(), avoid.end(), p) == avoid.end()) return p;
    return -1;
  };
  const int b = pick(l2, {d});
  const int c = pick(l1, {d});
  const int l3 = plane->join(b, c);
  const int e = plane->meet(l0, l3);
  const int a = pick(l3, {b, c, e});
  CHECK(degenerate_diamond_test(*plane, a, b, l0, l1) == RectangleKind::Skew);

  // X, Y on a line through W = m ∩ n.
  const int w = d, m = l0, n = l1, ell = l2;
  const int x = pick(ell, {w});
  const int y = pick(ell, {w, x});
  CHECK(degenerate_diamond_test(*plane, x, y, m, n) == RectangleKind::Degenerate);

  const int on_m = pick(m, {w});
  CHECK(degenerate_diamond_test(*plane, on_m, y, m, n) == RectangleKind::NotARectangle);
}
