#include "tpl/tropical.hpp"

#include <algorithm>
#include <bit>
#include <memory>

#include "tpl/error.hpp"

namespace tpl {

const std::array<Perm4, 24>& all_perms4() {
  static const std::array<Perm4, 24> perms = [] {
    std::array<Perm4, 24> out{};
    Perm4 p{0, 1, 2, 3};
    std::size_t i = 0;
    do {
      out[i++] = p;
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return perms;
}

int perm_sign(const Perm4& perm) {
  int inversions = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::uint16_t perm_cells(const Perm4& perm) {
  std::uint16_t mask = 0;
  for (int i = 0; i < 4; ++i) mask = static_cast<std::uint16_t>(mask | (1u << (4 * i + perm[static_cast<std::size_t>(i)])));
  return mask;
}

Pattern4 Pattern4::from_rows(const std::array<std::array<int, 4>, 4>& rows) {
  std::uint16_t id = 0;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const int e = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (e != 0 && e != 1) fail(ErrorCode::InvalidArgument, "pattern entries must be 0 or 1");
      if (e == 1) id = static_cast<std::uint16_t>(id | (1u << (4 * r + c)));
    }
  }
  return Pattern4(id);
}

Pattern4 Pattern4::permuted(const Perm4& rows, const Perm4& cols) const {
  std::uint16_t id = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (entry(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]) != 0) {
        id = static_cast<std::uint16_t>(id | (1u << (4 * i + j)));
      }
    }
  }
  return Pattern4(id);
}

std::string Pattern4::to_string() const {
  std::string s = "[";
  for (int r = 0; r < 4; ++r) {
    s += r == 0 ? "[" : ",[";
    for (int c = 0; c < 4; ++c) {
      if (c > 0) s += ',';
      s += static_cast<char>('0' + entry(r, c));
    }
    s += ']';
  }
  return s + "]";
}

namespace {

const std::array<std::uint16_t, 24>& perm_masks() {
  static const std::array<std::uint16_t, 24> masks = [] {
    std::array<std::uint16_t, 24> out{};
    for (std::size_t i = 0; i < 24; ++i) out[i] = perm_cells(all_perms4()[i]);
    return out;
  }();
  return masks;
}

ProfileSummary summarize(std::uint16_t id) {
  const auto& masks = perm_masks();
  std::array<int, 24> w{};
  int best = 5;
  for (std::size_t i = 0; i < 24; ++i) {
    w[i] = std::popcount(static_cast<unsigned>(id & masks[i]));
    best = std::min(best, w[i]);
  }
  ProfileSummary s;
  s.minWeight = static_cast<std::uint8_t>(best);
  for (std::size_t i = 0; i < 24; ++i) {
    if (w[i] == best) {
      s.minimizerMask |= 1u << i;
      ++s.count;
    }
  }
  return s;
}

}  // namespace

const ProfileSummary& profile_summary(Pattern4 m) {
  static const std::unique_ptr<std::array<ProfileSummary, 65536>> table = [] {
    auto t = std::make_unique<std::array<ProfileSummary, 65536>>();
    for (std::uint32_t id = 0; id < 65536; ++id) (*t)[id] = summarize(static_cast<std::uint16_t>(id));
    return t;
  }();
  return (*table)[m.id()];
}

TropicalProfile expand(const ProfileSummary& s) {
  TropicalProfile p;
  p.minWeight = s.minWeight;
  for (std::size_t i = 0; i < 24; ++i) {
    if (s.minimizerMask & (1u << i)) p.minimizers.push_back(all_perms4()[i]);
  }
  return p;
}

TropicalProfile tropical_profile(Pattern4 m) { return expand(summarize(m.id())); }

MatchingCycle matching_cycle(const TropicalProfile& profile) {
  if (profile.minimizers.size() != 2) {
    fail(ErrorCode::NotTwoMinimizers, "profile has " + std::to_string(profile.minimizers.size()) + " minimizers");
  }
  const Perm4& s = profile.minimizers[0];
  const Perm4& t = profile.minimizers[1];
  Perm4 s_inv{};
  for (std::uint8_t i = 0; i < 4; ++i) s_inv[s[i]] = i;
  // Rows moved by s^-1 t; a single cycle of length k gives a 2k-cycle of edges.
  std::array<bool, 4> seen{};
  int cycles = 0, moved = 0;
  for (std::uint8_t i = 0; i < 4; ++i) {
    if (seen[i] || s_inv[t[i]] == i) continue;
    ++cycles;
    for (std::uint8_t j = i; !seen[j]; j = s_inv[t[j]]) {
      seen[j] = true;
      ++moved;
    }
  }
  if (cycles != 1) fail(ErrorCode::PreconditionViolated, "symmetric difference is not a single cycle");
  return {2 * moved, perm_sign(s) * perm_sign(t)};
}

std::vector<DiamondPair> detect_diamond_pairs(const TropicalProfile& profile) {
  std::vector<DiamondPair> out;
  const auto& mins = profile.minimizers;
  for (std::size_t i = 0; i < mins.size(); ++i) {
    for (std::size_t j = i + 1; j < mins.size(); ++j) {
      std::vector<int> diff;
      for (int r = 0; r < 4; ++r) {
        if (mins[i][static_cast<std::size_t>(r)] != mins[j][static_cast<std::size_t>(r)]) diff.push_back(r);
      }
      if (diff.size() != 2) continue;
      DiamondPair d;
      d.r = diff[0];
      d.s = diff[1];
      d.a = mins[i][static_cast<std::size_t>(d.r)];
      d.b = mins[i][static_cast<std::size_t>(d.s)];
      d.first = mins[i];
      d.second = mins[j];
      out.push_back(d);
    }
  }
  return out;
}

SmallPattern::SmallPattern(int k, std::vector<std::uint8_t> entries) : k_(k), entries_(std::move(entries)) {
  if (k < 1 || k > 6) fail(ErrorCode::InvalidArgument, "pattern size must be 1..6");
  if (entries_.size() != static_cast<std::size_t>(k * k)) fail(ErrorCode::ShapeMismatch, "entry count must be k*k");
  for (auto e : entries_) {
    if (e > 1) fail(ErrorCode::InvalidArgument, "pattern entries must be 0 or 1");
  }
}

int zero_matching_count(Pattern4 m) {
  const ProfileSummary& s = profile_summary(m);
  return s.minWeight == 0 ? s.count : 0;
}

long long zero_matching_count(const SmallPattern& m) {
  const int k = m.size();
  // ways[mask]: matchings of the first popcount(mask) rows onto column set mask.
  std::vector<long long> ways(std::size_t{1} << k, 0);
  ways[0] = 1;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    if (ways[mask] == 0) continue;
    const int row = std::popcount(mask);
    if (row == k) continue;
    for (int c = 0; c < k; ++c) {
      if ((mask & (1u << c)) == 0 && m.entry(row, c) == 0) ways[mask | (1u << c)] += ways[mask];
    }
  }
  return ways[(1u << k) - 1];
}

std::string to_string(RectangleKind kind) {
  switch (kind) {
    case RectangleKind::Skew: return "skew";
    case RectangleKind::Degenerate: return "degenerate";
    case RectangleKind::NotARectangle: return "notARectangle";
  }
  return "?";
}

RectangleKind degenerate_diamond_test(const ProjectivePlane& plane, int x, int y, int m, int n) {
  if (x == y || m == n) fail(ErrorCode::InvalidArgument, "rectangle needs two points and two lines");
  if (plane.incident(x, m) || plane.incident(x, n) || plane.incident(y, m) || plane.incident(y, n)) {
    return RectangleKind::NotARectangle;
  }
  return plane.incident(plane.meet(m, n), plane.join(x, y)) ? RectangleKind::Degenerate : RectangleKind::Skew;
}

}  // namespace tpl
