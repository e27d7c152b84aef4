#include "tpl/patterns.hpp"

#include <algorithm>
#include <memory>

#include "tpl/parallel.hpp"

namespace tpl {

namespace {

constexpr std::size_t kChunks = 64;
constexpr std::uint32_t kChunkSize = 65536 / kChunks;

// colmap[g][n]: nibble n with its bits reordered so that bit j takes bit g[j].
const std::array<std::array<std::uint8_t, 16>, 24>& column_maps() {
  static const auto maps = [] {
    std::array<std::array<std::uint8_t, 16>, 24> out{};
    for (std::size_t g = 0; g < 24; ++g) {
      const Perm4& perm = all_perms4()[g];
      for (unsigned n = 0; n < 16; ++n) {
        unsigned r = 0;
        for (unsigned j = 0; j < 4; ++j) r |= ((n >> perm[j]) & 1u) << j;
        out[g][n] = static_cast<std::uint8_t>(r);
      }
    }
    return out;
  }();
  return maps;
}

}  // namespace

Pattern4 canonical_form(Pattern4 m) {
  const auto& maps = column_maps();
  const auto& perms = all_perms4();
  std::array<unsigned, 4> nib{};
  for (unsigned i = 0; i < 4; ++i) nib[i] = (m.id() >> (4 * i)) & 0xFu;
  unsigned best = 0xFFFFu;
  for (const Perm4& rows : perms) {
    const unsigned n0 = nib[rows[0]], n1 = nib[rows[1]], n2 = nib[rows[2]], n3 = nib[rows[3]];
    for (const auto& cm : maps) {
      const unsigned id = cm[n0] | (cm[n1] << 4) | (cm[n2] << 8) | (cm[n3] << 12);
      best = std::min(best, id);
    }
  }
  return Pattern4(static_cast<std::uint16_t>(best));
}

bool has_zero_diamond(Pattern4 m) {
  const ProfileSummary& s = profile_summary(m);
  if (s.minWeight != 0) return false;
  return !detect_diamond_pairs(expand(s)).empty();
}

std::vector<PatternOrbit> all_orbits(int threads) {
  std::vector<std::map<std::uint16_t, int>> partial(kChunks);
  parallel_chunks(kChunks, threads, [&](std::size_t c) {
    for (std::uint32_t id = static_cast<std::uint32_t>(c) * kChunkSize; id < (c + 1) * kChunkSize; ++id) {
      ++partial[c][canonical_form(Pattern4(static_cast<std::uint16_t>(id))).id()];
    }
  });
  std::map<std::uint16_t, int> sizes;
  for (const auto& part : partial) {
    for (const auto& [id, n] : part) sizes[id] += n;
  }
  std::vector<PatternOrbit> out;
  out.reserve(sizes.size());
  for (const auto& [id, n] : sizes) {
    const Pattern4 rep(id);
    out.push_back({rep, n, zero_matching_count(rep), has_zero_diamond(rep)});
  }
  return out;
}

Census03 census_03(int threads) {
  struct Partial {
    std::map<std::uint16_t, std::pair<int, bool>> orbits;  // canonical id -> (size, hasDiamond)
    int raw = 0, diamond = 0;
  };
  std::vector<Partial> partial(kChunks);
  parallel_chunks(kChunks, threads, [&](std::size_t c) {
    Partial& part = partial[c];
    for (std::uint32_t id = static_cast<std::uint32_t>(c) * kChunkSize; id < (c + 1) * kChunkSize; ++id) {
      const Pattern4 m(static_cast<std::uint16_t>(id));
      if (zero_matching_count(m) != 3) continue;
      const bool diamond = has_zero_diamond(m);
      ++part.raw;
      part.diamond += diamond;
      auto& entry = part.orbits[canonical_form(m).id()];
      ++entry.first;
      entry.second = diamond;
    }
  });

  Census03 out;
  std::map<std::uint16_t, std::pair<int, bool>> orbits;
  for (const auto& part : partial) {
    out.raw03Count += part.raw;
    out.rawDiamondCount += part.diamond;
    for (const auto& [id, e] : part.orbits) {
      auto& o = orbits[id];
      o.first += e.first;
      o.second = e.second;
    }
  }
  out.rawNonDiamondCount = out.raw03Count - out.rawDiamondCount;
  int non_diamond_orbits = 0;
  for (const auto& [id, e] : orbits) {
    out.orbits.push_back({Pattern4(id), e.first, 3, e.second});
    if (e.second) {
      ++out.diamondOrbitCount;
    } else {
      ++non_diamond_orbits;
      out.exceptionalCanonical = Pattern4(id);
    }
  }
  if (non_diamond_orbits != 1) out.exceptionalCanonical = Pattern4(0);
  out.orbitCount = static_cast<int>(orbits.size());
  return out;
}

std::map<int, long long> census_by_type(int threads) {
  std::vector<std::map<int, long long>> partial(kChunks);
  parallel_chunks(kChunks, threads, [&](std::size_t c) {
    for (std::uint32_t id = static_cast<std::uint32_t>(c) * kChunkSize; id < (c + 1) * kChunkSize; ++id) {
      ++partial[c][zero_matching_count(Pattern4(static_cast<std::uint16_t>(id)))];
    }
  });
  std::map<int, long long> out;
  for (const auto& part : partial) {
    for (const auto& [k, n] : part) out[k] += n;
  }
  return out;
}

}  // namespace tpl
