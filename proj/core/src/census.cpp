#include "tpl/census.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "tpl/error.hpp"
#include "tpl/holonomy.hpp"
#include "tpl/parallel.hpp"
#include "tpl/tropical.hpp"

namespace tpl {

namespace {

constexpr std::size_t kScanChunks = 64;

std::size_t sz(long long i) { return static_cast<std::size_t>(i); }

long long choose2(long long n) { return n * (n - 1) / 2; }
long long choose4(long long n) { return n * (n - 1) * (n - 2) * (n - 3) / 24; }

void require_order(const ProjectivePlane& plane, const CensusOptions& options, int cap, int longCap,
                   const char* what) {
  const int q = plane.order();
  const int limit = options.allowLong ? longCap : cap;
  if (q > limit) {
    std::string msg = std::string(what) + " at q=" + std::to_string(q) + " exceeds the cap q<=" + std::to_string(limit);
    if (!options.allowLong && q <= longCap) msg += "; pass --allow-long";
    fail(ErrorCode::ScanTooLarge, msg);
  }
}

/// Pattern-indexed facts used by the scans.
struct PatternTables {
  std::array<std::uint8_t, 65536> cycleLength{};  ///< (0,2) patterns only
  std::array<bool, 65536> permutationMatrix{};
  std::vector<std::vector<std::array<std::uint8_t, 4>>> swapPairs;  ///< (0,3) patterns only: r, s, a, b

  PatternTables() : swapPairs(65536) {
    for (std::uint32_t id = 0; id < 65536; ++id) {
      const Pattern4 m(static_cast<std::uint16_t>(id));
      const ProfileSummary& s = profile_summary(m);
      if (s.minWeight == 0 && s.count == 2) {
        cycleLength[id] = static_cast<std::uint8_t>(matching_cycle(expand(s)).length);
      } else if (s.minWeight == 0 && s.count == 3) {
        for (const DiamondPair& d : detect_diamond_pairs(expand(s))) {
          swapPairs[id].push_back({static_cast<std::uint8_t>(d.r), static_cast<std::uint8_t>(d.s),
                                   static_cast<std::uint8_t>(d.a), static_cast<std::uint8_t>(d.b)});
        }
      }
      if (std::popcount(id) == 4) {
        unsigned cols = 0;
        bool ok = true;
        for (int r = 0; r < 4; ++r) {
          const unsigned nib = (id >> (4 * r)) & 0xFu;
          ok = ok && std::popcount(nib) == 1;
          cols |= nib;
        }
        permutationMatrix[id] = ok && cols == 0xFu;
      }
    }
  }
};

const PatternTables& tables() {
  static const PatternTables t;
  return t;
}

/// Row nibble bit i placed at bit 4i.
constexpr std::array<std::uint16_t, 16> kSpread = [] {
  std::array<std::uint16_t, 16> s{};
  for (unsigned n = 0; n < 16; ++n)
    for (unsigned i = 0; i < 4; ++i)
      if ((n >> i) & 1u) s[n] = static_cast<std::uint16_t>(s[n] | (1u << (4 * i)));
  return s;
}();

/// Visits every minor whose row set lies in [begin, end); visit returns false to stop.
template <class Visit>
void scan_rows(const ProjectivePlane& plane, const std::vector<std::array<int, 4>>& subsets, std::size_t begin,
               std::size_t end, Visit&& visit) {
  const int v = plane.size();
  std::vector<std::uint16_t> spread(sz(v));
  for (std::size_t ri = begin; ri < end; ++ri) {
    const auto& rows = subsets[ri];
    for (int l = 0; l < v; ++l) {
      unsigned nib = 0;
      for (unsigned i = 0; i < 4; ++i)
        if (plane.incident(rows[i], l)) nib |= 1u << i;
      spread[sz(l)] = kSpread[nib];
    }
    for (const auto& cols : subsets) {
      const auto id = static_cast<std::uint16_t>(spread[sz(cols[0])] | spread[sz(cols[1])] << 1 |
                                                 spread[sz(cols[2])] << 2 | spread[sz(cols[3])] << 3);
      if (!visit(rows, cols, id)) return;
    }
  }
}

std::pair<std::size_t, std::size_t> chunk_range(std::size_t chunk, std::size_t chunks, std::size_t n) {
  return {chunk * n / chunks, (chunk + 1) * n / chunks};
}

bool zero_cell(std::uint16_t id, int r, int c) { return ((id >> (4 * r + c)) & 1u) == 0; }

struct TypeTally {
  std::array<std::array<long long, 25>, 5> counts{};
  std::array<long long, 9> cycleLengths{};
  DegenerateDiamondStats degenerate;
};

TypeTally tally_types(const ProjectivePlane& plane, const CensusOptions& options) {
  const auto subsets = four_subsets(plane.size());
  const PatternTables& t = tables();
  const std::size_t chunks = std::min(kScanChunks, subsets.size());
  std::vector<TypeTally> slots(chunks);
  parallel_chunks(chunks, options.threads, [&](std::size_t c) {
    TypeTally& tally = slots[c];
    const auto [b, e] = chunk_range(c, chunks, subsets.size());
    scan_rows(plane, subsets, b, e, [&](const std::array<int, 4>& rows, const std::array<int, 4>& cols,
                                        std::uint16_t id) {
      const ProfileSummary& s = profile_summary(Pattern4(id));
      ++tally.counts[s.minWeight][s.count];
      if (s.minWeight != 0) return true;
      if (s.count == 2 && options.cycleTypes) ++tally.cycleLengths[t.cycleLength[id]];
      if (s.count == 3 && options.degenerateStats) {
        bool found = false;
        for (int r1 = 0; r1 < 4 && !found; ++r1)
          for (int r2 = r1 + 1; r2 < 4 && !found; ++r2)
            for (int c1 = 0; c1 < 4 && !found; ++c1)
              for (int c2 = c1 + 1; c2 < 4 && !found; ++c2)
                if (zero_cell(id, r1, c1) && zero_cell(id, r1, c2) && zero_cell(id, r2, c1) && zero_cell(id, r2, c2))
                  found = degenerate_diamond_test(plane, rows[sz(r1)], rows[sz(r2)], cols[sz(c1)], cols[sz(c2)]) ==
                          RectangleKind::Degenerate;
        if (found) {
          ++tally.degenerate.with03Degenerate;
          for (const auto& p : t.swapPairs[id]) {
            if (degenerate_diamond_test(plane, rows[p[0]], rows[p[1]], cols[p[2]], cols[p[3]]) ==
                RectangleKind::Degenerate) {
              ++tally.degenerate.swapPairInMinimizers;
              break;
            }
          }
        }
      }
      return true;
    });
  });
  TypeTally total;
  for (const TypeTally& s : slots) {
    for (std::size_t w = 0; w < 5; ++w)
      for (std::size_t k = 0; k < 25; ++k) total.counts[w][k] += s.counts[w][k];
    for (std::size_t l = 0; l < 9; ++l) total.cycleLengths[l] += s.cycleLengths[l];
    total.degenerate.with03Degenerate += s.degenerate.with03Degenerate;
    total.degenerate.swapPairInMinimizers += s.degenerate.swapPairInMinimizers;
  }
  return total;
}

std::size_t pair_index(int a, int b, int v) {
  if (a > b) std::swap(a, b);
  return sz(static_cast<long long>(a) * (2LL * v - a - 1) / 2 + (b - a - 1));
}

bool zero_rectangle(const ProjectivePlane& plane, int p1, int p2, int l1, int l2) {
  return !plane.incident(p1, l1) && !plane.incident(p1, l2) && !plane.incident(p2, l1) && !plane.incident(p2, l2);
}

/// Calls fn(pointPair, linePair, p1, p2, l1, l2) for every unordered 0-rectangle.
template <class Fn>
void for_each_zero_rectangle(const ProjectivePlane& plane, Fn&& fn) {
  const int v = plane.size();
  for (int p1 = 0; p1 < v; ++p1)
    for (int p2 = p1 + 1; p2 < v; ++p2)
      for (int l1 = 0; l1 < v; ++l1)
        for (int l2 = l1 + 1; l2 < v; ++l2)
          if (zero_rectangle(plane, p1, p2, l1, l2)) fn(pair_index(p1, p2, v), pair_index(l1, l2, v), p1, p2, l1, l2);
}

constexpr std::array<std::array<int, 4>, 6> kComplements{{
    {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}, {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}}};

/// Per-rectangle counts of identity minors holding it as a complement rectangle.
std::vector<std::uint32_t> multiplicity_counts(const ProjectivePlane& plane, int threads, long long& minors) {
  const int v = plane.size();
  const auto pairs = sz(choose2(v));
  std::vector<std::vector<std::uint32_t>> slots(sz(v));
  std::vector<long long> counts(sz(v), 0);
  for_each_identity_minor(plane, threads, [&](std::size_t chunk, const IdentityMinor& m) {
    auto& slot = slots[chunk];
    if (slot.empty()) slot.assign(pairs * pairs, 0);
    ++counts[chunk];
    for (const auto& k : kComplements) {
      const std::size_t pp = pair_index(m.points[sz(k[0])], m.points[sz(k[1])], v);
      const std::size_t lp = pair_index(m.lines[sz(k[2])], m.lines[sz(k[3])], v);
      ++slot[pp * pairs + lp];
    }
  });
  std::vector<std::uint32_t> total(pairs * pairs, 0);
  minors = 0;
  for (std::size_t c = 0; c < slots.size(); ++c) {
    minors += counts[c];
    for (std::size_t i = 0; i < slots[c].size(); ++i) total[i] += slots[c][i];
  }
  return total;
}

}  // namespace

std::vector<std::array<int, 4>> four_subsets(int v) {
  std::vector<std::array<int, 4>> out;
  out.reserve(sz(std::max(0LL, choose4(v))));
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      for (int c = b + 1; c < v; ++c)
        for (int d = c + 1; d < v; ++d) out.push_back({a, b, c, d});
  return out;
}

long long MinorTypeCensus::count(int minWeight, int minimizers) const {
  const auto it = counts.find({minWeight, minimizers});
  return it == counts.end() ? 0 : it->second;
}

MinorTypeCensus minor_type_census(const ProjectivePlane& plane, const CensusOptions& options) {
  require_order(plane, options, 4, 5, "full minor scan");
  const TypeTally tally = tally_types(plane, options);
  MinorTypeCensus out;
  out.q = plane.order();
  out.totalMinors = choose4(plane.size()) * choose4(plane.size());
  for (int w = 0; w < 5; ++w) {
    for (int k = 0; k < 25; ++k) {
      const long long n = tally.counts[sz(w)][sz(k)];
      if (n == 0) continue;
      if (options.maxWeight && w > *options.maxWeight)
        out.filteredOut += n;
      else
        out.counts[{w, k}] = n;
    }
  }
  if (options.cycleTypes)
    for (int l = 4; l <= 8; l += 2) out.cycleLengths[l] = tally.cycleLengths[sz(l)];
  if (options.degenerateStats) out.degenerate = tally.degenerate;
  return out;
}

DegenerateDiamondStats degenerate_diamond_census(const ProjectivePlane& plane, const CensusOptions& options) {
  require_order(plane, options, 4, 5, "degenerate diamond scan");
  CensusOptions o = options;
  o.cycleTypes = false;
  o.degenerateStats = true;
  return tally_types(plane, o).degenerate;
}

CycleSpan cycle_span_of_02_minors(const ProjectivePlane& plane, const CensusOptions& options) {
  require_order(plane, options, 3, 4, "(0,2) cycle span scan");
  const ZeroGraph graph = nonincidence_graph(plane);
  if (!graph.connected()) fail(ErrorCode::Disconnected, "nonincidence graph is disconnected");
  CycleSpan out;
  out.ambientDim = graph.edge_count() - graph.vertex_count() + 1;
  const auto subsets = four_subsets(plane.size());
  const auto& perms = all_perms4();
  const std::size_t chunks = std::min(kScanChunks, subsets.size());
  std::vector<F2Basis> slots(chunks, F2Basis(graph.edge_count()));
  parallel_chunks(chunks, options.threads, [&](std::size_t c) {
    F2Basis& basis = slots[c];
    const auto [b, e] = chunk_range(c, chunks, subsets.size());
    scan_rows(plane, subsets, b, e, [&](const std::array<int, 4>& rows, const std::array<int, 4>& cols,
                                        std::uint16_t id) {
      const ProfileSummary& s = profile_summary(Pattern4(id));
      if (s.minWeight != 0 || s.count != 2) return true;
      const int first = std::countr_zero(s.minimizerMask);
      const int second = std::countr_zero(s.minimizerMask & (s.minimizerMask - 1));
      const unsigned diff = perm_cells(perms[sz(first)]) ^ perm_cells(perms[sz(second)]);
      CycleVector vec(graph.edge_count());
      for (unsigned cell = 0; cell < 16; ++cell)
        if ((diff >> cell) & 1u) vec.flip(graph.edge_index(rows[cell / 4], cols[cell % 4]));
      basis.insert(std::move(vec));
      // A full basis cannot grow; stopping early does not change the span.
      return basis.rank() < out.ambientDim;
    });
  });
  F2Basis total(graph.edge_count());
  for (const F2Basis& s : slots)
    for (const CycleVector& row : s.rows()) total.insert(row);
  out.spanDim = total.rank();
  out.equal = out.spanDim == out.ambientDim;
  return out;
}

// ---------------------------------------------------------------------------

WitnessEnumeration enumerate_bstar_witnesses(const ProjectivePlane& plane, const CensusOptions& options,
                                             bool keepWitnesses) {
  const long long q = plane.order();
  const int v = plane.size();
  WitnessEnumeration out;
  out.perTripleExpected = q * q * (q - 2);
  out.formulaCount = v * (q + 1) * q * (q - 1) * out.perTripleExpected;

  struct Slot {
    std::vector<BStarWitness> witnesses;
    bool perTriple = true;
    bool valid = true;
  };
  std::vector<Slot> slots(sz(v));
  parallel_chunks(sz(v), options.threads, [&](std::size_t chunk) {
    Slot& slot = slots[chunk];
    const int d = static_cast<int>(chunk);
    const auto& pencil = plane.lines_through(d);
    for (int l0 : pencil)
      for (int l1 : pencil)
        for (int l2 : pencil) {
          if (l0 == l1 || l0 == l2 || l1 == l2) continue;
          long long constructed = 0;
          for (int b : plane.points_on(l2)) {
            if (b == d) continue;
            for (int c : plane.points_on(l1)) {
              if (c == d) continue;
              const int l3 = plane.join(b, c);
              const int e = plane.meet(l0, l3);
              for (int a : plane.points_on(l3)) {
                if (a == b || a == c || a == e) continue;
                const BStarWitness w{a, b, c, d, l0, l1, l2, l3};
                if (!is_valid_witness(plane, w)) slot.valid = false;
                slot.witnesses.push_back(w);
                ++constructed;
              }
            }
          }
          // Independent count: every line as L3 and every ordered triple of its points.
          long long searched = 0;
          for (int l3 = 0; l3 < v; ++l3) {
            const auto& pts = plane.points_on(l3);
            for (int a : pts)
              for (int b : pts)
                for (int c : pts)
                  if (a != b && a != c && b != c && is_valid_witness(plane, {a, b, c, d, l0, l1, l2, l3})) ++searched;
          }
          if (constructed != out.perTripleExpected || searched != out.perTripleExpected) slot.perTriple = false;
        }
  });

  out.perTripleCountCheck = true;
  out.allValid = true;
  for (Slot& s : slots) {
    out.perTripleCountCheck = out.perTripleCountCheck && s.perTriple;
    out.allValid = out.allValid && s.valid;
    out.orderedCount += static_cast<long long>(s.witnesses.size());
  }

  // Ordered skew rectangles (A,B;L0,L1) with D = L0 meet L1 off line AB.
  for (int l0 = 0; l0 < v; ++l0)
    for (int l1 = 0; l1 < v; ++l1) {
      if (l0 == l1) continue;
      const int d = plane.meet(l0, l1);
      for (int a = 0; a < v; ++a) {
        if (plane.incident(a, l0) || plane.incident(a, l1)) continue;
        for (int b = 0; b < v; ++b)
          if (b != a && !plane.incident(b, l0) && !plane.incident(b, l1) && !plane.incident(d, plane.join(a, b)))
            ++out.skewRectangleCount;
      }
    }

  const auto key8 = [](std::array<int, 4> xs) {
    std::uint64_t k = 0;
    for (int x : xs) k = k << 8 | static_cast<std::uint64_t>(x);
    return k;
  };
  std::vector<std::uint64_t> rect_keys, minor_keys;
  rect_keys.reserve(sz(out.orderedCount));
  minor_keys.reserve(sz(out.orderedCount));
  bool rectangles_ok = true;
  for (const Slot& s : slots) {
    for (const BStarWitness& w : s.witnesses) {
      const int d = plane.meet(w.l0, w.l1);
      rectangles_ok = rectangles_ok && zero_rectangle(plane, w.a, w.b, w.l0, w.l1) &&
                      !plane.incident(d, plane.join(w.a, w.b));
      rect_keys.push_back(key8({w.a, w.b, w.l0, w.l1}));
      std::array<int, 4> rows{w.a, w.b, w.c, w.d}, cols{w.l0, w.l1, w.l2, w.l3};
      std::sort(rows.begin(), rows.end());
      std::sort(cols.begin(), cols.end());
      minor_keys.push_back(key8(rows) << 32 | key8(cols));
    }
  }
  std::sort(rect_keys.begin(), rect_keys.end());
  const bool injective = std::adjacent_find(rect_keys.begin(), rect_keys.end()) == rect_keys.end();
  out.bijectionCheck = rectangles_ok && injective && out.orderedCount == out.skewRectangleCount;
  std::sort(minor_keys.begin(), minor_keys.end());
  out.distinctMinorCount =
      static_cast<long long>(std::unique(minor_keys.begin(), minor_keys.end()) - minor_keys.begin());

  if (keepWitnesses) {
    out.witnesses.reserve(sz(out.orderedCount));
    for (Slot& s : slots) out.witnesses.insert(out.witnesses.end(), s.witnesses.begin(), s.witnesses.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

void for_each_identity_minor(const ProjectivePlane& plane, int threads,
                             const std::function<void(std::size_t, const IdentityMinor&)>& fn) {
  const int v = plane.size();
  parallel_chunks(sz(v), threads, [&](std::size_t chunk) {
    IdentityMinor m;
    m.points[0] = static_cast<int>(chunk);
    std::array<std::vector<int>, 4> priv;
    for (int p2 = 0; p2 < v; ++p2) {
      if (p2 == m.points[0]) continue;
      m.points[1] = p2;
      const int l12 = plane.join(m.points[0], p2);
      for (int p3 = 0; p3 < v; ++p3) {
        if (plane.incident(p3, l12)) continue;
        m.points[2] = p3;
        const int l13 = plane.join(m.points[0], p3), l23 = plane.join(p2, p3);
        for (int p4 = 0; p4 < v; ++p4) {
          if (plane.incident(p4, l12) || plane.incident(p4, l13) || plane.incident(p4, l23)) continue;
          m.points[3] = p4;
          for (std::size_t i = 0; i < 4; ++i) {
            priv[i].clear();
            for (int l : plane.lines_through(m.points[i])) {
              bool ok = true;
              for (std::size_t j = 0; j < 4; ++j) ok = ok && (j == i || !plane.incident(m.points[j], l));
              if (ok) priv[i].push_back(l);
            }
          }
          for (int a : priv[0])
            for (int b : priv[1])
              for (int c : priv[2])
                for (int d : priv[3]) {
                  m.lines = {a, b, c, d};
                  fn(chunk, m);
                }
        }
      }
    }
  });
}

IdentityMinorCount enumerate_identity_minors(const ProjectivePlane& plane, const CensusOptions& options) {
  const long long q = plane.order();
  const long long v = plane.size();
  IdentityMinorCount out;
  const long long q2 = q - 2;
  out.formulaLowerBound = v * (v - 1) * q * q * (q - 1) * (q - 1) * q2 * q2 * q2 * q2;
  std::vector<long long> counts(sz(v), 0);
  for_each_identity_minor(plane, options.threads, [&](std::size_t chunk, const IdentityMinor&) { ++counts[chunk]; });
  for (long long c : counts) out.orderedConstructiveCount += c;
  out.lowerBoundHolds = out.orderedConstructiveCount >= out.formulaLowerBound;

  if (q <= (options.allowLong ? 4 : 3)) {
    const auto subsets = four_subsets(plane.size());
    const PatternTables& t = tables();
    const std::size_t chunks = std::min(kScanChunks, subsets.size());
    std::vector<long long> slots(chunks, 0);
    parallel_chunks(chunks, options.threads, [&](std::size_t c) {
      const auto [b, e] = chunk_range(c, chunks, subsets.size());
      scan_rows(plane, subsets, b, e, [&](const std::array<int, 4>&, const std::array<int, 4>&, std::uint16_t id) {
        if (t.permutationMatrix[id]) ++slots[c];
        return true;
      });
    });
    long long unordered = 0;
    for (long long s : slots) unordered += s;
    out.fullScanUnorderedCount = unordered;
    // Each row order of an unordered block fixes the column order equal to I_4.
    out.fullScanOrderedCount = 24 * unordered;
  }
  return out;
}

RectangleMultiplicity rectangle_multiplicity(const ProjectivePlane& plane, const CensusOptions& options) {
  require_order(plane, options, 5, 7, "rectangle multiplicity scan");
  const long long q = plane.order();
  RectangleMultiplicity out;
  out.bound = 16LL * 576 * (q + 1) * (q + 1) * (q + 1) * (q + 1);
  const auto counts = multiplicity_counts(plane, options.threads, out.identityMinors);
  const auto pairs = sz(choose2(plane.size()));
  for_each_zero_rectangle(plane, [&](std::size_t pp, std::size_t lp, int, int, int, int) {
    const long long m = counts[pp * pairs + lp];
    ++out.zeroRectangles;
    ++out.histogram[m];
    out.maxMultiplicity = std::max(out.maxMultiplicity, m);
  });
  out.boundCheck = out.maxMultiplicity <= out.bound;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<DegenerateDiamond> degenerate_diamonds(const ProjectivePlane& plane) {
  std::vector<DegenerateDiamond> out;
  const int v = plane.size();
  for (int x = 0; x < v; ++x)
    for (int y = x + 1; y < v; ++y)
      for (int m = 0; m < v; ++m)
        for (int n = m + 1; n < v; ++n)
          if (degenerate_diamond_test(plane, x, y, m, n) == RectangleKind::Degenerate) out.push_back({x, y, m, n});
  return out;
}

DegenerateSquareFamily degenerate_square_family_census(const ProjectivePlane& plane, const DegenerateDiamond& dd) {
  if (degenerate_diamond_test(plane, dd.x, dd.y, dd.m, dd.n) != RectangleKind::Degenerate)
    fail(ErrorCode::NotDegenerate, "rectangle is not a degenerate diamond");
  const long long q = plane.order();
  DegenerateSquareFamily out;
  out.expectedSize = q * q * q * (q - 1);
  out.allFourMinimizers = true;
  out.swapPairPresent = true;
  const int w = plane.meet(dd.m, dd.n);
  const int ell = plane.join(dd.x, dd.y);
  // Swap pair on rows (X,Y), columns (m,n), with Z -> r and W -> s.
  const auto& perms = all_perms4();
  const auto index_of = [&](const Perm4& p) {
    return static_cast<unsigned>(std::find(perms.begin(), perms.end(), p) - perms.begin());
  };
  const std::uint32_t swap_mask = (1u << index_of({0, 1, 2, 3})) | (1u << index_of({1, 0, 2, 3}));
  for (int r : plane.lines_through(w)) {
    if (r == dd.n || r == ell) continue;
    for (int z : plane.points_on(dd.n)) {
      if (z == w) continue;
      for (int s = 0; s < plane.size(); ++s) {
        if (plane.incident(w, s)) continue;
        ++out.familySize;
        if (r != dd.m) ++out.distinctMinors;
        const ProfileSummary& prof = profile_summary(pattern_of(plane, {dd.x, dd.y, z, w}, {dd.m, dd.n, r, s}));
        if (prof.minWeight != 0 || prof.count != 4) out.allFourMinimizers = false;
        if ((prof.minimizerMask & swap_mask) != swap_mask) out.swapPairPresent = false;
      }
    }
  }
  return out;
}

DefectCensus defect_census(const ResidueModel& model, const CensusOptions& options, bool strict) {
  if (model.rank() > 3) fail(ErrorCode::RankTooHigh, "model rank " + std::to_string(model.rank()));
  const Field& f = model.field();
  if (strict && f.characteristic() == 3) fail(ErrorCode::CharThree, "assertions need characteristic other than 3");
  const ProjectivePlane& plane = model.plane();
  const RectangleMultiplicity mult = rectangle_multiplicity(plane, options);

  DefectCensus out;
  out.asserted = f.characteristic() != 3;
  out.maxMultiplicity = mult.maxMultiplicity;
  const int v = plane.size();
  const auto pairs = sz(choose2(v));
  std::vector<std::uint8_t> defective(pairs * pairs, 0);
  for_each_zero_rectangle(plane, [&](std::size_t pp, std::size_t lp, int p1, int p2, int l1, int l2) {
    ++out.zeroRectangles;
    const bool defect = f.mul(model.raw(p1, l2), model.raw(p2, l1)) != f.mul(model.raw(p1, l1), model.raw(p2, l2));
    defective[pp * pairs + lp] = defect ? 1 : 0;
    if (defect) ++out.defectCount;
  });

  std::vector<Perm4> derangements;
  for (const Perm4& p : all_perms4())
    if (p[0] != 0 && p[1] != 1 && p[2] != 2 && p[3] != 3) derangements.push_back(p);

  struct Slot {
    long long blocks = 0, withDefect = 0, thetaZero = 0;
  };
  std::vector<Slot> slots(sz(v));
  for_each_identity_minor(plane, options.threads, [&](std::size_t chunk, const IdentityMinor& m) {
    Slot& s = slots[chunk];
    ++s.blocks;
    bool hit = false;
    for (const auto& k : kComplements) {
      const std::size_t pp = pair_index(m.points[sz(k[0])], m.points[sz(k[1])], v);
      const std::size_t lp = pair_index(m.lines[sz(k[2])], m.lines[sz(k[3])], v);
      hit = hit || defective[pp * pairs + lp] != 0;
    }
    if (hit) ++s.withDefect;
    std::uint32_t theta = 0;
    for (const Perm4& p : derangements) {
      std::uint32_t term = 1;
      for (std::size_t i = 0; i < 4; ++i) term = f.mul(term, model.raw(m.points[i], m.lines[p[i]]));
      theta = perm_sign(p) > 0 ? f.add(theta, term) : f.sub(theta, term);
    }
    if (theta == 0) ++s.thetaZero;
  });
  for (const Slot& s : slots) {
    out.identityBlocks += s.blocks;
    out.blocksWithDefect += s.withDefect;
    out.thetaVanishing += s.thetaZero;
  }
  out.perIdentityBlockWitness = out.blocksWithDefect == out.identityBlocks;
  out.thetaVanishesEverywhere = out.thetaVanishing == out.identityBlocks;
  out.lowerBoundCheck = out.defectCount * out.maxMultiplicity >= out.identityBlocks;
  return out;
}

}  // namespace tpl
