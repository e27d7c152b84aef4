#include "report.hpp"

#include <chrono>
#include <map>
#include <memory>

#include "manifest_data.hpp"
#include "suites.hpp"
#include "tpl/census.hpp"
#include "tpl/error.hpp"
#include "tpl/gf.hpp"
#include "tpl/holonomy.hpp"
#include "tpl/patterns.hpp"
#include "tpl/plane.hpp"
#include "tpl/residue.hpp"

namespace tpl::verify {

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Informational: return "informational";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

Manifest::Manifest(const Json& document) {
  version_ = document.at("version").get<int>();
  for (const Json& e : document.at("expectations")) {
    entries_.push_back({e.at("check").get<std::string>(), e.at("key"), e.at("expected"),
                        e.at("provenance").get<std::string>(), e.at("citation").get<std::string>(),
                        e.value("inputs", Json())});
  }
}

const Manifest& Manifest::builtin() {
  static const Manifest manifest(Json::parse(kManifestJson));
  return manifest;
}

const Expectation* Manifest::find(std::string_view check, const Json& key) const {
  for (const Expectation& e : entries_)
    if (e.check == check && e.key == key) return &e;
  return nullptr;
}

Status CriterionReport::status() const {
  bool passed = false;
  for (const CheckReport& c : checks) {
    if (c.status == Status::Fail) return Status::Fail;
    passed = passed || c.status == Status::Pass;
  }
  return passed ? Status::Pass : Status::Skipped;
}

long long SuiteReport::count(Status status) const {
  long long n = 0;
  for (const CriterionReport& c : criteria)
    for (const CheckReport& k : c.checks) n += k.status == status ? 1 : 0;
  return n;
}

const CheckReport* SuiteReport::find(std::string_view check, const Json& key) const {
  for (const CriterionReport& c : criteria)
    for (const CheckReport& k : c.checks)
      if (k.check == check && k.key == key) return &k;
  return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : text) h = (h ^ c) * 1099511628211ull;
  return h;
}

Json tally_json(const Tally& t) { return t.failures; }

class Runner {
 public:
  Runner(const SuiteOptions& options, const Manifest& manifest) : opt_(options), manifest_(manifest) {}

  SuiteReport run(const Progress& progress) {
    SuiteReport out;
    out.manifestVersion = manifest_.version();
    const std::vector<std::pair<std::string, void (Runner::*)()>> steps = {
        {"pattern atlas", &Runner::atlas_of_patterns},
        {"PG(2,3) minor census", &Runner::minor_census},
        {"(0,2) censuses and cycle spans", &Runner::zero_two_census},
        {"nonincidence graph", &Runner::nonincidence},
        {"witness enumeration", &Runner::witnesses},
        {"derangement arithmetic", &Runner::derangements},
        {"canonical-model consequences", &Runner::canonical_model},
        {"jet oracle properties", &Runner::jets},
        {"holonomy", &Runner::holonomy},
        {"atlas and bridge cycles", &Runner::bridges},
        {"rank machinery", &Runner::rank_machinery},
        {"multiplicity and defect bounds", &Runner::multiplicity_and_defect},
    };
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const int id = static_cast<int>(i) + 1;
      if (!opt_.criteria.empty() && !opt_.criteria.contains(id)) continue;
      CriterionReport criterion;
      criterion.id = id;
      criterion.title = steps[i].first;
      current_ = &criterion;
      const auto start = Clock::now();
      (this->*steps[i].second)();
      criterion.elapsedMs = millis_since(start);
      current_ = nullptr;
      if (progress) progress(criterion);
      out.criteria.push_back(std::move(criterion));
    }
    return out;
  }

 private:
  const SuiteOptions& opt_;
  const Manifest& manifest_;
  CriterionReport* current_ = nullptr;

  std::map<int, PlanePtr> planes_;
  std::map<int, std::unique_ptr<ResidueModel>> models_;
  std::map<int, WitnessEnumeration> witnesses_;
  std::map<int, MinorTypeCensus> censuses_;
  std::map<int, DefectCensus> defects_;
  std::map<int, IdentityMinorCount> identities_;
  std::optional<Census03> census03_;

  CensusOptions census_options() const {
    CensusOptions o;
    o.threads = opt_.threads;
    o.allowLong = opt_.allowLong;
    return o;
  }

  const PlanePtr& plane(int q) {
    auto it = planes_.find(q);
    if (it == planes_.end()) it = planes_.emplace(q, build_pg2(q)).first;
    return it->second;
  }
  const ResidueModel& model(int q) {
    auto it = models_.find(q);
    if (it == models_.end())
      it = models_.emplace(q, std::make_unique<ResidueModel>(canonical_residue_model(plane(q)))).first;
    return *it->second;
  }
  const WitnessEnumeration& witness_list(int q) {
    auto it = witnesses_.find(q);
    if (it == witnesses_.end())
      it = witnesses_.emplace(q, enumerate_bstar_witnesses(*plane(q), census_options(), true)).first;
    return it->second;
  }
  const MinorTypeCensus& census(int q) {
    auto it = censuses_.find(q);
    if (it == censuses_.end()) it = censuses_.emplace(q, minor_type_census(*plane(q), census_options())).first;
    return it->second;
  }
  const DefectCensus& defect(int q) {
    auto it = defects_.find(q);
    if (it == defects_.end()) it = defects_.emplace(q, defect_census(model(q), census_options())).first;
    return it->second;
  }
  const IdentityMinorCount& identity(int q) {
    auto it = identities_.find(q);
    if (it == identities_.end())
      it = identities_.emplace(q, enumerate_identity_minors(*plane(q), census_options())).first;
    return it->second;
  }

  std::uint64_t seed_for(std::string_view check, const Json& key) const {
    return fnv1a(key.dump(), fnv1a(check, opt_.seed));
  }

  CheckReport& add(std::string_view check, const Json& key, const Json& params) {
    CheckReport r;
    r.check = std::string(check);
    r.key = key;
    r.params = params;
    if (const Expectation* e = manifest_.find(check, key)) r.expected = *e;
    current_->checks.push_back(std::move(r));
    return current_->checks.back();
  }

  void check(std::string_view name, const Json& key, const Json& params, const std::function<Json()>& compute) {
    CheckReport& r = add(name, key, params);
    const auto start = Clock::now();
    try {
      r.actual = compute();
      if (!r.expected) {
        r.status = Status::Informational;
      } else {
        r.status = r.actual == r.expected->value ? Status::Pass : Status::Fail;
      }
    } catch (const Error& e) {
      r.actual = nullptr;
      r.note = std::string(to_string(e.code())) + ": " + e.detail();
      r.status = r.expected ? Status::Fail : Status::Informational;
    }
    r.elapsedMs = millis_since(start);
  }

  void tally(std::string_view name, const Json& key, Json params, const std::function<Tally(std::uint64_t)>& run) {
    const std::uint64_t seed = seed_for(name, key);
    std::string first;
    long long samples = 0;
    check(name, key, params, [&] {
      Tally t = run(seed);
      first = t.firstFailure;
      samples = t.samples;
      return tally_json(t);
    });
    CheckReport& r = current_->checks.back();
    r.params["samples"] = samples;
    if (!first.empty()) r.note = first;
    // A suite that drew nothing proves nothing.
    if (samples == 0 && r.status == Status::Pass) {
      r.status = Status::Fail;
      r.note = "no samples drawn";
    }
  }

  void skip(std::string_view name, const Json& key, const std::string& reason) {
    CheckReport& r = add(name, key, Json::object());
    r.status = Status::Skipped;
    r.note = reason;
  }

  bool within_q_max(int q) const { return q <= opt_.qMax; }
  static std::string above_q_max() { return "order above q-max"; }

  // -------------------------------------------------------------------------

  void atlas_of_patterns() {
    const Json none = Json::object();
    auto atlas = [&]() -> const Census03& {
      if (!census03_) census03_ = census_03(opt_.threads);
      return *census03_;
    };
    check("patterns.raw03", none, none, [&] { return atlas().raw03Count; });
    check("patterns.orbits", none, none, [&] { return atlas().orbitCount; });
    check("patterns.diamond_orbits", none, none, [&] { return atlas().diamondOrbitCount; });
    check("patterns.raw_split", none, none, [&] {
      return Json{{"diamond", atlas().rawDiamondCount}, {"nonDiamond", atlas().rawNonDiamondCount}};
    });
    const Expectation* displayed = manifest_.find("patterns.exceptional_canonical", none);
    const Json matrix = displayed ? displayed->inputs.value("matrix", Json::array()) : Json::array();
    check("patterns.exceptional_canonical", none, Json{{"matrix", matrix}}, [&]() -> Json {
      if (matrix.size() != 4) fail(ErrorCode::PreconditionViolated, "displayed matrix missing from manifest");
      std::array<std::array<int, 4>, 4> rows{};
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) rows[r][c] = matrix[r].get<std::string>().at(c) == '1' ? 1 : 0;
      return atlas().exceptionalCanonical == canonical_form(Pattern4::from_rows(rows));
    });
  }

  void minor_census() {
    for (int q : {2, 3, 4}) {
      const Json key{{"q", q}};
      if (!within_q_max(q)) {
        for (const char* name : {"census.total", "census.type03", "census.degenerate03", "census.swap_pair03"})
          skip(name, key, above_q_max());
        continue;
      }
      check("census.total", key, {}, [&] { return census(q).totalMinors; });
      check("census.type03", key, {}, [&] { return census(q).count(0, 3); });
      check("census.degenerate03", key, {}, [&] { return census(q).degenerate.with03Degenerate; });
      check("census.swap_pair03", key, {}, [&] { return census(q).degenerate.swapPairInMinimizers; });
      check("census.types", key, {}, [&] {
        Json types = Json::object();
        for (const auto& [type, n] : census(q).counts)
          types["(" + std::to_string(type.first) + "," + std::to_string(type.second) + ")"] = n;
        return types;
      });
    }
  }

  void zero_two_census() {
    for (int q : {2, 3}) {
      const Json key{{"q", q}};
      if (!within_q_max(q)) {
        for (const char* name : {"census.type02", "census.cycles02", "census.span02"}) skip(name, key, above_q_max());
        continue;
      }
      check("census.type02", key, {}, [&] { return census(q).count(0, 2); });
      check("census.cycles02", key, {}, [&] {
        Json cycles = Json::object();
        for (const auto& [length, n] : census(q).cycleLengths) cycles[std::to_string(length)] = n;
        return cycles;
      });
      check("census.span02", key, {}, [&] {
        const CycleSpan s = cycle_span_of_02_minors(*plane(q), census_options());
        return Json{{"span", s.spanDim}, {"ambient", s.ambientDim}};
      });
    }
    const Json key4{{"q", 4}};
    if (!within_q_max(4)) {
      skip("census.span02", key4, above_q_max());
    } else if (!opt_.allowLong) {
      skip("census.span02", key4, "exploratory scan; needs allow-long");
    } else {
      check("census.span02", key4, {}, [&] {
        const CycleSpan s = cycle_span_of_02_minors(*plane(4), census_options());
        return Json{{"span", s.spanDim}, {"ambient", s.ambientDim}};
      });
    }
  }

  void nonincidence() {
    for (int q : {2, 3, 4, 5, 7, 8, 9}) {
      const Json key{{"q", q}};
      check("graph.diameter", key, {}, [&] { return graph_diameter(nonincidence_graph(*plane(q))); });
      check("graph.connected", key, {}, [&] {
        try {
          graph_diameter(nonincidence_graph(*plane(q)));
          return true;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Disconnected) throw;
          return false;
        }
      });
    }
  }

  void witnesses() {
    for (int q : {3, 4, 5}) {
      const Json key{{"q", q}};
      if (!within_q_max(q)) {
        for (const char* name : {"witness.ordered", "witness.per_triple", "witness.bijection"})
          skip(name, key, above_q_max());
        continue;
      }
      check("witness.ordered", key, {}, [&] { return witness_list(q).orderedCount; });
      check("witness.formula", key, {}, [&] { return witness_list(q).formulaCount; });
      check("witness.per_triple", key, {}, [&] { return witness_list(q).perTripleCountCheck && witness_list(q).allValid; });
      check("witness.bijection", key, {}, [&] { return witness_list(q).bijectionCheck; });
      check("witness.skew_rectangles", key, {}, [&] { return witness_list(q).skewRectangleCount; });
      check("witness.distinct_minors", key, {}, [&] { return witness_list(q).distinctMinorCount; });
    }
  }

  void derangements() {
    for (int k = 2; k <= 6; ++k)
      check("derangement.sign_sum", Json{{"k", k}}, {}, [&] { return derangement_sign_sum(k); });
    for (int f : {2, 3, 4, 5, 7, 8, 9})
      tally("theta4.rank1", Json{{"field", f}}, {}, [&](std::uint64_t seed) {
        return theta4_rank1(Field::of_order(static_cast<std::uint32_t>(f)), 500, seed);
      });
  }

  void canonical_model() {
    const Json k2{{"q", 2}};
    for (const char* name : {"identity.formula", "identity.lower_bound", "identity.theta_vanishes"})
      skip(name, k2, "q-2 = 0: no private-line identity minors");
    for (int q : {3, 4, 5}) {
      const Json key{{"q", q}};
      if (!within_q_max(q)) {
        for (const char* name : {"canonical.rank", "canonical.zero_pattern", "canonical.witness_relation",
                                 "canonical.rho_sigma", "identity.theta_vanishes", "identity.formula",
                                 "identity.lower_bound", "degenerate.family"})
          skip(name, key, above_q_max());
        continue;
      }
      check("canonical.rank", key, {}, [&] { return model(q).rank(); });
      check("canonical.zero_pattern", key, {}, [&] {
        const ResidueModel& m = model(q);
        for (int p = 0; p < m.plane().size(); ++p)
          for (int l = 0; l < m.plane().size(); ++l)
            if ((m.raw(p, l) == 0) != m.plane().incident(p, l)) return false;
        return true;
      });
      std::optional<WitnessRelationTally> relations;
      auto rel = [&]() -> const WitnessRelationTally& {
        if (!relations) relations = witness_relations(model(q), witness_list(q).witnesses);
        return *relations;
      };
      const Json all{{"witnesses", "all"}};
      check("canonical.witness_relation", key, all, [&] { return tally_json(rel().relation); });
      check("canonical.rho_sigma", key, all, [&] { return tally_json(rel().rhoPlusSigma); });
      if (q % 2 == 0) {
        skip("canonical.rho_not_one", key, "characteristic 2");
      } else {
        check("canonical.rho_not_one", key, all, [&] { return tally_json(rel().rhoNotOne); });
      }
      check("identity.formula", key, {}, [&] { return identity(q).formulaLowerBound; });
      check("identity.constructive", key, {}, [&] { return identity(q).orderedConstructiveCount; });
      check("identity.lower_bound", key, {}, [&] { return identity(q).lowerBoundHolds; });
      check("identity.theta_vanishes", key, {}, [&] { return defect(q).thetaVanishesEverywhere; });
      // In characteristic 3 the defect is not forced; the outcome is reported without an expectation.
      check("identity.defect_witness", key, {}, [&] { return defect(q).perIdentityBlockWitness; });
      check("degenerate.family", key, {}, [&] { return tally_json(degenerate_families(*plane(q))); });
    }
  }

  void jets() {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      const Json key{{"field", p}};
      const Field& f = Field::prime(p);
      tally("jet.identity_blocks", key, {}, [&](std::uint64_t s) { return jet_identity_blocks(f, 1000, s); });
      tally("jet.initial_form", key, {}, [&](std::uint64_t s) { return initial_form_lifts(f, 1000, s); });
      tally("jet.tie_depth", key, {}, [&](std::uint64_t s) { return tie_depth(f, 1000, s); });
    }
  }

  void holonomy() {
    const Json k3{{"q", 3}};
    tally("holonomy.round_trip", k3, Json{{"field", 11}}, [&](std::uint64_t s) {
      return factorization_round_trip(plane(3), Field::prime(11), 100, s);
    });
    tally("holonomy.perturbation", k3, Json{{"field", 11}}, [&](std::uint64_t s) {
      return factorization_perturbation(plane(3), Field::prime(11), 100, s);
    });
    tally("holonomy.signed_jets", k3, Json{{"field", 7}}, [&](std::uint64_t s) {
      return signed_holonomy_jets(plane(3), Field::prime(7), 1000, s);
    });
    for (int q : {2, 3})
      tally("holonomy.char2", Json{{"q", q}}, Json{{"field", 8}},
            [&](std::uint64_t s) { return characteristic_two_gauge(plane(q), 20, s); });
    for (std::uint32_t f : {3u, 4u, 5u, 7u, 9u}) {
      const Json key{{"field", f}};
      tally("overlap.elimination", key, {}, [&](std::uint64_t s) {
        const OverlapEliminationResult r = overlap_elimination_check(1000, Field::of_order(f), s);
        Tally t;
        t.samples = r.samples + r.generalSamples;
        t.failures = r.failures + r.generalFailures + (r.deltaZeroConsistent ? 0 : 1);
        t.firstFailure = r.counterexample;
        return t;
      });
    }
  }

  void bridges() {
    for (int q : {7, 8})
      tally("atlas.three_chart", Json{{"q", q}}, {}, [&](std::uint64_t s) { return three_chart_cycles(plane(q), 100, s); });
    tally("atlas.bridge", Json{{"q", 3}}, Json{{"witnesses", "all"}},
          [&](std::uint64_t) { return bridge_identities(model(3), witness_list(3).witnesses); });
    for (int q : {4, 5, 7, 8, 9}) {
      const Json key{{"q", q}};
      tally("atlas.bridge", key, Json{{"witnesses", "random"}}, [&](std::uint64_t s) {
        std::mt19937_64 rng(s);
        std::vector<BStarWitness> sample;
        for (int i = 0; i < 300; ++i) sample.push_back(random_witness(*plane(q), rng));
        return bridge_identities(model(q), sample);
      });
    }
  }

  void rank_machinery() {
    for (int q : {2, 3, 4, 5, 7})
      tally("rank.monomial_block", Json{{"q", q}}, {},
            [&](std::uint64_t) { return monomial_blocks(*plane(q), *plane(q)->field()); });
    for (int r : {1, 2, 3})
      tally("rank.tangent", Json{{"r", r}}, {}, [&](std::uint64_t s) { return tangent_rank(r, 100, s); });
    tally("turan.random", Json{{"n", 12}}, {}, [&](std::uint64_t s) { return turan_random(12, 100, s); });
    tally("turan.exhaustive", Json::object(), Json{{"sizes", "7..14"}},
          [&](std::uint64_t s) { return turan_exhaustive(10, s); });
  }

  void multiplicity_and_defect() {
    const Json k3{{"q", 3}};
    if (!within_q_max(3)) {
      skip("multiplicity.bound", k3, above_q_max());
      skip("multiplicity.bound_check", k3, above_q_max());
    } else {
      std::optional<RectangleMultiplicity> mult;
      auto m = [&]() -> const RectangleMultiplicity& {
        if (!mult) mult = rectangle_multiplicity(*plane(3), census_options());
        return *mult;
      };
      check("multiplicity.bound", k3, {}, [&] { return m().bound; });
      check("multiplicity.bound_check", k3, {}, [&] { return m().boundCheck; });
      check("multiplicity.max", k3, {}, [&] { return m().maxMultiplicity; });
      check("multiplicity.zero_rectangles", k3, {}, [&] { return m().zeroRectangles; });
    }
    for (int q : {4, 5}) {
      const Json key{{"q", q}};
      if (!within_q_max(q)) {
        skip("defect.lower_bound", key, above_q_max());
        skip("defect.per_block", key, above_q_max());
        continue;
      }
      check("defect.lower_bound", key, {}, [&] { return defect(q).lowerBoundCheck; });
      check("defect.per_block", key, {}, [&] { return defect(q).perIdentityBlockWitness; });
      check("defect.count", key, {}, [&] { return defect(q).defectCount; });
      check("defect.identity_blocks", key, {}, [&] { return defect(q).identityBlocks; });
      check("defect.max_multiplicity", key, {}, [&] { return defect(q).maxMultiplicity; });
    }
  }
};

}  // namespace

SuiteReport run_suite(const SuiteOptions& options, const Manifest& manifest, const Progress& progress) {
  return Runner(options, manifest).run(progress);
}

Json to_json(const CheckReport& check, bool timing) {
  Json params = check.key;
  for (const auto& [k, v] : check.params.items()) params[k] = v;
  Json out{{"check", check.check}, {"params", params}, {"status", to_string(check.status)}};
  if (check.expected) {
    out["expected"] = {{"value", check.expected->value},
                       {"provenance", check.expected->provenance},
                       {"citation", check.expected->citation}};
  }
  if (check.status != Status::Skipped) out["actual"] = check.actual;
  if (!check.note.empty()) out["note"] = check.note;
  if (timing) out["elapsedMs"] = check.elapsedMs;
  return out;
}

Json to_json(const SuiteReport& report, const SuiteOptions& options, bool timing) {
  Json criteria = Json::array();
  for (const CriterionReport& c : report.criteria) {
    Json checks = Json::array();
    for (const CheckReport& k : c.checks) checks.push_back(to_json(k, timing));
    Json entry{{"id", c.id}, {"title", c.title}, {"status", to_string(c.status())}, {"checks", checks}};
    if (timing) entry["elapsedMs"] = c.elapsedMs;
    criteria.push_back(entry);
  }
  return Json{{"manifestVersion", report.manifestVersion},
              {"options", {{"qMax", options.qMax}, {"seed", options.seed}, {"allowLong", options.allowLong}}},
              {"criteria", criteria},
              {"summary",
               {{"pass", report.count(Status::Pass)},
                {"fail", report.count(Status::Fail)},
                {"informational", report.count(Status::Informational)},
                {"skipped", report.count(Status::Skipped)}}}};
}

}  // namespace tpl::verify
