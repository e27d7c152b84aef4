#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "tpl/census.hpp"
#include "tpl/error.hpp"
#include "tpl/holonomy.hpp"
#include "tpl/patterns.hpp"
#include "tpl/plane.hpp"
#include "tpl/residue.hpp"
#include "verify/report.hpp"
#include "verify/suites.hpp"

namespace {

using tpl::verify::Json;

struct Globals {
  int threads = 1;
  std::uint64_t seed = tpl::verify::SuiteOptions{}.seed;
  std::string jsonPath;
  bool allowLong = false;
};

/// A plane chosen by file or by order.
struct PlaneSource {
  std::string path;
  int q = 0;

  void attach(CLI::App* cmd) {
    auto* file = cmd->add_option("--plane", path, "plane file");
    auto* order = cmd->add_option("--q", q, "build PG(2,q)");
    file->excludes(order);
  }
  tpl::PlanePtr load() const {
    if (!path.empty()) return tpl::ingest_plane_file(path);
    if (q == 0) tpl::fail(tpl::ErrorCode::InvalidArgument, "give --plane or --q");
    return tpl::build_pg2(q);
  }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) tpl::fail(tpl::ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

void emit(const Globals& g, const Json& j) {
  std::cout << j.dump(2) << '\n';
  if (!g.jsonPath.empty()) write_file(g.jsonPath, j.dump(2) + "\n");
}

tpl::CensusOptions census_options(const Globals& g) {
  tpl::CensusOptions o;
  o.threads = g.threads;
  o.allowLong = g.allowLong;
  return o;
}

Json tally_json(const tpl::verify::Tally& t) {
  Json j{{"samples", t.samples}, {"failures", t.failures}};
  if (!t.firstFailure.empty()) j["firstFailure"] = t.firstFailure;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical rank and projective plane laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "worker threads")->envname("TPL_THREADS")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed of the randomized suites");
  app.add_option("--json", g.jsonPath, "also write the JSON report here");
  app.add_flag("--allow-long", g.allowLong, "lift the order cap of the exhaustive scans by one step");

  int exitCode = 0;

  // pg2
  auto* pg2 = app.add_subcommand("pg2", "write the Desarguesian plane PG(2,q)");
  int pg2Q = 0;
  std::string pg2Out;
  pg2->add_option("--q", pg2Q, "order")->required();
  pg2->add_option("--out", pg2Out, "output file, stdout when absent");
  pg2->callback([&] {
    const std::string text = tpl::dump_plane(*tpl::build_pg2(pg2Q));
    if (pg2Out.empty()) {
      std::cout << text;
    } else {
      write_file(pg2Out, text);
    }
  });

  // ingest-check
  auto* ingest = app.add_subcommand("ingest-check", "validate a plane file");
  std::string ingestPath;
  ingest->add_option("--plane", ingestPath, "plane file")->required();
  ingest->callback([&] {
    const tpl::PlanePtr plane = tpl::ingest_plane_file(ingestPath);
    emit(g, Json{{"valid", true}, {"q", plane->order()}, {"v", plane->size()},
                 {"diameter", tpl::graph_diameter(tpl::nonincidence_graph(*plane))}});
  });

  // census
  auto* census = app.add_subcommand("census", "exhaustive 4x4 minor scans");
  PlaneSource censusPlane;
  censusPlane.attach(census);
  bool types = false, cycles = false, degenerate = false, span = false;
  std::optional<int> maxWeight;
  census->add_flag("--types", types, "minor types (minimum weight, minimizer count)");
  census->add_flag("--cycles", cycles, "cycle lengths of the (0,2) minors");
  census->add_flag("--degenerate", degenerate, "degenerate-diamond statistics of the (0,3) minors");
  census->add_flag("--span", span, "GF(2) span of the (0,2) cycles");
  census->add_option("--max-weight", maxWeight, "count heavier types only as filtered");
  census->callback([&] {
    const tpl::PlanePtr plane = censusPlane.load();
    Json out{{"q", plane->order()}};
    if (types || cycles || degenerate) {
      tpl::CensusOptions o = census_options(g);
      o.cycleTypes = cycles;
      o.degenerateStats = degenerate;
      o.maxWeight = maxWeight;
      const tpl::MinorTypeCensus c = tpl::minor_type_census(*plane, o);
      out["total"] = c.totalMinors;
      Json byType = Json::object();
      for (const auto& [type, n] : c.counts)
        byType["(" + std::to_string(type.first) + "," + std::to_string(type.second) + ")"] = n;
      out["types"] = byType;
      if (maxWeight) out["filteredOut"] = c.filteredOut;
      if (cycles) {
        Json lengths = Json::object();
        for (const auto& [length, n] : c.cycleLengths) lengths[std::to_string(length)] = n;
        out["cycles02"] = lengths;
      }
      if (degenerate)
        out["degenerate03"] = {{"withDegenerateDiamond", c.degenerate.with03Degenerate},
                               {"swapPairInMinimizers", c.degenerate.swapPairInMinimizers}};
    }
    if (span) {
      const tpl::CycleSpan s = tpl::cycle_span_of_02_minors(*plane, census_options(g));
      out["span02"] = {{"span", s.spanDim}, {"ambient", s.ambientDim}, {"equal", s.equal}};
    }
    emit(g, out);
  });

  // patterns
  auto* patterns = app.add_subcommand("patterns", "classification of 4x4 zero patterns with three minimizers");
  bool listOrbits = false;
  patterns->add_flag("--orbits", listOrbits, "list every orbit");
  patterns->callback([&] {
    const tpl::Census03 c = tpl::census_03(g.threads);
    Json out{{"raw03", c.raw03Count},
             {"orbits", c.orbitCount},
             {"diamondOrbits", c.diamondOrbitCount},
             {"rawDiamond", c.rawDiamondCount},
             {"rawNonDiamond", c.rawNonDiamondCount},
             {"exceptionalCanonical", c.exceptionalCanonical.id()}};
    if (listOrbits) {
      Json list = Json::array();
      for (const tpl::PatternOrbit& o : c.orbits)
        list.push_back({{"canonical", o.canonicalForm.id()}, {"size", o.orbitSize}, {"hasDiamond", o.hasDiamond}});
      out["orbitList"] = list;
    }
    emit(g, out);
  });

  // witnesses
  auto* witnesses = app.add_subcommand("witnesses", "enumerate ordered witnesses");
  PlaneSource witnessPlane;
  witnessPlane.attach(witnesses);
  int witnessList = 0;
  witnesses->add_option("--list", witnessList, "print the first N witnesses");
  witnesses->callback([&] {
    const tpl::PlanePtr plane = witnessPlane.load();
    const tpl::WitnessEnumeration w = tpl::enumerate_bstar_witnesses(*plane, census_options(g), witnessList > 0);
    Json out{{"q", plane->order()},
             {"orderedCount", w.orderedCount},
             {"formulaCount", w.formulaCount},
             {"perTripleExpected", w.perTripleExpected},
             {"perTripleCountCheck", w.perTripleCountCheck},
             {"allValid", w.allValid},
             {"skewRectangleCount", w.skewRectangleCount},
             {"bijectionCheck", w.bijectionCheck},
             {"distinctMinorCount", w.distinctMinorCount}};
    if (witnessList > 0) {
      Json list = Json::array();
      for (std::size_t i = 0; i < w.witnesses.size() && i < static_cast<std::size_t>(witnessList); ++i) {
        const tpl::BStarWitness& x = w.witnesses[i];
        list.push_back({{"rows", {x.a, x.b, x.c, x.d}}, {"cols", {x.l0, x.l1, x.l2, x.l3}}});
      }
      out["witnesses"] = list;
    }
    emit(g, out);
  });

  // identity
  auto* identity = app.add_subcommand("identity", "identity minors and rectangle multiplicity");
  PlaneSource identityPlane;
  identityPlane.attach(identity);
  bool multiplicity = false;
  identity->add_flag("--multiplicity", multiplicity, "complement-rectangle multiplicity histogram");
  identity->callback([&] {
    const tpl::PlanePtr plane = identityPlane.load();
    const tpl::IdentityMinorCount c = tpl::enumerate_identity_minors(*plane, census_options(g));
    Json out{{"q", plane->order()},
             {"orderedConstructiveCount", c.orderedConstructiveCount},
             {"formulaLowerBound", c.formulaLowerBound},
             {"lowerBoundHolds", c.lowerBoundHolds}};
    if (c.fullScanOrderedCount) out["fullScanOrderedCount"] = *c.fullScanOrderedCount;
    if (c.fullScanUnorderedCount) out["fullScanUnorderedCount"] = *c.fullScanUnorderedCount;
    if (multiplicity) {
      const tpl::RectangleMultiplicity m = tpl::rectangle_multiplicity(*plane, census_options(g));
      Json histogram = Json::object();
      for (const auto& [k, n] : m.histogram) histogram[std::to_string(k)] = n;
      out["multiplicity"] = {{"zeroRectangles", m.zeroRectangles}, {"histogram", histogram},
                             {"max", m.maxMultiplicity},          {"bound", m.bound},
                             {"boundCheck", m.boundCheck}};
    }
    emit(g, out);
  });

  // residue-check
  auto* residue = app.add_subcommand("residue-check", "consequences on the canonical or a loaded residue model");
  int residueQ = 0;
  std::string residueModel;
  bool residueDefect = false;
  residue->add_option("--q", residueQ, "order of the constructed plane")->required();
  residue->add_option("--model", residueModel, "model file; the canonical model when absent");
  residue->add_flag("--defect", residueDefect, "defect census over the identity blocks");
  residue->callback([&] {
    const tpl::PlanePtr plane = tpl::build_pg2(residueQ);
    std::optional<tpl::ResidueModel> model;
    if (residueModel.empty()) {
      model.emplace(tpl::canonical_residue_model(plane));
    } else {
      std::ifstream in(residueModel);
      if (!in) tpl::fail(tpl::ErrorCode::InvalidArgument, "cannot read " + residueModel);
      model.emplace(tpl::load_model(in, plane));
    }
    Json out{{"q", residueQ}, {"rank", model->rank()}};
    if (model->rank() <= 3 && residueQ >= 3) {
      const tpl::WitnessEnumeration w = tpl::enumerate_bstar_witnesses(*plane, census_options(g), true);
      const tpl::verify::WitnessRelationTally r = tpl::verify::witness_relations(*model, w.witnesses);
      out["witnessRelation"] = tally_json(r.relation);
      out["rhoPlusSigma"] = tally_json(r.rhoPlusSigma);
      if (plane->field()->characteristic() != 2) out["rhoNotOne"] = tally_json(r.rhoNotOne);
    }
    if (residueDefect) {
      const tpl::DefectCensus d = tpl::defect_census(*model, census_options(g));
      out["defect"] = {{"zeroRectangles", d.zeroRectangles},
                       {"defectCount", d.defectCount},
                       {"identityBlocks", d.identityBlocks},
                       {"blocksWithDefect", d.blocksWithDefect},
                       {"maxMultiplicity", d.maxMultiplicity},
                       {"thetaVanishesEverywhere", d.thetaVanishesEverywhere},
                       {"perIdentityBlockWitness", d.perIdentityBlockWitness},
                       {"lowerBoundCheck", d.lowerBoundCheck},
                       {"asserted", d.asserted}};
    }
    emit(g, out);
  });

  // holonomy
  auto* holonomy = app.add_subcommand("holonomy", "label factorization and cycle holonomy suites");
  int holonomyQ = 3, holonomyTrials = 100;
  std::uint32_t holonomyField = 11;
  holonomy->add_option("--q", holonomyQ, "plane order")->capture_default_str();
  holonomy->add_option("--field", holonomyField, "label field order")->capture_default_str();
  holonomy->add_option("--trials", holonomyTrials, "trials per suite")->capture_default_str();
  holonomy->callback([&] {
    const tpl::PlanePtr plane = tpl::build_pg2(holonomyQ);
    const tpl::Field& f = tpl::Field::of_order(holonomyField);
    const Json out{
        {"q", holonomyQ},
        {"field", holonomyField},
        {"roundTrip", tally_json(tpl::verify::factorization_round_trip(plane, f, holonomyTrials, g.seed))},
        {"perturbation", tally_json(tpl::verify::factorization_perturbation(plane, f, holonomyTrials, g.seed))},
        {"signedJets", tally_json(tpl::verify::signed_holonomy_jets(plane, f, holonomyTrials, g.seed))}};
    emit(g, out);
  });

  // atlas
  auto* atlas = app.add_subcommand("atlas", "trimmed charts, three-chart and bridge cycles");
  int atlasQ = 7, atlasSamples = 100;
  atlas->add_option("--q", atlasQ, "plane order")->capture_default_str();
  atlas->add_option("--samples", atlasSamples, "random witnesses")->capture_default_str();
  atlas->callback([&] {
    const tpl::PlanePtr plane = tpl::build_pg2(atlasQ);
    const tpl::ResidueModel model = tpl::canonical_residue_model(plane);
    std::mt19937_64 rng(g.seed);
    std::vector<tpl::BStarWitness> sample;
    for (int i = 0; i < atlasSamples; ++i) sample.push_back(tpl::verify::random_witness(*plane, rng));
    Json out{{"q", atlasQ}, {"bridge", tally_json(tpl::verify::bridge_identities(model, sample))}};
    if (atlasQ >= 6) out["threeChart"] = tally_json(tpl::verify::three_chart_cycles(plane, atlasSamples, g.seed));
    emit(g, out);
  });

  // verify-all
  auto* verifyAll = app.add_subcommand("verify-all", "run every acceptance check against the manifest");
  tpl::verify::SuiteOptions suite;
  bool noTiming = false;
  verifyAll->add_option("--q-max", suite.qMax, "largest order of the exhaustive scans")->capture_default_str();
  verifyAll->add_option("--criteria", suite.criteria, "criteria to run, all when absent");
  verifyAll->add_flag("--no-timing", noTiming, "omit elapsed times from the JSON report");
  verifyAll->callback([&] {
    suite.threads = g.threads;
    suite.seed = g.seed;
    suite.allowLong = g.allowLong;
    const tpl::verify::SuiteReport report =
        tpl::verify::run_suite(suite, tpl::verify::Manifest::builtin(), [](const tpl::verify::CriterionReport& c) {
          std::cout << "criterion " << c.id << " " << tpl::verify::to_string(c.status()) << "  " << c.title << '\n';
          for (const auto& k : c.checks)
            if (k.status == tpl::verify::Status::Fail)
              std::cout << "  fail " << k.check << " " << k.key.dump() << " actual=" << k.actual.dump()
                        << (k.note.empty() ? "" : " (" + k.note + ")") << '\n';
        });
    const Json j = tpl::verify::to_json(report, suite, !noTiming);
    if (!g.jsonPath.empty()) write_file(g.jsonPath, j.dump(2) + "\n");
    std::cout << "pass " << report.count(tpl::verify::Status::Pass) << ", fail "
              << report.count(tpl::verify::Status::Fail) << ", informational "
              << report.count(tpl::verify::Status::Informational) << ", skipped "
              << report.count(tpl::verify::Status::Skipped) << '\n';
    exitCode = report.ok() ? 0 : 1;
  });

  // dump-model
  auto* dumpModel = app.add_subcommand("dump-model", "write the canonical residue model");
  int dumpQ = 0;
  std::string dumpOut;
  dumpModel->add_option("--q", dumpQ, "order")->required();
  dumpModel->add_option("--out", dumpOut, "output file, stdout when absent");
  dumpModel->callback([&] {
    const std::string text = tpl::canonical_residue_model(tpl::build_pg2(dumpQ)).dump();
    if (dumpOut.empty()) {
      std::cout << text;
    } else {
      write_file(dumpOut, text);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const tpl::Error& e) {
    std::cerr << "error: " << tpl::to_string(e.code()) << ": " << e.detail() << '\n';
    if (e.code() == tpl::ErrorCode::ScanTooLarge) std::cerr << "rerun with --allow-long to lift the cap by one step\n";
    return 2;
  }
  return exitCode;
}
