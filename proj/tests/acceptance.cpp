// One line per acceptance criterion. Each criterion passes when the suite reports it passed,
// every target check ran and matched the value written here, and it met its time budget.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "verify/report.hpp"

namespace {

using tpl::verify::CheckReport;
using tpl::verify::CriterionReport;
using tpl::verify::Json;
using tpl::verify::Status;
using tpl::verify::SuiteReport;

struct Target {
  std::string check;
  Json key;
  Json value;
  long long minSamples = 0;
};

struct Criterion {
  int id;
  double budgetSeconds;
  std::vector<Target> targets;
};

long long witness_total(long long q) { return (q * q + q + 1) * (q + 1) * q * (q - 1) * q * q * (q - 2); }

long long identity_bound(long long q) {
  const long long v = q * q + q + 1;
  return v * (v - 1) * q * q * (q - 1) * (q - 1) * (q - 2) * (q - 2) * (q - 2) * (q - 2);
}

std::vector<Criterion> criteria() {
  std::vector<Criterion> out;
  const Json none = Json::object();
  auto q = [](int n) { return Json{{"q", n}}; };

  out.push_back({1, 15, {{"patterns.raw03", none, 4992},
                         {"patterns.orbits", none, 13},
                         {"patterns.diamond_orbits", none, 12},
                         {"patterns.raw_split", none, Json{{"diamond", 4896}, {"nonDiamond", 96}}},
                         {"patterns.exceptional_canonical", none, true}}});

  out.push_back({2, 60, {{"census.total", q(3), 511225},
                         {"census.type03", q(3), 80964},
                         {"census.degenerate03", q(3), 50544},
                         {"census.swap_pair03", q(3), 0}}});

  out.push_back({3, 60, {{"census.type02", q(2), 777},
                         {"census.cycles02", q(2), Json{{"4", 336}, {"6", 420}, {"8", 21}}},
                         {"census.span02", q(2), Json{{"span", 15}, {"ambient", 15}}},
                         {"census.type02", q(3), 63414},
                         {"census.cycles02", q(3), Json{{"4", 37908}, {"6", 24804}, {"8", 702}}},
                         {"census.span02", q(3), Json{{"span", 92}, {"ambient", 92}}}}});

  Criterion graph{4, 10, {}};
  for (int n : {2, 3, 4, 5, 7, 8, 9}) {
    graph.targets.push_back({"graph.diameter", q(n), 3});
    graph.targets.push_back({"graph.connected", q(n), true});
  }
  out.push_back(graph);

  Criterion witness{5, 30, {}};
  for (int n : {3, 4, 5}) {
    witness.targets.push_back({"witness.ordered", q(n), witness_total(n)});
    witness.targets.push_back({"witness.per_triple", q(n), true});
    witness.targets.push_back({"witness.bijection", q(n), true});
  }
  out.push_back(witness);

  Criterion derangement{6, 5, {}};
  for (int k = 2; k <= 6; ++k)
    derangement.targets.push_back({"derangement.sign_sum", Json{{"k", k}}, (k - 1) * (k % 2 == 0 ? -1 : 1)});
  for (int f : {2, 3, 4, 5, 7, 8, 9}) derangement.targets.push_back({"theta4.rank1", Json{{"field", f}}, 0, 100});
  out.push_back(derangement);

  Criterion canonical{7, 300, {}};
  for (int n : {3, 4, 5}) {
    canonical.targets.push_back({"canonical.rank", q(n), 3});
    canonical.targets.push_back({"canonical.zero_pattern", q(n), true});
    canonical.targets.push_back({"canonical.witness_relation", q(n), 0});
    canonical.targets.push_back({"canonical.rho_sigma", q(n), 0});
    if (n % 2 == 1) canonical.targets.push_back({"canonical.rho_not_one", q(n), 0});
    canonical.targets.push_back({"identity.formula", q(n), identity_bound(n)});
    canonical.targets.push_back({"identity.lower_bound", q(n), true});
    canonical.targets.push_back({"identity.theta_vanishes", q(n), true});
    if (n % 3 != 0) canonical.targets.push_back({"identity.defect_witness", q(n), true});
    canonical.targets.push_back({"degenerate.family", q(n), 0});
  }
  out.push_back(canonical);

  Criterion jets{8, 60, {}};
  for (int p : {2, 3, 5, 7}) {
    jets.targets.push_back({"jet.identity_blocks", Json{{"field", p}}, 0, 1000});
    jets.targets.push_back({"jet.initial_form", Json{{"field", p}}, 0, 1000});
    jets.targets.push_back({"jet.tie_depth", Json{{"field", p}}, 0, 1000});
  }
  out.push_back(jets);

  Criterion holonomy{9, 60, {{"holonomy.round_trip", q(3), 0, 100},
                             {"holonomy.perturbation", q(3), 0, 100},
                             {"holonomy.signed_jets", q(3), 0, 100},
                             {"holonomy.char2", q(2), 0, 1},
                             {"holonomy.char2", q(3), 0, 1}}};
  for (int f : {3, 4, 5, 7, 9}) holonomy.targets.push_back({"overlap.elimination", Json{{"field", f}}, 0, 1000});
  out.push_back(holonomy);

  Criterion bridge{10, 120, {{"atlas.three_chart", q(7), 0, 100}, {"atlas.three_chart", q(8), 0, 100}}};
  bridge.targets.push_back({"atlas.bridge", q(3), 0, witness_total(3)});
  for (int n : {4, 5, 7, 8, 9}) bridge.targets.push_back({"atlas.bridge", q(n), 0, 100});
  out.push_back(bridge);

  Criterion rank{11, 60, {{"turan.random", Json{{"n", 12}}, 0, 100}, {"turan.exhaustive", none, 0, 8}}};
  for (int n : {2, 3, 4, 5, 7}) rank.targets.push_back({"rank.monomial_block", q(n), 0, 1});
  for (int r : {1, 2, 3}) rank.targets.push_back({"rank.tangent", Json{{"r", r}}, 0, 100});
  out.push_back(rank);

  out.push_back({12, 300, {{"multiplicity.bound", q(3), 16LL * 576 * 256},
                           {"multiplicity.bound_check", q(3), true},
                           {"defect.lower_bound", q(4), true},
                           {"defect.per_block", q(4), true},
                           {"defect.lower_bound", q(5), true},
                           {"defect.per_block", q(5), true}}});
  return out;
}

/// Empty when the target is met, otherwise the reason.
std::string judge(const SuiteReport& report, const Target& t) {
  const CheckReport* c = report.find(t.check, t.key);
  if (!c) return t.check + " " + t.key.dump() + " missing";
  if (c->status != Status::Pass) return t.check + " " + t.key.dump() + " " + std::string(to_string(c->status));
  if (c->actual != t.value) return t.check + " " + t.key.dump() + " actual " + c->actual.dump();
  if (t.minSamples > 0 && c->params.value("samples", 0LL) < t.minSamples)
    return t.check + " " + t.key.dump() + " drew " + c->params.value("samples", Json(0)).dump() + " samples";
  return {};
}

}  // namespace

int main() {
  tpl::verify::SuiteOptions options;
  options.qMax = 5;
  if (const char* env = std::getenv("TPL_THREADS")) options.threads = std::max(1, std::atoi(env));

  const SuiteReport report = tpl::verify::run_suite(options);
  int failed = 0;
  for (const Criterion& criterion : criteria()) {
    const CriterionReport* suite = nullptr;
    for (const CriterionReport& c : report.criteria)
      if (c.id == criterion.id) suite = &c;
    std::string reason;
    if (!suite) {
      reason = "not run";
    } else if (suite->status() != Status::Pass) {
      reason = "suite status " + std::string(to_string(suite->status()));
    }
    for (const Target& t : criterion.targets) {
      if (!reason.empty()) break;
      reason = judge(report, t);
    }
    const double seconds = suite ? suite->elapsedMs / 1000.0 : 0.0;
    if (reason.empty() && seconds > criterion.budgetSeconds) reason = "over time budget";
    const bool ok = reason.empty();
    failed += ok ? 0 : 1;
    std::printf("criterion %2d %s  %-32s %8.2fs  (%zu targets)%s%s\n", criterion.id, ok ? "PASS" : "FAIL",
                suite ? suite->title.c_str() : "?", seconds, criterion.targets.size(), ok ? "" : "  ",
                reason.c_str());
  }
  std::printf("%d of 12 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
