#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tpl::verify {

using Json = nlohmann::json;

enum class Status { Pass, Fail, Informational, Skipped };
std::string_view to_string(Status status) noexcept;

/// Expected value of one check with its provenance word and a citation.
struct Expectation {
  std::string check;
  Json key;
  Json value;
  std::string provenance;
  std::string citation;
  Json inputs;  ///< fixed data the check consumes, null when absent
};

/// Versioned table of expected values, looked up by check name and key parameters.
class Manifest {
 public:
  explicit Manifest(const Json& document);
  /// The table compiled into the binary.
  static const Manifest& builtin();

  int version() const noexcept { return version_; }
  const Expectation* find(std::string_view check, const Json& key) const;
  const std::vector<Expectation>& entries() const noexcept { return entries_; }

 private:
  int version_ = 0;
  std::vector<Expectation> entries_;
};

struct CheckReport {
  std::string check;
  Json key;     ///< parameters identifying the manifest entry
  Json params;  ///< further inputs such as sample counts
  std::optional<Expectation> expected;
  Json actual;
  Status status = Status::Skipped;
  std::string note;
  double elapsedMs = 0;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<CheckReport> checks;
  double elapsedMs = 0;

  /// Fail on any failed check, pass when at least one check passed, skipped otherwise.
  Status status() const;
};

struct SuiteReport {
  int manifestVersion = 0;
  std::vector<CriterionReport> criteria;

  long long count(Status status) const;
  bool ok() const { return count(Status::Fail) == 0; }
  const CheckReport* find(std::string_view check, const Json& key) const;
};

struct SuiteOptions {
  /// Largest plane order for the exhaustive scans; sampled suites use their own fixed orders.
  int qMax = 4;
  int threads = 1;
  std::uint64_t seed = 20240611;
  bool allowLong = false;
  /// Criteria to run; empty runs all twelve.
  std::set<int> criteria;
};

using Progress = std::function<void(const CriterionReport&)>;

SuiteReport run_suite(const SuiteOptions& options, const Manifest& manifest = Manifest::builtin(),
                      const Progress& progress = {});

Json to_json(const CheckReport& check, bool timing);
Json to_json(const SuiteReport& report, const SuiteOptions& options, bool timing);

}  // namespace tpl::verify
