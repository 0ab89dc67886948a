#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace frk {

/// One verified inequality or identity. `bound` is the allowed value,
/// `observed` the measured one; `ratio` = observed/bound when the bound is
/// positive. `witness` names an extremal or offending configuration.
struct ReportRecord {
  std::string check;
  std::string scale;   // empty when not scale-indexed
  std::string params;  // deterministic key=value fragments
  double bound = 0;
  double observed = 0;
  std::optional<double> ratio;
  bool pass = true;
  std::string witness;
};

/// Deterministic verification report. Serialization is canonical: identical
/// inputs and seeds produce byte-identical JSON and CSV. Wall-clock timing is
/// kept on the object but never serialized.
class Report {
 public:
  Report(std::string system_label, int rank, std::uint64_t seed);

  void add(ReportRecord rec);
  ReportRecord& ineq(std::string check, std::string scale, std::string params, double bound,
                     double observed, double tolerance, std::string witness = "");

  const std::string& system() const { return system_; }
  int rank() const { return rank_; }
  std::uint64_t seed() const { return seed_; }
  bool passed() const { return passed_; }
  const std::vector<ReportRecord>& records() const { return records_; }
  const ReportRecord* find(const std::string& check, const std::string& params_substr = "") const;

  void merge(const Report& other);

  double elapsed_seconds() const { return elapsed_seconds_; }
  void set_elapsed_seconds(double s) { elapsed_seconds_ = s; }

  nlohmann::ordered_json to_json() const;
  std::string to_json_text() const;
  std::string to_csv(bool with_header = true) const;

  static constexpr int kSchemaVersion = 1;

 private:
  std::string system_;
  int rank_ = 0;
  std::uint64_t seed_ = 0;
  bool passed_ = true;
  std::vector<ReportRecord> records_;
  double elapsed_seconds_ = 0;
};

/// Shortest round-trip decimal form; used everywhere doubles become text so
/// reports serialize identically across runs.
std::string format_double(double v);

std::string csv_escape(const std::string& s);

}  // namespace frk
