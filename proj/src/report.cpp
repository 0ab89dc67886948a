#include "report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace frk {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Report::Report(std::string system_label, int rank, std::uint64_t seed)
    : system_(std::move(system_label)), rank_(rank), seed_(seed) {}

void Report::add(ReportRecord rec) {
  if (!rec.pass) passed_ = false;
  records_.push_back(std::move(rec));
}

ReportRecord& Report::ineq(std::string check, std::string scale, std::string params,
                           double bound, double observed, double tolerance,
                           std::string witness) {
  ReportRecord rec;
  rec.check = std::move(check);
  rec.scale = std::move(scale);
  rec.params = std::move(params);
  rec.bound = bound;
  rec.observed = observed;
  if (bound > 0) rec.ratio = observed / bound;
  rec.pass = observed <= bound * (1.0 + tolerance) + (bound == 0 ? tolerance : 0.0);
  rec.witness = std::move(witness);
  add(std::move(rec));
  return records_.back();
}

const ReportRecord* Report::find(const std::string& check,
                                 const std::string& params_substr) const {
  for (const auto& r : records_) {
    if (r.check != check) continue;
    if (!params_substr.empty() && r.params.find(params_substr) == std::string::npos) continue;
    return &r;
  }
  return nullptr;
}

void Report::merge(const Report& other) {
  for (const auto& r : other.records_) add(r);
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["system"] = system_;
  j["rank"] = rank_;
  j["seed"] = seed_;
  j["passed"] = passed_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records_) {
    nlohmann::ordered_json rec;
    rec["check"] = r.check;
    rec["scale"] = r.scale;
    rec["params"] = r.params;
    rec["bound"] = r.bound;
    rec["observed"] = r.observed;
    if (r.ratio)
      rec["ratio"] = *r.ratio;
    else
      rec["ratio"] = nullptr;
    rec["pass"] = r.pass;
    rec["witness"] = r.witness;
    arr.push_back(std::move(rec));
  }
  j["records"] = std::move(arr);
  return j;
}

std::string Report::to_json_text() const { return to_json().dump(2) + "\n"; }

std::string Report::to_csv(bool with_header) const {
  std::string out;
  if (with_header) out = "system,n,check,scale,params,bound,observed,ratio,pass,witness\n";
  for (const auto& r : records_) {
    out += csv_escape(system_);
    out += ',';
    out += std::to_string(rank_);
    out += ',';
    out += csv_escape(r.check);
    out += ',';
    out += csv_escape(r.scale);
    out += ',';
    out += csv_escape(r.params);
    out += ',';
    out += format_double(r.bound);
    out += ',';
    out += format_double(r.observed);
    out += ',';
    out += r.ratio ? format_double(*r.ratio) : "";
    out += ',';
    out += r.pass ? "true" : "false";
    out += ',';
    out += csv_escape(r.witness);
    out += '\n';
  }
  return out;
}

}  // namespace frk
