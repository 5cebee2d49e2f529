#include "gleason/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace gleason {

Json extended_real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  return Json(v);
}

double extended_real_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("extended real: unknown string value '" + s + "'");
  }
  return j.get<double>();
}

Json CheckRecord::to_json() const {
  Json j = Json::object();
  j["claim"] = claim;
  j["ref"] = ref;
  j["lhs"] = extended_real_to_json(lhs);
  j["rhs"] = extended_real_to_json(rhs);
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

Report::Report(std::string command, std::uint64_t seed)
    : command_(std::move(command)), seed_(seed) {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
  timestamp_ = std::to_string(secs.count());
}

void Report::add(CheckRecord record) { records_.push_back(std::move(record)); }

void Report::add(const std::vector<CheckRecord>& records) {
  for (const auto& r : records) records_.push_back(r);
}

void Report::attach(const std::string& key, Json detail) { details_[key] = std::move(detail); }

bool Report::all_pass() const { return fail_count() == 0; }

int Report::fail_count() const {
  int n = 0;
  for (const auto& r : records_)
    if (!r.pass) ++n;
  return n;
}

Json Report::to_json() const {
  Json j = Json::object();
  j["command"] = command_;
  j["seed"] = seed_;
  j["timestamp"] = timestamp_;
  Json checks = Json::array();
  for (const auto& r : records_) checks.push_back(r.to_json());
  j["checks"] = std::move(checks);
  if (!details_.empty()) j["details"] = details_;
  j["failed"] = fail_count();
  return j;
}

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "claim,ref,lhs,rhs,tolerance,pass\n";
  for (const auto& r : records_) {
    out << '"' << r.claim << "\"," << r.ref << ',' << extended_real_to_json(r.lhs).dump() << ','
        << extended_real_to_json(r.rhs).dump() << ',' << r.tolerance << ','
        << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

Json strip_volatile(Json report) {
  report.erase("timestamp");
  return report;
}

}  // namespace gleason
