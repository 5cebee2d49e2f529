#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace gleason {

using Json = nlohmann::ordered_json;

// One verified claim. lhs/rhs may be +/-infinity; they are serialized as the
// strings "inf"/"-inf" since JSON has no number for them.
struct CheckRecord {
  std::string claim;
  std::string ref;  // stable machine id of the claim, e.g. "measure.additivity"
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  Json to_json() const;
};

Json extended_real_to_json(double v);
double extended_real_from_json(const Json& j);

class Report {
 public:
  explicit Report(std::string command, std::uint64_t seed = 0);

  void add(CheckRecord record);
  void add(const std::vector<CheckRecord>& records);
  void attach(const std::string& key, Json detail);

  bool all_pass() const;
  int fail_count() const;
  const std::vector<CheckRecord>& records() const { return records_; }

  // Envelope with command, seed, timestamp and the check array. Everything
  // except the timestamp is a pure function of the inputs.
  Json to_json() const;
  std::string to_csv() const;

 private:
  std::string command_;
  std::uint64_t seed_;
  std::string timestamp_;
  std::vector<CheckRecord> records_;
  Json details_ = Json::object();
};

// Comparison form used by the determinism check: the report with volatile
// fields (timestamp) removed.
Json strip_volatile(Json report);

}  // namespace gleason
