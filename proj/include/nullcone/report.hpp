#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "json.hpp"

namespace nullcone {

using Json = nlohmann::ordered_json;

/// Outcome of one named verification step.
struct CheckReport {
  std::string name;
  bool pass = false;
  /// Polynomial text of a failing generator for membership-based checks.
  std::optional<std::string> witness;
  double elapsed_ms = 0.0;
  /// Check-specific data (counts, statuses, dimensions).
  Json details = Json::object();
};

/// Timing is excluded unless requested so that output stays byte-stable.
Json to_json(const CheckReport& r, bool timing = false);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace nullcone
