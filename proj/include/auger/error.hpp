#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace auger {

// All library failures carry a stable machine-readable code alongside the
// human-readable message so the CLI can serialize them.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Adaptive integration gave up; last_good_time is where the solution was
// still valid.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& message, double last_good_time)
      : Error("integration_failure", message), last_good_time_(last_good_time) {}

  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace auger
