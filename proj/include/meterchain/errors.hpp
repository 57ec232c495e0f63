#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace meterchain {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  size_t line;
};

struct RegistrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AggregationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoQuorumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RegistryGapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TariffError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace meterchain
