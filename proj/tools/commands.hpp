#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "levytype/serialization.hpp"

namespace levytype::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInvalidInput = 2, kPrecondition = 3 };

struct RunConfig {
  std::string command;
  //! command-specific parameters (method / suite included)
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string format = "csv";
  bool plot = false;

  //! the document echoed into the manifest
  Json echo() const;
};

//! Runs one command, writing its files under config.out. Library errors
//! propagate; the caller maps them to exit codes.
int run(const RunConfig& config);

//! JSON error payload for stderr.
std::string error_payload(const std::string& code, const std::string& message);

} // namespace levytype::cli
