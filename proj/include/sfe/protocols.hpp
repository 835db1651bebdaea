#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfe/session.hpp"

namespace sfe {

inline constexpr const char* kReportSchema = "sfe-report/1";

struct RunConfig {
  std::string protocol;
  std::map<std::string, std::string> params;
  SessionConfig session;
  bool timing = false;
  // Two-process mode: Bob listens, Alice connects.
  std::optional<std::uint16_t> listen_port;
  std::string connect;
};

struct BoundCheck {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct ProtocolInfo {
  std::string name;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> params;  // name, default
};

const std::vector<ProtocolInfo>& protocol_registry();

// Runs the named protocol and returns its report. Unknown protocols and bad
// parameters raise UsageError.
nlohmann::json run_cli(const RunConfig& cfg);

// Parses "2^-20" or a decimal.
double parse_probability(const std::string& text);

}  // namespace sfe
