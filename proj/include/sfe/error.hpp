#pragma once

#include <stdexcept>
#include <string>

namespace sfe {

// Malformed shares, width/index mismatches, inconsistent schedules.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Channel closed, peer vanished, bad frame on the wire.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A compilation step would exceed the configured memory budget.
class BudgetExceeded : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

// Bad CLI flags, unknown protocol names, malformed input files.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sfe
