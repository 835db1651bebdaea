#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

#include "sfe/channel.hpp"
#include "sfe/cost_meter.hpp"
#include "sfe/crypto.hpp"
#include "sfe/error.hpp"
#include "sfe/ot.hpp"
#include "sfe/party.hpp"

namespace sfe {

enum class Transport { Mem, Tcp };

const char* transport_name(Transport t);
Transport parse_transport(const std::string& name);

struct SessionConfig {
  std::uint64_t seed = 1;
  Transport transport = Transport::Mem;
  OtKind ot = OtKind::Ideal;
  // Base backend underneath the OT_1^2 reduction.
  OtKind ot12_base = OtKind::Ideal;
  SecurityParam security{};
  bool record_views = false;
};

// Both endpoints of one in-process run, wired together.
struct SessionEndpoints {
  std::unique_ptr<Channel> alice_channel;
  std::unique_ptr<Channel> bob_channel;
  std::shared_ptr<IdealOtDealer> dealer;
  std::unique_ptr<OtBackend> alice_ot;
  std::unique_ptr<OtBackend> bob_ot;
  std::unique_ptr<Party> alice;
  std::unique_ptr<Party> bob;

  void abort();
  CostMeter merged_meter();
};

SessionEndpoints open_session(const SessionConfig& cfg);

// Backend for one endpoint. The ideal backend needs the shared dealer and so
// only works when both endpoints live in this process.
std::unique_ptr<OtBackend> make_ot_backend(OtKind kind, OtKind ot12_base, std::shared_ptr<IdealOtDealer> dealer);

// Coin stream of a party for a run seed.
SeededRng party_rng(std::uint64_t seed, Role role);

template <class RA, class RB>
struct SessionResult {
  RA alice;
  RB bob;
  CostMeter meter;
  std::vector<std::uint8_t> alice_view;
  std::vector<std::uint8_t> bob_view;
};

// Runs alice_fn(Party&) and bob_fn(Party&) concurrently over a fresh channel
// pair. If either side throws, the session is torn down and the first error
// is rethrown.
template <class FA, class FB>
auto run_session(const SessionConfig& cfg, FA&& alice_fn, FB&& bob_fn)
    -> SessionResult<std::invoke_result_t<FA, Party&>, std::invoke_result_t<FB, Party&>> {
  using RA = std::invoke_result_t<FA, Party&>;
  using RB = std::invoke_result_t<FB, Party&>;
  auto ep = open_session(cfg);
  std::atomic<int> first_failure{-1};
  std::optional<RA> ra;
  std::optional<RB> rb;
  std::exception_ptr ea, eb;

  std::thread bob_thread([&] {
    try {
      rb.emplace(bob_fn(*ep.bob));
    } catch (...) {
      eb = std::current_exception();
      int expected = -1;
      first_failure.compare_exchange_strong(expected, 1);
      ep.abort();
    }
  });
  try {
    ra.emplace(alice_fn(*ep.alice));
  } catch (...) {
    ea = std::current_exception();
    int expected = -1;
    first_failure.compare_exchange_strong(expected, 0);
    ep.abort();
  }
  bob_thread.join();
  if (ea || eb) std::rethrow_exception(first_failure.load() == 1 ? eb : ea);

  SessionResult<RA, RB> result{std::move(*ra), std::move(*rb), ep.merged_meter(), ep.alice->view(), ep.bob->view()};
  return result;
}

}  // namespace sfe
