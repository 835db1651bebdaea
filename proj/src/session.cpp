#include "sfe/session.hpp"

namespace sfe {

const char* transport_name(Transport t) { return t == Transport::Mem ? "mem" : "tcp"; }

Transport parse_transport(const std::string& name) {
  if (name == "mem") return Transport::Mem;
  if (name == "tcp") return Transport::Tcp;
  throw UsageError("unknown transport '" + name + "'");
}

void SessionEndpoints::abort() {
  if (dealer) dealer->abort();
  if (alice_channel) alice_channel->close();
  if (bob_channel) bob_channel->close();
}

CostMeter SessionEndpoints::merged_meter() {
  alice->sync_channel_stats();
  bob->sync_channel_stats();
  return CostMeter::merge(alice->meter(), bob->meter());
}

std::unique_ptr<OtBackend> make_ot_backend(OtKind kind, OtKind ot12_base, std::shared_ptr<IdealOtDealer> dealer) {
  switch (kind) {
    case OtKind::Ideal:
      if (!dealer) throw UsageError("the ideal OT backend needs both endpoints in one process");
      return make_ideal_ot(std::move(dealer));
    case OtKind::Group: return make_group_ot();
    case OtKind::Ot12:
      if (ot12_base == OtKind::Ot12) throw UsageError("ot12 cannot be its own base backend");
      return make_ot12_reduction(make_ot_backend(ot12_base, OtKind::Ideal, std::move(dealer)));
  }
  throw UsageError("unknown OT backend");
}

SeededRng party_rng(std::uint64_t seed, Role role) {
  return SeededRng::from_u64(seed).derive(role == Role::Alice ? "alice" : "bob");
}

SessionEndpoints open_session(const SessionConfig& cfg) {
  SessionEndpoints ep;
  auto [a, b] = cfg.transport == Transport::Mem ? make_mem_channel_pair() : make_tcp_loopback_pair();
  ep.alice_channel = std::move(a);
  ep.bob_channel = std::move(b);
  ep.dealer = std::make_shared<IdealOtDealer>();
  ep.alice_ot = make_ot_backend(cfg.ot, cfg.ot12_base, ep.dealer);
  ep.bob_ot = make_ot_backend(cfg.ot, cfg.ot12_base, ep.dealer);
  ep.alice = std::make_unique<Party>(Role::Alice, *ep.alice_channel, *ep.alice_ot, party_rng(cfg.seed, Role::Alice),
                                     cfg.security);
  ep.bob = std::make_unique<Party>(Role::Bob, *ep.bob_channel, *ep.bob_ot, party_rng(cfg.seed, Role::Bob),
                                   cfg.security);
  if (cfg.record_views) {
    ep.alice->enable_view_recording();
    ep.bob->enable_view_recording();
  }
  return ep;
}

}  // namespace sfe
