#include "sfe/randomized.hpp"

#include <cmath>

#include "sfe/error.hpp"

namespace sfe {

BitString revealed_alice(Party& alice, const RandomizedBp& rbp, const BitString& x, std::uint64_t budget) {
  BitString s = alice.rng().bits(alice.k());
  alice.send_bits(s, FrameType::Seed);
  alice.meter().seed_bits_sent += s.size();
  auto bp = rbp.instantiate(alice.prg(s, rbp.coin_bits));
  return bp_alice(alice, bp, x, budget);
}

BitString revealed_bob(Party& bob, const RandomizedBp& rbp, const BitString& y, std::uint64_t budget) {
  BitString s = bob.recv_bits(FrameType::Seed);
  if (s.size() != bob.k()) throw ProtocolError("seed message has the wrong length");
  auto bp = rbp.instantiate(bob.prg(s, rbp.coin_bits));
  return bp_bob(bob, bp, y, budget);
}

CompiledRun derandomize_revealed(const SessionConfig& cfg, const RandomizedBp& rbp, const BitString& x,
                                 const BitString& y, std::uint64_t budget) {
  auto r = run_session(
      cfg, [&](Party& a) { return revealed_alice(a, rbp, x, budget); },
      [&](Party& b) { return revealed_bob(b, rbp, y, budget); });
  CompiledRun out;
  out.share_a = r.alice;
  out.share_b = r.bob;
  out.value = xor_reconstruct(r.alice, r.bob).to_uint();
  out.meter = std::move(r.meter);
  return out;
}

std::uint64_t run_randomized_plain(const RandomizedBp& rbp, const BitString& x, const BitString& y, SeededRng& coins) {
  return run_plaintext_bp(rbp.instantiate(coins.bits(rbp.coin_bits)), x, y);
}

std::uint64_t SampledProtocol::eval(const BitString& x, const BitString& y, std::size_t i) const {
  return base.eval(x, y, samples.at(i));
}

std::uint64_t SampledProtocol::run(const BitString& x, const BitString& y, SeededRng& rng) const {
  return eval(x, y, rng.uniform_below(samples.size()));
}

SampledProtocol reduce_randomness(const PublicCoinProtocol& base, std::size_t t, SeededRng& rng) {
  if (t == 0) throw ProtocolError("reduce_randomness needs t >= 1");
  SampledProtocol p;
  p.base = base;
  for (std::size_t i = 0; i < t; ++i) p.samples.push_back(rng.bits(base.coin_bits));
  return p;
}

Distribution output_distribution(const PublicCoinProtocol& p, const BitString& x, const BitString& y) {
  if (p.coin_bits > 24) throw ProtocolError("too many coin bits to enumerate");
  Distribution d;
  std::uint64_t total = std::uint64_t{1} << p.coin_bits;
  for (std::uint64_t r = 0; r < total; ++r) d[p.eval(x, y, BitString::from_uint(r, p.coin_bits))] += 1.0 / total;
  return d;
}

Distribution output_distribution(const SampledProtocol& p, const BitString& x, const BitString& y) {
  Distribution d;
  for (std::size_t i = 0; i < p.samples.size(); ++i) d[p.eval(x, y, i)] += 1.0 / p.samples.size();
  return d;
}

double statistical_distance(const Distribution& a, const Distribution& b) {
  double sum = 0;
  for (const auto& [z, pa] : a) {
    auto it = b.find(z);
    sum += std::abs(pa - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [z, pb] : b)
    if (!a.count(z)) sum += pb;
  return sum / 2;
}

double max_statistical_distance(const PublicCoinProtocol& base, const SampledProtocol& sampled, std::size_t n) {
  double worst = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
      auto bx = BitString::from_uint(x, n), by = BitString::from_uint(y, n);
      worst = std::max(worst, statistical_distance(output_distribution(base, bx, by), output_distribution(sampled, bx, by)));
    }
  return worst;
}

PublicCoinProtocol inner_product_equality(std::size_t n) {
  PublicCoinProtocol p;
  p.coin_bits = n;
  p.eval = [](const BitString& x, const BitString& y, const BitString& r) -> std::uint64_t {
    bool parity = false;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r.get(i) && x.get(i) != y.get(i)) parity = !parity;
    return parity ? 0 : 1;
  };
  return p;
}

}  // namespace sfe
