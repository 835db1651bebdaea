#include "sfe/ot.hpp"

#include <sodium.h>

#include <algorithm>

#include "sfe/error.hpp"

namespace sfe {

const char* ot_kind_name(OtKind kind) {
  switch (kind) {
    case OtKind::Ideal: return "ideal";
    case OtKind::Group: return "group";
    case OtKind::Ot12: return "ot12";
  }
  return "?";
}

OtKind parse_ot_kind(const std::string& name) {
  if (name == "ideal") return OtKind::Ideal;
  if (name == "group") return OtKind::Group;
  if (name == "ot12") return OtKind::Ot12;
  throw UsageError("unknown OT backend '" + name + "'");
}

OtRequest OtRequest::send(std::vector<BitString> values) {
  OtRequest r;
  r.sender = true;
  r.width = values.size();
  r.element_len = values.empty() ? 0 : values.front().size();
  r.values = std::move(values);
  return r;
}

OtRequest OtRequest::choose(std::size_t width, std::size_t element_len, std::uint64_t j) {
  OtRequest r;
  r.width = width;
  r.element_len = element_len;
  r.choice = j;
  return r;
}

void OtRequest::validate() const {
  if (width == 0) throw ProtocolError("OT width must be at least 1");
  if (sender) {
    if (values.size() != width) throw ProtocolError("OT sender value count differs from width");
    for (const auto& v : values)
      if (v.size() != element_len) throw ProtocolError("OT sender values have unequal lengths");
  } else if (choice >= width) {
    throw ProtocolError("OT choice " + std::to_string(choice) + " out of range for width " + std::to_string(width));
  }
}

std::size_t default_element_len(std::size_t width, std::size_t k) { return std::max(k, ceil_log2(width)); }

void IdealOtDealer::deposit(std::uint64_t seq, std::vector<BitString> values) {
  std::lock_guard lk(mu_);
  if (aborted_) throw TransportError("OT dealer aborted");
  slots_[seq] = std::move(values);
  cv_.notify_all();
}

BitString IdealOtDealer::take(std::uint64_t seq, std::size_t width, std::size_t element_len, std::uint64_t j) {
  std::unique_lock lk(mu_);
  cv_.wait(lk, [&] { return aborted_ || slots_.count(seq) > 0; });
  if (aborted_) throw TransportError("OT dealer aborted");
  auto values = std::move(slots_[seq]);
  slots_.erase(seq);
  lk.unlock();
  if (values.size() != width || (!values.empty() && values.front().size() != element_len))
    throw ProtocolError("OT width/element length mismatch between sender and chooser");
  return values[j];
}

void IdealOtDealer::abort() {
  std::lock_guard lk(mu_);
  aborted_ = true;
  cv_.notify_all();
}

namespace {

class IdealOt final : public OtBackend {
 public:
  explicit IdealOt(std::shared_ptr<IdealOtDealer> dealer) : dealer_(std::move(dealer)) {}
  OtKind kind() const override { return OtKind::Ideal; }

  std::vector<BitString> run(Party& self, std::span<const OtRequest> batch) override {
    std::vector<BitString> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto& r = batch[i];
      auto seq = self.next_ot_sequence();
      if (r.sender) {
        self.meter().record_base_ot(r.width);
        dealer_->deposit(seq, r.values);
      } else {
        out[i] = dealer_->take(seq, r.width, r.element_len, r.choice);
      }
    }
    return out;
  }

 private:
  std::shared_ptr<IdealOtDealer> dealer_;
};

using Point = std::array<std::uint8_t, crypto_core_ristretto255_BYTES>;
using Scalar = std::array<std::uint8_t, crypto_core_ristretto255_SCALARBYTES>;

Scalar random_scalar(SeededRng& rng) {
  std::array<std::uint8_t, crypto_core_ristretto255_NONREDUCEDSCALARBYTES> wide{};
  Scalar s{};
  do {
    rng.fill(wide);
    crypto_core_ristretto255_scalar_reduce(s.data(), wide.data());
  } while (sodium_is_zero(s.data(), s.size()));
  return s;
}

Scalar small_scalar(std::uint64_t v) {
  Scalar s{};
  for (int i = 0; i < 8; ++i) s[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v >> (8 * i));
  return s;
}

Point mul(const Scalar& s, const Point& p) {
  Point q{};
  if (crypto_scalarmult_ristretto255(q.data(), s.data(), p.data()) != 0)
    throw ProtocolError("group OT: degenerate point");
  return q;
}

Point mul_base(const Scalar& s) {
  Point q{};
  if (crypto_scalarmult_ristretto255_base(q.data(), s.data()) != 0) throw ProtocolError("group OT: zero scalar");
  return q;
}

Point read_point(std::span<const std::uint8_t> bytes) {
  Point p{};
  std::copy(bytes.begin(), bytes.end(), p.begin());
  if (!crypto_core_ristretto255_is_valid_point(p.data())) throw ProtocolError("group OT: invalid point");
  return p;
}

BitString pad_for(const Point& p, std::uint64_t seq, std::uint64_t i, std::size_t len) {
  std::array<std::uint8_t, 32> digest{};
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, digest.size());
  crypto_generichash_update(&st, p.data(), p.size());
  auto idx = small_scalar(i);
  crypto_generichash_update(&st, idx.data(), 8);
  crypto_generichash_final(&st, digest.data(), digest.size());
  return prf_eval(BitString::from_bytes(digest, 256), BitString::from_uint(seq, 64), len);
}

std::vector<std::uint8_t> concat_points(const std::vector<Point>& pts) {
  std::vector<std::uint8_t> out;
  for (const auto& p : pts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<Point> split_points(const std::vector<std::uint8_t>& bytes, std::size_t count) {
  if (bytes.size() != count * crypto_core_ristretto255_BYTES) throw ProtocolError("group OT: bad point frame size");
  std::vector<Point> pts;
  std::span<const std::uint8_t> all(bytes);
  for (std::size_t i = 0; i < count; ++i)
    pts.push_back(read_point(all.subspan(i * crypto_core_ristretto255_BYTES, crypto_core_ristretto255_BYTES)));
  return pts;
}

// Sender: A = aG. Chooser: B = bG + jA. Sender pads x_i with H(aB - i·aA),
// chooser recomputes H(bA) for its slot.
class GroupOt final : public OtBackend {
 public:
  OtKind kind() const override { return OtKind::Group; }

  std::vector<BitString> run(Party& self, std::span<const OtRequest> batch) override {
    ensure_crypto_init();
    std::vector<std::size_t> sends, chooses;
    std::vector<std::uint64_t> seqs;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      (batch[i].sender ? sends : chooses).push_back(i);
      seqs.push_back(self.next_ot_sequence());
    }
    std::vector<Scalar> a(batch.size()), b(batch.size());
    std::vector<Point> big_a(batch.size());

    if (!sends.empty()) {
      std::vector<Point> msg;
      for (auto i : sends) {
        a[i] = random_scalar(self.rng());
        big_a[i] = mul_base(a[i]);
        msg.push_back(big_a[i]);
        self.meter().record_base_ot(batch[i].width);
      }
      self.send(FrameType::OtMsg, concat_points(msg));
    }

    if (!chooses.empty()) {
      auto peer_a = split_points(self.recv(FrameType::OtMsg), chooses.size());
      std::vector<Point> msg;
      for (std::size_t n = 0; n < chooses.size(); ++n) {
        auto i = chooses[n];
        big_a[i] = peer_a[n];
        b[i] = random_scalar(self.rng());
        Point big_b = mul_base(b[i]);
        if (batch[i].choice != 0) {
          Point ja = mul(small_scalar(batch[i].choice), big_a[i]);
          crypto_core_ristretto255_add(big_b.data(), big_b.data(), ja.data());
        }
        msg.push_back(big_b);
      }
      self.send(FrameType::OtMsg, concat_points(msg));
    }

    if (!sends.empty()) {
      auto peer_b = split_points(self.recv(FrameType::OtMsg), sends.size());
      BitString cipher;
      for (std::size_t n = 0; n < sends.size(); ++n) {
        auto i = sends[n];
        const auto& r = batch[i];
        Point ab = mul(a[i], peer_b[n]);
        Point aa = mul(a[i], big_a[i]);
        for (std::uint64_t v = 0; v < r.width; ++v) {
          Point key = ab;
          if (v != 0) {
            Point vaa = mul(small_scalar(v), aa);
            crypto_core_ristretto255_sub(key.data(), ab.data(), vaa.data());
          }
          cipher.append(r.values[v] ^ pad_for(key, seqs[i], v, r.element_len));
        }
      }
      self.send_bits(cipher, FrameType::OtMsg);
    }

    std::vector<BitString> out(batch.size());
    if (!chooses.empty()) {
      BitString cipher = self.recv_bits(FrameType::OtMsg);
      std::size_t expected = 0;
      for (auto i : chooses) expected += batch[i].width * batch[i].element_len;
      if (cipher.size() != expected) throw ProtocolError("group OT: ciphertext length mismatch");
      std::size_t pos = 0;
      for (auto i : chooses) {
        const auto& r = batch[i];
        Point key = mul(b[i], big_a[i]);
        out[i] = cipher.slice(pos + r.choice * r.element_len, r.element_len) ^
                 pad_for(key, seqs[i], r.choice, r.element_len);
        pos += r.width * r.element_len;
      }
    }
    return out;
  }
};

BitString reduction_prf_input(std::size_t t, std::uint64_t i) {
  return BitString::from_uint(t, 16).concat(BitString::from_uint(i, 48));
}

bool index_bit(std::uint64_t i, std::size_t t, std::size_t levels) { return (i >> (levels - 1 - t)) & 1U; }

class Ot12Reduction final : public OtBackend {
 public:
  explicit Ot12Reduction(std::unique_ptr<OtBackend> base) : base_(std::move(base)) {}
  OtKind kind() const override { return OtKind::Ot12; }

  std::vector<BitString> run(Party& self, std::span<const OtRequest> batch) override {
    std::size_t klen = std::max<std::size_t>(self.k(), 1);
    std::vector<OtRequest> base_batch;
    std::vector<std::size_t> base_start(batch.size());
    BitString tables;

    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto& r = batch[i];
      std::size_t levels = ceil_log2(r.width);
      base_start[i] = base_batch.size();
      if (r.sender) {
        std::vector<std::array<BitString, 2>> pairs(levels);
        for (auto& p : pairs) {
          p[0] = self.rng().bits(klen);
          p[1] = self.rng().bits(klen);
          base_batch.push_back(OtRequest::send({p[0], p[1]}));
        }
        std::vector<BitString> padded = r.values;
        padded.resize(std::size_t{1} << levels, BitString(r.element_len));
        self.meter().prf_evals += padded.size() * levels;
        for (const auto& e : ot12_encrypt_table(padded, pairs)) tables.append(e);
      } else {
        for (std::size_t t = 0; t < levels; ++t)
          base_batch.push_back(OtRequest::choose(2, klen, index_bit(r.choice, t, levels)));
      }
    }

    bool any_send = std::any_of(batch.begin(), batch.end(), [](const auto& r) { return r.sender; });
    bool any_choose = std::any_of(batch.begin(), batch.end(), [](const auto& r) { return !r.sender; });

    auto keys = base_.get()->run(self, base_batch);
    if (any_send) self.send_bits(tables, FrameType::OtMsg);

    std::vector<BitString> out(batch.size());
    if (any_choose) {
      BitString peer_tables = self.recv_bits(FrameType::OtMsg);
      std::size_t pos = 0;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto& r = batch[i];
        if (r.sender) continue;
        std::size_t levels = ceil_log2(r.width);
        std::size_t entry = r.element_len + kOt12TagBits;
        std::size_t padded = std::size_t{1} << levels;
        if (pos + padded * entry > peer_tables.size()) throw ProtocolError("ot12: table frame too short");
        std::vector<BitString> held(keys.begin() + static_cast<std::ptrdiff_t>(base_start[i]),
                                    keys.begin() + static_cast<std::ptrdiff_t>(base_start[i] + levels));
        self.meter().prf_evals += levels;
        auto value = ot12_decrypt_slot(peer_tables.slice(pos + r.choice * entry, entry), r.choice, held, r.element_len);
        if (!value) throw ProtocolError("ot12: integrity tag mismatch");
        out[i] = std::move(*value);
        pos += padded * entry;
      }
      if (pos != peer_tables.size()) throw ProtocolError("ot12: table frame length mismatch");
    }
    return out;
  }

 private:
  std::unique_ptr<OtBackend> base_;
};

}  // namespace

std::vector<BitString> ot12_encrypt_table(std::span<const BitString> values,
                                          std::span<const std::array<BitString, 2>> key_pairs) {
  std::size_t levels = key_pairs.size();
  if (values.size() != (std::size_t{1} << levels)) throw ProtocolError("ot12: width must be 2^levels");
  std::vector<BitString> out;
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    std::size_t len = values[i].size() + kOt12TagBits;
    BitString e = values[i].concat(BitString(kOt12TagBits));
    for (std::size_t t = 0; t < levels; ++t)
      e ^= prf_eval(key_pairs[t][index_bit(i, t, levels) ? 1 : 0], reduction_prf_input(t, i), len);
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<BitString> ot12_decrypt_slot(const BitString& cipher, std::uint64_t slot,
                                           std::span<const BitString> keys, std::size_t element_len) {
  if (cipher.size() != element_len + kOt12TagBits) return std::nullopt;
  BitString e = cipher;
  for (std::size_t t = 0; t < keys.size(); ++t) e ^= prf_eval(keys[t], reduction_prf_input(t, slot), e.size());
  if (!e.slice(element_len, kOt12TagBits).is_zero()) return std::nullopt;
  return e.slice(0, element_len);
}

std::unique_ptr<OtBackend> make_ideal_ot(std::shared_ptr<IdealOtDealer> dealer) {
  return std::make_unique<IdealOt>(std::move(dealer));
}

std::unique_ptr<OtBackend> make_group_ot() { return std::make_unique<GroupOt>(); }

std::unique_ptr<OtBackend> make_ot12_reduction(std::unique_ptr<OtBackend> base) {
  return std::make_unique<Ot12Reduction>(std::move(base));
}

void ot_send(Party& self, std::vector<BitString> values) {
  std::vector<OtRequest> batch{OtRequest::send(std::move(values))};
  self.ot(batch);
}

BitString ot_choose(Party& self, std::size_t width, std::size_t element_len, std::uint64_t j) {
  std::vector<OtRequest> batch{OtRequest::choose(width, element_len, j)};
  return std::move(self.ot(batch).front());
}

}  // namespace sfe
