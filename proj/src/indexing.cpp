#include "sfe/indexing.hpp"

#include "sfe/error.hpp"

namespace sfe {

ShareDomain ShareDomain::xor_bits(std::size_t bits) { return ShareDomain{bits, 0}; }

ShareDomain ShareDomain::index(std::uint64_t width) {
  if (width == 0) throw ProtocolError("list width must be at least 1");
  if (is_power_of_two(width)) return xor_bits(ceil_log2(width));
  return ShareDomain{ceil_log2(width), width};
}

BitString ShareDomain::add(const BitString& a, const BitString& b) const {
  if (a.size() != bits || b.size() != bits) throw ProtocolError("share length does not match its domain");
  if (is_xor()) return a ^ b;
  return encode((a.to_uint() % modulus + b.to_uint() % modulus) % modulus);
}

BitString ShareDomain::sub(const BitString& a, const BitString& b) const {
  if (a.size() != bits || b.size() != bits) throw ProtocolError("share length does not match its domain");
  if (is_xor()) return a ^ b;
  return encode((a.to_uint() % modulus + modulus - b.to_uint() % modulus) % modulus);
}

BitString ShareDomain::random(SeededRng& rng) const {
  if (is_xor()) return rng.bits(bits);
  return encode(rng.uniform_below(modulus));
}

IndexedList IndexedList::from_uints(const std::vector<std::uint64_t>& values, std::size_t element_len) {
  IndexedList l;
  l.element_len = element_len;
  for (auto v : values) {
    if (element_len < 64 && v >> element_len) throw ProtocolError("list entry does not fit its element length");
    l.entries.push_back(BitString::from_uint(v, element_len));
  }
  return l;
}

std::vector<std::uint64_t> IndexedList::to_uints() const {
  std::vector<std::uint64_t> out;
  for (const auto& e : entries) out.push_back(e.to_uint());
  return out;
}

void IndexedList::validate() const {
  if (entries.empty()) throw ProtocolError("list width must be at least 1");
  for (const auto& e : entries)
    if (e.size() != element_len) throw ProtocolError("list entries have unequal lengths");
}

IndexSendPlan prepare_index_send(SeededRng& rng, const BitString& sender_share, const IndexedList& list,
                                 const ShareDomain& in, const ShareDomain& out, bool zero_mask) {
  list.validate();
  std::uint64_t w = list.width();
  auto expect = ShareDomain::index(w);
  if (expect.bits != in.bits || expect.modulus != in.modulus) throw ProtocolError("index domain does not match list width");
  if (list.element_len != out.bits) throw ProtocolError("list element length does not match output domain");
  IndexSendPlan plan;
  plan.out_share = zero_mask ? out.zero() : out.random(rng);
  std::vector<BitString> table(w);
  for (std::uint64_t i = 0; i < w; ++i) {
    auto pos = in.sub(in.encode(i), sender_share).to_uint();
    table[pos] = out.sub(list.entries[i], plan.out_share);
  }
  plan.request = OtRequest::send(std::move(table));
  return plan;
}

BitString index_choose(Party& self, const BitString& chooser_share, std::size_t width, const ShareDomain& out) {
  return ot_choose(self, width, out.bits, chooser_share.to_uint());
}

BitString index_send(Party& self, const BitString& sender_share, const IndexedList& list, const ShareDomain& in,
                     const ShareDomain& out, bool zero_mask) {
  auto plan = prepare_index_send(self.rng(), sender_share, list, in, out, zero_mask);
  std::vector<OtRequest> batch{std::move(plan.request)};
  self.ot(batch);
  return plan.out_share;
}

namespace {

void require_pow2(std::size_t width) {
  if (!is_power_of_two(width)) throw ProtocolError("Ind width " + std::to_string(width) + " is not a power of two");
}

}  // namespace

BitString ind_ab_alice(Party& alice, const BitString& masked_index, std::size_t width, std::size_t element_len) {
  require_pow2(width);
  if (masked_index.size() != ceil_log2(width)) throw ProtocolError("masked index length must be log2(w)");
  return index_choose(alice, masked_index, width, ShareDomain::xor_bits(element_len));
}

BitString ind_ab_bob(Party& bob, const BitString& pi, const IndexedList& y) {
  require_pow2(y.width());
  return index_send(bob, pi, y, ShareDomain::index(y.width()), ShareDomain::xor_bits(y.element_len));
}

BitString ind_ba_alice(Party& alice, const BitString& pi, const IndexedList& x) {
  require_pow2(x.width());
  return index_send(alice, pi, x, ShareDomain::index(x.width()), ShareDomain::xor_bits(x.element_len));
}

BitString ind_ba_bob(Party& bob, const BitString& masked_index, std::size_t width, std::size_t element_len) {
  require_pow2(width);
  if (masked_index.size() != ceil_log2(width)) throw ProtocolError("masked index length must be log2(w)");
  return index_choose(bob, masked_index, width, ShareDomain::xor_bits(element_len));
}

ShareDomain GIndShape::in_domain(std::size_t level) const { return ShareDomain::index(widths.at(level - 1)); }

ShareDomain GIndShape::out_domain(std::size_t level) const {
  if (level == widths.size()) return ShareDomain::xor_bits(leaf_bits);
  return ShareDomain::index(widths.at(level));
}

void GIndShape::validate() const {
  if (widths.empty() || widths.size() % 2 != 0) throw ProtocolError("GInd needs an even, non-zero number of levels");
  for (auto w : widths)
    if (w == 0) throw ProtocolError("GInd level width must be at least 1");
}

namespace {

void validate_lists(const GIndShape& shape, Role role, const std::vector<IndexedList>& lists) {
  shape.validate();
  std::size_t first = role == Role::Bob ? 1 : 2;
  if (lists.size() != shape.levels() / 2) throw ProtocolError("wrong number of GInd lists for this party");
  for (std::size_t i = 0; i < lists.size(); ++i) {
    std::size_t level = first + 2 * i;
    const auto& l = lists[i];
    l.validate();
    if (l.width() != shape.widths[level - 1])
      throw ProtocolError("GInd list at level " + std::to_string(level) + " has width " + std::to_string(l.width()) +
                          ", expected " + std::to_string(shape.widths[level - 1]));
    if (l.element_len != shape.out_domain(level).bits)
      throw ProtocolError("GInd list at level " + std::to_string(level) + " has the wrong element length");
    if (level < shape.levels())
      for (const auto& e : l.entries)
        if (e.to_uint() >= shape.widths[level])
          throw ProtocolError("GInd entry at level " + std::to_string(level) + " is not an index into the next level");
  }
}

BitString gind_run(Party& self, const GIndShape& shape, const BitString& share0, const std::vector<IndexedList>& lists,
                   const GIndOptions& opts) {
  validate_lists(shape, self.role(), lists);
  if (share0.size() != shape.in_domain(1).bits) throw ProtocolError("initial GInd share has the wrong length");
  BitString share = share0;
  std::size_t own = 0;
  for (std::size_t level = 1; level <= shape.levels(); ++level) {
    Role owner = level % 2 == 1 ? Role::Bob : Role::Alice;
    auto in = shape.in_domain(level);
    auto out = shape.out_domain(level);
    if (self.role() == owner) {
      share = index_send(self, share, lists[own++], in, out, opts.leak_indices);
    } else {
      share = index_choose(self, share, shape.widths[level - 1], out);
    }
  }
  return share;
}

}  // namespace

BitString gind_alice(Party& alice, const GIndShape& shape, const BitString& share0,
                     const std::vector<IndexedList>& lists, const GIndOptions& opts) {
  return gind_run(alice, shape, share0, lists, opts);
}

BitString gind_bob(Party& bob, const GIndShape& shape, const BitString& share0, const std::vector<IndexedList>& lists,
                   const GIndOptions& opts) {
  return gind_run(bob, shape, share0, lists, opts);
}

BitString gind_alice_public(Party& alice, const GIndShape& shape, std::uint64_t j0,
                            const std::vector<IndexedList>& lists) {
  shape.validate();
  if (j0 >= shape.widths.front()) throw ProtocolError("initial index out of range");
  return gind_run(alice, shape, shape.in_domain(1).encode(j0), lists, {});
}

BitString gind_bob_public(Party& bob, const GIndShape& shape, const std::vector<IndexedList>& lists) {
  shape.validate();
  return gind_run(bob, shape, shape.in_domain(1).zero(), lists, {});
}

BitString ind_two_level_alice(Party& alice, const TwoLevelShape& shape, std::uint64_t j, const IndexedList& x,
                              bool reveal) {
  GIndShape g{{shape.width_y, shape.width_x}, shape.element_len};
  BitString share = gind_alice_public(alice, g, j, {x});
  if (reveal) share ^= alice.recv_bits();
  return share;
}

BitString ind_two_level_bob(Party& bob, const TwoLevelShape& shape, const IndexedList& y, bool reveal) {
  GIndShape g{{shape.width_y, shape.width_x}, shape.element_len};
  BitString share = gind_bob_public(bob, g, {y});
  if (!reveal) return share;
  bob.send_bits(share);
  return BitString();
}

BitString gind_plain(const GIndShape& shape, std::uint64_t j0, const std::vector<IndexedList>& levels) {
  if (levels.size() != shape.levels()) throw ProtocolError("gind_plain needs every level's list");
  std::uint64_t j = j0;
  for (std::size_t l = 0; l + 1 < levels.size(); ++l) j = levels[l].entries.at(j).to_uint();
  return levels.back().entries.at(j);
}

}  // namespace sfe
