#pragma once

#include <cstdint>
#include <vector>

#include "sfe/bitstring.hpp"
#include "sfe/crypto.hpp"
#include "sfe/ot.hpp"
#include "sfe/party.hpp"

namespace sfe {

// Group in which a shared value lives. Indices into lists of power-of-two
// width and all table payloads are shared by XOR; indices into lists of any
// other width w are shared additively mod w. A value v is held as shares
// (s_A, s_B) with v = add(s_A, s_B).
struct ShareDomain {
  std::size_t bits = 0;
  std::uint64_t modulus = 0;  // 0 means XOR over `bits`

  static ShareDomain xor_bits(std::size_t bits);
  static ShareDomain index(std::uint64_t width);

  bool is_xor() const { return modulus == 0; }
  BitString add(const BitString& a, const BitString& b) const;
  BitString sub(const BitString& a, const BitString& b) const;
  BitString random(SeededRng& rng) const;
  BitString zero() const { return BitString(bits); }
  BitString encode(std::uint64_t v) const { return BitString::from_uint(v, bits); }
};

struct IndexedList {
  std::vector<BitString> entries;
  std::size_t element_len = 0;

  static IndexedList from_uints(const std::vector<std::uint64_t>& values, std::size_t element_len);
  std::size_t width() const { return entries.size(); }
  std::vector<std::uint64_t> to_uints() const;
  void validate() const;  // uniform entry length, width >= 1
};

// Sender half of one indexing step: the OT table Y[i - s] = y[i] - r and the
// sender's fresh output share r.
struct IndexSendPlan {
  OtRequest request;
  BitString out_share;
};

IndexSendPlan prepare_index_send(SeededRng& rng, const BitString& sender_share, const IndexedList& list,
                                 const ShareDomain& in, const ShareDomain& out, bool zero_mask = false);

// One indexing step. The chooser holds share s_c and the sender holds s_s and
// the list; with j = s_c + s_s both return fresh shares of list[j].
BitString index_choose(Party& self, const BitString& chooser_share, std::size_t width, const ShareDomain& out);
BitString index_send(Party& self, const BitString& sender_share, const IndexedList& list, const ShareDomain& in,
                     const ShareDomain& out, bool zero_mask = false);

// Ind_AB: Alice holds J = pi XOR j, Bob holds (pi, y). Alice gets pi' XOR y[j],
// Bob gets pi'. Width must be a power of two.
BitString ind_ab_alice(Party& alice, const BitString& masked_index, std::size_t width, std::size_t element_len);
BitString ind_ab_bob(Party& bob, const BitString& pi, const IndexedList& y);
// Ind_BA: Alice holds (pi, x), Bob holds J = pi XOR j. Alice gets pi', Bob
// gets pi' XOR x[j].
BitString ind_ba_alice(Party& alice, const BitString& pi, const IndexedList& x);
BitString ind_ba_bob(Party& bob, const BitString& masked_index, std::size_t width, std::size_t element_len);

// Two-level indexing: Alice holds (j, x), Bob holds y. With reveal, Alice
// outputs x[y[j]] and Bob outputs an empty string; without it both output XOR
// shares of x[y[j]].
struct TwoLevelShape {
  std::size_t width_y = 0;
  std::size_t width_x = 0;
  std::size_t element_len = 0;
};
BitString ind_two_level_alice(Party& alice, const TwoLevelShape& shape, std::uint64_t j, const IndexedList& x,
                              bool reveal = true);
BitString ind_two_level_bob(Party& bob, const TwoLevelShape& shape, const IndexedList& y, bool reveal = true);

// Public shape of a GInd instance: widths w_1..w_c of the lists and the bit
// length of the last level's entries. Odd levels belong to Bob, even levels
// to Alice.
struct GIndShape {
  std::vector<std::uint64_t> widths;
  std::size_t leaf_bits = 0;

  std::size_t levels() const { return widths.size(); }
  ShareDomain in_domain(std::size_t level) const;   // level in 1..c
  ShareDomain out_domain(std::size_t level) const;  // domain of level's entries
  void validate() const;
};

struct GIndOptions {
  // Negative control for the privacy checks: senders skip the fresh output
  // mask, so every chooser receives j_l in the clear.
  bool leak_indices = false;
};

// lists[i] is the party's list for its i-th level (Alice: levels 2, 4, ...;
// Bob: levels 1, 3, ...). `share0` is the party's share of j_0 in
// in_domain(1). Returns the party's XOR share of the composed lookup.
BitString gind_alice(Party& alice, const GIndShape& shape, const BitString& share0,
                     const std::vector<IndexedList>& lists, const GIndOptions& opts = {});
BitString gind_bob(Party& bob, const GIndShape& shape, const BitString& share0, const std::vector<IndexedList>& lists,
                   const GIndOptions& opts = {});

// Variant with j_0 known to Alice (mask fixed to zero).
BitString gind_alice_public(Party& alice, const GIndShape& shape, std::uint64_t j0,
                            const std::vector<IndexedList>& lists);
BitString gind_bob_public(Party& bob, const GIndShape& shape, const std::vector<IndexedList>& lists);

// Plain pointer jumping over all c lists (level order), for oracles.
BitString gind_plain(const GIndShape& shape, std::uint64_t j0, const std::vector<IndexedList>& levels);

}  // namespace sfe
