#include "sfe/lut_sort.hpp"

#include <algorithm>

#include "sfe/error.hpp"

namespace sfe {

namespace {

using Word = std::vector<WireId>;

struct Builder {
  LutCircuit& c;
  WireId zero;
  WireId one;
  std::size_t m;
  std::size_t gadgets = 0;

  Builder(LutCircuit& circ, std::size_t value_bits) : c(circ), m(value_bits) {
    zero = c.add_constant(false);
    one = c.add_constant(true);
  }

  Word constant(std::uint64_t v, std::size_t bits) {
    Word w;
    for (std::size_t i = 0; i < bits; ++i) w.push_back((v >> (bits - 1 - i)) & 1 ? one : zero);
    return w;
  }

  // Table of width 2n: entries (0, x[i]) then n entries (1, 0...0).
  Word read(const Word& idx, const std::vector<Word>& xs) {
    LutGate g;
    g.width = 2 * xs.size();
    g.entry_bits = m + 1;
    g.index = idx;
    g.source = TableSource::Wires;
    for (const auto& x : xs) {
      g.table_wires.push_back(zero);
      g.table_wires.insert(g.table_wires.end(), x.begin(), x.end());
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      g.table_wires.push_back(one);
      for (std::size_t b = 0; b < m; ++b) g.table_wires.push_back(zero);
    }
    return c.add_gate(std::move(g));
  }

  // State 0: equal so far, 1: vb < va, 2: vb > va.
  Word compare(const Word& vb, const Word& va) {
    Word s = constant(0, 2);
    for (std::size_t i = 0; i < m; ++i) {
      LutGate g;
      g.width = 16;
      g.entry_bits = 2;
      g.index = {s[0], s[1], vb[i], va[i]};
      for (std::uint64_t e = 0; e < 16; ++e) {
        std::uint64_t st = e >> 2, bb = (e >> 1) & 1, ab = e & 1;
        if (st == 0) st = bb == ab ? 0 : (bb < ab ? 1 : 2);
        g.table.push_back(std::min<std::uint64_t>(st, 3));
      }
      s = c.add_gate(std::move(g));
    }
    return s;
  }

  WireId select_b(WireId ea, WireId eb, const Word& s) {
    LutGate g;
    g.width = 16;
    g.entry_bits = 1;
    g.index = {ea, eb, s[0], s[1]};
    for (std::uint64_t e = 0; e < 16; ++e) {
      bool a_done = (e >> 3) & 1, b_done = (e >> 2) & 1;
      std::uint64_t st = e & 3;
      g.table.push_back(a_done || (!b_done && st != 2) ? 1 : 0);
    }
    return c.add_gate(std::move(g))[0];
  }

  Word mux(WireId sel, const Word& x0, const Word& x1) {
    LutGate g;
    g.width = 2;
    g.entry_bits = m;
    g.index = {sel};
    g.source = TableSource::Wires;
    g.table_wires = x0;
    g.table_wires.insert(g.table_wires.end(), x1.begin(), x1.end());
    return c.add_gate(std::move(g));
  }

  // idx + (bit == step_on), saturating at the top of the index range.
  Word advance(const Word& idx, WireId bit, bool step_on) {
    LutGate g;
    std::size_t bits = idx.size();
    g.width = std::uint64_t{1} << (bits + 1);
    g.entry_bits = bits;
    g.index = idx;
    g.index.push_back(bit);
    std::uint64_t top = (std::uint64_t{1} << bits) - 1;
    for (std::uint64_t e = 0; e < g.width; ++e) {
      std::uint64_t i = e >> 1;
      bool b = e & 1;
      g.table.push_back(b == step_on ? std::min(i + 1, top) : i);
    }
    return c.add_gate(std::move(g));
  }

  std::vector<Word> merge(const std::vector<Word>& a, const std::vector<Word>& b) {
    std::size_t n = a.size();
    std::size_t bits = ceil_log2(n) + 1;
    Word ia = constant(0, bits), ib = constant(0, bits);
    std::vector<Word> out;
    for (std::size_t j = 0; j < 2 * n; ++j) {
      ++gadgets;
      Word ra = read(ia, a), rb = read(ib, b);
      Word va(ra.begin() + 1, ra.end()), vb(rb.begin() + 1, rb.end());
      WireId sel = select_b(ra[0], rb[0], compare(vb, va));
      out.push_back(mux(sel, va, vb));
      ia = advance(ia, sel, false);
      ib = advance(ib, sel, true);
    }
    return out;
  }
};

std::vector<Word> split_words(const std::vector<WireId>& wires, std::size_t m) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < wires.size(); i += m) out.emplace_back(wires.begin() + i, wires.begin() + i + m);
  return out;
}

void flatten_into(std::vector<WireId>& dst, const std::vector<Word>& ws) {
  for (const auto& w : ws) dst.insert(dst.end(), w.begin(), w.end());
}

void check_shape(std::size_t n, std::size_t m) {
  if (n == 0 || !is_power_of_two(n)) throw ProtocolError("list length must be a power of two");
  if (m == 0 || m > 32) throw ProtocolError("value width must be 1..32 bits");
}

}  // namespace

std::size_t merge_gadget_gates(std::size_t value_bits) { return value_bits + 6; }

SortCircuit build_merge_circuit(std::size_t n, std::size_t value_bits) {
  check_shape(n, value_bits);
  SortCircuit s;
  s.n = 2 * n;
  s.value_bits = value_bits;
  Builder b(s.circuit, value_bits);
  s.circuit.alice_inputs = s.circuit.add_wires(n * value_bits);
  s.circuit.bob_inputs = s.circuit.add_wires(n * value_bits);
  auto out = b.merge(split_words(s.circuit.alice_inputs, value_bits), split_words(s.circuit.bob_inputs, value_bits));
  flatten_into(s.circuit.outputs, out);
  s.gadgets = b.gadgets;
  s.circuit.validate();
  return s;
}

SortCircuit build_sort_circuit(std::size_t n, std::size_t value_bits) {
  check_shape(n, value_bits);
  SortCircuit s;
  s.n = n;
  s.value_bits = value_bits;
  Builder b(s.circuit, value_bits);
  std::size_t alice_count = n == 1 ? 1 : n / 2;
  s.circuit.alice_inputs = s.circuit.add_wires(alice_count * value_bits);
  s.circuit.bob_inputs = s.circuit.add_wires((n - alice_count) * value_bits);
  std::vector<WireId> all = s.circuit.alice_inputs;
  all.insert(all.end(), s.circuit.bob_inputs.begin(), s.circuit.bob_inputs.end());
  std::vector<std::vector<Word>> runs;
  for (auto& w : split_words(all, value_bits)) runs.push_back({w});
  while (runs.size() > 1) {
    std::vector<std::vector<Word>> next;
    for (std::size_t i = 0; i < runs.size(); i += 2) next.push_back(b.merge(runs[i], runs[i + 1]));
    runs = std::move(next);
  }
  flatten_into(s.circuit.outputs, runs[0]);
  s.gadgets = b.gadgets;
  s.circuit.validate();
  return s;
}

BitString pack_values(const std::vector<std::uint64_t>& values, std::size_t value_bits) {
  BitString out;
  for (auto v : values) {
    if (value_bits < 64 && v >> value_bits) throw ProtocolError("value does not fit the value width");
    out.append(BitString::from_uint(v, value_bits));
  }
  return out;
}

std::vector<std::uint64_t> unpack_values(const BitString& bits, std::size_t value_bits) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i + value_bits <= bits.size(); i += value_bits) out.push_back(bits.slice(i, value_bits).to_uint());
  return out;
}

std::vector<std::uint64_t> lut_merge(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                     std::size_t value_bits, bool check) {
  if (a.size() != b.size()) throw ProtocolError("merger inputs must have equal length");
  auto s = build_merge_circuit(a.size(), value_bits);
  auto out = unpack_values(eval_lut_plain(s.circuit, pack_values(a, value_bits), pack_values(b, value_bits)), value_bits);
  if (check && !std::is_sorted(out.begin(), out.end())) throw ProtocolError("merger output is not sorted; inputs were not sorted");
  return out;
}

namespace {

std::pair<BitString, BitString> split_inputs(const std::vector<std::uint64_t>& values, std::size_t m) {
  std::size_t alice_count = values.size() == 1 ? 1 : values.size() / 2;
  std::vector<std::uint64_t> a(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(alice_count));
  std::vector<std::uint64_t> b(values.begin() + static_cast<std::ptrdiff_t>(alice_count), values.end());
  return {pack_values(a, m), pack_values(b, m)};
}

}  // namespace

std::vector<std::uint64_t> lut_merge_sort(const std::vector<std::uint64_t>& values, std::size_t value_bits) {
  auto s = build_sort_circuit(values.size(), value_bits);
  auto [a, b] = split_inputs(values, value_bits);
  return unpack_values(eval_lut_plain(s.circuit, a, b), value_bits);
}

SortRun secure_merge_sort(const SessionConfig& cfg, const std::vector<std::uint64_t>& values, std::size_t value_bits) {
  auto s = build_sort_circuit(values.size(), value_bits);
  auto [a, b] = split_inputs(values, value_bits);
  auto r = run_lut_circuit(cfg, s.circuit, a, b);
  return {unpack_values(r.value, value_bits), std::move(r.meter), s.gadgets};
}

std::vector<std::uint64_t> merge_reference(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i == a.size() || (j < b.size() && b[j] <= a[i]))
      out.push_back(b[j++]);
    else
      out.push_back(a[i++]);
  }
  return out;
}

}  // namespace sfe
