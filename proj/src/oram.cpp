#include "sfe/oram.hpp"

#include <algorithm>
#include <cmath>

#include "sfe/crypto.hpp"
#include "sfe/error.hpp"

namespace sfe {

std::vector<Touch> AccessTrace::writes() const {
  std::vector<Touch> out;
  for (const auto& t : records_)
    if (t.kind == TouchKind::Write) out.push_back(t);
  return out;
}

std::size_t AccessTrace::reads_count() const { return records_.size() - writes_count(); }

std::size_t AccessTrace::writes_count() const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(), [](const Touch& t) { return t.kind == TouchKind::Write; }));
}

WriteObliviousMemory::WriteObliviousMemory(std::uint64_t s) : s_(s) {
  if (s < 2) throw UsageError("memory size must be at least 2");
}

void WriteObliviousMemory::check_address(std::uint64_t address) const {
  if (address >= s_)
    throw UsageError("address " + std::to_string(address) + " out of range for memory of size " + std::to_string(s_));
}

BasicMemory::BasicMemory(std::uint64_t s) : WriteObliviousMemory(s), mem_(s, 0) {}

std::uint64_t BasicMemory::read(std::uint64_t address) {
  check_address(address);
  trace_.add(TouchKind::Read, 0, address);
  return mem_[address];
}

void BasicMemory::write(std::uint64_t address, std::uint64_t value) {
  check_address(address);
  for (std::uint64_t i = 0; i < s_; ++i) {
    trace_.add(TouchKind::Read, 0, i);
    if (i == address) mem_[i] = value;
    trace_.add(TouchKind::Write, 0, i);
  }
}

SqrtMemory::SqrtMemory(std::uint64_t s)
    : WriteObliviousMemory(s),
      cap_(static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(s))))),
      mem_(s, 0) {}

std::uint64_t SqrtMemory::read(std::uint64_t address) {
  check_address(address);
  for (std::size_t i = log_.size(); i-- > 0;) {
    trace_.add(TouchKind::Read, 1, i);
    if (log_[i].address == address) return log_[i].value;
  }
  trace_.add(TouchKind::Read, 0, address);
  return mem_[address];
}

void SqrtMemory::write(std::uint64_t address, std::uint64_t value) {
  check_address(address);
  trace_.add(TouchKind::Write, 1, log_.size());
  log_.push_back({address, value, seq_++});
  if (log_.size() == cap_) flush();
}

void SqrtMemory::flush() {
  std::vector<LogEntry> sorted = log_;
  for (std::size_t i = 0; i < sorted.size(); ++i) trace_.add(TouchKind::Read, 1, i);
  std::sort(sorted.begin(), sorted.end(),
            [](const LogEntry& a, const LogEntry& b) { return a.address != b.address ? a.address < b.address : a.seq < b.seq; });
  std::size_t p = 0;
  for (std::uint64_t a = 0; a < s_; ++a) {
    trace_.add(TouchKind::Read, 0, a);
    while (p < sorted.size() && sorted[p].address == a) mem_[a] = sorted[p++].value;
    trace_.add(TouchKind::Write, 0, a);
  }
  for (std::size_t i = 0; i < log_.size(); ++i) trace_.add(TouchKind::Write, 1, i);
  log_.clear();
}

HierMemory::HierMemory(std::uint64_t s) : WriteObliviousMemory(s) {
  std::uint64_t b = std::max<std::uint64_t>(2, ceil_log2(s));
  double denom = 1;
  while (true) {
    auto n = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(static_cast<double>(s) / denom)));
    caps_.push_back(n);
    if (n == 1) break;
    denom *= static_cast<double>(b);
  }
  logs_.resize(caps_.size());
  for (std::uint64_t a = 0; a < s; ++a) logs_[0].push_back({a, 0, 0});
}

std::uint64_t HierMemory::read(std::uint64_t address) {
  check_address(address);
  for (std::size_t i = logs_.size(); i-- > 1;) {
    const auto& l = logs_[i];
    std::size_t lo = 0, hi = l.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      trace_.add(TouchKind::Read, static_cast<std::uint32_t>(i), mid);
      if (l[mid].address < address)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < l.size()) {
      trace_.add(TouchKind::Read, static_cast<std::uint32_t>(i), lo);
      if (l[lo].address == address) return l[lo].value;
    }
  }
  trace_.add(TouchKind::Read, 0, address);
  return logs_[0][address].value;
}

void HierMemory::write(std::uint64_t address, std::uint64_t value) {
  check_address(address);
  std::size_t top = k();
  if (logs_[top].size() == caps_[top]) merge_down(top);
  trace_.add(TouchKind::Write, static_cast<std::uint32_t>(top), logs_[top].size());
  logs_[top].push_back({address, value, seq_++});
}

void HierMemory::merge_down(std::size_t i) {
  ++merges_;
  auto u32 = [](std::size_t x) { return static_cast<std::uint32_t>(x); };
  auto& src = logs_[i];
  for (std::size_t p = 0; p < src.size(); ++p) trace_.add(TouchKind::Read, u32(i), p);
  if (i == 1) {
    auto& base = logs_[0];
    std::vector<LogEntry> incoming = src;
    std::sort(incoming.begin(), incoming.end(), [](const LogEntry& a, const LogEntry& b) { return a.address < b.address; });
    std::size_t p = 0;
    for (std::uint64_t a = 0; a < s_; ++a) {
      trace_.add(TouchKind::Read, 0, a);
      for (; p < incoming.size() && incoming[p].address <= a; ++p)
        if (incoming[p].address == a && incoming[p].seq >= base[a].seq) base[a] = incoming[p];
      trace_.add(TouchKind::Write, 0, a);
    }
  } else {
    auto& dst = logs_[i - 1];
    if (dst.size() + src.size() > caps_[i - 1]) merge_down(i - 1);
    for (std::size_t p = 0; p < dst.size(); ++p) trace_.add(TouchKind::Read, u32(i - 1), p);
    std::vector<LogEntry> all = dst;
    all.insert(all.end(), src.begin(), src.end());
    std::sort(all.begin(), all.end(), [](const LogEntry& a, const LogEntry& b) {
      return a.address != b.address ? a.address < b.address : a.seq > b.seq;
    });
    std::vector<LogEntry> merged;
    std::size_t dummies = 0;
    for (std::size_t p = 0; p < all.size(); ++p) {
      if (all[p].address == kDummy || (p > 0 && all[p].address == all[p - 1].address))
        ++dummies;
      else
        merged.push_back(all[p]);
    }
    for (std::size_t d = 0; d < dummies; ++d) merged.push_back({kDummy, 0, 0});
    for (std::size_t p = 0; p < merged.size(); ++p) trace_.add(TouchKind::Write, u32(i - 1), p);
    dst = std::move(merged);
  }
  for (std::size_t p = 0; p < src.size(); ++p) trace_.add(TouchKind::Write, u32(i), p);
  src.clear();
}

std::unique_ptr<WriteObliviousMemory> make_memory(const std::string& scheme, std::uint64_t s) {
  if (scheme == "basic") return std::make_unique<BasicMemory>(s);
  if (scheme == "sqrt") return std::make_unique<SqrtMemory>(s);
  if (scheme == "hier") return std::make_unique<HierMemory>(s);
  throw UsageError("unknown memory scheme '" + scheme + "' (basic, sqrt, hier)");
}

double sqrt_scheme_scale(std::uint64_t s) { return std::sqrt(static_cast<double>(s)); }

double hier_scheme_scale(std::uint64_t s) {
  double l = std::log2(static_cast<double>(s));
  return l * l / std::max(1.0, std::log2(l));
}

std::vector<OramOp> random_ops(std::uint64_t s, std::size_t count, std::uint64_t seed, double write_fraction) {
  auto rng = SeededRng::from_u64(seed);
  std::vector<OramOp> ops;
  auto threshold = static_cast<std::uint64_t>(write_fraction * 1000000.0);
  for (std::size_t i = 0; i < count; ++i) {
    bool w = rng.uniform_below(1000000) < threshold;
    ops.push_back({w, rng.uniform_below(s), w ? rng.uniform_below(1u << 20) : 0});
  }
  return ops;
}

OramBench bench_memory(const std::string& scheme, std::uint64_t s, const std::vector<OramOp>& ops) {
  auto mem = make_memory(scheme, s);
  std::vector<std::uint64_t> flat(s, 0);
  OramBench b;
  b.scheme = scheme;
  b.s = s;
  b.ops = ops.size();
  b.matches_oracle = true;
  for (const auto& op : ops) {
    if (op.write) {
      mem->write(op.address, op.value);
      flat[op.address] = op.value;
    } else if (mem->read(op.address) != flat[op.address]) {
      b.matches_oracle = false;
    }
  }
  b.touches = mem->trace().size();
  b.write_touches = mem->trace().writes_count();
  b.touches_per_op = ops.empty() ? 0 : static_cast<double>(b.touches) / static_cast<double>(ops.size());
  if (scheme == "sqrt") b.constant = b.touches_per_op / sqrt_scheme_scale(s);
  if (scheme == "hier") b.constant = b.touches_per_op / hier_scheme_scale(s);
  return b;
}

}  // namespace sfe
