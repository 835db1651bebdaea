#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sfe {

enum class TouchKind : std::uint8_t { Read, Write };

struct Touch {
  TouchKind kind;
  std::uint32_t structure;
  std::uint64_t slot;
  bool operator==(const Touch&) const = default;
};

// Append-only record of every memory slot touched.
class AccessTrace {
 public:
  void add(TouchKind kind, std::uint32_t structure, std::uint64_t slot) { records_.push_back({kind, structure, slot}); }
  const std::vector<Touch>& records() const { return records_; }
  std::vector<Touch> writes() const;
  std::size_t reads_count() const;
  std::size_t writes_count() const;
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<Touch> records_;
};

struct LogEntry {
  std::uint64_t address;
  std::uint64_t value;
  std::uint64_t seq;
};

class WriteObliviousMemory {
 public:
  explicit WriteObliviousMemory(std::uint64_t s);
  virtual ~WriteObliviousMemory() = default;

  virtual std::string name() const = 0;
  virtual std::uint64_t read(std::uint64_t address) = 0;
  virtual void write(std::uint64_t address, std::uint64_t value) = 0;

  std::uint64_t size() const { return s_; }
  const AccessTrace& trace() const { return trace_; }

 protected:
  void check_address(std::uint64_t address) const;

  std::uint64_t s_;
  AccessTrace trace_;
  std::uint64_t seq_ = 0;
};

// Rewrites all s locations in address order on every write.
class BasicMemory : public WriteObliviousMemory {
 public:
  explicit BasicMemory(std::uint64_t s);
  std::string name() const override { return "basic"; }
  std::uint64_t read(std::uint64_t address) override;
  void write(std::uint64_t address, std::uint64_t value) override;

 private:
  std::vector<std::uint64_t> mem_;
};

// Memory (structure 0) plus a log (structure 1) of ceil(sqrt s) pairs. A full
// log is sorted and merged into memory, keeping each address's most recent
// pair, then emptied.
class SqrtMemory : public WriteObliviousMemory {
 public:
  explicit SqrtMemory(std::uint64_t s);
  std::string name() const override { return "sqrt"; }
  std::uint64_t read(std::uint64_t address) override;
  void write(std::uint64_t address, std::uint64_t value) override;

  std::uint64_t log_capacity() const { return cap_; }
  std::size_t log_size() const { return log_.size(); }

 private:
  void flush();

  std::uint64_t cap_;
  std::vector<std::uint64_t> mem_;
  std::vector<LogEntry> log_;
};

// Logs L_0..L_k (structure i is L_i) with capacities n_i = max(1, ceil(s/b^i)),
// b = ceil(log2 s), k minimal with n_k = 1. L_0 is dense, one slot per
// address. A write goes to L_k; a full log is merged into the next older
// one, which first makes room for it the same way. Merges keep the most
// recent pair per address and pad with dummy entries so every merge writes
// a fixed number of slots.
class HierMemory : public WriteObliviousMemory {
 public:
  static constexpr std::uint64_t kDummy = UINT64_MAX;

  explicit HierMemory(std::uint64_t s);
  std::string name() const override { return "hier"; }
  std::uint64_t read(std::uint64_t address) override;
  void write(std::uint64_t address, std::uint64_t value) override;

  std::size_t k() const { return caps_.size() - 1; }
  const std::vector<std::uint64_t>& capacities() const { return caps_; }
  std::size_t log_size(std::size_t i) const { return logs_.at(i).size(); }
  const std::vector<LogEntry>& log(std::size_t i) const { return logs_.at(i); }
  std::uint64_t merges() const { return merges_; }

 private:
  void merge_down(std::size_t i);

  std::vector<std::uint64_t> caps_;
  std::vector<std::vector<LogEntry>> logs_;
  std::uint64_t merges_ = 0;
};

std::unique_ptr<WriteObliviousMemory> make_memory(const std::string& scheme, std::uint64_t s);

// Closed forms the amortized touch counts are measured against.
double sqrt_scheme_scale(std::uint64_t s);   // sqrt(s)
double hier_scheme_scale(std::uint64_t s);   // log2(s)^2 / log2(log2(s))

struct OramOp {
  bool write;
  std::uint64_t address;
  std::uint64_t value;
};

std::vector<OramOp> random_ops(std::uint64_t s, std::size_t count, std::uint64_t seed, double write_fraction = 0.5);

struct OramBench {
  std::string scheme;
  std::uint64_t s = 0;
  std::size_t ops = 0;
  std::size_t touches = 0;
  std::size_t write_touches = 0;
  double touches_per_op = 0;
  double constant = 0;  // touches_per_op / scale, 0 for the basic scheme
  bool matches_oracle = false;
};

// Runs ops against the scheme and a flat array; records agreement and cost.
OramBench bench_memory(const std::string& scheme, std::uint64_t s, const std::vector<OramOp>& ops);

}  // namespace sfe
