#include <doctest.h>

#include "sfe/error.hpp"
#include "sfe/oram.hpp"

using namespace sfe;

TEST_CASE("basic memory") {
  BasicMemory m(8);
  m.write(3, 9);
  CHECK(m.read(3) == 9);
  CHECK(m.read(4) == 0);
  CHECK_THROWS_AS(m.write(8, 1), UsageError);
  BasicMemory x(8), y(8);
  x.write(1, 5);
  y.write(6, 77);
  CHECK(x.trace().writes() == y.trace().writes());
  CHECK(x.trace().writes_count() == 8);
  for (std::uint64_t seed = 0; seed < 500; ++seed) CHECK(bench_memory("basic", 16, random_ops(16, 20, seed)).matches_oracle);
}

TEST_CASE("sqrt memory") {
  SqrtMemory m(64);
  CHECK(m.log_capacity() == 8);
  for (std::uint64_t a = 0; a < 64; ++a) CHECK(m.read(a) == 0);
  m.write(3, 9);
  CHECK(m.log_size() == 1);
  CHECK(m.read(3) == 9);
  for (int i = 0; i < 7; ++i) m.write(5, static_cast<std::uint64_t>(i));
  CHECK(m.log_size() == 0);
  CHECK(m.read(5) == 6);
  CHECK(m.read(3) == 9);
  auto b = bench_memory("sqrt", 64, random_ops(64, 10000, 1));
  CHECK(b.matches_oracle);
  CHECK(b.constant < 4.0);
  for (std::uint64_t s : {16u, 256u}) CHECK(bench_memory("sqrt", s, random_ops(s, 2000, s)).matches_oracle);
}

TEST_CASE("hierarchical memory") {
  HierMemory h(256);
  CHECK(h.capacities() == std::vector<std::uint64_t>{256, 32, 4, 1});
  CHECK(h.k() == 3);
  CHECK(h.read(17) == 0);
  h.write(17, 4);
  CHECK(h.log_size(3) == 1);
  CHECK(h.read(17) == 4);
  auto before = h.merges();
  h.write(18, 5);
  CHECK(h.merges() > before);
  CHECK(h.read(17) == 4);
  CHECK(h.read(18) == 5);

  HierMemory g(64);
  auto ops = random_ops(64, 3000, 9);
  std::vector<std::uint64_t> flat(64, 0);
  for (const auto& op : ops) {
    if (op.write) {
      g.write(op.address, op.value);
      flat[op.address] = op.value;
    } else {
      CHECK(g.read(op.address) == flat[op.address]);
    }
    for (std::size_t i = 0; i <= g.k(); ++i) CHECK(g.log_size(i) <= g.capacities()[i]);
    for (std::size_t i = 1; i <= g.k(); ++i) {
      const auto& l = g.log(i);
      for (std::size_t p = 1; p < l.size(); ++p) REQUIRE(l[p - 1].address <= l[p].address);
      if (i < g.k())
        for (std::size_t p = 1; p < l.size(); ++p)
          if (l[p].address != HierMemory::kDummy) REQUIRE(l[p - 1].address < l[p].address);
    }
  }
  auto b = bench_memory("hier", 256, random_ops(256, 10000, 2));
  CHECK(b.matches_oracle);
  CHECK(b.constant < 8.0);
  for (std::uint64_t s : {16u, 64u}) CHECK(bench_memory("hier", s, random_ops(s, 2000, s)).matches_oracle);
}

TEST_CASE("write obliviousness") {
  for (std::string scheme : {"basic", "sqrt", "hier"}) {
    auto a = random_ops(64, 400, 100), b = random_ops(64, 400, 200);
    for (std::size_t i = 0; i < a.size(); ++i) b[i].write = a[i].write;
    auto ma = make_memory(scheme, 64), mb = make_memory(scheme, 64);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].write) {
        ma->write(a[i].address, a[i].value);
        mb->write(b[i].address, b[i].value);
      } else {
        ma->read(a[i].address);
        mb->read(b[i].address);
      }
    }
    CAPTURE(scheme);
    CHECK(ma->trace().writes() == mb->trace().writes());
    CHECK(ma->trace().records() != mb->trace().records());
  }
  CHECK_THROWS_AS(make_memory("tree", 8), UsageError);
}
