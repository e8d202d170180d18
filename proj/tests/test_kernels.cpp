#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <cstring>
#include <stdexcept>

#include "bundled.hpp"
#include "tneutral/error.hpp"
#include "tneutral/kernels.hpp"
#include "tneutral/search.hpp"

using namespace tneutral;
using namespace tneutral::testing;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("for_each_index visits every index once") {
  for (auto backend : {Backend::Serial, Backend::Parallel}) {
    std::vector<std::atomic<int>> hits(1000);
    for_each_index(hits.size(), [&](std::size_t i) { hits[i]++; }, backend);
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  for_each_index(0, [](std::size_t) { FAIL("no calls expected"); });
}

TEST_CASE("exceptions propagate out of parallel loops") {
  for (auto backend : {Backend::Serial, Backend::Parallel}) {
    CHECK_THROWS_AS(for_each_index(
                        100,
                        [](std::size_t i) {
                          if (i == 37) throw Error(ErrorKind::NoConvergence, "boom");
                        },
                        backend),
                    Error);
    CHECK_THROWS_AS(for_each_index(
                        10, [](std::size_t) { throw std::out_of_range("x"); }, backend),
                    std::out_of_range);
  }
}

TEST_CASE("split_seed decorrelates indices") {
  CHECK(split_seed(1, 0) != split_seed(1, 1));
  CHECK(split_seed(1, 0) != split_seed(2, 0));
  CHECK(split_seed(5, 9) == split_seed(5, 9));
}

TEST_CASE("grid evaluation is identical across backends") {
  const auto ps = linspace(-2.0, 2.0, 7);
  const auto qs = linspace(-1.0, 3.0, 5);
  for (const auto& sys : bundled_systems()) {
    const auto a = evaluate_grid(sys, ps, qs, Backend::Serial);
    const auto b = evaluate_grid(sys, ps, qs, Backend::Parallel);
    REQUIRE(a.size() == ps.size() * qs.size());
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].p == ps[i / qs.size()]);
      CHECK(a[i].q == qs[i % qs.size()]);
      CHECK(same_bits(a[i].Q, b[i].Q));
      CHECK(same_bits(a[i].h, b[i].h));
      CHECK(same_bits(a[i].dim, b[i].dim));
    }
  }
}

TEST_CASE("local entropy sampling is identical across backends and thread counts") {
  const auto par = parry(golden_mean());
  const ShiftMetric metric(0.5);
  const auto a = local_entropy_samples(par, metric, 0.7, 60, 40, 99, Backend::Serial);
  const int saved = thread_count();
  for (int t : {1, 2, 4}) {
    set_thread_count(t);
    const auto b = local_entropy_samples(par, metric, 0.7, 60, 40, 99, Backend::Parallel);
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_bits(a[i], b[i]));
  }
  set_thread_count(saved);
  const auto c = local_entropy_samples(par, metric, 0.7, 60, 40, 100, Backend::Serial);
  CHECK(c != a);
}
