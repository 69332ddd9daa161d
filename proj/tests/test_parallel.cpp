#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "nlc/parallel.hpp"

using namespace nlc;

TEST_SUITE("parallel") {

TEST_CASE("every index is visited once") {
  const unsigned before = thread_count();
  for (unsigned t : {1u, 3u, 8u}) {
    set_thread_count(t);
    CHECK(thread_count() == t);
    for (std::size_t n : {0u, 1u, 7u, 1000u}) {
      std::vector<int> hits(n, 0);
      parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) ++hits[i];
      });
      CHECK(std::accumulate(hits.begin(), hits.end(), 0) == static_cast<int>(n));
      CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
  }
  set_thread_count(before);
}

TEST_CASE("first exception by chunk order is rethrown") {
  const unsigned before = thread_count();
  set_thread_count(4);
  CHECK_THROWS_WITH(parallel_for(100,
                                 [](std::size_t b, std::size_t e) {
                                   for (std::size_t i = b; i < e; ++i) {
                                     if (i == 10) throw std::runtime_error("first");
                                     if (i == 90) throw std::runtime_error("last");
                                   }
                                 }),
                    "first");
  set_thread_count(before);
}

}  // TEST_SUITE
