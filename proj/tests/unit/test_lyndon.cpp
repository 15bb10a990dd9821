#include <doctest.h>

#include <set>

#include "hmzf/lyndon.hpp"
#include "support/oracles.hpp"

using namespace hmzf;

TEST_CASE("is_lyndon basics") {
  CHECK(is_lyndon(Composition{1, 2}));
  CHECK_FALSE(is_lyndon(Composition{1, 1}));
  CHECK(is_lyndon(Composition{2}));
  CHECK_FALSE(is_lyndon(Composition{2, 1}));
  CHECK_FALSE(is_lyndon(Composition{}));
  CHECK(is_lyndon(Composition{1, 1, 2}));
}

TEST_CASE("is_lyndon matches the rotation oracle up to weight 8") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& w : enumerate_compositions(n, false)) {
      CHECK(is_lyndon(w) == oracle::brute_is_lyndon(w));
    }
  }
}

TEST_CASE("cfl worked factorizations") {
  CHECK(cfl_factorize(Composition{2, 1, 2}) ==
        std::vector<Composition>{Composition{2}, Composition{1, 2}});
  CHECK(cfl_factorize(Composition{1, 1, 2}) == std::vector<Composition>{Composition{1, 1, 2}});
  CHECK(cfl_factorize(Composition{3}) == std::vector<Composition>{Composition{3}});
  CHECK_THROWS_AS(cfl_factorize(Composition{}), std::invalid_argument);
}

TEST_CASE("cfl round trip, monotonicity and uniqueness up to weight 8") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& w : enumerate_compositions(n, false)) {
      auto factors = cfl_factorize(w);
      std::vector<int> joined;
      for (size_t i = 0; i < factors.size(); ++i) {
        CHECK(is_lyndon(factors[i]));
        if (i) CHECK_FALSE(lex_less(factors[i - 1], factors[i]));
        joined.insert(joined.end(), factors[i].parts().begin(), factors[i].parts().end());
      }
      CHECK(Composition(joined) == w);
      if (n <= 6) {
        // exhaustive: exactly one non-increasing factorization into Lyndon words
        auto all = oracle::brute_cfl_all(w);
        REQUIRE(all.size() == 1);
        CHECK(all.front() == factors);
      }
    }
  }
}

TEST_CASE("generate_lyndon groups") {
  auto groups = generate_lyndon(4);
  CHECK(groups[1] == std::vector<Composition>{Composition{1}});
  CHECK(groups[2] == std::vector<Composition>{Composition{2}});
  CHECK(groups[3] == std::vector<Composition>{Composition{1, 2}, Composition{3}});
  CHECK(groups[4] ==
        std::vector<Composition>{Composition{1, 1, 2}, Composition{1, 3}, Composition{4}});
}

TEST_CASE("count_lyndon closed form vs enumeration up to weight 12") {
  CHECK(count_lyndon(2) == 1);
  CHECK(count_lyndon(4) == 3);
  CHECK(count_lyndon(6) == 9);
  auto groups = generate_lyndon(12);
  for (int n = 1; n <= 12; ++n) {
    CHECK(count_lyndon(n) == static_cast<std::int64_t>(groups[n].size()));
  }
}

TEST_CASE("multiset of CFL factorizations bijects compositions onto Lyndon multisets") {
  // Every composition of n factors uniquely into a non-increasing product of
  // Lyndon words; conversely every non-increasing sequence concatenates to a
  // composition. Checked by counting distinct factorization outputs.
  for (int n = 1; n <= 8; ++n) {
    auto comps = enumerate_compositions(n, false);
    std::set<std::vector<Composition>> images;
    for (const auto& w : comps) {
      auto f = cfl_factorize(w);
      std::vector<Composition> key(f.begin(), f.end());
      images.insert(key);
    }
    CHECK(images.size() == comps.size());
  }
}
