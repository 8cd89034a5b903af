#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "lpa/checks.hpp"
#include "lpa/ideals.hpp"
#include "support.hpp"

using namespace lpa;
using namespace lpa::test;

TEST_CASE("suites pass at small sizes") {
  CHECK(checks::property_suite(200, 8, 11).ok());
  CHECK(checks::oracle_suite(200, 6, 11).ok());
  CHECK(checks::maximality_suite(200, 7, 11).ok());
  CHECK(checks::breaking_idempotent_suite(50, 5, 11).ok());
  CHECK(checks::associativity_suite(500, 4, 11).ok());
}

namespace {

// Orbits of {0..k}^(n x n) under simultaneous row/column permutation, by
// Burnside: average over permutations of (k+1)^(cycles on ordered pairs).
std::uint64_t orbit_count(std::size_t n, std::uint64_t k) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t total = 0, perms = 0;
  do {
    std::vector<bool> seen(n * n, false);
    std::uint64_t fixed = 1;
    for (std::size_t start = 0; start < n * n; ++start) {
      if (seen[start]) continue;
      fixed *= k + 1;
      for (std::size_t c = start; !seen[c]; c = perm[c / n] * n + perm[c % n]) seen[c] = true;
    }
    total += fixed;
    ++perms;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / perms;
}

}  // namespace

TEST_CASE("exhaustive enumeration counts graphs up to relabeling") {
  std::uint64_t cumulative = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    cumulative += orbit_count(n, 2);
    CHECK(checks::exhaustive_oracle_suite(n, 2).checked == cumulative);
  }
  CHECK(orbit_count(2, 2) == 45);
  // The four-vertex suite in the acceptance binary checks this many.
  CHECK(cumulative + orbit_count(4, 2) == 1812919);
}

TEST_CASE("random graphs exercise every classifier") {
  // Same generator settings as the property suite.
  std::size_t ppi = 0, pprime = 0, pec = 0, breaking = 0, omega = 0, lines = 0, exitless = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    std::mt19937_64 rng(checks::case_seed(4, i));
    checks::RandomGraphOptions opt;
    opt.omega_probability = 0.1;
    std::uniform_real_distribution<double> d(0.1, 0.5);
    opt.edge_probability = d(rng);
    Graph g = checks::random_graph(rng, opt);
    Classification c = classify(g);
    ppi += !c.p_ppi.empty();
    pprime += !c.p_prime.empty();
    pec += !c.p_pec.empty();
    lines += !c.p_l.empty();
    exitless += !c.p_c.empty();
    omega += !c.p_binf.empty();
    breaking += !c.exchange_breaking.empty();
  }
  MESSAGE("ppi " << ppi << " P' " << pprime << " pec " << pec << " lines " << lines
                 << " exitless " << exitless << " omega " << omega << " breaking " << breaking);
  CHECK(ppi > 100);
  CHECK(pprime > 50);
  CHECK(pec > 50);
  CHECK(lines > 100);
  CHECK(exitless > 50);
  CHECK(omega > 100);
}

TEST_CASE("suite failures carry a counterexample") {
  checks::SuiteResult r;
  r.name = "demo";
  r.checked = 1;
  r.fail(fixture("line2"), "first");
  r.fail(fixture("six"), "second");
  CHECK_FALSE(r.ok());
  CHECK(r.failures == 2);
  CHECK(r.first_failure == "first");
  REQUIRE(r.counterexample);
  CHECK(*r.counterexample == fixture("line2"));
  CHECK_FALSE(checks::SuiteResult{}.ok());
}
