#include <doctest.h>

#include <string>
#include <vector>

#include "binwords/error.hpp"
#include "binwords/repetition.hpp"
#include "binwords/search.hpp"
#include "binwords/serialize.hpp"
#include "oracles.hpp"

using namespace binwords;

namespace {

// Power-free words of each length by brute force over all k^n words.
std::vector<std::uint64_t> brute_counts(int k, int m, int p, std::size_t n_max) {
  std::vector<std::uint64_t> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    std::uint64_t c = 0;
    for (const auto& s : oracle::all_strings(k, n)) {
      if (!oracle::find_power(s, k, m, p)) ++c;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("binary squares die at length 4") {
  const auto brute = brute_counts(2, 2, 2, 5);
  CHECK(brute == std::vector<std::uint64_t>{2, 2, 2, 0, 0});

  const auto cert = longest_avoiding(2, 2, 2, 100);
  CHECK(cert.outcome == SearchOutcome::Maximal);
  CHECK(cert.length == 3);
  CHECK(cert.witness.str() == "010");
  CHECK(cert.counts_exact);
  CHECK(cert.counts == std::vector<std::uint64_t>{2, 2, 2});
  CHECK(is_power_free(cert.witness, 2, 2));
}

TEST_CASE("unary cubes") {
  const auto cert = longest_avoiding(1, 2, 3, 100);
  CHECK(cert.outcome == SearchOutcome::Maximal);
  CHECK(cert.length == 2);
  CHECK(cert.witness.str() == "00");
}

TEST_CASE("the tree stays alive to the cap") {
  for (auto [k, p] : {std::pair{3, 2}, std::pair{2, 3}}) {
    const auto cert = longest_avoiding(k, 2, p, 50);
    CHECK(cert.outcome == SearchOutcome::CapReached);
    CHECK(cert.length == 50);
    CHECK(cert.witness.size() == 50);
    CHECK(is_power_free(cert.witness, 2, p));
    CHECK_FALSE(cert.counts_exact);
  }
}

TEST_CASE("counts agree with brute force") {
  CHECK(count_avoiding(2, 2, 2, 4).counts == std::vector<std::uint64_t>{2, 2, 2, 0});
  CHECK(count_avoiding(1, 1, 2, 3).counts[1] == 0);
  CHECK(count_avoiding(2, 2, 3, 9).counts == brute_counts(2, 2, 3, 9));
  CHECK(count_avoiding(3, 1, 2, 7).counts == brute_counts(3, 1, 2, 7));
  CHECK(count_avoiding(3, 2, 2, 7).counts == brute_counts(3, 2, 2, 7));

  const auto ternary = count_avoiding(3, 2, 2, 10);
  for (auto c : ternary.counts) CHECK(c > 0);
}

TEST_CASE("finer equivalence never lowers the counts") {
  const auto m1 = count_avoiding(2, 1, 3, 12).counts;
  const auto m2 = count_avoiding(2, 2, 3, 12).counts;
  const auto m3 = count_avoiding(2, 3, 3, 12).counts;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    CHECK(m2[i] >= m1[i]);
    CHECK(m3[i] >= m2[i]);
  }
}

TEST_CASE("symmetry reduction and threads") {
  const auto full = count_avoiding(3, 2, 2, 12);
  SearchOptions fixed;
  fixed.fix_first_letter = true;
  const auto reduced = count_avoiding(3, 2, 2, 12, fixed);
  for (std::size_t i = 0; i < full.counts.size(); ++i) {
    CHECK(reduced.counts[i] * 3 == full.counts[i]);
  }
  SearchOptions threaded;
  threaded.threads = 3;
  CHECK(count_avoiding(3, 2, 2, 12, threaded).counts == full.counts);
}

TEST_CASE("budgets abort deterministically") {
  SearchOptions opts;
  opts.budget.max_nodes = 500;
  const auto a = longest_avoiding(3, 2, 2, 100000, opts);
  const auto b = longest_avoiding(3, 2, 2, 100000, opts);
  CHECK(a.outcome == SearchOutcome::BudgetExhausted);
  CHECK(a.length == b.length);
  CHECK(a.witness == b.witness);
  CHECK(a.nodes == b.nodes);
  CHECK(is_power_free(a.witness, 2, 2));
  CHECK(to_json(a).dump() == to_json(b).dump());

  const auto table = count_avoiding(3, 2, 2, 30, opts);
  CHECK_FALSE(table.complete);
}

TEST_CASE("progress callback") {
  SearchOptions opts;
  opts.progress_every = 16;
  int calls = 0;
  opts.progress = [&](std::size_t, std::uint64_t, std::uint64_t) { ++calls; };
  longest_avoiding(2, 2, 3, 60, opts);
  CHECK(calls > 0);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(longest_avoiding(0, 2, 2, 10), Error);
  CHECK_THROWS_AS(longest_avoiding(2, 2, 1, 10), Error);
  CHECK_THROWS_AS(count_avoiding(2, 0, 2, 10), Error);
}

TEST_CASE("serialized tables") {
  const auto table = count_avoiding(2, 2, 2, 4);
  CHECK(to_tsv(table) ==
        "# schema=1 k=2 m=2 p=2 fix_first_letter=0 complete=1\n"
        "length\tcount\n1\t2\n2\t2\n3\t2\n4\t0\n");
  const Json j = to_json(longest_avoiding(2, 2, 2, 100));
  CHECK(j.at("outcome") == "maximal");
  CHECK(j.at("maximal_length") == 3);
  CHECK(j.at("schema") == 1);
}

}  // TEST_SUITE
