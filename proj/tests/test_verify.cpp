#include <doctest.h>

#include <string>

#include "binwords/error.hpp"
#include "binwords/serialize.hpp"
#include "binwords/verify.hpp"

using namespace binwords;

namespace {

CheckOptions faulty() {
  CheckOptions o;
  o.inject_fault = true;
  return o;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("erasure") {
  CHECK(check_erasure(24).passed());
  CHECK(check_erasure(1).passed());
  CHECK(check_erasure(5000).passed());
  CHECK_FALSE(check_erasure(24, faulty()).passed());
}

TEST_CASE("mirror closure") {
  CHECK(check_mirror_closure(1, 1, 10).passed());
  const auto r = check_mirror_closure(300, 8, 3000);
  CHECK(r.passed());
  CHECK(r.instances > 0);
  CHECK_FALSE(check_mirror_closure(300, 8, 3000, faulty()).passed());
}

TEST_CASE("desubstitution") {
  const auto r = check_desubstitution(400, 20);
  CHECK(r.passed());
  CHECK(r.instances > 0);
  CHECK_FALSE(check_desubstitution(400, 20, faulty()).passed());
}

TEST_CASE("matrix identity") {
  const auto r = check_matrix_identity(200, 30);
  CHECK(r.passed());
  CHECK(r.instances == 203);
  CHECK_FALSE(check_matrix_identity(200, 30, faulty()).passed());
}

TEST_CASE("cyclic shifts") {
  CHECK(check_cyclic_shift(300, 20, 6).passed());
  CHECK_FALSE(check_cyclic_shift(300, 20, 6, faulty()).passed());
}

TEST_CASE("cube lemmas") {
  const auto one = check_cube_lemma_one(1);
  CHECK(one.passed());
  CHECK(one.instances == 16);
  CHECK(check_cube_lemma_one(4).passed());
  CHECK(check_cube_lemma_two(4).passed());
  CHECK_FALSE(check_cube_lemma_one(4, faulty()).passed());
  CHECK_FALSE(check_cube_lemma_two(4, faulty()).passed());
}

TEST_CASE("h preserves cube-freeness") {
  CHECK(check_morphism_cube_freeness(20, 20, 6).passed());
  CHECK_FALSE(check_morphism_cube_freeness(20, 20, 6, faulty()).passed());
}

TEST_CASE("prefix freeness") {
  CHECK(check_square_free_prefix(500).passed());
  CHECK(check_cube_free_prefix(500).passed());
  CHECK_FALSE(check_square_free_prefix(500, faulty()).passed());
  CHECK_FALSE(check_cube_free_prefix(500, faulty()).passed());
}

TEST_CASE("property suites flip under faults") {
  using Fn = CheckReport (*)(std::size_t, const CheckOptions&);
  for (Fn fn : {Fn{check_subword_oracle}, Fn{check_pair_identity}, Fn{check_diagonal_identity},
                Fn{check_streaming}, Fn{check_concat}, Fn{check_factor}}) {
    const auto good = fn(300, CheckOptions{});
    INFO(good.name);
    CHECK(good.passed());
    CHECK(good.instances >= 300);
    CHECK_FALSE(fn(300, faulty()).passed());
  }
}

TEST_CASE("violations are capped but counted") {
  const auto r = check_pair_identity(500, faulty());
  CHECK(r.violation_count == 500);
  CHECK(r.violations.size() < 500);
  CHECK(r.fault_injected);
}

TEST_CASE("run_all") {
  VerifyConfig config;
  config.scale_scan(10);
  config.matrix_trials = 100;
  config.cyclic_trials = 100;
  config.cube_free_trials = 10;
  config.cube_free_exhaustive_len = 6;
  config.property_trials = 100;
  config.cube_lemma_n = 3;
  const auto summary = run_all(config);
  CHECK(summary.passed());
  CHECK(summary.reports.size() == check_names().size());

  config.checks = {"matrix"};
  config.faults = {"matrix"};
  const auto faulted = run_all(config);
  REQUIRE(faulted.reports.size() == 1);
  CHECK_FALSE(faulted.passed());

  config.checks = {"no-such-check"};
  CHECK_THROWS_AS(run_all(config), Error);
}

TEST_CASE("reports serialize reproducibly") {
  VerifyConfig config;
  config.checks = {"matrix", "pair-identity", "cube-lemma-one"};
  config.matrix_trials = 500;
  config.property_trials = 500;
  config.cube_lemma_n = 3;
  const auto a = to_json(run_all(config)).dump();
  config.threads = 3;
  const auto b = to_json(run_all(config)).dump();
  CHECK(a == b);
  CHECK(a.find("elapsed_ms") == std::string::npos);
}

}  // TEST_SUITE
