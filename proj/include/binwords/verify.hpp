#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace binwords {

/// Outcome of one machine check. A check passes iff it recorded no violation.
struct CheckReport {
  std::string name;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::uint64_t instances = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::string> violations;  // first few, for diagnosis
  std::vector<std::string> notes;
  bool fault_injected = false;
  double elapsed_ms = 0.0;

  bool passed() const noexcept { return violation_count == 0; }
  void violation(std::string what);
};

struct CheckOptions {
  std::uint64_t seed = 1;
  /// Negative control: deliberately corrupt the object under test so the
  /// check must report violations.
  bool inject_fault = false;
};

// Erasing every 1 from the ternary fixed point x of g leaves (02)^ω.
CheckReport check_erasure(std::size_t n, const CheckOptions& options = {});

// Every factor (length <= max_factor) of the first scan_len letters of x has
// its mirror within the first `margin` letters; misses are re-checked against
// a prefix 100 times longer before they count.
CheckReport check_mirror_closure(std::size_t scan_len, std::size_t max_factor, std::size_t margin,
                                 const CheckOptions& options = {});

// Desubstitution of abelian squares uv of x under g, directly or through the
// mirror, plus preservation of abelian equivalence and lambda.
CheckReport check_desubstitution(std::size_t scan_len, std::size_t max_len,
                                 const CheckOptions& options = {});

CheckReport check_matrix_identity(std::size_t trials, std::size_t max_len,
                                  const CheckOptions& options = {});

CheckReport check_cyclic_shift(std::size_t trials, std::size_t max_len,
                               std::size_t exhaustive_len = 10, const CheckOptions& options = {});

CheckReport check_cube_lemma_one(int n_max, const CheckOptions& options = {});
CheckReport check_cube_lemma_two(int n_max, const CheckOptions& options = {});

// h maps 2-binomial-cube-free binary words to 2-binomial-cube-free words:
// exhaustively up to exhaustive_len, then on `trials` random cube-free words
// of length up to max_len.
CheckReport check_morphism_cube_freeness(std::size_t trials, std::size_t max_len,
                                         std::size_t exhaustive_len = 10,
                                         const CheckOptions& options = {});

CheckReport check_square_free_prefix(std::size_t n, const CheckOptions& options = {});
CheckReport check_cube_free_prefix(std::size_t n, const CheckOptions& options = {});

// Property suites over the signature machinery.
CheckReport check_subword_oracle(std::size_t trials, const CheckOptions& options = {});
CheckReport check_pair_identity(std::size_t trials, const CheckOptions& options = {});
CheckReport check_diagonal_identity(std::size_t trials, const CheckOptions& options = {});
CheckReport check_streaming(std::size_t trials, const CheckOptions& options = {});
CheckReport check_concat(std::size_t trials, const CheckOptions& options = {});
CheckReport check_factor(std::size_t trials, const CheckOptions& options = {});

struct VerifyConfig {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::set<std::string> checks;  // empty: every check
  std::set<std::string> faults;  // checks to run as negative controls

  std::size_t erasure_len = 5000;
  std::size_t mirror_scan = 2000;
  std::size_t mirror_max_factor = 15;
  std::size_t mirror_margin = 20000;
  std::size_t desub_scan = 3000;
  std::size_t desub_max_len = 40;
  std::size_t matrix_trials = 100000;
  std::size_t matrix_max_len = 100;
  std::size_t cyclic_trials = 10000;
  std::size_t cyclic_max_len = 30;
  std::size_t cyclic_exhaustive_len = 10;
  int cube_lemma_n = 6;
  std::size_t cube_free_exhaustive_len = 10;
  std::size_t cube_free_trials = 200;
  std::size_t cube_free_max_len = 40;
  std::size_t square_free_len = 5000;
  std::size_t cube_free_len = 5000;
  std::size_t property_trials = 10000;

  /// Shrinks every prefix-based check to scan_len letters (margins scale
  /// along), for quick runs.
  void scale_scan(std::size_t scan_len);
};

/// Names accepted in VerifyConfig::checks and ::faults, in run order.
const std::vector<std::string>& check_names();

struct VerifySummary {
  std::vector<CheckReport> reports;
  bool passed() const noexcept;
};

VerifySummary run_all(const VerifyConfig& config);

}  // namespace binwords
