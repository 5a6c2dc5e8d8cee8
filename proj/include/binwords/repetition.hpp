#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "binwords/morphism.hpp"
#include "binwords/signature.hpp"
#include "binwords/word.hpp"

namespace binwords {

/// p consecutive blocks of length `period` starting at `start`, pairwise
/// m-binomially equivalent.
struct Occurrence {
  std::size_t start = 0;
  std::size_t period = 0;
  int power = 0;
  int order = 0;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct DetectOptions {
  unsigned threads = 1;
};

/// Leftmost (m,p)-binomial power of w, shortest period among those at the
/// leftmost start. Single- and multi-threaded runs return the same answer.
std::optional<Occurrence> find_power(const Word& w, int order, int power,
                                     const DetectOptions& options = {});

bool is_power_free(const Word& w, int order, int power, const DetectOptions& options = {});

/// Shortest-period (m,p)-power that ends exactly at the end of the indexed
/// word. The building block of suffix-anchored search.
std::optional<Occurrence> power_ending_at_end(const PrefixIndex& index, int power);

/// Power test on an index the caller already built, scanning every start.
std::optional<Occurrence> find_power(const PrefixIndex& index, int power,
                                     const DetectOptions& options = {});

struct ScanReport {
  std::size_t word_len = 0;
  int order = 0;
  int power = 0;
  std::optional<Occurrence> occurrence;
  double elapsed_ms = 0.0;
  std::uint64_t candidates = 0;  // block tuples examined, roughly n^2 / (2p)
};

/// Generates the length-n prefix of f^ω(a) and searches it for a power.
ScanReport scan_fixed_point(const Morphism& f, Letter a, std::size_t n, int order, int power,
                            const DetectOptions& options = {});

}  // namespace binwords
