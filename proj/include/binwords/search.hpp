#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "binwords/word.hpp"

namespace binwords {

/// Limits on a search. Zero means unlimited. Node limits abort at the same
/// point on every run; the wall-clock limit is polled every 64 nodes.
struct Budget {
  std::uint64_t max_nodes = 0;
  std::uint64_t max_ms = 0;
};

/// Progress callback: (depth, nodes visited so far, live nodes at that depth).
using ProgressFn = std::function<void(std::size_t, std::uint64_t, std::uint64_t)>;

struct SearchOptions {
  Budget budget;
  bool fix_first_letter = false;  // letter-permutation symmetry reduction
  unsigned threads = 1;           // count_avoiding only
  ProgressFn progress;            // called every `progress_every` nodes
  std::uint64_t progress_every = 1u << 20;
};

enum class SearchOutcome { Maximal, CapReached, BudgetExhausted };

const char* to_string(SearchOutcome outcome) noexcept;

struct SearchCertificate {
  int alphabet_size = 0;
  int order = 0;
  int power = 0;
  std::size_t cap = 0;
  SearchOutcome outcome = SearchOutcome::Maximal;
  /// Longest power-free word reached; for Maximal, no power-free word is
  /// longer. First such word in lexicographic order.
  std::size_t length = 0;
  Word witness{Alphabet(1)};
  /// counts[n-1] = power-free words of length n visited. Exact when the tree
  /// was exhausted (Maximal); a lower bound otherwise.
  std::vector<std::uint64_t> counts;
  bool counts_exact = false;
  bool fix_first_letter = false;
  std::uint64_t nodes = 0;
};

/// Depth-first search over words on {0..k-1} in lexicographic order, pruning
/// every node whose newest letter completes an (m,p)-power.
SearchCertificate longest_avoiding(int alphabet_size, int order, int power, std::size_t cap,
                                   const SearchOptions& options = {});

struct CountTable {
  int alphabet_size = 0;
  int order = 0;
  int power = 0;
  std::size_t max_length = 0;
  bool fix_first_letter = false;
  bool complete = true;  // false if the budget ran out
  std::vector<std::uint64_t> counts;  // counts[n-1] for n = 1..max_length
  std::uint64_t nodes = 0;
};

inline constexpr std::size_t kMaxCountLength = 1'000'000;

/// Exact number of (m,p)-binomial-power-free words of each length up to
/// max_length.
CountTable count_avoiding(int alphabet_size, int order, int power, std::size_t max_length,
                          const SearchOptions& options = {});

}  // namespace binwords
