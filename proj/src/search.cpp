#include "binwords/search.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "binwords/repetition.hpp"
#include "binwords/signature.hpp"

namespace binwords {

const char* to_string(SearchOutcome outcome) noexcept {
  switch (outcome) {
    case SearchOutcome::Maximal: return "maximal";
    case SearchOutcome::CapReached: return "cap_reached";
    case SearchOutcome::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

namespace {

class BudgetGuard {
 public:
  BudgetGuard(const Budget& budget, std::atomic<std::uint64_t>& nodes)
      : budget_(budget), nodes_(nodes), begin_(std::chrono::steady_clock::now()) {}

  // Counts one node; false once the budget is spent.
  bool charge() {
    const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (budget_.max_nodes != 0 && n > budget_.max_nodes) return false;
    if (budget_.max_ms != 0 && (n & 63u) == 0) {
      const auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - begin_);
      if (static_cast<std::uint64_t>(spent.count()) >= budget_.max_ms) return false;
    }
    return true;
  }

 private:
  Budget budget_;
  std::atomic<std::uint64_t>& nodes_;
  std::chrono::steady_clock::time_point begin_;
};

struct Walk {
  std::vector<std::uint64_t> counts;
  std::size_t best = 0;
  std::vector<Letter> witness;
  bool hit_limit = false;   // some word reached depth_limit
  bool exhausted = false;   // budget ran out
};

// Depth-first walk below the root, first letters restricted to
// [first_lo, first_hi). With stop_at_limit the walk ends as soon as a word of
// length depth_limit is accepted; otherwise words at the limit are counted and
// not extended.
Walk walk(int k, int order, int power, std::size_t depth_limit, int first_lo, int first_hi,
          bool stop_at_limit, BudgetGuard& guard, const SearchOptions& options,
          std::atomic<std::uint64_t>& nodes) {
  Walk out;
  if (depth_limit == 0) {
    out.hit_limit = true;
    return out;
  }
  PrefixIndex index(Alphabet(k), order);
  // Both grow with the depth reached, so a huge cap costs nothing up front.
  out.counts.assign(1, 0);
  std::vector<int> next{first_lo};
  std::size_t depth = 0;
  for (;;) {
    const int limit = depth == 0 ? first_hi : k;
    if (next[depth] >= limit) {
      if (depth == 0) break;
      index.pop_back();
      --depth;
      continue;
    }
    const int c = next[depth]++;
    if (!guard.charge()) {
      out.exhausted = true;
      break;
    }
    if (options.progress && options.progress_every != 0) {
      const std::uint64_t n = nodes.load(std::memory_order_relaxed);
      if (n % options.progress_every == 0) options.progress(depth + 1, n, out.counts[depth]);
    }
    index.push_back(static_cast<Letter>(c));
    if (power_ending_at_end(index, power)) {
      index.pop_back();
      continue;
    }
    ++out.counts[depth];
    const std::size_t len = depth + 1;
    if (len > out.best) {
      out.best = len;
      out.witness.clear();
      for (std::size_t i = 0; i < len; ++i) out.witness.push_back(index.letter(i));
    }
    if (len == depth_limit) {
      out.hit_limit = true;
      if (stop_at_limit) break;
      index.pop_back();
      continue;
    }
    depth = len;
    if (next.size() <= depth) next.push_back(0);
    next[depth] = 0;
    if (out.counts.size() <= depth) out.counts.push_back(0);
  }
  return out;
}

void check_search_parameters(int k, int order, int power) {
  static_cast<void>(Alphabet(k));
  if (order < 1) fail(ErrorCode::InvalidInput, "order must be >= 1");
  if (power < 2) fail(ErrorCode::InvalidInput, "power must be >= 2");
}

}  // namespace

SearchCertificate longest_avoiding(int alphabet_size, int order, int power, std::size_t cap,
                                   const SearchOptions& options) {
  check_search_parameters(alphabet_size, order, power);
  if (cap < 1) fail(ErrorCode::InvalidInput, "cap must be >= 1");
  std::atomic<std::uint64_t> nodes{0};
  BudgetGuard guard(options.budget, nodes);
  const int first_hi = options.fix_first_letter ? 1 : alphabet_size;
  Walk result = walk(alphabet_size, order, power, cap, 0, first_hi, true, guard, options, nodes);

  SearchCertificate cert;
  cert.alphabet_size = alphabet_size;
  cert.order = order;
  cert.power = power;
  cert.cap = cap;
  cert.fix_first_letter = options.fix_first_letter;
  cert.nodes = nodes.load();
  cert.length = result.best;
  cert.witness = Word(Alphabet(alphabet_size), result.witness);
  cert.counts = std::move(result.counts);
  while (!cert.counts.empty() && cert.counts.back() == 0) cert.counts.pop_back();
  if (result.hit_limit) {
    cert.outcome = SearchOutcome::CapReached;
  } else if (result.exhausted) {
    cert.outcome = SearchOutcome::BudgetExhausted;
  } else {
    cert.outcome = SearchOutcome::Maximal;
    cert.counts_exact = true;
  }
  if (!is_power_free(cert.witness, order, power)) {
    fail(ErrorCode::Internal, "search produced a witness containing a power: " +
                                  cert.witness.str());
  }
  return cert;
}

CountTable count_avoiding(int alphabet_size, int order, int power, std::size_t max_length,
                          const SearchOptions& options) {
  check_search_parameters(alphabet_size, order, power);
  if (max_length > kMaxCountLength) {
    fail(ErrorCode::InvalidInput, "count tables stop at length " + std::to_string(kMaxCountLength));
  }
  std::atomic<std::uint64_t> nodes{0};
  BudgetGuard guard(options.budget, nodes);
  const int first_hi = options.fix_first_letter ? 1 : alphabet_size;
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(first_hi)));

  std::vector<Walk> walks(static_cast<std::size_t>(first_hi));
  if (workers == 1) {
    walks.assign(1, walk(alphabet_size, order, power, max_length, 0, first_hi, false, guard,
                         options, nodes));
  } else {
    // One subtree per first letter, handed out round-robin.
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int first = static_cast<int>(w); first < first_hi; first += static_cast<int>(workers)) {
          walks[static_cast<std::size_t>(first)] = walk(alphabet_size, order, power, max_length,
                                                        first, first + 1, false, guard, options,
                                                        nodes);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  CountTable table;
  table.alphabet_size = alphabet_size;
  table.order = order;
  table.power = power;
  table.max_length = max_length;
  table.fix_first_letter = options.fix_first_letter;
  table.counts.assign(max_length, 0);
  for (const Walk& w : walks) {
    for (std::size_t i = 0; i < w.counts.size(); ++i) table.counts[i] += w.counts[i];
    table.complete = table.complete && !w.exhausted;
  }
  table.nodes = nodes.load();
  return table;
}

}  // namespace binwords
