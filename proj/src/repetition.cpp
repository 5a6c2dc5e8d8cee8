#include "binwords/repetition.hpp"

#include <algorithm>
#include <chrono>
#include <thread>
#include <vector>

namespace binwords {

namespace {

void check_parameters(int order, int power) {
  if (power < 2) fail(ErrorCode::InvalidInput, "power must be >= 2");
  if (order < 1) fail(ErrorCode::InvalidInput, "order must be >= 1");
}

// Blocks [start + t*period, start + (t+1)*period) for t < power all equivalent
// to the first one; equivalence is transitive so that suffices.
bool is_power_at(const PrefixIndex& index, std::size_t start, std::size_t period, int power) {
  for (int t = 1; t < power; ++t) {
    const std::size_t block = start + static_cast<std::size_t>(t) * period;
    if (!index.factors_equivalent(start, start + period, block, block + period)) return false;
  }
  return true;
}

std::optional<Occurrence> scan_starts(const PrefixIndex& index, int power, std::size_t first,
                                      std::size_t last, std::uint64_t& candidates) {
  const std::size_t n = index.size();
  const auto p = static_cast<std::size_t>(power);
  for (std::size_t start = first; start < last; ++start) {
    for (std::size_t period = 1; start + p * period <= n; ++period) {
      ++candidates;
      if (is_power_at(index, start, period, power)) {
        return Occurrence{start, period, power, index.layout().order()};
      }
    }
  }
  return std::nullopt;
}

std::optional<Occurrence> find_power_counted(const PrefixIndex& index, int power,
                                             const DetectOptions& options,
                                             std::uint64_t& candidates) {
  check_parameters(index.layout().order(), power);
  const std::size_t n = index.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, 64));
  if (workers == 1 || n < 64) return scan_starts(index, power, 0, n, candidates);

  // Interleaved chunks balance the triangular workload; the merged answer is
  // the minimum under (start, period), which is what the serial scan returns.
  const std::size_t chunk = std::max<std::size_t>(16, n / (workers * 8));
  std::vector<std::optional<Occurrence>> best(workers);
  std::vector<std::uint64_t> counted(workers, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t begin = w * chunk; begin < n; begin += workers * chunk) {
        auto hit = scan_starts(index, power, begin, std::min(n, begin + chunk), counted[w]);
        if (hit) {
          best[w] = hit;
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::optional<Occurrence> result;
  for (unsigned w = 0; w < workers; ++w) {
    candidates += counted[w];
    if (best[w] && (!result || best[w]->start < result->start)) result = best[w];
  }
  return result;
}

}  // namespace

std::optional<Occurrence> find_power(const PrefixIndex& index, int power,
                                     const DetectOptions& options) {
  std::uint64_t candidates = 0;
  return find_power_counted(index, power, options, candidates);
}

std::optional<Occurrence> find_power(const Word& w, int order, int power,
                                     const DetectOptions& options) {
  check_parameters(order, power);
  return find_power(PrefixIndex(w, order), power, options);
}

bool is_power_free(const Word& w, int order, int power, const DetectOptions& options) {
  return !find_power(w, order, power, options).has_value();
}

std::optional<Occurrence> power_ending_at_end(const PrefixIndex& index, int power) {
  check_parameters(index.layout().order(), power);
  const std::size_t n = index.size();
  const auto p = static_cast<std::size_t>(power);
  for (std::size_t period = 1; p * period <= n; ++period) {
    const std::size_t start = n - p * period;
    if (is_power_at(index, start, period, power)) {
      return Occurrence{start, period, power, index.layout().order()};
    }
  }
  return std::nullopt;
}

ScanReport scan_fixed_point(const Morphism& f, Letter a, std::size_t n, int order, int power,
                            const DetectOptions& options) {
  check_parameters(order, power);
  const auto begin = std::chrono::steady_clock::now();
  const Word prefix = fixed_point_prefix(f, a, n);
  const PrefixIndex index(prefix, order);
  ScanReport report;
  report.word_len = n;
  report.order = order;
  report.power = power;
  report.occurrence = find_power_counted(index, power, options, report.candidates);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin).count();
  return report;
}

}  // namespace binwords
