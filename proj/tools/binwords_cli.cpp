#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "binwords/binwords.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

struct Failure {
  bw_status status;
  std::string message;
};

int exit_code_for(bw_status s) {
  switch (s) {
    case BW_OK: return kOk;
    case BW_ERR_BUDGET: return kBudget;
    case BW_ERR_OVERFLOW:
    case BW_ERR_INTERNAL: return kViolation;
    default: return kUsage;
  }
}

void check(bw_status s) {
  if (s != BW_OK) throw Failure{s, bw_last_error()};
}

struct WordDeleter {
  void operator()(bw_word* w) const { bw_word_free(w); }
};
struct MorphismDeleter {
  void operator()(bw_morphism* f) const { bw_morphism_free(f); }
};
using WordPtr = std::unique_ptr<bw_word, WordDeleter>;
using MorphismPtr = std::unique_ptr<bw_morphism, MorphismDeleter>;

// Takes ownership of a malloc'd string from the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  bw_string_free(s);
  return out;
}

WordPtr parse_word(const std::string& text, int alphabet = 0) {
  bw_word* w = nullptr;
  check(bw_word_parse(text.c_str(), alphabet, &w));
  return WordPtr(w);
}

std::string word_text(const bw_word* w) {
  char* s = nullptr;
  check(bw_word_to_string(w, &s));
  return take(s);
}

int inferred_alphabet(const std::vector<std::string>& words) {
  int largest = 1;
  for (const auto& w : words) {
    for (char c : w) {
      if (c >= '0' && c <= '9') largest = std::max(largest, c - '0');
    }
  }
  return largest + 1;
}

struct MorphismChoice {
  std::string preset;
  std::string spec;
  int letter = -1;
};

void add_morphism_options(CLI::App* cmd, MorphismChoice& m) {
  auto* p = cmd->add_option("--preset", m.preset, "named morphism: g, g2, gtilde, gtilde2, h, e");
  auto* s = cmd->add_option("--morphism", m.spec, "explicit morphism, e.g. 0->001,1->011");
  p->excludes(s);
  cmd->add_option("--letter", m.letter, "seed letter for fixed points (default: preset's)");
}

MorphismPtr load_morphism(MorphismChoice& m) {
  bw_morphism* f = nullptr;
  if (!m.preset.empty()) {
    int seed = 0;
    check(bw_morphism_preset(m.preset.c_str(), &f, &seed));
    if (m.letter < 0) m.letter = seed;
  } else if (!m.spec.empty()) {
    check(bw_morphism_parse(m.spec.c_str(), &f));
    if (m.letter < 0) m.letter = 0;
  } else {
    throw Failure{BW_ERR_INVALID_INPUT, "one of --preset or --morphism is required"};
  }
  return MorphismPtr(f);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Failure{BW_ERR_INVALID_INPUT, "cannot open output file '" + path + "'"};
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void line(const std::string& text) { stream() << text << '\n'; }
  void json(const std::string& text) { stream() << Json::parse(text).dump(2) << '\n'; }

 private:
  std::ofstream file_;
};

// Hard stop for commands without a cooperative budget.
class Watchdog {
 public:
  explicit Watchdog(std::uint64_t ms) {
    if (ms == 0) return;
    thread_ = std::thread([this, ms] {
      std::unique_lock lock(mutex_);
      if (!cv_.wait_for(lock, std::chrono::milliseconds(ms), [this] { return done_; })) {
        std::fprintf(stderr, "error: BINWORDS_BUDGET_MS=%llu exceeded\n",
                     static_cast<unsigned long long>(ms));
        std::fflush(stdout);
        std::_Exit(kBudget);
      }
    });
  }
  ~Watchdog() {
    if (!thread_.joinable()) return;
    {
      std::lock_guard lock(mutex_);
      done_ = true;
    }
    cv_.notify_all();
    thread_.join();
  }

 private:
  std::thread thread_;
  std::mutex mutex_;
  std::condition_variable cv_;
  bool done_ = false;
};

std::uint64_t env_budget_ms() {
  const char* raw = std::getenv("BINWORDS_BUDGET_MS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw Failure{BW_ERR_PARSE, "BINWORDS_BUDGET_MS must be an integer"};
  return v;
}

std::uint64_t tighter(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  return std::min(a, b);
}

void print_progress(size_t depth, uint64_t nodes, uint64_t alive, void*) {
  std::fprintf(stderr, "depth=%zu nodes=%llu alive=%llu\n", depth,
               static_cast<unsigned long long>(nodes), static_cast<unsigned long long>(alive));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binomial equivalence, morphic words and binomial power avoidance"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(bw_version()));

  unsigned threads = 1;
  bool timing = false;
  std::string output_path;
  app.add_option("--threads", threads, "worker threads (default 1)")->check(CLI::Range(1u, 256u));
  app.add_flag("--timing", timing, "include elapsed times in JSON (breaks byte-reproducibility)");
  app.add_option("-o,--output", output_path, "write result to a file instead of stdout");

  int order = 2;
  int power = 2;
  int alphabet = 0;

  // binomial
  std::string bin_u, bin_x;
  auto* binomial = app.add_subcommand("binomial", "count occurrences of x as a scattered subword of u");
  binomial->add_option("u", bin_u)->required();
  binomial->add_option("x", bin_x)->required();

  // signature
  std::string sig_u;
  auto* sig = app.add_subcommand("signature", "all binomial coefficients of u up to order m");
  sig->add_option("u", sig_u)->required();
  sig->add_option("-m", order, "order")->capture_default_str();
  sig->add_option("-k", alphabet, "alphabet size (default: inferred)");

  // equiv
  std::string eq_u, eq_v;
  auto* equiv = app.add_subcommand("equiv", "decide m-binomial equivalence");
  equiv->add_option("u", eq_u)->required();
  equiv->add_option("v", eq_v)->required();
  equiv->add_option("-m", order, "order")->capture_default_str();

  // generate
  std::vector<std::string> gen_args;
  MorphismChoice gen_m;
  auto* generate = app.add_subcommand("generate", "prefix of a morphic fixed point");
  generate->add_option("args", gen_args, "PRESET N, or N with --morphism")
      ->required()
      ->expected(1, 2);
  generate->add_option("--morphism", gen_m.spec, "explicit morphism instead of a preset");
  generate->add_option("--letter", gen_m.letter, "seed letter");

  // apply
  std::string apply_w;
  MorphismChoice apply_m;
  auto* apply = app.add_subcommand("apply", "image of a word under a morphism");
  apply->add_option("word", apply_w)->required();
  add_morphism_options(apply, apply_m);

  // decode
  std::string decode_w;
  MorphismChoice decode_m;
  auto* decode = app.add_subcommand("decode", "greedy preimage under a prefix-code morphism");
  decode->add_option("word", decode_w)->required();
  add_morphism_options(decode, decode_m);

  // lift
  MorphismChoice lift_m;
  auto* lift = app.add_subcommand("lift", "matrix of a morphism acting on order-m signatures");
  add_morphism_options(lift, lift_m);
  lift->add_option("-m", order, "order")->capture_default_str();

  // detect
  std::string det_word;
  std::size_t det_n = 0;
  MorphismChoice det_m;
  auto* detect = app.add_subcommand("detect", "leftmost m-binomial p-power");
  auto* det_word_opt = detect->add_option("--word", det_word, "word to scan");
  add_morphism_options(detect, det_m);
  detect->add_option("-n", det_n, "fixed-point prefix length");
  detect->add_option("-m", order, "order")->capture_default_str();
  detect->add_option("-p", power, "power")->capture_default_str();
  det_word_opt->excludes("--preset")->excludes("--morphism");

  // search and count share budget flags
  std::size_t cap = 100;
  std::size_t count_n = 10;
  std::uint64_t max_nodes = 0;
  std::uint64_t budget_ms = 0;
  bool fix_first = false;
  bool quiet = false;
  std::string format = "json";
  auto* search = app.add_subcommand("search", "longest word avoiding m-binomial p-powers");
  search->add_option("-k", alphabet, "alphabet size")->required();
  search->add_option("-m", order, "order")->capture_default_str();
  search->add_option("-p", power, "power")->capture_default_str();
  search->add_option("--cap", cap, "length cap")->capture_default_str();
  search->add_option("--max-nodes", max_nodes, "node budget (0: unlimited)");
  search->add_option("--budget-ms", budget_ms, "wall-clock budget (0: unlimited)");
  search->add_flag("--fix-first-letter", fix_first, "fix the first letter to 0");
  search->add_flag("-q,--quiet", quiet, "no progress lines on stderr");

  auto* count = app.add_subcommand("count", "number of avoiding words of each length");
  count->add_option("-k", alphabet, "alphabet size")->required();
  count->add_option("-m", order, "order")->capture_default_str();
  count->add_option("-p", power, "power")->capture_default_str();
  count->add_option("-n", count_n, "largest length")->capture_default_str();
  count->add_option("--max-nodes", max_nodes, "node budget (0: unlimited)");
  count->add_option("--budget-ms", budget_ms, "wall-clock budget (0: unlimited)");
  count->add_flag("--fix-first-letter", fix_first, "fix the first letter to 0");
  count->add_option("--format", format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));

  // verify
  bool use_defaults = false;
  bool list_checks = false;
  std::vector<std::string> checks;
  std::vector<std::string> faults;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> scan_len;
  std::uint64_t seed = 1;
  std::string results_dir;
  auto* verify = app.add_subcommand("verify", "run the verification checks");
  verify->add_flag("--default", use_defaults, "run every check with default parameters");
  verify->add_flag("--list", list_checks, "list check names");
  verify->add_option("--check", checks, "run only these checks");
  verify->add_option("--inject-fault", faults, "negative control: corrupt these checks");
  verify->add_option("--trials", trials, "randomized trial count for the selected checks");
  verify->add_option("--scan-len", scan_len, "prefix length for fixed-point checks");
  verify->add_option("--seed", seed, "random seed")->capture_default_str();
  verify->add_option("--results-dir", results_dir, "write one JSON report per check here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const std::uint64_t env_ms = env_budget_ms();
    const bool cooperative = search->parsed() || count->parsed();
    Watchdog watchdog(cooperative ? 0 : env_ms);
    Output out(output_path);

    if (binomial->parsed()) {
      const int k = inferred_alphabet({bin_u, bin_x});
      auto u = parse_word(bin_u, k);
      auto x = parse_word(bin_x, k);
      uint64_t n = 0;
      check(bw_subword_count(u.get(), x.get(), &n));
      out.line(std::to_string(n));
    } else if (sig->parsed()) {
      auto u = parse_word(sig_u, alphabet);
      char* s = nullptr;
      check(bw_signature_json(u.get(), order, &s));
      out.json(take(s));
    } else if (equiv->parsed()) {
      const int k = inferred_alphabet({eq_u, eq_v});
      auto u = parse_word(eq_u, k);
      auto v = parse_word(eq_v, k);
      int same = 0;
      check(bw_equivalent(u.get(), v.get(), order, &same));
      out.line(same ? "true" : "false");
    } else if (generate->parsed()) {
      if (gen_args.size() != (gen_m.spec.empty() ? 2u : 1u)) {
        throw Failure{BW_ERR_INVALID_INPUT, "expected PRESET N, or N with --morphism"};
      }
      if (gen_args.size() == 2) gen_m.preset = gen_args[0];
      std::size_t gen_n = 0;
      try {
        std::size_t used = 0;
        gen_n = std::stoull(gen_args.back(), &used);
        if (used != gen_args.back().size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw Failure{BW_ERR_PARSE, "prefix length must be an integer, got '" + gen_args.back() + "'"};
      }
      auto f = load_morphism(gen_m);
      bw_word* w = nullptr;
      check(bw_fixed_point_prefix(f.get(), gen_m.letter, gen_n, &w));
      WordPtr owned(w);
      out.line(word_text(w));
    } else if (apply->parsed()) {
      auto f = load_morphism(apply_m);
      auto u = parse_word(apply_w);
      bw_word* img = nullptr;
      check(bw_morphism_apply(f.get(), u.get(), &img));
      WordPtr owned(img);
      out.line(word_text(img));
    } else if (decode->parsed()) {
      auto f = load_morphism(decode_m);
      auto w = parse_word(decode_w);
      bw_word* pre = nullptr;
      size_t consumed = 0;
      check(bw_decode(w.get(), f.get(), &pre, &consumed));
      WordPtr owned(pre);
      Json j{{"schema", 1},
             {"preimage", word_text(pre)},
             {"consumed", consumed},
             {"complete", consumed == bw_word_length(w.get())}};
      out.json(j.dump());
    } else if (lift->parsed()) {
      auto f = load_morphism(lift_m);
      char* s = nullptr;
      check(bw_lift_json(f.get(), order, &s));
      out.json(take(s));
    } else if (detect->parsed()) {
      char* s = nullptr;
      int found = 0;
      if (!det_word.empty() || det_word_opt->count() > 0) {
        auto w = parse_word(det_word);
        check(bw_detect_json(w.get(), order, power, threads, timing, &s, &found));
      } else {
        auto f = load_morphism(det_m);
        check(bw_scan_fixed_point_json(f.get(), det_m.letter, det_n, order, power, threads,
                                       timing, &s, &found));
      }
      out.json(take(s));
      return found ? kViolation : kOk;
    } else if (search->parsed()) {
      const bw_budget budget{max_nodes, tighter(budget_ms, env_ms)};
      char* s = nullptr;
      const bw_status st = bw_search_json(alphabet, order, power, cap, &budget, fix_first,
                                          quiet ? nullptr : print_progress, nullptr, &s);
      if (st == BW_ERR_BUDGET && s) {
        out.json(take(s));
        std::cerr << "error: " << bw_last_error() << '\n';
        return kBudget;
      }
      check(st);
      out.json(take(s));
    } else if (count->parsed()) {
      const bw_budget budget{max_nodes, tighter(budget_ms, env_ms)};
      char* s = nullptr;
      const bw_status st = bw_count(alphabet, order, power, count_n, &budget, fix_first, threads,
                                    format.c_str(), &s);
      if (st != BW_OK && st != BW_ERR_BUDGET) check(st);
      std::string text = take(s);
      if (format == "json") {
        out.json(text);
      } else {
        out.stream() << text;
      }
      if (st == BW_ERR_BUDGET) {
        std::cerr << "error: " << bw_last_error() << '\n';
        return kBudget;
      }
    } else if (verify->parsed()) {
      if (list_checks) {
        char* s = nullptr;
        check(bw_check_names_json(&s));
        for (const auto& name : Json::parse(take(s))) out.line(name.get<std::string>());
        return kOk;
      }
      if (use_defaults && (!checks.empty() || !faults.empty() || trials || scan_len)) {
        throw Failure{BW_ERR_INVALID_INPUT, "--default cannot be combined with other options"};
      }
      Json config{{"seed", seed}, {"threads", threads}};
      // A fault without --check narrows the run to the faulted checks.
      if (checks.empty() && !faults.empty()) checks = faults;
      if (!checks.empty()) config["checks"] = checks;
      if (!faults.empty()) config["faults"] = faults;
      if (scan_len) config["scan_len"] = *scan_len;
      if (trials) {
        for (const char* key :
             {"matrix_trials", "cyclic_trials", "cube_free_trials", "property_trials"}) {
          config[key] = *trials;
        }
      }
      char* s = nullptr;
      int passed = 0;
      check(bw_verify_json(config.dump().c_str(), timing, &s, &passed));
      const Json summary = Json::parse(take(s));
      if (!results_dir.empty()) {
        std::filesystem::create_directories(results_dir);
        for (const auto& report : summary.at("checks")) {
          const auto path =
              std::filesystem::path(results_dir) / (report.at("name").get<std::string>() + ".json");
          std::ofstream file(path, std::ios::binary | std::ios::trunc);
          if (!file) throw Failure{BW_ERR_INVALID_INPUT, "cannot write " + path.string()};
          file << report.dump(2) << '\n';
        }
      }
      out.json(summary.dump());
      for (const auto& report : summary.at("checks")) {
        std::cerr << (report.at("passed").get<bool>() ? "PASS " : "FAIL ")
                  << report.at("name").get<std::string>() << " ("
                  << report.at("instances").get<std::uint64_t>() << " instances, "
                  << report.at("violation_count").get<std::uint64_t>() << " violations)\n";
      }
      return passed ? kOk : kViolation;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << " [" << bw_status_name(f.status) << "]\n";
    return exit_code_for(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  }
  return kOk;
}
