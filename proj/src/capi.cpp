#include "binwords/binwords.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

#include "binwords/morphism.hpp"
#include "binwords/repetition.hpp"
#include "binwords/search.hpp"
#include "binwords/serialize.hpp"
#include "binwords/signature.hpp"
#include "binwords/verify.hpp"
#include "binwords/word.hpp"

struct bw_word {
  binwords::Word value;
};

struct bw_morphism {
  binwords::Morphism value;
};

namespace {

using namespace binwords;

thread_local std::string last_error;

bw_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return BW_ERR_INVALID_INPUT;
    case ErrorCode::Parse: return BW_ERR_PARSE;
    case ErrorCode::UnsupportedOrder: return BW_ERR_UNSUPPORTED_ORDER;
    case ErrorCode::Overflow: return BW_ERR_OVERFLOW;
    case ErrorCode::Bounds: return BW_ERR_BOUNDS;
    case ErrorCode::Unsupported: return BW_ERR_UNSUPPORTED;
    case ErrorCode::NoLinearAction: return BW_ERR_NO_LINEAR_ACTION;
    case ErrorCode::Budget: return BW_ERR_BUDGET;
    case ErrorCode::Internal: return BW_ERR_INTERNAL;
  }
  return BW_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread's message.
template <typename Body>
bw_status guarded(Body&& body) noexcept {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const Json::exception& e) {
    last_error = e.what();
    return BW_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BW_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BW_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::InvalidInput, std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Letter letter_of(const Morphism& f, int letter) {
  if (!f.alphabet().contains(letter)) {
    fail(ErrorCode::InvalidInput, "letter " + std::to_string(letter) + " outside alphabet");
  }
  return static_cast<Letter>(letter);
}

Budget budget_of(const bw_budget* b) { return b ? Budget{b->max_nodes, b->max_ms} : Budget{}; }

template <typename T>
T value_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

extern "C" {

const char* bw_version(void) { return "1.0.0"; }

const char* bw_last_error(void) { return last_error.c_str(); }

const char* bw_status_name(bw_status status) {
  switch (status) {
    case BW_OK: return "ok";
    case BW_ERR_INVALID_INPUT: return "invalid-input";
    case BW_ERR_PARSE: return "parse";
    case BW_ERR_UNSUPPORTED_ORDER: return "unsupported-order";
    case BW_ERR_OVERFLOW: return "overflow";
    case BW_ERR_BOUNDS: return "bounds";
    case BW_ERR_UNSUPPORTED: return "unsupported";
    case BW_ERR_NO_LINEAR_ACTION: return "no-linear-action";
    case BW_ERR_BUDGET: return "budget";
    case BW_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void bw_string_free(char* s) { std::free(s); }

bw_status bw_word_parse(const char* text, int alphabet_size, bw_word** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new bw_word{Word::parse(text, alphabet_size)};
    return BW_OK;
  });
}

void bw_word_free(bw_word* w) { delete w; }

size_t bw_word_length(const bw_word* w) { return w ? w->value.size() : 0; }

int bw_word_alphabet(const bw_word* w) { return w ? w->value.alphabet().size() : 0; }

bw_status bw_word_to_string(const bw_word* w, char** out) {
  return guarded([&] {
    require(w, "word");
    require(out, "out");
    *out = dup(w->value.str());
    return BW_OK;
  });
}

bw_status bw_word_mirror(const bw_word* w, bw_word** out) {
  return guarded([&] {
    require(w, "word");
    require(out, "out");
    *out = new bw_word{mirror(w->value)};
    return BW_OK;
  });
}

bw_status bw_subword_count(const bw_word* u, const bw_word* x, uint64_t* out) {
  return guarded([&] {
    require(u, "u");
    require(x, "x");
    require(out, "out");
    *out = subword_count(u->value, x->value);
    return BW_OK;
  });
}

bw_status bw_signature_json(const bw_word* u, int order, char** out_json) {
  return guarded([&] {
    require(u, "word");
    require(out_json, "out_json");
    *out_json = dup(to_json(signature(u->value, order)).dump());
    return BW_OK;
  });
}

bw_status bw_equivalent(const bw_word* u, const bw_word* v, int order, int* out) {
  return guarded([&] {
    require(u, "u");
    require(v, "v");
    require(out, "out");
    *out = equivalent(u->value, v->value, order) ? 1 : 0;
    return BW_OK;
  });
}

bw_status bw_lambda(const bw_word* u, int64_t* out) {
  return guarded([&] {
    require(u, "word");
    require(out, "out");
    *out = lambda(u->value);
    return BW_OK;
  });
}

bw_status bw_morphism_parse(const char* spec, bw_morphism** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new bw_morphism{parse_morphism(spec)};
    return BW_OK;
  });
}

bw_status bw_morphism_preset(const char* name, bw_morphism** out, int* seed) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    Morphism f = preset_morphism(name);
    if (seed) *seed = preset_seed(name);
    *out = new bw_morphism{std::move(f)};
    return BW_OK;
  });
}

void bw_morphism_free(bw_morphism* f) { delete f; }

bw_status bw_morphism_to_string(const bw_morphism* f, char** out) {
  return guarded([&] {
    require(f, "morphism");
    require(out, "out");
    *out = dup(f->value.str());
    return BW_OK;
  });
}

bw_status bw_morphism_apply(const bw_morphism* f, const bw_word* u, bw_word** out) {
  return guarded([&] {
    require(f, "morphism");
    require(u, "word");
    require(out, "out");
    *out = new bw_word{apply(f->value, u->value)};
    return BW_OK;
  });
}

bw_status bw_morphism_compose(const bw_morphism* f, const bw_morphism* g, bw_morphism** out) {
  return guarded([&] {
    require(f, "f");
    require(g, "g");
    require(out, "out");
    *out = new bw_morphism{compose(f->value, g->value)};
    return BW_OK;
  });
}

bw_status bw_morphism_mirror(const bw_morphism* f, bw_morphism** out) {
  return guarded([&] {
    require(f, "morphism");
    require(out, "out");
    *out = new bw_morphism{mirror_morphism(f->value)};
    return BW_OK;
  });
}

int bw_morphism_is_prolongable(const bw_morphism* f, int letter) {
  if (f == nullptr || !f->value.alphabet().contains(letter)) return 0;
  return is_prolongable(f->value, static_cast<Letter>(letter)) ? 1 : 0;
}

bw_status bw_fixed_point_prefix(const bw_morphism* f, int letter, size_t n, bw_word** out) {
  return guarded([&] {
    require(f, "morphism");
    require(out, "out");
    *out = new bw_word{fixed_point_prefix(f->value, letter_of(f->value, letter), n)};
    return BW_OK;
  });
}

bw_status bw_decode(const bw_word* w, const bw_morphism* f, bw_word** preimage,
                    size_t* consumed) {
  return guarded([&] {
    require(w, "word");
    require(f, "morphism");
    require(preimage, "preimage");
    require(consumed, "consumed");
    Decoding d = decode(w->value, f->value);
    *consumed = d.consumed;
    *preimage = new bw_word{std::move(d.preimage)};
    return BW_OK;
  });
}

bw_status bw_lift_json(const bw_morphism* f, int order, char** out_json) {
  return guarded([&] {
    require(f, "morphism");
    require(out_json, "out_json");
    const LiftedMatrix m = lift_matrix(f->value, order);
    const std::int64_t det = determinant(m);
    Json j{{"schema", kSchemaVersion},
           {"m", order},
           {"alphabet", f->value.alphabet().size()},
           {"matrix", to_json(m)},
           {"determinant", det},
           {"invertible", det != 0}};
    *out_json = dup(j.dump());
    return BW_OK;
  });
}

bw_status bw_detect_json(const bw_word* w, int order, int power, unsigned threads,
                         int include_timing, char** out_json, int* found) {
  return guarded([&] {
    require(w, "word");
    require(out_json, "out_json");
    const auto begin = std::chrono::steady_clock::now();
    const auto occ = find_power(w->value, order, power, DetectOptions{threads});
    Json j = detect_json(w->value.size(), order, power, occ);
    if (include_timing) {
      j["elapsed_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin)
              .count();
    }
    if (found) *found = occ ? 1 : 0;
    *out_json = dup(j.dump());
    return BW_OK;
  });
}

bw_status bw_scan_fixed_point_json(const bw_morphism* f, int letter, size_t n, int order,
                                   int power, unsigned threads, int include_timing,
                                   char** out_json, int* found) {
  return guarded([&] {
    require(f, "morphism");
    require(out_json, "out_json");
    const ScanReport report = scan_fixed_point(f->value, letter_of(f->value, letter), n, order,
                                               power, DetectOptions{threads});
    Json j = detect_json(report.word_len, order, power, report.occurrence);
    j["morphism"] = f->value.str();
    j["seed"] = letter;
    j["candidates"] = report.candidates;
    if (include_timing) j["elapsed_ms"] = report.elapsed_ms;
    if (found) *found = report.occurrence ? 1 : 0;
    *out_json = dup(j.dump());
    return BW_OK;
  });
}

bw_status bw_search_json(int alphabet_size, int order, int power, size_t cap,
                         const bw_budget* budget, int fix_first_letter, bw_progress_fn progress,
                         void* user, char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    SearchOptions options;
    options.budget = budget_of(budget);
    options.fix_first_letter = fix_first_letter != 0;
    if (progress) {
      options.progress = [progress, user](std::size_t depth, std::uint64_t nodes,
                                          std::uint64_t alive) {
        progress(depth, nodes, alive, user);
      };
    }
    const SearchCertificate cert = longest_avoiding(alphabet_size, order, power, cap, options);
    *out_json = dup(to_json(cert).dump());
    if (cert.outcome == SearchOutcome::BudgetExhausted) {
      last_error = "search budget exhausted; certificate is partial";
      return BW_ERR_BUDGET;
    }
    return BW_OK;
  });
}

bw_status bw_count(int alphabet_size, int order, int power, size_t max_length,
                   const bw_budget* budget, int fix_first_letter, unsigned threads,
                   const char* format, char** out) {
  return guarded([&] {
    require(out, "out");
    const std::string fmt = format ? format : "json";
    if (fmt != "json" && fmt != "tsv") {
      fail(ErrorCode::InvalidInput, "format must be json or tsv, got '" + fmt + "'");
    }
    SearchOptions options;
    options.budget = budget_of(budget);
    options.fix_first_letter = fix_first_letter != 0;
    options.threads = threads;
    const CountTable table = count_avoiding(alphabet_size, order, power, max_length, options);
    *out = dup(fmt == "tsv" ? to_tsv(table) : to_json(table).dump());
    if (!table.complete) {
      last_error = "count budget exhausted; table is partial";
      return BW_ERR_BUDGET;
    }
    return BW_OK;
  });
}

bw_status bw_check_names_json(char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    *out_json = dup(Json(check_names()).dump());
    return BW_OK;
  });
}

bw_status bw_verify_json(const char* config_json, int include_timing, char** out_json,
                         int* passed) {
  return guarded([&] {
    require(out_json, "out_json");
    VerifyConfig config;
    if (config_json != nullptr && *config_json != '\0') {
      const Json j = Json::parse(config_json);
      if (!j.is_object()) fail(ErrorCode::Parse, "verify config must be a JSON object");
      static const std::set<std::string> known = {
          "seed", "threads", "checks", "faults", "scan_len", "erasure_len", "mirror_scan",
          "mirror_max_factor", "mirror_margin", "desub_scan", "desub_max_len", "matrix_trials",
          "matrix_max_len", "cyclic_trials", "cyclic_max_len", "cyclic_exhaustive_len",
          "cube_lemma_n", "cube_free_exhaustive_len", "cube_free_trials", "cube_free_max_len",
          "square_free_len", "cube_free_len", "property_trials"};
      for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) fail(ErrorCode::Parse, "unknown verify option '" + key + "'");
      }
      config.seed = value_or(j, "seed", config.seed);
      config.threads = value_or(j, "threads", config.threads);
      if (j.contains("checks")) config.checks = j.at("checks").get<std::set<std::string>>();
      if (j.contains("faults")) config.faults = j.at("faults").get<std::set<std::string>>();
      if (j.contains("scan_len")) config.scale_scan(j.at("scan_len").get<std::size_t>());
#define BW_OVERRIDE(field) config.field = value_or(j, #field, config.field)
      BW_OVERRIDE(erasure_len);
      BW_OVERRIDE(mirror_scan);
      BW_OVERRIDE(mirror_max_factor);
      BW_OVERRIDE(mirror_margin);
      BW_OVERRIDE(desub_scan);
      BW_OVERRIDE(desub_max_len);
      BW_OVERRIDE(matrix_trials);
      BW_OVERRIDE(matrix_max_len);
      BW_OVERRIDE(cyclic_trials);
      BW_OVERRIDE(cyclic_max_len);
      BW_OVERRIDE(cyclic_exhaustive_len);
      BW_OVERRIDE(cube_lemma_n);
      BW_OVERRIDE(cube_free_exhaustive_len);
      BW_OVERRIDE(cube_free_trials);
      BW_OVERRIDE(cube_free_max_len);
      BW_OVERRIDE(square_free_len);
      BW_OVERRIDE(cube_free_len);
      BW_OVERRIDE(property_trials);
#undef BW_OVERRIDE
    }
    const VerifySummary summary = run_all(config);
    if (passed) *passed = summary.passed() ? 1 : 0;
    *out_json = dup(to_json(summary, include_timing != 0).dump());
    return BW_OK;
  });
}

}  // extern "C"
