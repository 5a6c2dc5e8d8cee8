#include "binwords/serialize.hpp"

#include <sstream>

namespace binwords {

Json to_json(const BinomialSignature& s) {
  Json counts = Json::object();
  for (std::size_t i = 0; i < s.counts().size(); ++i) {
    counts[s.layout().word_at(i).str()] = s[i];
  }
  return Json{{"m", s.order()}, {"alphabet", s.layout().alphabet().size()}, {"counts", counts}};
}

BinomialSignature signature_from_json(const Json& j) {
  try {
    const SignatureLayout layout(Alphabet(j.at("alphabet").get<int>()), j.at("m").get<int>());
    std::vector<std::uint64_t> counts(layout.dimension(), 0);
    const Json& in = j.at("counts");
    if (in.size() != counts.size()) {
      fail(ErrorCode::Parse, "signature JSON has " + std::to_string(in.size()) +
                                 " counts, expected " + std::to_string(counts.size()));
    }
    for (const auto& [key, value] : in.items()) {
      const Word x = Word::parse(key, layout.alphabet().size());
      counts[layout.index_of(x.letters())] = value.get<std::uint64_t>();
    }
    return BinomialSignature(layout, std::move(counts));
  } catch (const Json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed signature JSON: ") + e.what());
  }
}

Json to_json(const LiftedMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.rows()) rows.push_back(row);
  return rows;
}

Json detect_json(std::size_t word_len, int order, int power,
                 const std::optional<Occurrence>& occurrence) {
  Json j{{"schema", kSchemaVersion}, {"word_len", word_len}, {"m", order}, {"p", power},
         {"found", occurrence.has_value()}};
  if (occurrence) {
    j["start"] = occurrence->start;
    j["period"] = occurrence->period;
  }
  return j;
}

Json to_json(const SearchCertificate& c) {
  Json j{{"schema", kSchemaVersion},
         {"k", c.alphabet_size},
         {"m", c.order},
         {"p", c.power},
         {"cap", c.cap},
         {"outcome", to_string(c.outcome)}};
  if (c.outcome == SearchOutcome::Maximal) {
    j["maximal_length"] = c.length;
  } else {
    j["reached_length"] = c.length;
  }
  j["witness"] = c.witness.str();
  j["counts"] = c.counts;
  j["counts_exact"] = c.counts_exact;
  j["fix_first_letter"] = c.fix_first_letter;
  j["nodes"] = c.nodes;
  return j;
}

Json to_json(const CountTable& t) {
  return Json{{"schema", kSchemaVersion},
              {"k", t.alphabet_size},
              {"m", t.order},
              {"p", t.power},
              {"n_max", t.max_length},
              {"fix_first_letter", t.fix_first_letter},
              {"complete", t.complete},
              {"counts", t.counts},
              {"nodes", t.nodes}};
}

std::string to_tsv(const CountTable& t) {
  std::ostringstream out;
  out << "# schema=" << kSchemaVersion << " k=" << t.alphabet_size << " m=" << t.order
      << " p=" << t.power << " fix_first_letter=" << (t.fix_first_letter ? 1 : 0)
      << " complete=" << (t.complete ? 1 : 0) << '\n';
  out << "length\tcount\n";
  for (std::size_t i = 0; i < t.counts.size(); ++i) out << (i + 1) << '\t' << t.counts[i] << '\n';
  return out.str();
}

Json to_json(const CheckReport& r, bool include_timing) {
  Json j{{"name", r.name},
         {"parameters", r.parameters},
         {"fault_injected", r.fault_injected},
         {"instances", r.instances},
         {"passed", r.passed()},
         {"violation_count", r.violation_count},
         {"violations", r.violations},
         {"notes", r.notes}};
  if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Json to_json(const VerifySummary& s, bool include_timing) {
  Json checks = Json::array();
  for (const auto& r : s.reports) checks.push_back(to_json(r, include_timing));
  return Json{{"schema", kSchemaVersion}, {"passed", s.passed()}, {"checks", checks}};
}

}  // namespace binwords
