#pragma once

#include <string>

#include <json.hpp>

#include "binwords/morphism.hpp"
#include "binwords/repetition.hpp"
#include "binwords/search.hpp"
#include "binwords/signature.hpp"
#include "binwords/verify.hpp"

namespace binwords {

using Json = nlohmann::ordered_json;

/// Bumped whenever a JSON or TSV layout below changes.
inline constexpr int kSchemaVersion = 1;

/// {"m":2,"alphabet":2,"counts":{"0":3,"1":4,"00":3,...}}, keys in layout order.
Json to_json(const BinomialSignature& s);
BinomialSignature signature_from_json(const Json& j);

/// Array of rows.
Json to_json(const LiftedMatrix& m);

/// {"word_len":n,"m":2,"p":2,"found":false} or with "start" and "period".
Json detect_json(std::size_t word_len, int order, int power,
                 const std::optional<Occurrence>& occurrence);

Json to_json(const SearchCertificate& c);
Json to_json(const CountTable& t);
std::string to_tsv(const CountTable& t);

Json to_json(const CheckReport& r, bool include_timing = false);
Json to_json(const VerifySummary& s, bool include_timing = false);

}  // namespace binwords
