#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fockjoin/fock_state.hpp"
#include "fockjoin/linear_optics.hpp"
#include "fockjoin/nogo.hpp"
#include "fockjoin/schemes.hpp"
#include "fockjoin/tpes.hpp"

namespace fockjoin {

using Json = nlohmann::json;

/// {"modes": m, "terms": [{"occ": [...], "re": x, "im": y}, ...]}, terms in
/// lexicographic occupation order.
Json state_to_json(const FockState& s);

/// Throws FormatError on a malformed document, OccupationError on bad
/// occupations. Duplicate occupations are summed.
FockState state_from_json(const Json& j);

/// {"dim": m, "re": [[...]], "im": [[...]]}.
Json unitary_to_json(const ModeUnitary& u);
ModeUnitary unitary_from_json(const Json& j);

Json report_to_json(const SchemeReport& r);
Json certificate_to_json(const NogoCertificate& c);
Json teleport_to_json(const TeleportReport& r);

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Reads a whole file. Throws FormatError if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Parses JSON text; throws FormatError with the parser message.
Json parse_json(std::string_view text);

/// Canonical text: sorted keys, two-space indent, trailing newline. Doubles
/// are written in shortest round-trip form.
std::string dump_json(const Json& j);

/// Adds {"tool": {"name", "version"}, "seed", "input_sha256"} to a report.
void stamp_report(Json& report, std::uint64_t seed, std::string_view input_digest);

} // namespace fockjoin
