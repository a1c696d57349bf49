#pragma once

// File formats. Operators are never serialized redundantly: an ambient space
// is (m, triple rotation) and a hypersurface point adds its unit normal.
// Vectors and matrices use the model coordinate convention of ambient.hpp.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2lab/hopf.hpp"

namespace g2lab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "g2lab/1";

Json ambient_to_json(const AmbientSpace& amb);
AmbientSpace ambient_from_json(const Json& j);

Json hyperpoint_to_json(const HypersurfacePoint& hp);
HypersurfacePoint hyperpoint_from_json(const Json& j);

/// {"dim": n, "entries": row-major n*n array}
Json shape_to_json(const LinOp& shape);
LinOp shape_from_json(const Json& j);

Json report_to_json(const StructureReport& rep);
Json certificate_to_json(const HopfCertificate& cert);

/// Parses a whole document; malformed text throws Error(Parse).
Json parse_json_text(const std::string& text, const std::string& origin);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Columns r, alpha, beta, lambda, mu, distinct_count; 17 significant digits.
void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumA>& rows);

}  // namespace g2lab
