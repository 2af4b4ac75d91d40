#pragma once

// JSON encodings used by the command-line tool. Objects use nlohmann::json,
// whose std::map storage gives sorted keys; floats print as shortest
// round-trip decimals.

#include <json.hpp>

#include "qwalk/detectors.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/state.hpp"

namespace qwalk::json {

using Json = nlohmann::json;

Json matrix_to_json(const CMatrix& m);
/// {"re": [[...]], "im": [[...]]}; "im" may be omitted. Throws
/// InvalidArgument on a malformed document.
CMatrix matrix_from_json(const Json& j);

Json to_json(const RatioCertificate& cert);
Json to_json(const RatioWitness& witness);
Json to_json(const DetectionReport& report);
Json to_json(const SpectralDecomposition& d);
Json to_json(const BlockDecomposition& b);
Json to_json(const PgstEnumeration& e);
Json to_json(const VertexBounds& b);
Json to_json(const oracle::ScanResult& scan);

std::string dump(const Json& j);

}  // namespace qwalk::json
