#pragma once

// Matrix JSON ({"dim": n, "re": [[...]], "im": [[...]]}) and number formatting.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "qfid/fidelity.hpp"
#include "qfid/linalg.hpp"
#include "qfid/sdp.hpp"

namespace qfid {

using json = nlohmann::json;

/// Square complex matrix from the repo-wide JSON schema; "im" may be omitted.
/// Throws ParseError on malformed input.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);

/// Parses and checks Hermiticity (asymmetry <= kHermitianInputTol).
HermMat hermitian_from_json(const json& j);
HermMat read_hermitian(const std::filesystem::path& path);
/// read_hermitian + density-matrix validation (InvalidState on failure).
DensityMatrix read_density(const std::filesystem::path& path);

json to_json(const FidelityReport& r);
json to_json(const SdpSolution& s);
json to_json(const VerificationReport& r);

/// %.9g
std::string format_sig(double v);

}  // namespace qfid
