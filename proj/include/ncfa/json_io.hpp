#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "ncfa/deconv.hpp"

namespace ncfa::json_io {

using nlohmann::json;

//! Reproducibility header embedded in every JSON report.  Two runs with
//! the same flags and seeds agree byte-for-byte once the timestamp field
//! is excluded.
struct RunManifest {
  std::string command;
  std::string config_digest;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::string normalization = kNormalizationNote;
  std::string timestamp;
};

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t value);
RunManifest make_manifest(const std::string& command, const json& parameters,
                          std::uint64_t seed);
json to_json(const RunManifest& manifest);

json measure_to_json(const measures::CentralMeasureSpec& spec);
measures::CentralMeasureSpec measure_from_json(const json& j);

json irrep_to_json(const dual::Irrep& irrep);
json spectra_to_json(const spectra::SpectralCoeffs& coeffs);
spectra::SpectralCoeffs spectra_from_json(const json& j);

json verdict_to_json(const diagnostics::DecayVerdict& verdict);
json fit_to_json(const diagnostics::SuperSmoothFit& fit);
json trace_to_json(const diagnostics::TraceReport& report);
json chain_to_json(const diagnostics::SmoothChainReport& report);

deconv::DeconvConfig deconv_config_from_json(const json& j);
json deconv_report_to_json(const deconv::DeconvReport& report);

//! Throws numerical_error if any number in the document is NaN/Inf.
void require_finite(const json& j);

}  // namespace ncfa::json_io
