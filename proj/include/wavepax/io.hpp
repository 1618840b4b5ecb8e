#pragma once

#include <json.hpp>
#include <string>

#include "wavepax/decompose.hpp"
#include "wavepax/grid.hpp"
#include "wavepax/observability.hpp"
#include "wavepax/oscillator.hpp"
#include "wavepax/riccati.hpp"

namespace wavepax {

using json = nlohmann::json;

// FNV-1a over the canonical dump; embedded in every report
std::string config_hash(const json& config);

void write_flow_csv(const std::string& path, const HamiltonianFlow& flow);
void write_riccati_csv(const std::string& path, const RiccatiSolution& sol);
void write_certificate_csv(const std::string& path,
                           const ObservabilityCertificate& cert);
void write_coeffs_csv(const std::string& path, const HermiteCoeffs& d);

json mixture_to_json(const GaussianMixture& mix);
GaussianMixture mixture_from_json(const json& j);
json certificate_to_json(const ObservabilityCertificate& cert);

// One JSON header line {dim, L, n, t} followed by little-endian re/im pairs.
void write_field_dump(const std::string& path, const GridSpec& grid, double t,
                      const Field& u);
void write_field_csv(const std::string& path, const GridSpec& grid, const Field& u);

}  // namespace wavepax
