#pragma once

#include <string>

#include "json.hpp"

#include "bandrec/reconstruct.hpp"
#include "bandrec/sampling.hpp"
#include "bandrec/signal.hpp"

namespace bandrec {

/// {period, sigma, coeffs_re[], coeffs_im[], real_flag}
nlohmann::json to_json(const PeriodicBandSignal& f);
PeriodicBandSignal signal_from_json(const nlohmann::json& j);

/// {period, k, points[], data_re[][], data_im[][]}; doubles round-trip exactly.
nlohmann::json to_json(const SampleSet& s);
SampleSet sample_set_from_json(const nlohmann::json& j);

/// {method, k, sigma, delta, T, rho?, contraction_predicted, errors[], bound_curve[],
///  iterations, converged, residual_final}
nlohmann::json to_json(const ReconstructionReport& r);

/// Reads and parses a JSON file; throws std::runtime_error on I/O or parse failure.
nlohmann::json read_json_file(const std::string& path);

}  // namespace bandrec
