#pragma once

#include <string>

#include "samac/distribution.hpp"

namespace samac {

inline constexpr const char* kVersion = "0.1.0";

// JSON documents:
//   Distribution: {"alphabet": k, "probs": [...]}
//   Channel:      {"inputs": k, "outputs": m, "idle": x, "rows": [[...], ...]}
// Loading validates every invariant and throws validation_error otherwise.

std::string to_json(const Distribution& d);
std::string to_json(const Channel& q);
Distribution distribution_from_json(const std::string& text);
Channel channel_from_json(const std::string& text);

/// Channel spec: "bsc:<delta>", "bec:<erasure>", "dmc:<json file path>",
/// or an inline JSON channel document.
Channel parse_channel_spec(const std::string& spec);

/// Distribution spec: "ber:<p>", "uniform:<k>", or an inline JSON document.
Distribution parse_distribution_spec(const std::string& spec);

}  // namespace samac
