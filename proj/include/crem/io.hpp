#pragma once

#include <string>

#include "crem/profile.hpp"

namespace crem::io {

/// Profile file: {"knots": [[x,a],...], "holder_alpha": f, "holder_C": f, "x1": f}.
CovarianceProfile load_profile(const std::string& path);
CovarianceProfile parse_profile_json(const std::string& text);
std::string profile_to_json(const CovarianceProfile& profile);

/// Shortest-round-trip decimal, locale-free; identical across runs and
/// thread counts, so CSV columns diff cleanly.
std::string format_double(double v);

std::string profile_digest_hex(const CovarianceProfile& profile);

}  // namespace crem::io
