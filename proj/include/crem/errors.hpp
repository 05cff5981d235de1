#pragma once

#include <stdexcept>
#include <string>

namespace crem {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// profile
struct MonotonicityViolation : Error { using Error::Error; };
struct EndpointViolation : Error { using Error::Error; };
struct NonlinearNearZero : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DegenerateProfile : Error { using Error::Error; };
struct BoundViolated : Error { using Error::Error; };

// sampler
struct DepthTooLarge : Error { using Error::Error; };
struct SplitOutOfRange : Error { using Error::Error; };

// partition
struct MissingInternalNodes : Error { using Error::Error; };

// oracles
struct QuadratureOrderExceeded : Error { using Error::Error; };

// bounds
struct Supercritical : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct GammaOutOfRange : Error { using Error::Error; };
struct DegenerateEta : Error { using Error::Error; };

// cli
struct ConfigParseError : Error { using Error::Error; };

}  // namespace crem
