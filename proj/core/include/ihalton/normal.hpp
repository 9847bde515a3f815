#pragma once

namespace ihalton {

/// Standard normal CDF via erfc.
double norm_cdf(double x) noexcept;

/// Inverse standard normal CDF on (0,1): Acklam's rational approximation
/// polished by one Halley step. inv_norm_cdf(1 - u) == -inv_norm_cdf(u)
/// whenever 1 - u is exact. Throws std::domain_error outside (0,1).
double inv_norm_cdf(double u);

}  // namespace ihalton
