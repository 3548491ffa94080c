#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "edgetransit/core/geo.hpp"

namespace edgetransit::core {

/// Batch haversine kernels. The scalar variant is the reference; wider
/// variants must agree with it to ~1e-12 relative and are picked at
/// runtime from CPU capabilities. All arrays are degree-valued inputs
/// and meter-valued outputs of equal length n.
enum class DistanceKernel { kScalar, kAvx2 };

std::string_view kernel_name(DistanceKernel k);

/// Reference implementation, always available.
void pairwise_distances_scalar(const double* lat1, const double* lon1, const double* lat2,
                               const double* lon2, double* out_m, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
/// AVX2 variant (4 doubles per lane); only callable when avx2_supported().
void pairwise_distances_avx2(const double* lat1, const double* lon1, const double* lat2,
                             const double* lon2, double* out_m, std::size_t n);
#endif

bool avx2_supported();

/// Kernel chosen at startup (widest supported); override for testing.
DistanceKernel active_kernel();
void set_active_kernel(DistanceKernel k);  // throws if unsupported on this host

/// Dispatched batch distance.
void pairwise_distances(std::span<const double> lat1, std::span<const double> lon1,
                        std::span<const double> lat2, std::span<const double> lon2,
                        std::span<double> out_m);

/// out_m[i] = distance(path[i], path[i+1]); out_m must have path.size()-1
/// entries. Dispatched.
void path_step_distances(std::span<const GeoPoint> path, std::span<double> out_m);

}  // namespace edgetransit::core
