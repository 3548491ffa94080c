#include "edgetransit/core/distance_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgetransit::core {

namespace {

constexpr double kDegToRad = 0.017453292519943295;  // pi / 180

using PairwiseFn = void (*)(const double*, const double*, const double*, const double*, double*,
                            std::size_t);

PairwiseFn g_fn = nullptr;
DistanceKernel g_kernel = DistanceKernel::kScalar;

void init_dispatch() {
    if (g_fn) return;
#if defined(__x86_64__) || defined(_M_X64)
#if EDGETRANSIT_HAVE_AVX2_TU
    if (avx2_supported()) {
        g_fn = &pairwise_distances_avx2;
        g_kernel = DistanceKernel::kAvx2;
        return;
    }
#endif
#endif
    g_fn = &pairwise_distances_scalar;
    g_kernel = DistanceKernel::kScalar;
}

}  // namespace

std::string_view kernel_name(DistanceKernel k) {
    switch (k) {
        case DistanceKernel::kScalar: return "scalar";
        case DistanceKernel::kAvx2: return "avx2";
    }
    return "unknown";
}

void pairwise_distances_scalar(const double* lat1, const double* lon1, const double* lat2,
                               const double* lon2, double* out_m, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double phi1 = lat1[i] * kDegToRad;
        const double phi2 = lat2[i] * kDegToRad;
        const double half_dphi = 0.5 * (lat2[i] - lat1[i]) * kDegToRad;
        const double half_dlmb = 0.5 * (lon2[i] - lon1[i]) * kDegToRad;
        const double sp = std::sin(half_dphi);
        const double sl = std::sin(half_dlmb);
        double a = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
        a = std::clamp(a, 0.0, 1.0);
        out_m[i] = 2.0 * kEarthRadiusM * std::asin(std::sqrt(a));
    }
}

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    // The wide kernel uses FMA contractions, so require both.
    return __builtin_cpu_supports("avx2") > 0 && __builtin_cpu_supports("fma") > 0;
#else
    return false;
#endif
}

DistanceKernel active_kernel() {
    init_dispatch();
    return g_kernel;
}

void set_active_kernel(DistanceKernel k) {
    switch (k) {
        case DistanceKernel::kScalar:
            g_fn = &pairwise_distances_scalar;
            g_kernel = k;
            return;
        case DistanceKernel::kAvx2:
#if (defined(__x86_64__) || defined(_M_X64)) && EDGETRANSIT_HAVE_AVX2_TU
            if (avx2_supported()) {
                g_fn = &pairwise_distances_avx2;
                g_kernel = k;
                return;
            }
#endif
            throw std::runtime_error("avx2 kernel not supported on this host");
    }
    throw std::runtime_error("unknown distance kernel");
}

void pairwise_distances(std::span<const double> lat1, std::span<const double> lon1,
                        std::span<const double> lat2, std::span<const double> lon2,
                        std::span<double> out_m) {
    const std::size_t n = out_m.size();
    if (lat1.size() != n || lon1.size() != n || lat2.size() != n || lon2.size() != n) {
        throw std::invalid_argument("pairwise_distances: span length mismatch");
    }
    init_dispatch();
    g_fn(lat1.data(), lon1.data(), lat2.data(), lon2.data(), out_m.data(), n);
}

void path_step_distances(std::span<const GeoPoint> path, std::span<double> out_m) {
    if (path.size() < 2) {
        if (!out_m.empty()) throw std::invalid_argument("path_step_distances: output too long");
        return;
    }
    const std::size_t steps = path.size() - 1;
    if (out_m.size() != steps) {
        throw std::invalid_argument("path_step_distances: output length mismatch");
    }
    init_dispatch();

    // De-interleave into SoA blocks so the wide kernel gets contiguous lanes.
    constexpr std::size_t kBlock = 256;
    double lat1[kBlock], lon1[kBlock], lat2[kBlock], lon2[kBlock];
    std::size_t done = 0;
    while (done < steps) {
        const std::size_t m = std::min(kBlock, steps - done);
        for (std::size_t i = 0; i < m; ++i) {
            lat1[i] = path[done + i].latitude();
            lon1[i] = path[done + i].longitude();
            lat2[i] = path[done + i + 1].latitude();
            lon2[i] = path[done + i + 1].longitude();
        }
        g_fn(lat1, lon1, lat2, lon2, out_m.data() + done, m);
        done += m;
    }
}

}  // namespace edgetransit::core
