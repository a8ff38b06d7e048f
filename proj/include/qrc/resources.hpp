#pragma once

// Finite-shot noise and experimental-time accounting.

#include "qrc/protocols.hpp"

#include <cstdint>
#include <limits>

namespace qrc {

/// Pass as g to select the projective (RSP) limit.
inline constexpr double kProjective = std::numeric_limits<double>::infinity();

/// sqrt((g^2 + 1) / (g^2 N_s)); 1/sqrt(N_s) for g = kProjective.
double sigma_single(double g, double n_shots);

/// sqrt((g^4 + 2 g^2 + 1) / (g^4 N_s)); 1/sqrt(N_s) for g = kProjective.
double sigma_pair(double g, double n_shots);

/// Adds N(0, sigma^2) to every entry: sigma_single on single-spin and
/// variance columns, sigma_pair on two-spin columns. The stream for row k is
/// keyed by (seed, k), so the result does not depend on call order.
/// n_shots = +inf leaves the table unchanged.
FeatureTable apply_shot_noise(const FeatureTable& table, double g, double n_shots, std::uint64_t seed);

/// 3 N_s (K' tau_wo + (K'+1) K' dt / 2), K' = K - K_wo, tau_wo = K_wo dt.
double time_rsp(long k, long k_wo, double dt, double n_shots);

/// 3 N_s K dt.
double time_olp(long k, double dt, double n_shots);

/// RSP shots affordable in the wall-clock time of an OLP run:
///   N_rsp = N_olp 2K / (K'^2 + K'(2 K_wo + 1)).
double shots_rsp_equivalent(double n_shots_olp, long k, long k_wo);

struct ShotBudget {
    double n_shots_olp = 0.0;
    double n_shots_rsp = 0.0;
    long k = 0;
    long k_wo = 20;

    static ShotBudget from_olp(double n_shots_olp, long k, long k_wo);
};

}  // namespace qrc
