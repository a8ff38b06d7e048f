#include "qrc/resources.hpp"

#include "qrc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qrc {

namespace {

void check_noise_args(double g, double n_shots) {
    if (!(n_shots > 0.0)) throw std::invalid_argument("number of shots must be positive");
    if (std::isnan(g) || g < 0.0) throw std::invalid_argument("measurement strength g must be non-negative");
    if (g == 0.0) throw std::invalid_argument("shot noise diverges at g = 0");
}

}  // namespace

double sigma_single(double g, double n_shots) {
    check_noise_args(g, n_shots);
    if (std::isinf(g)) return 1.0 / std::sqrt(n_shots);
    const double g2 = g * g;
    return std::sqrt((g2 + 1.0) / (g2 * n_shots));
}

double sigma_pair(double g, double n_shots) {
    check_noise_args(g, n_shots);
    if (std::isinf(g)) return 1.0 / std::sqrt(n_shots);
    const double g2 = g * g;
    return std::sqrt((g2 * g2 + 2.0 * g2 + 1.0) / (g2 * g2 * n_shots));
}

FeatureTable apply_shot_noise(const FeatureTable& table, double g, double n_shots, std::uint64_t seed) {
    if (std::isinf(n_shots) && n_shots > 0) return table;
    const double s1 = sigma_single(g, n_shots);
    const double s2 = sigma_pair(g, n_shots);
    FeatureTable noisy = table;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index k = 0; k < noisy.n_rows(); ++k) {
        Engine engine = make_engine(derive_seed(seed, {static_cast<std::uint64_t>(k)}));
        for (Index c = 0; c < noisy.n_cols(); ++c) {
            const double sigma = table.columns[static_cast<std::size_t>(c)].kind == ColumnKind::pair ? s2 : s1;
            noisy.rows(k, c) += sigma * normal(engine);
        }
        normal.reset();
    }
    return noisy;
}

double time_rsp(long k, long k_wo, double dt, double n_shots) {
    if (k <= k_wo || k_wo < 0) throw std::invalid_argument("need K > K_wo >= 0");
    const double kp = static_cast<double>(k - k_wo);
    const double tau_wo = static_cast<double>(k_wo) * dt;
    return 3.0 * n_shots * (kp * tau_wo + 0.5 * (kp + 1.0) * kp * dt);
}

double time_olp(long k, double dt, double n_shots) {
    if (k <= 0) throw std::invalid_argument("need K > 0");
    return 3.0 * n_shots * (static_cast<double>(k) * dt);
}

double shots_rsp_equivalent(double n_shots_olp, long k, long k_wo) {
    if (k <= k_wo || k_wo < 0) throw std::invalid_argument("need K > K_wo >= 0");
    const double kp = static_cast<double>(k - k_wo);
    return n_shots_olp * 2.0 * static_cast<double>(k) / (kp * kp + kp * (2.0 * static_cast<double>(k_wo) + 1.0));
}

ShotBudget ShotBudget::from_olp(double n_shots_olp, long k, long k_wo) {
    return {n_shots_olp, shots_rsp_equivalent(n_shots_olp, k, k_wo), k, k_wo};
}

}  // namespace qrc
