#include "euler1d/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "euler1d/spectral.hpp"

namespace euler1d {

double vk_norm(const Field& f, int k) {
    if (k < 0) throw std::invalid_argument("vk_norm: k must be >= 0");
    const int n = f.size();
    if (k > n / 4) throw std::invalid_argument("vk_norm: k exceeds the N/4 sanity cap");
    if (k == 0) require_zero_mean(f, "vk_norm");
    const double length = f.grid().length();
    const double two_mu = 2.0 * f.grid().mu();
    const auto& spec = f.spectrum();
    double sum = 0.0;
    for (int j = 1; j <= n / 2; ++j) {
        const double weight = (j == n / 2) ? 1.0 : 2.0;
        sum += weight * std::norm(spec[static_cast<std::size_t>(j)]) *
               std::pow(two_mu * j, 2.0 * k);
    }
    return std::sqrt(length * sum);
}

NormProfile norm_profile(const Field& u, const Field& omega, int k_max) {
    NormProfile profile;
    profile.vk_u.reserve(static_cast<std::size_t>(k_max) + 1);
    profile.vk_omega.reserve(static_cast<std::size_t>(k_max) + 1);
    profile.wk.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        const double nu = vk_norm(u, k + 1);
        const double nw = vk_norm(omega, k);
        profile.vk_u.push_back(nu);
        profile.vk_omega.push_back(nw);
        profile.wk.push_back(std::hypot(nu, nw));
    }
    return profile;
}

std::optional<double> verify_poincare(const Field& f, int k, int j) {
    if (!(k > j && j >= 0)) throw std::invalid_argument("verify_poincare: need k > j >= 0");
    const double norm_j = vk_norm(f, j);
    const double norm_k = vk_norm(f, k);
    if (norm_j == 0.0 && norm_k == 0.0) return std::nullopt;
    const double c0 = f.grid().length() / (2.0 * M_PI);
    return std::pow(c0, k - j) * norm_k - norm_j;
}

std::optional<double> verify_sobolev_embedding(const Field& f) {
    require_zero_mean(f, "verify_sobolev_embedding");
    if (f.max_abs() == 0.0) return std::nullopt;
    const double c_tilde = f.grid().length() / (2.0 * std::sqrt(3.0));
    const double deriv_norm = vk_norm(derivative(f, 1), 0);
    const Field fine = resample(f, f.grid().refined(4));
    return c_tilde * deriv_norm - fine.max_abs();
}

Field mollify(const Field& f, double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("mollify: epsilon must lie in (0, 1]");
    }
    require_zero_mean(f, "mollify");
    const int n_modes = static_cast<int>(std::ceil(1.0 / epsilon));
    const int n = f.size();
    auto spec = f.spectrum();
    spec[0] = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        const double mult = std::max(0.0, 1.0 - static_cast<double>(k) / n_modes);
        spec[static_cast<std::size_t>(k)] *= mult;
    }
    return Field::from_spectrum(f.grid(), std::move(spec), true);
}

}  // namespace euler1d
