#include <doctest.h>

#include <cmath>
#include <random>

#include "euler1d/norms.hpp"
#include "euler1d/spectral.hpp"
#include "oracles.hpp"

using namespace euler1d;
using euler1d::testing::random_band_limited;
using euler1d::testing::trapezoid_vk_norm;

namespace {

const PeriodicGrid kGrid(128, 2.0 * M_PI);

Field sin_field(const PeriodicGrid& grid, int k) {
    std::vector<double> values(static_cast<std::size_t>(grid.size()));
    const double w = 2.0 * grid.mu() * k;
    for (int j = 0; j < grid.size(); ++j) {
        values[static_cast<std::size_t>(j)] = std::sin(w * grid.point(j));
    }
    return Field(grid, std::move(values), true);
}

}  // namespace

TEST_CASE("vk_norm basics") {
    CHECK(vk_norm(Field::zeros(kGrid, true), 0) == 0.0);
    const Field s = sin_field(kGrid, 1);
    CHECK(vk_norm(s, 0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(vk_norm(s, 2) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("vk_norm rejects nonzero mean at k = 0 and is mean-blind above") {
    std::vector<double> vals(static_cast<std::size_t>(kGrid.size()), 1.0);
    for (int j = 0; j < kGrid.size(); ++j) {
        vals[static_cast<std::size_t>(j)] += std::sin(kGrid.point(j));
    }
    const Field f(kGrid, vals);
    CHECK_THROWS_AS(vk_norm(f, 0), std::invalid_argument);
    // k >= 1 sees only the derivative and equals the norm of the zero-mean part
    CHECK(vk_norm(f, 1) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("vk_norm agrees with trapezoid quadrature") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const Field f = random_band_limited(kGrid, 1, 30, rng);
        for (int k = 0; k <= 3; ++k) {
            const double a = vk_norm(f, k);
            const double b = trapezoid_vk_norm(f, k);
            CHECK(std::abs(a - b) <= 1e-10 * b);
        }
    }
}

TEST_CASE("norm profile satisfies the W^k identity") {
    std::mt19937_64 rng(59);
    const Field u = random_band_limited(kGrid, 1, 20, rng);
    const Field w = random_band_limited(kGrid, 1, 20, rng);
    const NormProfile profile = norm_profile(u, w, 3);
    for (std::size_t k = 0; k < profile.wk.size(); ++k) {
        const double lhs = profile.wk[k] * profile.wk[k];
        const double rhs = profile.vk_u[k] * profile.vk_u[k] +
                           profile.vk_omega[k] * profile.vk_omega[k];
        CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    }
}

TEST_CASE("Poincare margin: lowest mode saturates, higher modes have slack") {
    const Field s1 = sin_field(kGrid, 1);
    const auto m1 = verify_poincare(s1, 1, 0);
    REQUIRE(m1.has_value());
    CHECK(std::abs(*m1) < 1e-12);

    const Field s2 = sin_field(kGrid, 2);
    const auto m2 = verify_poincare(s2, 1, 0);
    REQUIRE(m2.has_value());
    CHECK(*m2 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));

    CHECK(!verify_poincare(Field::zeros(kGrid, true), 1, 0).has_value());
}

TEST_CASE("Poincare margin is nonnegative on random fields across L") {
    std::mt19937_64 rng(61);
    for (double length : {M_PI, 2.0 * M_PI, 10.0}) {
        const PeriodicGrid grid(128, length);
        for (int trial = 0; trial < 100; ++trial) {
            const Field f = random_band_limited(grid, 1, 30, rng);
            for (auto [k, j] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}}) {
                const auto margin = verify_poincare(f, k, j);
                REQUIRE(margin.has_value());
                CHECK(*margin >= -1e-12 * vk_norm(f, j));
            }
        }
    }
}

TEST_CASE("Sobolev embedding margin") {
    const Field s = sin_field(kGrid, 1);
    const auto margin = verify_sobolev_embedding(s);
    REQUIRE(margin.has_value());
    // (pi/sqrt3) * sqrt(pi) - 1
    CHECK(*margin == doctest::Approx(M_PI / std::sqrt(3.0) * std::sqrt(M_PI) - 1.0).epsilon(1e-10));
    CHECK(!verify_sobolev_embedding(Field::zeros(kGrid, true)).has_value());

    std::mt19937_64 rng(67);
    for (double length : {M_PI, 2.0 * M_PI, 10.0}) {
        const PeriodicGrid grid(128, length);
        for (int trial = 0; trial < 100; ++trial) {
            const Field f = random_band_limited(grid, 1, 30, rng);
            const auto m = verify_sobolev_embedding(f);
            REQUIRE(m.has_value());
            CHECK(*m >= -1e-10 * f.max_abs());
        }
    }
}

TEST_CASE("mollifier multiplier contract") {
    CHECK(mollify(Field::zeros(kGrid, true), 0.5).max_abs() == 0.0);
    CHECK_THROWS_AS(mollify(sin_field(kGrid, 1), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(mollify(sin_field(kGrid, 1), 1.5), std::invalid_argument);

    // single mode k = 1, eps = 1/8: amplitude scaled by 1 - 1/8 = 7/8
    const Field s = sin_field(kGrid, 1);
    const Field m = mollify(s, 1.0 / 8.0);
    double err = 0.0;
    for (int j = 0; j < kGrid.size(); ++j) {
        err = std::max(err, std::abs(m.values()[static_cast<std::size_t>(j)] -
                                     0.875 * s.values()[static_cast<std::size_t>(j)]));
    }
    CHECK(err < 1e-12);

    // modes at and beyond ceil(1/eps) are removed
    const Field high = sin_field(kGrid, 8);
    CHECK(mollify(high, 1.0 / 8.0).max_abs() < 1e-14);
    CHECK(mollify(high, 1.0 / 7.0).max_abs() < 1e-14);
}

TEST_CASE("mollifier error decreases monotonically with the cutoff and is O(eps)") {
    std::mt19937_64 rng(71);
    const double two_mu = 2.0 * kGrid.mu();
    for (int trial = 0; trial < 100; ++trial) {
        const Field f = random_band_limited(kGrid, 1, 24, rng);
        const int m = 1;
        double prev = std::numeric_limits<double>::infinity();
        for (int n : {8, 16, 32, 64}) {
            const Field jf = mollify(f, 1.0 / n);
            std::vector<double> diff(jf.values());
            for (int j = 0; j < kGrid.size(); ++j) diff[j] -= f.values()[j];
            const double err = vk_norm(Field(kGrid, std::move(diff), true), m - 1);
            CHECK(err < prev);
            // scaled rate stays bounded by |f|_{V^m} / (2 mu)
            CHECK(n * err <= vk_norm(f, m) / two_mu * (1.0 + 1e-12));
            prev = err;
        }
        // first-order rate: err(1/n) <= (B/n) |f|_{V^0} for bandwidth B once n >= B
        const int n_large = 256;
        const Field jf = mollify(f, 1.0 / n_large);
        std::vector<double> diff(jf.values());
        for (int j = 0; j < kGrid.size(); ++j) diff[j] -= f.values()[j];
        const double err = vk_norm(Field(kGrid, std::move(diff), true), 0);
        CHECK(err <= 24.0 / n_large * vk_norm(f, 0) * (1.0 + 1e-12));
    }
}

TEST_CASE("mollifier smoothing cost: |J_eps f|_{V^{m+k}} <= C eps^{-k} |f|_{V^m}") {
    // C frozen from a calibration run; the analytic bound is (2 mu (1+eps))^k.
    std::mt19937_64 rng(73);
    for (double length : {M_PI, 2.0 * M_PI, 10.0}) {
        const PeriodicGrid grid(128, length);
        const double c1 = 2.0 * M_PI / length;        // (2 mu)^1
        const double c2 = c1 * c1;                    // (2 mu)^2
        for (int trial = 0; trial < 100; ++trial) {
            const Field f = random_band_limited(grid, 1, 30, rng);
            const int m = 1;
            for (double eps : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
                const Field jf = mollify(f, eps);
                CHECK(vk_norm(jf, m + 1) <= c1 / eps * vk_norm(f, m) * (1.0 + 1e-12));
                CHECK(vk_norm(jf, m + 2) <= c2 / (eps * eps) * vk_norm(f, m) * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("Banach algebra bound on the mean-projected product") {
    // C_alg frozen to the analytic constant L/sqrt(3); adversarial
    // single-mode pairs come within a factor ~6 of it.
    std::mt19937_64 rng(79);
    for (double length : {M_PI, 2.0 * M_PI, 10.0}) {
        const PeriodicGrid grid(128, length);
        const double c_alg = length / std::sqrt(3.0);
        for (int trial = 0; trial < 100; ++trial) {
            const Field f = random_band_limited(grid, 1, 20, rng);
            const Field g = random_band_limited(grid, 1, 20, rng);
            std::vector<double> prod(static_cast<std::size_t>(grid.size()));
            for (int j = 0; j < grid.size(); ++j) {
                prod[static_cast<std::size_t>(j)] =
                    f.values()[static_cast<std::size_t>(j)] * g.values()[static_cast<std::size_t>(j)];
            }
            const Field pg = project_zero_mean(Field(grid, std::move(prod)));
            CHECK(vk_norm(pg, 1) <= c_alg * vk_norm(f, 1) * vk_norm(g, 1) * (1.0 + 1e-12));
        }
        // concentrated pair
        const Field c1 = sin_field(grid, 1);
        std::vector<double> prod(static_cast<std::size_t>(grid.size()));
        for (int j = 0; j < grid.size(); ++j) {
            prod[static_cast<std::size_t>(j)] =
                c1.values()[static_cast<std::size_t>(j)] * c1.values()[static_cast<std::size_t>(j)];
        }
        const Field pg = project_zero_mean(Field(grid, std::move(prod)));
        CHECK(vk_norm(pg, 1) <= c_alg * vk_norm(c1, 1) * vk_norm(c1, 1));
    }
}
