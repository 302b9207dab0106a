#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "euler1d/models.hpp"
#include "oracles.hpp"

using namespace euler1d;
using euler1d::testing::random_band_limited;

namespace {

const PeriodicGrid kGrid(128, 2.0 * M_PI);

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    return err;
}

Field cos_mode(const PeriodicGrid& grid, int k, double amp) {
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(grid.size() / 2 + 1), 0.0);
    spec[static_cast<std::size_t>(k)] = std::complex<double>(0.5 * amp, 0.0);
    return Field::from_spectrum(grid, std::move(spec));
}

Field sin_mode(const PeriodicGrid& grid, int k, double amp) {
    std::vector<std::complex<double>> spec(static_cast<std::size_t>(grid.size() / 2 + 1), 0.0);
    spec[static_cast<std::size_t>(k)] = std::complex<double>(0.0, -0.5 * amp);
    return Field::from_spectrum(grid, std::move(spec), true);
}

}  // namespace

TEST_CASE("boundary system RHS: rest state is a fixed point") {
    const ModelState rest{Field::zeros(kGrid), Field::zeros(kGrid, true), 0.0};
    const SystemRhs rhs = boundary_system_rhs(rest, DealiasRule::two_thirds);
    CHECK(rhs.du_dt.max_abs() == 0.0);
    CHECK(rhs.domega_dt.max_abs() == 0.0);
}

TEST_CASE("boundary system RHS with omega = 0 reduces to the u_z source") {
    const double a = 1.7;
    const PreparedInitialData init = make_initial_data({InitialKind::paper_blowup, a, {}, {}}, kGrid);
    const SystemRhs rhs = boundary_system_rhs(init.state, DealiasRule::two_thirds);
    CHECK(rhs.du_dt.max_abs() == 0.0);
    const double mu = kGrid.mu();
    std::vector<double> expected(static_cast<std::size_t>(kGrid.size()));
    for (int j = 0; j < kGrid.size(); ++j) {
        expected[static_cast<std::size_t>(j)] = a * mu * std::sin(2.0 * mu * kGrid.point(j));
    }
    CHECK(max_abs_diff(rhs.domega_dt.values(), expected) < 1e-12);
    CHECK(std::abs(rhs.domega_dt.mean()) < 1e-15);
}

TEST_CASE("boundary system RHS preserves the symmetry class") {
    std::mt19937_64 rng(83);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        // u even about 0 and L/2 (cosine modes), omega odd (sine modes)
        std::vector<std::complex<double>> uspec(65, 0.0), wspec(65, 0.0);
        for (int k = 1; k <= 15; ++k) {
            uspec[static_cast<std::size_t>(k)] = std::complex<double>(gauss(rng), 0.0);
            wspec[static_cast<std::size_t>(k)] = std::complex<double>(0.0, gauss(rng));
        }
        const ModelState state{Field::from_spectrum(kGrid, std::move(uspec)),
                               Field::from_spectrum(kGrid, std::move(wspec), true), 0.0};
        const SystemRhs rhs = boundary_system_rhs(state, DealiasRule::two_thirds);
        const SymmetryError err = symmetry_error(
            ModelState{rhs.du_dt, project_zero_mean(rhs.domega_dt), 0.0});
        const double scale = rhs.du_dt.max_abs() + rhs.domega_dt.max_abs() + 1.0;
        CHECK(err.u_even_err <= 1e-12 * scale);
        CHECK(err.omega_odd_err <= 1e-12 * scale);
    }
}

TEST_CASE("scalar RHS: zero input gives zero for every model") {
    for (ModelKind kind : {ModelKind::clm, ModelKind::de_gregorio, ModelKind::ccf, ModelKind::osw}) {
        ModelSpec spec{kind, 0.7, true};
        CHECK(scalar_rhs(Field::zeros(kGrid, true), spec, DealiasRule::two_thirds).max_abs() == 0.0);
    }
    CHECK_THROWS_AS(
        scalar_rhs(Field::zeros(kGrid, true), ModelSpec{ModelKind::boundary_system, 0.0, true},
                   DealiasRule::none),
        std::invalid_argument);
}

TEST_CASE("clm RHS on cos z is sin z cos z") {
    const Field w = cos_mode(kGrid, 1, 1.0);
    const Field rhs = scalar_rhs(w, ModelSpec{ModelKind::clm, 0.0, true}, DealiasRule::none);
    std::vector<double> expected(static_cast<std::size_t>(kGrid.size()));
    for (int j = 0; j < kGrid.size(); ++j) {
        const double z = kGrid.point(j);
        expected[static_cast<std::size_t>(j)] = std::sin(z) * std::cos(z);
    }
    CHECK(max_abs_diff(rhs.values(), expected) < 1e-12);
}

TEST_CASE("clm RHS matches the finite-difference derivative of the exact solution") {
    const Field w0 = cos_mode(kGrid, 1, 1.0);
    const Field rhs = scalar_rhs(w0, ModelSpec{ModelKind::clm, 0.0, true}, DealiasRule::none);
    const double dt = 1e-6;
    const Field wp = clm_exact_solution(w0, dt);
    const Field wm = clm_exact_solution(w0, 0.0);
    std::vector<double> fd(static_cast<std::size_t>(kGrid.size()));
    for (int j = 0; j < kGrid.size(); ++j) {
        fd[static_cast<std::size_t>(j)] =
            (wp.values()[static_cast<std::size_t>(j)] - wm.values()[static_cast<std::size_t>(j)]) /
            dt;
    }
    CHECK(max_abs_diff(rhs.values(), fd) < 1e-5);
}

TEST_CASE("osw with a = 0 is clm exactly, a = 1 is de_gregorio") {
    std::mt19937_64 rng(89);
    const Field w = random_band_limited(kGrid, 1, 20, rng);
    const Field clm = scalar_rhs(w, ModelSpec{ModelKind::clm, 0.0, true}, DealiasRule::two_thirds);
    const Field osw0 = scalar_rhs(w, ModelSpec{ModelKind::osw, 0.0, true}, DealiasRule::two_thirds);
    CHECK(max_abs_diff(clm.values(), osw0.values()) <= 1e-14 * (clm.max_abs() + 1.0));

    const Field dg =
        scalar_rhs(w, ModelSpec{ModelKind::de_gregorio, 0.0, true}, DealiasRule::two_thirds);
    const Field osw1 = scalar_rhs(w, ModelSpec{ModelKind::osw, 1.0, true}, DealiasRule::two_thirds);
    CHECK(max_abs_diff(dg.values(), osw1.values()) <= 1e-14 * (dg.max_abs() + 1.0));
}

TEST_CASE("osw without stretching keeps only the convection term") {
    std::mt19937_64 rng(97);
    const Field w = random_band_limited(kGrid, 1, 20, rng);
    const Field full = scalar_rhs(w, ModelSpec{ModelKind::osw, 2.0, true}, DealiasRule::none);
    const Field transport_only =
        scalar_rhs(w, ModelSpec{ModelKind::osw, 2.0, false}, DealiasRule::none);
    const Field stretch = scalar_rhs(w, ModelSpec{ModelKind::clm, 0.0, true}, DealiasRule::none);
    double err = 0.0;
    for (int j = 0; j < kGrid.size(); ++j) {
        err = std::max(err, std::abs(full.values()[static_cast<std::size_t>(j)] -
                                     transport_only.values()[static_cast<std::size_t>(j)] -
                                     stretch.values()[static_cast<std::size_t>(j)]));
    }
    CHECK(err <= 1e-13 * (full.max_abs() + 1.0));
}

TEST_CASE("clm exact solution formula") {
    const Field w0 = cos_mode(kGrid, 1, 1.0);
    // t = 0 gives back 4 w0 / 4
    CHECK(max_abs_diff(clm_exact_solution(w0, 0.0).values(), w0.values()) < 1e-14);
    // z = 0: H w0 (0) = sin(0) = 0, so omega(0, 1) = 4 / (4 + 1) = 4/5
    const Field w1 = clm_exact_solution(w0, 1.0);
    CHECK(w1.values()[0] == doctest::Approx(0.8).epsilon(1e-12));
    // denominator at z = pi/2 is (2 - t)^2: blowup proximity near t = 2
    CHECK_NOTHROW(clm_exact_solution(w0, 1.9));
    CHECK_THROWS_AS(clm_exact_solution(w0, 2.0 - 1e-5), BlowupProximityError);
}

TEST_CASE("make_initial_data: paper data is the mean-corrected sin^2") {
    const double a = 1.0;
    const PreparedInitialData init = make_initial_data({InitialKind::paper_blowup, a, {}, {}}, kGrid);
    CHECK(init.u_offset == doctest::Approx(0.5).epsilon(1e-15));
    std::vector<double> expected(static_cast<std::size_t>(kGrid.size()));
    for (int j = 0; j < kGrid.size(); ++j) {
        expected[static_cast<std::size_t>(j)] = -0.5 * std::cos(kGrid.point(j));
    }
    CHECK(max_abs_diff(init.state.u.values(), expected) < 1e-14);
    CHECK(init.state.omega.max_abs() == 0.0);
    CHECK(std::abs(init.state.u.mean()) < 1e-15);

    const SymmetryError sym = symmetry_error(init.state);
    CHECK(sym.u_even_err < 1e-14);
    CHECK(sym.omega_odd_err == 0.0);

    CHECK_THROWS_AS(make_initial_data({InitialKind::paper_blowup, 0.0, {}, {}}, kGrid),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_initial_data({InitialKind::paper_blowup, -1.0, {}, {}}, kGrid),
                    std::invalid_argument);
}

TEST_CASE("make_initial_data: custom modes build the requested polynomial") {
    InitialSpec spec;
    spec.kind = InitialKind::custom_modes;
    spec.u_modes = {{1, 0.5, 0.0}, {3, 0.0, -0.25}};
    spec.omega_modes = {{2, 0.0, 1.0}};
    const PreparedInitialData init = make_initial_data(spec, kGrid);
    CHECK(init.u_offset == 0.0);
    for (int j = 0; j < kGrid.size(); j += 11) {
        const double z = kGrid.point(j);
        CHECK(init.state.u.values()[static_cast<std::size_t>(j)] ==
              doctest::Approx(0.5 * std::cos(z) - 0.25 * std::sin(3.0 * z)).epsilon(1e-12));
        CHECK(init.state.omega.values()[static_cast<std::size_t>(j)] ==
              doctest::Approx(std::sin(2.0 * z)).epsilon(1e-12));
    }
    spec.u_modes = {{kGrid.size() / 2, 1.0, 0.0}};
    CHECK_THROWS_AS(make_initial_data(spec, kGrid), std::invalid_argument);
}

TEST_CASE("symmetry_error examples") {
    const double mu = kGrid.mu();
    std::vector<double> u_even(static_cast<std::size_t>(kGrid.size()));
    std::vector<double> w_odd(static_cast<std::size_t>(kGrid.size()));
    std::vector<double> u_odd(static_cast<std::size_t>(kGrid.size()));
    std::vector<double> w_even(static_cast<std::size_t>(kGrid.size()));
    for (int j = 0; j < kGrid.size(); ++j) {
        const double z = kGrid.point(j);
        u_even[static_cast<std::size_t>(j)] = std::cos(2.0 * mu * z);
        w_odd[static_cast<std::size_t>(j)] = std::sin(2.0 * mu * z);
        u_odd[static_cast<std::size_t>(j)] = std::sin(2.0 * mu * z);
        w_even[static_cast<std::size_t>(j)] = std::cos(2.0 * mu * z);
    }
    const SymmetryError exact =
        symmetry_error(ModelState{Field(kGrid, u_even), Field(kGrid, w_odd), 0.0});
    CHECK(exact.u_even_err < 1e-14);
    CHECK(exact.omega_odd_err < 1e-14);

    const SymmetryError u_bad = symmetry_error(
        ModelState{Field(kGrid, u_odd), Field::zeros(kGrid), 0.0});
    CHECK(u_bad.u_even_err == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u_bad.omega_odd_err == 0.0);

    const SymmetryError w_bad = symmetry_error(
        ModelState{Field::zeros(kGrid), Field(kGrid, w_even), 0.0});
    CHECK(w_bad.u_even_err == 0.0);
    CHECK(w_bad.omega_odd_err == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("osw with a = 0 tracks clm step for step") {
    std::mt19937_64 rng(211);
    Field w_clm = random_band_limited(kGrid, 1, 12, rng);
    Field w_osw = w_clm;
    const ModelSpec clm{ModelKind::clm, 0.0, true};
    const ModelSpec osw0{ModelKind::osw, 0.0, true};
    const double dt = 2e-3;
    for (int step = 0; step < 100; ++step) {
        auto advance = [&](Field& w, const ModelSpec& spec) {
            ModelState st{Field::zeros(kGrid), w, 0.0};
            const Field k1 = scalar_rhs(w, spec, DealiasRule::two_thirds);
            std::vector<double> half(w.values());
            for (int j = 0; j < kGrid.size(); ++j) {
                half[static_cast<std::size_t>(j)] +=
                    0.5 * dt * k1.values()[static_cast<std::size_t>(j)];
            }
            const Field k2 = scalar_rhs(Field(kGrid, half, true), spec, DealiasRule::two_thirds);
            std::vector<double> out(w.values());
            for (int j = 0; j < kGrid.size(); ++j) {
                out[static_cast<std::size_t>(j)] += dt * k2.values()[static_cast<std::size_t>(j)];
            }
            w = Field(kGrid, std::move(out), true);
        };
        advance(w_clm, clm);
        advance(w_osw, osw0);
        CHECK(max_abs_diff(w_clm.values(), w_osw.values()) <= 1e-12);
    }
}

TEST_CASE("ccf run matches osw(a = -1) under omega = -theta_z") {
    // definitional reduction of the family; trajectories must agree to round-off
    std::mt19937_64 rng(101);
    const Field theta0 = random_band_limited(kGrid, 1, 10, rng);
    Field theta = theta0;
    Field omega = project_zero_mean(derivative(theta0, 1));
    {
        std::vector<double> neg(omega.values());
        for (double& x : neg) x = -x;
        omega = Field(kGrid, std::move(neg), true);
    }
    const ModelSpec ccf{ModelKind::ccf, 0.0, true};
    const ModelSpec osw_m1{ModelKind::osw, -1.0, true};
    const double dt = 1e-3;
    for (int step = 0; step < 200; ++step) {
        auto advance = [&](Field& w, const ModelSpec& spec) {
            const Field k1 = scalar_rhs(w, spec, DealiasRule::two_thirds);
            auto shift = [&](const Field& base, double c, const Field& dir) {
                std::vector<double> vals(base.values());
                for (int j = 0; j < kGrid.size(); ++j) {
                    vals[static_cast<std::size_t>(j)] +=
                        c * dir.values()[static_cast<std::size_t>(j)];
                }
                return Field(kGrid, std::move(vals), true);
            };
            const Field k2 = scalar_rhs(shift(w, 0.5 * dt, k1), spec, DealiasRule::two_thirds);
            const Field k3 = scalar_rhs(shift(w, 0.5 * dt, k2), spec, DealiasRule::two_thirds);
            const Field k4 = scalar_rhs(shift(w, dt, k3), spec, DealiasRule::two_thirds);
            std::vector<double> vals(w.values());
            for (int j = 0; j < kGrid.size(); ++j) {
                vals[static_cast<std::size_t>(j)] +=
                    dt / 6.0 *
                    (k1.values()[static_cast<std::size_t>(j)] +
                     2.0 * k2.values()[static_cast<std::size_t>(j)] +
                     2.0 * k3.values()[static_cast<std::size_t>(j)] +
                     k4.values()[static_cast<std::size_t>(j)]);
            }
            w = Field(kGrid, std::move(vals), true);
        };
        advance(theta, ccf);
        advance(omega, osw_m1);
    }
    const Field minus_theta_z = derivative(theta, 1);
    double err = 0.0;
    for (int j = 0; j < kGrid.size(); ++j) {
        err = std::max(err, std::abs(omega.values()[static_cast<std::size_t>(j)] +
                                     minus_theta_z.values()[static_cast<std::size_t>(j)]));
    }
    CHECK(err <= 1e-9 * (omega.max_abs() + 1.0));
}
