#include "hepp/analytic.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hepp::analytic;

TEST_CASE("simple-model step formulas at frozen points") {
    const auto s1 = step1_simple(0.7, 0.8);
    CHECK(s1.probability == doctest::Approx(0.68).epsilon(1e-12));
    CHECK(s1.coeffs.phi_plus == doctest::Approx(0.56 / 0.68).epsilon(1e-12));
    CHECK(s1.coeffs.sum() == doctest::Approx(1.0).epsilon(1e-12));

    const auto trivial = step1_simple(1, 1);
    CHECK(trivial.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trivial.coeffs.phi_plus == doctest::Approx(1.0).epsilon(1e-12));

    const auto f1 = step1_fail_simple(0.7, 0.8);
    CHECK(f1.probability == doctest::Approx(0.32).epsilon(1e-12));
    CHECK(f1.coeffs.phi_plus == doctest::Approx(0.4375).epsilon(1e-12));
    CHECK(f1.coeffs.sum() == doctest::Approx(1.0).epsilon(1e-12));

    // P2 and F'1 in the independently expanded rational forms.
    const double pp = 0.7, ps = 0.8, pt = 0.85;
    const auto s2 = step2_simple(pp, ps, pt);
    const double p2_expanded =
        (1 - pp - ps * pt + 4 * pp * ps * pt) / (2 - 2 * pp - ps + 4 * pp * ps);
    CHECK(s2.probability == doctest::Approx(p2_expanded).epsilon(1e-12));
    const double f1p_expanded = 3 * pp * ps * pt / (1 - pt * ps + pp * (4 * pt * ps - 1));
    CHECK(s2.coeffs.phi_plus == doctest::Approx(f1p_expanded).epsilon(1e-12));
    CHECK(s2.coeffs.sum() == doctest::Approx(1.0).epsilon(1e-12));

    // Error-rate reduction: F'3 < F2 and F'4 < F3 for pt > 1/2.
    CHECK(s2.coeffs.psi_plus < s1.coeffs.phi_minus);
    CHECK(s2.coeffs.psi_minus < s1.coeffs.psi_plus);
}

TEST_CASE("general-model step formulas at frozen points") {
    const auto g1 = step1_general(0.6, 0.8);
    CHECK(g1.probability == doctest::Approx(6.04 / 9).epsilon(1e-12));
    CHECK(g1.coeffs.phi_plus == doctest::Approx(4.4 / 6.04).epsilon(1e-12));
    CHECK(std::abs(g1.coeffs.phi_plus - 0.7285) < 5e-5);
    CHECK(g1.coeffs.psi_plus == doctest::Approx(g1.coeffs.psi_minus).epsilon(1e-12));
    CHECK(g1.coeffs.sum() == doctest::Approx(1.0).epsilon(1e-12));

    // P2n in the independently expanded rational form, and F'1n assembled from the expanded
    // F1n/F3n rationals.
    const double pp = 0.6, ps = 0.8, pt = 0.9;
    const auto g2 = step2_general(pp, ps, pt);
    const double p2n_expanded = (7 - ps + pp * (4 * ps - 1) + 2 * pt * (4 * pp - 1) * (4 * ps - 1)) /
                               (3 * (8 * pp * ps - 2 * pp - 2 * ps + 5));
    CHECK(g2.probability == doctest::Approx(p2n_expanded).epsilon(1e-12));
    const double f1n_expanded = (10 * pp * ps - pp - ps + 1) / (8 * pp * ps - 2 * pp - 2 * ps + 5);
    const double f3n_expanded =
        2 * (1 - pp) * (1 - ps) / (8 * pp * ps - 2 * pp - 2 * ps + 5);
    CHECK(g2.coeffs.phi_plus ==
          doctest::Approx((f1n_expanded * pt + f3n_expanded * (1 - pt) / 3) / p2n_expanded)
              .epsilon(1e-12));
    CHECK(g2.coeffs.sum() == doctest::Approx(1.0).epsilon(1e-12));

    const auto trivial = step2_general(1, 1, 1);
    CHECK(trivial.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trivial.coeffs.phi_plus == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("failure branches: completeness and residual-entanglement bound") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int k = 0; k < 1000; ++k) {
        const double pp = u(rng), ps = u(rng), pt = u(rng);
        const auto s1 = step1_simple(pp, ps);
        const auto s2 = step2_simple(pp, ps, pt);
        const auto fb = fail_branches(pp, ps, pt);
        const double total = s1.probability * s2.probability + fb.fail1_success2.joint_probability +
                             fb.success1_fail2.joint_probability + fb.both_fail.joint_probability;
        CHECK(std::abs(total - 1.0) < 1e-12);

        const auto f1b = step1_fail_simple(pp, ps);
        if (!f1b.degenerate) {
            const bool entangled = f1b.coeffs.phi_plus > 0.5;
            const bool predicted = ps < fail1_residual_ps_bound(pp);
            if (std::abs(ps - fail1_residual_ps_bound(pp)) > 1e-9) CHECK(entangled == predicted);
        }
    }
    // The p_s bound at pp = 0.65 is exactly 1.6/2.3 (about 0.6957).
    CHECK(fail1_residual_ps_bound(0.65) == doctest::Approx(1.6 / 2.3).epsilon(1e-12));
}

TEST_CASE("criteria: frozen band at pp = 0.65 and inequality/band agreement") {
    const auto rep = criteria(0.65, 0.75, 0.75);
    REQUIRE(!rep.ps_band.empty);
    CHECK(std::abs(rep.ps_band.lower - 0.601) < 1e-3);
    CHECK(std::abs(rep.ps_band.upper - 0.715) < 1e-3);

    // Bisection bands agree with the direct inequality evaluation.
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> u(0.51, 0.99);
    int checked = 0;
    for (int k = 0; k < 10000; ++k) {
        const double pp = u(rng), ps = u(rng);
        const auto r = criteria(pp, ps, 0.75);
        if (r.ps_band.empty) continue;
        const bool inside = ps > r.ps_band.lower + 1e-5 && ps < r.ps_band.upper - 1e-5;
        const bool outside = ps < r.ps_band.lower - 1e-5 || ps > r.ps_band.upper + 1e-5;
        if (inside) CHECK((r.general_f1n_gt_pp && r.general_f1n_gt_ps));
        if (outside) CHECK(!(r.general_f1n_gt_pp && r.general_f1n_gt_ps));
        if (inside || outside) ++checked;
    }
    CHECK(checked > 5000);

    // All criteria false at the noiseless fixed point.
    const auto fp = criteria(1, 1, 1);
    CHECK(!fp.simple_f1_gt_pp);
    CHECK(!fp.general_f1n_gt_pp);
    CHECK(!fp.general_f1n_gt_ps);
}

TEST_CASE("figure 8 / figure 9 crossings via root finding") {
    auto fail2_cross = [](double ps) {
        return *find_root(
            [&](double pt) { return fail_branches(0.65, ps, pt).success1_fail2.coeffs.phi_plus - 0.65; },
            1e-3, 1 - 1e-3);
    };
    CHECK(std::abs(fail2_cross(0.52) - 0.519) < 1e-3);
    CHECK(std::abs(fail2_cross(0.62) - 0.596) < 1e-3);
    CHECK(std::abs(fail2_cross(0.7) - 0.642) < 1e-3);
    CHECK(std::abs(fail2_cross(0.8) - 0.687) < 1e-3);

    auto fail3_cross = [](double ps) {
        return *find_root(
            [&](double pt) { return fail_branches(0.65, ps, pt).both_fail.coeffs.phi_plus - 0.5; },
            1e-3, 1 - 1e-3);
    };
    CHECK(std::abs(fail3_cross(0.52) - 0.682) < 1e-3);
    CHECK(std::abs(fail3_cross(0.62) - 0.599) < 1e-3);
    // Closed form: the third crossing sits at [pp(3-2ps)-ps]/[(2pp+1)(1-ps)];
    // the quoted 0.523 is a slight misstatement of this same formula's value.
    const double exact = (0.65 * (3 - 2 * 0.68) - 0.68) / ((2 * 0.65 + 1) * (1 - 0.68));
    CHECK(std::abs(fail3_cross(0.68) - exact) < 1e-5);
    CHECK(std::abs(exact - 0.523) < 1.6e-3);
}

TEST_CASE("monotonicity sweeps match the figure-level claims") {
    auto decreasing = [](auto f, double lo, double hi) {
        const int n = static_cast<int>((hi - lo) / 1e-3);
        double prev = f(lo);
        for (int i = 1; i <= n; ++i) {
            const double x = lo + i * 1e-3;
            const double y = f(x);
            if (y > prev + 1e-12) return false;
            prev = y;
        }
        return true;
    };
    auto increasing = [&](auto f, double lo, double hi) {
        return decreasing([&](double x) { return -f(x); }, lo, hi);
    };

    // F2n and F3n decreasing in ps at pp = 0.6.
    CHECK(decreasing([](double ps) { return step1_general(0.6, ps).coeffs.phi_minus; }, 0.505, 0.999));
    CHECK(decreasing([](double ps) { return step1_general(0.6, ps).coeffs.psi_plus; }, 0.505, 0.999));
    // F'2n, F'3n decreasing in pt at (0.6, 0.8).
    CHECK(decreasing([](double pt) { return step2_general(0.6, 0.8, pt).coeffs.phi_minus; }, 0.505,
                     0.999));
    CHECK(decreasing([](double pt) { return step2_general(0.6, 0.8, pt).coeffs.psi_plus; }, 0.505,
                     0.999));
    // F'_fail1 increasing in pt, decreasing in ps.
    CHECK(increasing(
        [](double pt) { return fail_branches(0.65, 0.62, pt).fail1_success2.coeffs.phi_plus; },
        0.51, 0.999));
    CHECK(decreasing(
        [](double ps) { return fail_branches(0.65, ps, 0.8).fail1_success2.coeffs.phi_plus; },
        0.51, 0.69));
    // F_fail2 increasing in ps, decreasing in pt.
    CHECK(increasing(
        [](double ps) { return fail_branches(0.65, ps, 0.8).success1_fail2.coeffs.phi_plus; },
        0.51, 0.999));
    CHECK(decreasing(
        [](double pt) { return fail_branches(0.65, 0.62, pt).success1_fail2.coeffs.phi_plus; },
        0.51, 0.999));
    // F_fail3 decreasing in both.
    CHECK(decreasing(
        [](double ps) { return fail_branches(0.65, ps, 0.6).both_fail.coeffs.phi_plus; }, 0.51,
        0.999));
    CHECK(decreasing(
        [](double pt) { return fail_branches(0.65, 0.62, pt).both_fail.coeffs.phi_plus; }, 0.51,
        0.999));
}

TEST_CASE("figure tables: grids and row-wise normalization") {
    const auto f2 = figure_data(2);
    CHECK(f2.columns.size() == 4);
    CHECK(f2.rows.front()[0] == doctest::Approx(0.505).epsilon(1e-12));
    CHECK(f2.rows.back()[0] == doctest::Approx(1.0).epsilon(1e-12));
    bool found = false;
    for (const auto& row : f2.rows)
        if (std::abs(row[0] - 0.8) < 1e-9) {
            CHECK(row[1] == doctest::Approx(4.4 / 6.04).epsilon(1e-10));
            found = true;
        }
    CHECK(found);

    const auto f4 = figure_data(4);
    for (const auto& row : f4.rows)
        CHECK(row[1] + row[2] + 2 * row[3] == doctest::Approx(1.0).epsilon(1e-10));

    const auto f3 = figure_data(3);
    for (const auto& row : f3.rows)
        if (!std::isnan(row[1])) CHECK(row[1] <= row[2]);

    const auto f8 = figure_data(8);
    // The ps = 0.8 curve crosses 0.65 between consecutive grid rows around 0.687.
    bool crossed = false;
    for (size_t i = 1; i < f8.rows.size(); ++i)
        if ((f8.rows[i - 1][4] - 0.65) * (f8.rows[i][4] - 0.65) < 0) {
            CHECK(std::abs(0.5 * (f8.rows[i - 1][0] + f8.rows[i][0]) - 0.687) < 5e-3);
            crossed = true;
        }
    CHECK(crossed);

    CHECK_THROWS_AS(figure_data(6), std::invalid_argument);
}
