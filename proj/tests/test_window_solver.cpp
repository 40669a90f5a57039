#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ostrowski/window_solver.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace ostrowski;

namespace {

ApproxRequest inverse_request(long n_points, double r, long disc_points) {
    ApproxRequest req;
    req.K = CompactSample::segment({1.1, 0}, {2, 0}, n_points);
    for (auto z : req.K.points) req.samples.push_back(Scalar::one(Mode::floating) / Scalar::from_complex(z, 256));
    req.r = r;
    req.disc_grid = circle_grid(r, disc_points);
    return req;
}

ApproxResult fake(long tau, double err) {
    ApproxResult r;
    r.window = {1, tau};
    r.err_K = err;
    return r;
}

// max(|h - c1 z - c2 z^2| on K, |c1 z + c2 z^2| on the disc) for real c.
double objective(const std::vector<cplx>& K, const std::vector<cplx>& disc, double c1, double c2) {
    double worst = 0;
    for (auto z : K) worst = std::max(worst, std::abs(1.0 / z - c1 * z - c2 * z * z));
    for (auto z : disc) worst = std::max(worst, std::abs(c1 * z + c2 * z * z));
    return worst;
}

}  // namespace

TEST_CASE("zero target gives the zero polynomial") {
    ApproxRequest req;
    req.K = CompactSample::segment({1.2, 0}, {1.5, 0.3}, 20);
    req.target = SparsePolynomial();
    req.r = 0.5;
    req.disc_grid = circle_grid(0.5, 16);
    req.window = {2, 6};
    auto res = solve_window(req);
    CHECK(res.P.empty());
    CHECK(res.err_K == 0.0);
    CHECK(res.err_disc == 0.0);
}

TEST_CASE("single point, single coefficient") {
    // max(|2 - 2c|, c/2) is minimized at c = 4/5 with value 2/5.
    ApproxRequest req;
    req.K = CompactSample::from_points({{2, 0}});
    req.target = SparsePolynomial::monomial(0, Scalar::from_double(2, Mode::floating));
    req.r = 0.5;
    req.disc_grid = circle_grid(0.5, 64);
    req.window = {1, 1};
    auto res = solve_window(req);
    REQUIRE(res.P.size() == 1);
    auto c = res.P.coeff(1).to_complex();
    CHECK(c.real() == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(std::abs(c.imag()) < 1e-6);
    CHECK(std::max(res.err_K, res.err_disc) == doctest::Approx(0.4).epsilon(1e-6));
}

TEST_CASE("support containment and grid errors") {
    auto req = inverse_request(60, 0.5, 32);
    req.window = {3, 11};
    auto res = solve_window(req);
    REQUIRE(!res.P.empty());
    CHECK(*res.P.valuation() >= 3);
    CHECK(*res.P.degree() <= 11);
    double errK = 0, errD = 0;
    for (std::size_t i = 0; i < req.K.points.size(); ++i) {
        auto z = Scalar::from_complex(req.K.points[i], 256);
        errK = std::max(errK, (req.samples[i] - eval(res.P, z)).abs_double());
    }
    for (auto z : req.disc_grid) errD = std::max(errD, eval(res.P, Scalar::from_complex(z, 256)).abs_double());
    CHECK(res.err_K == doctest::Approx(errK).epsilon(1e-12));
    CHECK(res.err_disc == doctest::Approx(errD).epsilon(1e-12));
}

TEST_CASE("tiny instance matches a dense grid search") {
    auto req = inverse_request(12, 0.5, 4);
    req.window = {1, 2};
    SolverOptions opt;
    opt.real_coefficients = true;
    auto res = solve_window(req, opt);
    double solver = std::max(res.err_K, res.err_disc);
    // Coarse-to-fine search over real (c1, c2).
    double best = INFINITY, b1 = 0, b2 = 0, span = 4;
    for (int level = 0; level < 8; ++level) {
        double c1s = b1, c2s = b2;
        for (int i = -40; i <= 40; ++i)
            for (int j = -40; j <= 40; ++j) {
                double c1 = c1s + span * i / 40, c2 = c2s + span * j / 40;
                double v = objective(req.K.points, req.disc_grid, c1, c2);
                if (v < best) best = v, b1 = c1, b2 = c2;
            }
        span /= 8;
    }
    CHECK(solver <= best * 1.01);
    CHECK(solver >= best * 0.99);
}

TEST_CASE("scaling the target scales the error") {
    auto req = inverse_request(40, 0.5, 32);
    req.window = {2, 6};
    auto a = solve_window(req);
    for (auto& s : req.samples) s *= Scalar::from_double(3, Mode::floating);
    auto b = solve_window(req);
    CHECK(std::max(b.err_K, b.err_disc) == doctest::Approx(3 * std::max(a.err_K, a.err_disc)).epsilon(1e-4));
}

TEST_CASE("enlarging the window never hurts") {
    auto req = inverse_request(60, 0.5, 32);
    double prev = INFINITY;
    for (long tau : {4L, 6L, 9L, 13L}) {
        req.window = {2, tau};
        auto res = solve_window(req);
        double obj = std::max(res.err_K, res.err_disc);
        CHECK(obj <= prev * (1 + 1e-6));
        prev = obj;
    }
}

TEST_CASE("request validation") {
    auto req = inverse_request(10, 0.5, 8);
    req.window = {3, 2};
    CHECK_THROWS_AS(solve_window(req), std::invalid_argument);
    req.window = {0, 5000};
    CHECK_THROWS_AS(solve_window(req), std::length_error);
    req.window = {1, 2};
    req.r = 1.0;
    CHECK_THROWS_AS(solve_window(req), std::invalid_argument);
    CHECK_THROWS_AS(CompactSample::from_points({{0.5, 0}}).validate(), std::invalid_argument);
}

TEST_CASE("theta_fit") {
    auto fit = theta_fit({fake(10, 0.1), fake(20, 0.01), fake(30, 0.001)});
    CHECK(fit.theta == doctest::Approx(std::pow(10.0, -0.1)).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);
    auto flat = theta_fit({fake(10, 0.1), fake(20, 0.1), fake(30, 0.1)});
    CHECK(flat.theta == 1.0);
    CHECK(flat.warning == "no decay");
    CHECK(theta_fit({fake(10, 0.1), fake(20, 0.0), fake(30, 0.1)}).exact);
    CHECK_THROWS_AS(theta_fit({fake(10, 0.1), fake(20, 0.01)}), std::invalid_argument);
}

TEST_CASE("window sweep on [1.1, 2] decays") {
    auto req = inverse_request(200, 0.5, 64);
    std::vector<ApproxResult> results;
    for (long n = 2; n <= 4; ++n) {
        req.window = {n, n * n};
        results.push_back(solve_window(req));
    }
    for (std::size_t i = 1; i < results.size(); ++i) CHECK(results[i].err_K < results[i - 1].err_K);
    CHECK(theta_fit(results).theta < 1);
}

TEST_CASE("request and result json") {
    auto req = inverse_request(5, 0.5, 8);
    req.window = {1, 3};
    json j = request_to_json(req);
    CHECK(j.contains("window"));
    auto res = solve_window(req);
    json r = result_to_json(res, Mode::floating, 256);
    CHECK(r["status"] == res.status);
}
