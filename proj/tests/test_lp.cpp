#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ostrowski/lp.h"
#include "ostrowski/window_solver.h"

#include <cmath>

using namespace ostrowski;

namespace {

// min -3x - 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18, with slacks.
StandardLp textbook() {
    StandardLp lp(3, {4, 12, 18});
    const double cols[5][3] = {{1, 0, 3}, {0, 2, 2}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const double cost[5] = {-3, -5, 0, 0, 0};
    for (int i = 0; i < 5; ++i) lp.add_column(cols[i], cost[i]);
    return lp;
}

}  // namespace

TEST_CASE("interior point solves a small LP") {
    auto lp = textbook();
    REQUIRE(lp.solve(200) == StandardLp::Status::optimal);
    CHECK(lp.objective() == doctest::Approx(-36).epsilon(1e-7));
    CHECK(lp.primal()[0] == doctest::Approx(2).epsilon(1e-6));
    CHECK(lp.primal()[1] == doctest::Approx(6).epsilon(1e-6));
    // dual optimum (0, -3/2, -1)
    CHECK(std::abs(lp.multipliers()[0]) < 1e-6);
    CHECK(lp.multipliers()[1] == doctest::Approx(-1.5).epsilon(1e-6));
    CHECK(lp.multipliers()[2] == doctest::Approx(-1).epsilon(1e-6));
}

TEST_CASE("appending a column and re-solving") {
    auto lp = textbook();
    REQUIRE(lp.solve(200) == StandardLp::Status::optimal);
    // a third product using one unit of the last resource, profit 7
    const double col[3] = {0, 0, 1};
    lp.add_column(col, -7);
    REQUIRE(lp.solve(200) == StandardLp::Status::optimal);
    CHECK(lp.objective() == doctest::Approx(-126).epsilon(1e-6));
}

TEST_CASE("infeasible and unbounded problems are reported") {
    StandardLp bad(1, {-1});
    const double a[1] = {1};
    bad.add_column(a, 1);
    CHECK(bad.solve(200) == StandardLp::Status::infeasible);

    StandardLp open(1, {0});
    const double x[1] = {1}, y[1] = {-1};
    open.add_column(x, -1);
    open.add_column(y, 0);
    CHECK(open.solve(200) == StandardLp::Status::unbounded);
}

TEST_CASE("serial and parallel constraint assembly agree") {
    std::vector<cplx> basis, target;
    const long d = 5;
    for (int i = 0; i < 30; ++i) {
        cplx z = std::polar(1.2 + 0.01 * i, 0.1 * i);
        for (long k = 0; k < d; ++k) basis.push_back(std::pow(z, static_cast<double>(k)));
        target.push_back(1.0 / z);
    }
    std::vector<cplx> disc_basis;
    for (int i = 0; i < 16; ++i) {
        cplx z = std::polar(0.5, 2 * M_PI * i / 16);
        for (long k = 0; k < d; ++k) disc_basis.push_back(std::pow(z, static_cast<double>(k)));
    }
    std::vector<ConstraintBlock> blocks{{&basis, &target, 1.0}, {&disc_basis, nullptr, 2.0}};
    std::vector<double> angles;
    for (int i = 0; i < 8; ++i) angles.push_back(2 * M_PI * i / 8);
    for (bool real : {false, true}) {
        auto a = assemble_constraints_serial(blocks, d, angles, real);
        auto b = assemble_constraints_parallel(blocks, d, angles, real);
        CHECK(a.rows == b.rows);
        CHECK(a.vars == b.vars);
        CHECK(a.g == b.g);
        CHECK(a.b == b.b);
    }
}
