#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ostrowski/kernels.h"
#include "ostrowski/series.h"
#include "ostrowski/series_io.h"

#include <random>
#include <sstream>
#include <stdexcept>

using namespace ostrowski;

namespace {

Scalar q(long a, long b = 1) {
    mpq_class r(a, b);
    r.canonicalize();
    return Scalar::exact(r);
}

SparsePolynomial poly(std::vector<std::pair<long, Scalar>> t) { return SparsePolynomial(std::move(t)); }

BlockSeries series_of(const SparsePolynomial& p) { return BlockSeries({p}); }

// Pascal triangle row k, independent of binomial().
std::vector<mpz_class> pascal_row(long k) {
    std::vector<mpz_class> row{1};
    for (long i = 1; i <= k; ++i) {
        std::vector<mpz_class> next(row.size() + 1, 0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            next[j] += row[j];
            next[j + 1] += row[j];
        }
        row = std::move(next);
    }
    return row;
}

// Expands c (z - zeta)^j ... by repeated multiplication of dense coefficient vectors.
std::vector<mpq_class> expand_shifted(const std::vector<mpq_class>& b, const mpq_class& zeta) {
    std::vector<mpq_class> out(b.size(), 0);
    std::vector<mpq_class> power{1};
    for (std::size_t j = 0; j < b.size(); ++j) {
        for (std::size_t i = 0; i < power.size(); ++i) out[i] += b[j] * power[i];
        std::vector<mpq_class> next(power.size() + 1, 0);
        for (std::size_t i = 0; i < power.size(); ++i) {
            next[i + 1] += power[i];
            next[i] -= zeta * power[i];
        }
        power = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(17, 0) == 1);
    CHECK(binomial(40, 20) == pascal_row(40)[20]);
    CHECK(binomial(40, 20) == mpz_class("137846528820"));
    CHECK_THROWS_AS(binomial(3, 4), std::domain_error);
}

TEST_CASE("sparse polynomial invariants") {
    auto p = poly({{3, q(1)}, {1, q(2)}, {2, q(0)}});
    CHECK(p.size() == 2);
    CHECK(*p.valuation() == 1);
    CHECK(*p.degree() == 3);
    CHECK(p.coeff(2).is_zero());
    SparsePolynomial e;
    CHECK(!e.valuation());
    CHECK(!e.degree());
    CHECK_THROWS_AS(poly({{-1, q(1)}}), std::invalid_argument);
    CHECK(poly({{2, q(1)}, {2, q(-1)}}).empty());
}

TEST_CASE("eval") {
    CHECK(eval(SparsePolynomial::monomial(2, q(1)), q(3)) == q(9));
    CHECK(eval(SparsePolynomial(), q(7)).is_zero());
    CHECK(eval(SparsePolynomial::monomial(1, q(4, 5)), q(2)) == q(8, 5));
    CHECK_THROWS_AS(eval(SparsePolynomial::monomial(1, q(1)), Scalar::one(Mode::floating)), std::invalid_argument);
}

TEST_CASE("block series rejects overlapping blocks") {
    BlockSeries f;
    f.append(poly({{2, q(1)}, {3, q(1)}}));
    CHECK_THROWS_AS(f.append(SparsePolynomial::monomial(3, q(1))), std::invalid_argument);
    f.append(SparsePolynomial::monomial(10, q(5)));
    CHECK(*f.horizon() == 10);
    CHECK(f.coeff(10) == q(5));
    CHECK(f.coeff(7).is_zero());
}

TEST_CASE("partial_sum_origin") {
    auto block = poly({{5, q(1)}, {9, q(2)}});
    CHECK(partial_sum_origin(series_of(block), 4).empty());
    auto f = series_of(poly({{1, q(1)}, {3, q(1)}}));
    auto s = partial_sum_origin(f, 2);
    CHECK(s.size() == 1);
    CHECK(s.coeff(1) == q(1));
    BlockSeries g({poly({{2, q(1)}, {3, q(1)}}), poly({{10, q(1)}, {11, q(1)}, {12, q(1)}})});
    auto t = partial_sum_origin(g, 11);
    CHECK(t.size() == 4);
    CHECK(t.coeff(12).is_zero());
    CHECK(t.coeff(11) == q(1));
}

TEST_CASE("recenter_coefficients on z^2 at 1/2") {
    auto f = series_of(SparsePolynomial::monomial(2, q(1)));
    Center c(q(1, 2));
    auto b = recenter_coefficients(f, c, 2);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == q(1, 4));
    CHECK(b[1] == q(1));
    CHECK(b[2] == q(1));
    CHECK(partial_sum_at(f, c, 1, q(2)) == q(7, 4));
    CHECK(partial_sum_at(f, c, 2, q(2)) == q(4));
}

TEST_CASE("recentering at zero returns the coefficients") {
    auto f = series_of(poly({{0, q(3)}, {2, q(-1, 7)}, {5, q(2, 3)}}));
    auto b = recenter_coefficients(f, Center(q(0)), 5);
    for (long k = 0; k <= 5; ++k) CHECK(b[static_cast<std::size_t>(k)] == f.coeff(k));
    for (long n = 0; n <= 6; ++n)
        CHECK(partial_sum_at(f, Center(q(0)), n, q(3, 2)) == eval(partial_sum_origin(f, n), q(3, 2)));
}

TEST_CASE("recentering agrees with dense re-expansion") {
    // Random polynomial in (z - zeta) expanded to monomials, then recentered back.
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    std::vector<mpq_class> b(12);
    for (auto& x : b) {
        x = mpq_class(d(rng), 1 + (d(rng) + 9));
        x.canonicalize();
    }
    mpq_class zeta(-2, 7);
    auto a = expand_shifted(b, zeta);
    std::vector<SparsePolynomial::Term> terms;
    for (std::size_t k = 0; k < a.size(); ++k) terms.push_back({static_cast<long>(k), Scalar::exact(a[k])});
    auto f = series_of(SparsePolynomial(terms));
    auto got = recenter_coefficients(f, Center(Scalar::exact(zeta)), 11);
    for (std::size_t j = 0; j < b.size(); ++j) CHECK(got[j] == Scalar::exact(b[j]));
}

TEST_CASE("recentering twice returns the original coefficients") {
    auto p = poly({{1, q(2, 3)}, {4, Scalar::exact(mpq_class(1, 5), 2)}, {7, q(-1)}});
    Scalar zeta = Scalar::exact(mpq_class(1, 3), mpq_class(1, 4));
    auto b = recenter_coefficients(series_of(p), Center(zeta), 7);
    // b_j are the coefficients of f(w + zeta); recenter that at -zeta.
    std::vector<SparsePolynomial::Term> t;
    for (std::size_t j = 0; j < b.size(); ++j) t.push_back({static_cast<long>(j), b[j]});
    auto back = recenter_coefficients(series_of(SparsePolynomial(t)), Center(-zeta), 7);
    for (long k = 0; k <= 7; ++k) CHECK(back[static_cast<std::size_t>(k)] == p.coeff(k));
}

TEST_CASE("recentering is linear") {
    auto f = poly({{2, q(1)}, {6, q(-3, 2)}});
    auto g = poly({{0, q(5)}, {6, q(1, 2)}, {9, q(1)}});
    Center c(q(3, 5));
    auto bf = recenter_coefficients(series_of(f), c, 9);
    auto bg = recenter_coefficients(series_of(g), c, 9);
    auto bs = recenter_coefficients(series_of(f + g), c, 9);
    for (std::size_t j = 0; j < bs.size(); ++j) CHECK(bs[j] == bf[j] + bg[j]);
}

TEST_CASE("center must lie in the unit disc") {
    CHECK_THROWS_AS(Center(q(1)), std::domain_error);
    CHECK_THROWS_AS(Center(Scalar::exact(mpq_class(3, 5), mpq_class(4, 5))), std::domain_error);
}

TEST_CASE("a1_a2_split on z^4 + z^9") {
    auto f = series_of(poly({{4, q(1)}, {9, q(1)}}));
    Center c(q(1, 2));
    auto [a1, a2] = a1_a2_split(f, c, 2, 6, q(1));
    // A1 only sees k = 4, A2 only k = 9: sum_{j<=2} C(k,j) (1/2)^{k-j} (1/2)^j = 2^{-k} (1 + k + k(k-1)/2).
    CHECK(a1 == q(1 + 4 + 6, 16));
    CHECK(a2 == q(1 + 9 + 36, 512));
    CHECK(a1 + a2 == partial_sum_at(f, c, 2, q(1)) - partial_sum_at(f, Center(q(0)), 2, q(1)));
    CHECK_THROWS_AS(a1_a2_split(f, c, 6, 6, q(1)), std::domain_error);
}

TEST_CASE("a1_a2_split trivial cases") {
    auto low = series_of(poly({{1, q(1)}, {5, q(2)}}));
    auto s = a1_a2_split(low, Center(q(1, 3)), 2, 6, q(2));
    CHECK(s.a2.is_zero());
    auto quiet = series_of(poly({{0, q(1)}, {1, q(1)}}));
    auto t = a1_a2_split(quiet, Center(q(1, 3)), 2, 6, q(2));
    CHECK(t.a1.is_zero());
    CHECK(t.a2.is_zero());
}

TEST_CASE("serial and parallel kernels agree") {
    std::vector<SparsePolynomial::Term> t;
    for (long k = 0; k < 60; k += 3) t.push_back({k, Scalar::from_double({1.0 / (k + 1), 0.5}, Mode::floating)});
    SparsePolynomial p(t);
    std::vector<Scalar> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(Scalar::from_double({0.9 + i * 0.01, -0.2}, Mode::floating));
    auto a = kernels::eval_grid_serial(p, pts);
    auto b = kernels::eval_grid_parallel(p, pts);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    auto zeta = Scalar::from_double({0.25, 0.1}, Mode::floating);
    auto r1 = kernels::recenter_serial(p, zeta, 40, false);
    auto r2 = kernels::recenter_parallel(p, zeta, 40, false);
    for (std::size_t j = 0; j < r1.size(); ++j) CHECK(r1[j] == r2[j]);
}

TEST_CASE("series json round trip keeps exact values") {
    BlockSeries f({poly({{1, q(16, 15)}, {2, Scalar::exact(mpq_class(-1, 3), 2)}}), SparsePolynomial::monomial(7, q(5))});
    json j = series_to_json(f, {"a", "b"}, Mode::exact, 0);
    std::vector<std::string> labels;
    BlockSeries g = series_from_json(j, &labels);
    CHECK(labels == std::vector<std::string>{"a", "b"});
    for (long k = 0; k <= 7; ++k) CHECK(g.coeff(k) == f.coeff(k));
    std::ostringstream os;
    write_coefficients_csv(os, f);
    CHECK(os.str().rfind("degree,re,im\n", 0) == 0);
    CHECK(os.str().find("\n7,5,0\n") != std::string::npos);
}

TEST_CASE("float series json round trip is bit exact") {
    BigFloat third(mpq_class(1, 3), 256);
    BlockSeries f({SparsePolynomial::monomial(3, Scalar::from_float(third, -third))});
    BlockSeries g = series_from_json(series_to_json(f, {"x"}, Mode::floating, 256));
    CHECK(g.coeff(3) == f.coeff(3));
}
