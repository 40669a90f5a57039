#include "ostrowski/kernels.h"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace ostrowski::kernels {

int thread_cap() {
    const char* env = std::getenv("OSTROWSKI_THREADS");
    int hw = omp_get_max_threads();
    if (!env) return hw;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) return hw;
    return static_cast<int>(std::min<long>(v, hw));
}

std::vector<Scalar> eval_grid_serial(const SparsePolynomial& p, const std::vector<Scalar>& points) {
    std::vector<Scalar> out;
    out.reserve(points.size());
    for (const auto& z : points) out.push_back(eval(p, z));
    return out;
}

std::vector<Scalar> eval_grid_parallel(const SparsePolynomial& p, const std::vector<Scalar>& points) {
    std::vector<Scalar> out(points.size());
    const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_cap())
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = eval(p, points[static_cast<std::size_t>(i)]);
    return out;
}

BigFloat max_deviation(const SparsePolynomial& p, const std::vector<Scalar>& points, const std::vector<Scalar>& target,
                       mpfr_prec_t prec) {
    if (!target.empty() && target.size() != points.size())
        throw std::invalid_argument("target size does not match grid size");
    auto values = eval_grid_parallel(p, points);
    std::vector<BigFloat> mods(values.size(), BigFloat(prec));
    const long n = static_cast<long>(values.size());
#pragma omp parallel for schedule(static) num_threads(thread_cap())
    for (long i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(i);
        Scalar d = target.empty() ? values[k] : values[k] - target[k];
        mods[k] = d.abs(prec);
    }
    BigFloat best(prec);
    for (const auto& m : mods)
        if (best < m) best = m;
    return best;
}

namespace {

std::vector<Scalar> zeta_powers(const Scalar& zeta, long top) {
    std::vector<Scalar> pw;
    pw.reserve(static_cast<std::size_t>(top) + 1);
    pw.push_back(Scalar::one(zeta.mode(), std::max<mpfr_prec_t>(zeta.precision(), 2)));
    for (long m = 1; m <= top; ++m) pw.push_back(pw.back() * zeta);
    return pw;
}

BigFloat log_binomial(long k, long j, mpfr_prec_t prec) {
    auto lg = [prec](long x) {
        BigFloat v(x, prec), out(prec);
        int sign = 0;
        mpfr_lgamma(out.raw(), &sign, v.raw(), MPFR_RNDN);
        return out;
    };
    return lg(k + 1) - lg(j + 1) - lg(k - j + 1);
}

void recenter_range(const SparsePolynomial& flat, const std::vector<Scalar>& pw, long j0, long j1, bool log_space,
                    std::vector<Scalar>& b) {
    for (const auto& [k, a] : flat.terms()) {
        if (k < j0) continue;
        long jmax = std::min(k, j1 - 1);
        if (log_space) {
            mpfr_prec_t prec = a.precision() + 32;
            for (long j = j0; j <= jmax; ++j) {
                const Scalar& z = pw[static_cast<std::size_t>(k - j)];
                if (z.is_zero()) continue;
                BigFloat w = exp(log_binomial(k, j, prec));
                b[static_cast<std::size_t>(j)] += a * z * Scalar::from_float(w, BigFloat(prec));
            }
            continue;
        }
        mpz_class c = binomial(k, j0);
        for (long j = j0; j <= jmax; ++j) {
            const Scalar& z = pw[static_cast<std::size_t>(k - j)];
            if (!z.is_zero()) b[static_cast<std::size_t>(j)] += scale(a * z, c);
            c *= (k - j);
            c /= (j + 1);
        }
    }
}

std::vector<Scalar> recenter_impl(const SparsePolynomial& flat, const Scalar& zeta, long n, bool log_space,
                                  bool parallel) {
    mpfr_prec_t prec = std::max<mpfr_prec_t>(zeta.precision(), 2);
    std::vector<Scalar> b(static_cast<std::size_t>(n) + 1, Scalar::zero(zeta.mode(), prec));
    if (flat.empty()) return b;
    if (zeta.is_zero()) {
        for (const auto& [k, a] : flat.terms())
            if (k <= n) b[static_cast<std::size_t>(k)] = a;
        return b;
    }
    long top = *flat.degree();
    auto pw = zeta_powers(zeta, top);
    if (!parallel) {
        recenter_range(flat, pw, 0, n + 1, log_space, b);
        return b;
    }
    const long chunk = 16;
    const long nchunks = (n + chunk) / chunk;
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_cap())
    for (long c = 0; c < nchunks; ++c) {
        long j0 = c * chunk;
        long j1 = std::min(n + 1, j0 + chunk);
        recenter_range(flat, pw, j0, j1, log_space, b);
    }
    return b;
}

}  // namespace

std::vector<Scalar> recenter_serial(const SparsePolynomial& flat, const Scalar& zeta, long n, bool log_space) {
    return recenter_impl(flat, zeta, n, log_space, false);
}

std::vector<Scalar> recenter_parallel(const SparsePolynomial& flat, const Scalar& zeta, long n, bool log_space) {
    return recenter_impl(flat, zeta, n, log_space, true);
}

}  // namespace ostrowski::kernels
