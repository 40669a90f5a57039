#pragma once

// Grid kernels in two flavours: a plain serial loop kept as the reference
// and an OpenMP version.  Both visit terms in the same order, so exact-mode
// results agree bit for bit and float-mode results agree to the last ulp.

#include "ostrowski/series.h"

#include <complex>
#include <vector>

namespace ostrowski::kernels {

// Thread cap from OSTROWSKI_THREADS (unset or invalid means no cap).
int thread_cap();

std::vector<Scalar> eval_grid_serial(const SparsePolynomial& p, const std::vector<Scalar>& points);
std::vector<Scalar> eval_grid_parallel(const SparsePolynomial& p, const std::vector<Scalar>& points);

// Max modulus over the grid of (p(z) - target(z)); target may be empty.
BigFloat max_deviation(const SparsePolynomial& p, const std::vector<Scalar>& points,
                       const std::vector<Scalar>& target, mpfr_prec_t prec);

// b_j for j in [0, n]; `flat` must be sorted by degree.
std::vector<Scalar> recenter_serial(const SparsePolynomial& flat, const Scalar& zeta, long n, bool log_space);
std::vector<Scalar> recenter_parallel(const SparsePolynomial& flat, const Scalar& zeta, long n, bool log_space);

}  // namespace ostrowski::kernels
