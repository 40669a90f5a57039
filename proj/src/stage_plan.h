#pragma once

// Helpers shared by the complex and real builders.

#include "ostrowski/construction.h"

#include <string>
#include <vector>

namespace ostrowski::detail {

struct PlannedStage {
    long n = 0;
    WindowTriple triple;
};

// Picks S indices among those whose windows satisfy u < v < w, largest
// ratios first; rejected indices are noted.
std::vector<PlannedStage> plan_stages(const Subsequence& mu, long S, std::vector<std::string>& notes);

std::vector<Scalar> float_points(const std::vector<cplx>& pts, mpfr_prec_t prec);
std::vector<Scalar> values_on(const SparsePolynomial& p, const std::vector<cplx>& pts, mpfr_prec_t prec);
// max |p - target| over pts (target may be empty).
double sup_modulus(const SparsePolynomial& p, const std::vector<cplx>& pts, const std::vector<Scalar>& target,
                   mpfr_prec_t prec);

SolverOptions escalate(const SolverOptions& base, int attempt);

}  // namespace ostrowski::detail
