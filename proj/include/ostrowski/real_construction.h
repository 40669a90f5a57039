#pragma once

#include "ostrowski/construction.h"

#include <optional>
#include <vector>

namespace ostrowski {

// Equispaced grid on [-A, A] with an odd number of points, so that 0 is a
// node.  n = 0 picks 2 ceil(200 A) + 1, i.e. 400 A + 1 for integer A.
std::vector<double> real_grid(double A, long n = 0);

// Continuous target vanishing at 0: a polynomial without constant term or
// samples on real_grid(A).
struct RealTarget {
    std::optional<SparsePolynomial> poly;
    std::vector<double> samples;
    double A = 1;

    void validate() const;
    std::vector<Scalar> values(const std::vector<double>& grid, mpfr_prec_t prec) const;
};

struct RealWindowResult {
    SparsePolynomial P;
    double err = 0;
    std::string status;
};

// Real-coefficient minimax on real_grid(A) with support in [l, m].
RealWindowResult solve_real_window(const RealTarget& h, long l, long m, const SolverOptions& opt = {});

CertifiedBlockSeries build_real_counterexample(const Subsequence& mu, const std::vector<RealTarget>& targets,
                                               long S, const BuildOptions& opt = {});

}  // namespace ostrowski
