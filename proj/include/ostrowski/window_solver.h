#pragma once

#include "ostrowski/series.h"
#include "ostrowski/series_io.h"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ostrowski {

using cplx = std::complex<double>;

// Sample of a compact set outside the open unit disc.  Connectedness of the
// complement is asserted by the caller, not checked.
struct CompactSample {
    std::vector<cplx> points;
    std::string label;
    bool connected_complement = true;

    static CompactSample segment(cplx a, cplx b, long n, const std::string& label = "segment");
    // Arc of |z - center| = radius between the two angles (radians).
    static CompactSample arc(cplx center, double radius, double t0, double t1, long n,
                             const std::string& label = "arc");
    static CompactSample from_points(std::vector<cplx> pts, const std::string& label = "points");

    void validate() const;
    CompactSample with_point(cplx z) const;
};

// Default density: 40 points per unit length, at least 2.
long default_point_count(double length);

std::vector<cplx> circle_grid(double r, long n = 64);

struct WindowSpec {
    long sigma = 0;
    long tau = 0;
    void validate() const;
};

struct ApproxRequest {
    // Polynomial target; when absent the samples (one per K point) are used.
    std::optional<SparsePolynomial> target;
    std::vector<Scalar> samples;
    CompactSample K;
    double r = 0.5;
    std::vector<cplx> disc_grid;
    WindowSpec window;
    double lambda = 1.0;
};

struct SolverOptions {
    int polygon_order = 8;
    int cutting_rounds = 8;
    double cut_tolerance = 1e-9;
    // Windows with more coefficients than this are rejected outright.
    long max_coefficients = 4096;
    // Only the lowest `active_limit` degrees of the window are used.
    long active_limit = 40;
    // LP size (rows x columns) above which the reweighted least-squares
    // fallback runs instead.
    long lp_budget = 2000000;
    long lp_max_iterations = 200000;
    int irls_iterations = 300;
    bool force_irls = false;
    bool real_coefficients = false;
    Mode mode = Mode::floating;
    mpfr_prec_t precision = default_precision;
};

struct ApproxResult {
    SparsePolynomial P;
    WindowSpec window;
    double err_K = 0;
    double err_disc = 0;
    long iterations = 0;
    long active_terms = 0;
    std::string method;
    std::string status;
};

ApproxResult solve_window(const ApproxRequest& req, const SolverOptions& opt = {});

// Same solve on explicit grids without the request invariants.  An empty
// disc grid drops the disc constraint; K may meet the unit disc.
ApproxResult solve_window_grids(const std::vector<cplx>& K, const std::vector<Scalar>& hK,
                                const std::vector<cplx>& disc, const WindowSpec& window, double lambda,
                                const SolverOptions& opt = {});

// Values of the request's target on K at the working precision.
std::vector<Scalar> target_values(const ApproxRequest& req, mpfr_prec_t prec);

struct ThetaFit {
    double theta = 1;
    double residual = 0;
    bool exact = false;
    std::string warning;
};

ThetaFit theta_fit(const std::vector<ApproxResult>& results);

// Dense LP constraint assembly for the polygonal linearization: fills
// column-major rows (basis values times rotation) and right-hand sides.
struct ConstraintBlock {
    const std::vector<cplx>* basis = nullptr;  // row-major points x d
    const std::vector<cplx>* target = nullptr; // per point, may be null (zero)
    double weight = 1.0;
};

struct AssembledLp {
    long rows = 0;
    long vars = 0;
    std::vector<double> g;  // row-major rows x vars
    std::vector<double> b;
};

AssembledLp assemble_constraints_serial(const std::vector<ConstraintBlock>& blocks, long d,
                                        const std::vector<double>& angles, bool real_coefficients);
AssembledLp assemble_constraints_parallel(const std::vector<ConstraintBlock>& blocks, long d,
                                          const std::vector<double>& angles, bool real_coefficients);

json request_to_json(const ApproxRequest& req);
json result_to_json(const ApproxResult& res, Mode m, mpfr_prec_t prec);

}  // namespace ostrowski
