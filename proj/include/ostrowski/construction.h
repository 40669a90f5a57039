#pragma once

#include "ostrowski/gaps.h"
#include "ostrowski/window_solver.h"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ostrowski {

struct WindowTriple {
    long u = 0;
    long v = 0;
    long w = 0;
    bool operator==(const WindowTriple&) const = default;
};

struct IndexSelection {
    std::vector<long> indices;      // n_j, 1-based and increasing
    std::vector<mpq_class> ratios;  // mu_{n+1}/mu_n at each selected index
    std::string warning;
};

// Greedy choice of the J indices with the largest ratio mu_{n+1}/mu_n
// (ties go to the smaller n), returned in increasing order.
IndexSelection select_indices(const Subsequence& mu, long J);

// u = mu_n + 1, w = mu_{n+1}, v = floor(sqrt(u w)).  Throws
// std::domain_error unless u < v < w.
WindowTriple build_sequences(const Subsequence& mu, long n);

// True iff no mu_m with m >= n_first + 1 lies in any [u, w - 1].
bool check_mu_avoidance(const Subsequence& mu, const std::vector<WindowTriple>& stages, long n_first);

struct StageTarget {
    CompactSample K;
    SparsePolynomial f;
    double r = 0.5;
};

enum class Construction { universal_not_mu, center, real };

std::string construction_name(Construction c);
Construction parse_construction(const std::string& s);

// One stage inequality (or exact identity).  stage == 0 marks a global
// check.
struct Check {
    long stage = 0;
    std::string name;
    std::string relation;  // "<", "<=", ">", "=="
    double value = 0;
    double bound = 0;
    bool pass = false;
};

struct ProbeRecord {
    long n = 0;  // index into mu, or 0 for a stage probe
    long m = 0;  // partial-sum order
    double value = 0;
};

struct StageRecord {
    long stage = 0;
    long n = 0;  // selected index n_j
    WindowTriple triple;
    std::vector<cplx> K;             // grid actually used, probe point included
    SparsePolynomial target;         // f_s, when given as a polynomial
    std::vector<Scalar> samples;     // otherwise one value per K point
    double r = 0;                    // disc radius, 0 without a disc constraint
    long disc_points = 0;
    double half_width = 0;           // real case: the interval [-A, A]
    long retries = 0;
    std::string solver_status;
};

struct CertifiedBlockSeries {
    Construction kind = Construction::universal_not_mu;
    Mode mode = Mode::floating;
    mpfr_prec_t precision = default_precision;
    std::vector<long> mu;
    std::vector<StageRecord> stages;
    BlockSeries series;
    std::vector<std::string> labels;
    std::optional<Scalar> z0;
    std::optional<Scalar> zeta;
    double probe_tol = 0.1;
    long probe_tail = 2;
    std::vector<std::string> notes;

    std::vector<Check> checks;
    std::vector<ProbeRecord> probes;
    std::vector<std::pair<std::string, Scalar>> fingerprints;  // block values at the probe point

    bool pass() const;
    const Check* first_failure() const;
    const SparsePolynomial* block(const std::string& label) const;
};

struct BuildOptions {
    // Stage windows sit at degree several hundred; past about 24 active
    // terms the monomial form of a block cancels beyond 256 bits.
    SolverOptions solver{.active_limit = 24};
    // Escalation steps after a missed budget: denser K, then a finer
    // polygon.
    int max_retries = 2;
    long disc_points = 64;
    double probe_tol = 0.1;
    long probe_tail = 2;
};

CertifiedBlockSeries build_U_minus_Umu(const Subsequence& mu, const std::vector<StageTarget>& targets,
                                       const Scalar& z0, long S, const BuildOptions& opt = {});

// z0 = zeta / |zeta|.  Exact when |zeta| is rational; exact mode with an
// irrational |zeta| throws.
Scalar center_probe_point(const Center& zeta, Mode m, mpfr_prec_t prec);

CertifiedBlockSeries build_center_counterexample(const Subsequence& mu, const Center& zeta,
                                                 const std::vector<StageTarget>& targets, long S,
                                                 const BuildOptions& opt = {});

// Recomputes every check, the probe table and the block fingerprints from
// the stored series and stage plan; nothing from the builder is reused.
void evaluate_certificate(CertifiedBlockSeries& c);

// S_{mu_n}(f, zeta)(z0) for n = 1..N.
std::vector<Scalar> probe_partial_sums(const BlockSeries& f, const Subsequence& mu, const Center& zeta,
                                       const Scalar& z0, long N);

// Non-increasing over the last `tail` values, all of them below tol.
bool probe_decaying(const std::vector<double>& values, std::size_t tail, double tol);

struct Witness {
    std::optional<long> index;  // best index when its error is below tol
    long best_index = 0;
    double error = 0;
};

std::vector<Witness> verify_universality_samples(const BlockSeries& f, const std::vector<StageTarget>& targets,
                                                 const std::vector<long>& indices, double tol);

// Midpoint refinement of a sample; midpoints falling inside the unit disc
// are pushed out to the unit circle.
std::vector<cplx> densify(const std::vector<cplx>& pts);

}  // namespace ostrowski
