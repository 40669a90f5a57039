#pragma once

#include "ostrowski/scalar.h"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ostrowski {

// Coefficients keyed by degree, sorted, with no stored zeros.  All
// coefficients share one mode.
class SparsePolynomial {
public:
    using Term = std::pair<long, Scalar>;

    SparsePolynomial() = default;
    explicit SparsePolynomial(std::vector<Term> terms);

    static SparsePolynomial monomial(long degree, const Scalar& c);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::optional<long> valuation() const;
    std::optional<long> degree() const;
    std::optional<Mode> mode() const;

    // Zero of the polynomial's mode (exact zero when empty) if absent.
    Scalar coeff(long k) const;

    // Degrees <= n.
    SparsePolynomial truncate(long n) const;
    // Degrees in [lo, hi].
    SparsePolynomial restrict(long lo, long hi) const;
    SparsePolynomial to_mode(Mode m, mpfr_prec_t prec = default_precision) const;
    SparsePolynomial negated() const;

    friend SparsePolynomial operator+(const SparsePolynomial& a, const SparsePolynomial& b);
    friend SparsePolynomial operator-(const SparsePolynomial& a, const SparsePolynomial& b);

private:
    std::vector<Term> terms_;
};

Scalar eval(const SparsePolynomial& p, const Scalar& z);

// Concatenation of polynomials with increasing, disjoint supports.
class BlockSeries {
public:
    BlockSeries() = default;
    explicit BlockSeries(std::vector<SparsePolynomial> blocks);

    // Throws std::invalid_argument unless the block starts strictly above
    // the current horizon.
    void append(const SparsePolynomial& block);

    const std::vector<SparsePolynomial>& blocks() const { return blocks_; }
    std::optional<long> horizon() const;
    std::optional<Mode> mode() const;
    Scalar coeff(long k) const;
    // All nonzero coefficients in increasing degree.
    SparsePolynomial flatten() const;
    BlockSeries to_mode(Mode m, mpfr_prec_t prec = default_precision) const;

private:
    std::vector<SparsePolynomial> blocks_;
};

struct Center {
    Scalar zeta;
    explicit Center(Scalar z);
};

mpz_class binomial(long k, long j);

SparsePolynomial partial_sum_origin(const BlockSeries& f, long n);

struct RecenterOptions {
    // Float-mode horizons above this use lgamma-based binomial weights.
    long log_space_threshold = 100000;
    bool parallel = true;
};

std::vector<Scalar> recenter_coefficients(const BlockSeries& f, const Center& c, long n,
                                          const RecenterOptions& opt = {});

Scalar partial_sum_at(const BlockSeries& f, const Center& c, long n, const Scalar& z);

// S_n(f, zeta)(z) for every n in ns, sharing one recentering pass.
std::vector<Scalar> partial_sums_at(const BlockSeries& f, const Center& c, const std::vector<long>& ns,
                                    const Scalar& z);

struct SplitResult {
    Scalar a1;
    Scalar a2;
};

SplitResult a1_a2_split(const BlockSeries& f, const Center& c, long p, long q, const Scalar& z);

// Horner sum of b_j (z - zeta)^j over j = 0..n.
Scalar shifted_horner(const std::vector<Scalar>& b, long n, const Scalar& zeta, const Scalar& z);

}  // namespace ostrowski
