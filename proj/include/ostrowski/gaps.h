#pragma once

#include "ostrowski/series.h"

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ostrowski {

struct GapStructure {
    std::vector<std::pair<long, long>> pairs;

    // p_1 < q_1 <= p_2 < q_2 <= ...
    bool ordered() const;
    std::vector<double> ratios() const;
};

// Strictly increasing positive integers, indexed from 1 as mu_1, mu_2, ...
class Subsequence {
public:
    static Subsequence from_list(std::vector<long> values);
    // rule is one of: squares, powers-of-2, factorials, primes.  Generation
    // stops early if the next term would overflow.
    static Subsequence generate(const std::string& rule, long count);

    const std::vector<long>& values() const { return values_; }
    const std::string& rule() const { return rule_; }
    long size() const { return static_cast<long>(values_.size()); }
    long at(long n) const;  // mu_n, 1-based

private:
    std::vector<long> values_;
    std::string rule_ = "custom";
};

GapStructure detect_gaps(const BlockSeries& f, double eta = 0.5, double rho = 4.0);

struct GapDiagnostic {
    std::vector<double> max_root;  // per pair, max of |a_j|^{1/j} over (p, q]
    bool decreasing = false;
};

GapDiagnostic gap_diagnostic(const BlockSeries& f, const GapStructure& g);

enum class RatioClass { bounded, divergent_trend, undetermined };

struct RatioProfile {
    std::vector<mpq_class> ratios;  // mu_{n+1}/mu_n for n = 1..N-1
    mpq_class max_ratio;
    RatioClass kind = RatioClass::undetermined;
    std::string label() const;
};

// Uses the first N terms.  bounded_by max if max <= bound; divergent_trend
// if the max exceeds every ladder rung; undetermined otherwise.
RatioProfile mu_ratio_profile(const Subsequence& mu, long N, const mpq_class& bound = 4,
                              const std::vector<mpq_class>& ladder = {4, 6});

std::optional<long> hit_gap(const Subsequence& mu, std::pair<long, long> gap);

struct StageCheck {
    long stage = 0;
    std::string quantity;
    double value = 0;
    double bound = 0;
    bool pass = false;
    std::optional<long> hit;
};

struct TransferReport {
    std::vector<StageCheck> stages;
    bool pass = false;
    std::string note;
};

// Finite-scale reading of "tends to zero": the last `tail` values are below
// tol and the sequence never increases.
bool finite_limit_check(const std::vector<double>& values, double tol, std::size_t tail = 2);

TransferReport verify_gap_transfer(const BlockSeries& f, const GapStructure& g, const Subsequence& mu,
                                   const std::vector<std::complex<double>>& K, double tol,
                                   std::size_t tail = 2);

TransferReport verify_center_transfer(const BlockSeries& f, const GapStructure& g, const std::vector<Scalar>& centers,
                                      const std::vector<std::complex<double>>& K, double tol,
                                      std::size_t tail = 2);

struct Lemma23Bound {
    double a1 = 0;
    double a2 = 0;
};

Lemma23Bound lemma23_bound_rhs(double r, double M, double eps, long p, long q);

}  // namespace ostrowski
