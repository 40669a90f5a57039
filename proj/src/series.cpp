#include "ostrowski/series.h"

#include "ostrowski/kernels.h"

#include <algorithm>
#include <stdexcept>

namespace ostrowski {

// ------------------------------------------------------- SparsePolynomial

SparsePolynomial::SparsePolynomial(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& t : terms) {
        if (t.first < 0) throw std::invalid_argument("negative degree " + std::to_string(t.first));
        if (!terms_.empty()) check_same_mode(terms_.front().second, t.second);
        if (!terms_.empty() && terms_.back().first == t.first) {
            terms_.back().second += t.second;
            if (terms_.back().second.is_zero()) terms_.pop_back();
            continue;
        }
        if (!t.second.is_zero()) terms_.push_back(std::move(t));
    }
}

SparsePolynomial SparsePolynomial::monomial(long degree, const Scalar& c) {
    return SparsePolynomial(std::vector<Term>{{degree, c}});
}

std::optional<long> SparsePolynomial::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().first;
}

std::optional<long> SparsePolynomial::degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().first;
}

std::optional<Mode> SparsePolynomial::mode() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().second.mode();
}

Scalar SparsePolynomial::coeff(long k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, long d) { return t.first < d; });
    if (it != terms_.end() && it->first == k) return it->second;
    if (terms_.empty()) return Scalar();
    const Scalar& ref = terms_.front().second;
    return Scalar::zero(ref.mode(), std::max<mpfr_prec_t>(ref.precision(), 2));
}

SparsePolynomial SparsePolynomial::truncate(long n) const { return restrict(0, n); }

SparsePolynomial SparsePolynomial::restrict(long lo, long hi) const {
    SparsePolynomial out;
    for (const auto& t : terms_)
        if (t.first >= lo && t.first <= hi) out.terms_.push_back(t);
    return out;
}

SparsePolynomial SparsePolynomial::to_mode(Mode m, mpfr_prec_t prec) const {
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& [k, c] : terms_) t.emplace_back(k, c.to_mode(m, prec));
    return SparsePolynomial(std::move(t));
}

SparsePolynomial SparsePolynomial::negated() const {
    SparsePolynomial out;
    for (const auto& [k, c] : terms_) out.terms_.emplace_back(k, -c);
    return out;
}

SparsePolynomial operator+(const SparsePolynomial& a, const SparsePolynomial& b) {
    std::vector<SparsePolynomial::Term> t(a.terms_);
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return SparsePolynomial(std::move(t));
}

SparsePolynomial operator-(const SparsePolynomial& a, const SparsePolynomial& b) { return a + b.negated(); }

Scalar eval(const SparsePolynomial& p, const Scalar& z) {
    const auto& t = p.terms();
    if (t.empty()) return Scalar::zero(z.mode(), std::max<mpfr_prec_t>(z.precision(), 2));
    check_same_mode(t.front().second, z);
    Scalar acc = t.back().second;
    for (std::size_t i = t.size() - 1; i-- > 0;) {
        acc *= z.pow(t[i + 1].first - t[i].first);
        acc += t[i].second;
    }
    if (t.front().first > 0) acc *= z.pow(t.front().first);
    return acc;
}

// ------------------------------------------------------------ BlockSeries

BlockSeries::BlockSeries(std::vector<SparsePolynomial> blocks) {
    for (const auto& b : blocks) append(b);
}

void BlockSeries::append(const SparsePolynomial& block) {
    if (!block.empty()) {
        auto h = horizon();
        if (h && *block.valuation() <= *h)
            throw std::invalid_argument("block valuation " + std::to_string(*block.valuation()) +
                                        " does not exceed current horizon " + std::to_string(*h));
        auto m = mode();
        if (m && *m != *block.mode()) throw std::invalid_argument("mixed-mode arithmetic: block mode differs from series");
    }
    blocks_.push_back(block);
}

std::optional<long> BlockSeries::horizon() const {
    for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it)
        if (!it->empty()) return it->degree();
    return std::nullopt;
}

std::optional<Mode> BlockSeries::mode() const {
    for (const auto& b : blocks_)
        if (!b.empty()) return b.mode();
    return std::nullopt;
}

Scalar BlockSeries::coeff(long k) const {
    for (const auto& b : blocks_) {
        if (b.empty()) continue;
        if (k >= *b.valuation() && k <= *b.degree()) return b.coeff(k);
    }
    for (const auto& b : blocks_)
        if (!b.empty()) return Scalar::zero(*b.mode(), std::max<mpfr_prec_t>(b.terms().front().second.precision(), 2));
    return Scalar();
}

SparsePolynomial BlockSeries::flatten() const {
    std::vector<SparsePolynomial::Term> t;
    for (const auto& b : blocks_) t.insert(t.end(), b.terms().begin(), b.terms().end());
    return SparsePolynomial(std::move(t));
}

BlockSeries BlockSeries::to_mode(Mode m, mpfr_prec_t prec) const {
    BlockSeries out;
    for (const auto& b : blocks_) out.blocks_.push_back(b.to_mode(m, prec));
    return out;
}

Center::Center(Scalar z) : zeta(std::move(z)) {
    bool inside = zeta.is_exact() ? zeta.norm_exact() < 1 : zeta.norm(zeta.precision()) < BigFloat(1L, 2);
    if (!inside) throw std::domain_error("center must satisfy |zeta| < 1");
}

// ------------------------------------------------------------- operations

mpz_class binomial(long k, long j) {
    if (k < 0 || j < 0 || j > k)
        throw std::domain_error("binomial(" + std::to_string(k) + ", " + std::to_string(j) + ") needs 0 <= j <= k");
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
    return out;
}

SparsePolynomial partial_sum_origin(const BlockSeries& f, long n) {
    if (n < 0) throw std::domain_error("partial sum index must be non-negative");
    return f.flatten().truncate(n);
}

std::vector<Scalar> recenter_coefficients(const BlockSeries& f, const Center& c, long n, const RecenterOptions& opt) {
    if (n < 0) throw std::domain_error("recentering order must be non-negative");
    SparsePolynomial flat = f.flatten();
    if (!flat.empty()) check_same_mode(flat.terms().front().second, c.zeta);
    bool log_space = !c.zeta.is_exact() && flat.degree().value_or(0) > opt.log_space_threshold;
    return opt.parallel ? kernels::recenter_parallel(flat, c.zeta, n, log_space)
                        : kernels::recenter_serial(flat, c.zeta, n, log_space);
}

Scalar shifted_horner(const std::vector<Scalar>& b, long n, const Scalar& zeta, const Scalar& z) {
    Scalar w = z - zeta;
    Scalar acc = b.at(static_cast<std::size_t>(n));
    for (long j = n - 1; j >= 0; --j) {
        acc *= w;
        acc += b[static_cast<std::size_t>(j)];
    }
    return acc;
}

Scalar partial_sum_at(const BlockSeries& f, const Center& c, long n, const Scalar& z) {
    check_same_mode(c.zeta, z);
    auto b = recenter_coefficients(f, c, n);
    return shifted_horner(b, n, c.zeta, z);
}

std::vector<Scalar> partial_sums_at(const BlockSeries& f, const Center& c, const std::vector<long>& ns,
                                    const Scalar& z) {
    check_same_mode(c.zeta, z);
    if (ns.empty()) return {};
    long top = *std::max_element(ns.begin(), ns.end());
    auto b = recenter_coefficients(f, c, top);
    // Running sums of b_j (z - zeta)^j in increasing j.
    Scalar w = z - c.zeta;
    Scalar pw = Scalar::one(z.mode(), std::max<mpfr_prec_t>(z.precision(), 2));
    std::vector<Scalar> running;
    running.reserve(static_cast<std::size_t>(top) + 1);
    Scalar acc = Scalar::zero(z.mode(), std::max<mpfr_prec_t>(z.precision(), 2));
    for (long j = 0; j <= top; ++j) {
        acc += b[static_cast<std::size_t>(j)] * pw;
        running.push_back(acc);
        pw *= w;
    }
    std::vector<Scalar> out;
    out.reserve(ns.size());
    for (long m : ns) {
        if (m < 0) throw std::domain_error("partial sum index must be non-negative");
        out.push_back(running[static_cast<std::size_t>(m)]);
    }
    return out;
}

SplitResult a1_a2_split(const BlockSeries& f, const Center& c, long p, long q, const Scalar& z) {
    if (p < 0 || p >= q)
        throw std::domain_error("gap (" + std::to_string(p) + ", " + std::to_string(q) + ") needs 0 <= p < q");
    SparsePolynomial flat = f.flatten();
    long h = flat.degree().value_or(0);
    BlockSeries inner({flat.restrict(p + 1, q)});
    BlockSeries outer({flat.restrict(q + 1, std::max(h, q + 1))});
    SplitResult r;
    r.a1 = shifted_horner(recenter_coefficients(inner, c, p), p, c.zeta, z);
    r.a2 = shifted_horner(recenter_coefficients(outer, c, p), p, c.zeta, z);
    return r;
}

}  // namespace ostrowski
