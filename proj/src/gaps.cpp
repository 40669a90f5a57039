#include "ostrowski/gaps.h"

#include "ostrowski/kernels.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ostrowski {

bool GapStructure::ordered() const {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].first >= pairs[i].second) return false;
        if (i > 0 && pairs[i - 1].second > pairs[i].first) return false;
    }
    return true;
}

std::vector<double> GapStructure::ratios() const {
    std::vector<double> out;
    for (const auto& [p, q] : pairs) out.push_back(p > 0 ? static_cast<double>(q) / static_cast<double>(p) : INFINITY);
    return out;
}

Subsequence Subsequence::from_list(std::vector<long> values) {
    if (values.empty()) throw std::invalid_argument("subsequence must be nonempty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 1) throw std::invalid_argument("subsequence values must be >= 1");
        if (i > 0 && values[i] <= values[i - 1]) throw std::invalid_argument("subsequence must be strictly increasing");
    }
    Subsequence s;
    s.values_ = std::move(values);
    return s;
}

Subsequence Subsequence::generate(const std::string& rule, long count) {
    if (count < 1) throw std::invalid_argument("generator needs a positive term count");
    std::vector<long> v;
    const long cap = std::numeric_limits<long>::max() / 64;
    if (rule == "squares") {
        for (long n = 1; n <= count; ++n) v.push_back(n * n);
    } else if (rule == "powers-of-2") {
        long x = 1;
        for (long n = 1; n <= count && x <= cap; ++n) v.push_back(x *= 2);
    } else if (rule == "factorials") {
        long x = 1;
        for (long n = 1; n <= count && x <= cap / (n + 1); ++n) v.push_back(x *= n);
    } else if (rule == "primes") {
        for (long c = 2; static_cast<long>(v.size()) < count; ++c) {
            bool prime = true;
            for (long d = 2; d * d <= c && prime; ++d) prime = c % d != 0;
            if (prime) v.push_back(c);
        }
    } else {
        throw std::invalid_argument("unknown generator '" + rule + "'");
    }
    Subsequence s = from_list(std::move(v));
    s.rule_ = rule;
    return s;
}

long Subsequence::at(long n) const {
    if (n < 1 || n > size())
        throw std::out_of_range("mu_" + std::to_string(n) + " is outside the available prefix of " +
                                std::to_string(size()) + " terms");
    return values_[static_cast<std::size_t>(n - 1)];
}

namespace {

// log|a| in double; -inf for zero.
double log_abs(const Scalar& a) {
    if (a.is_zero()) return -INFINITY;
    BigFloat m = a.abs(64);
    BigFloat l = log(m);
    return l.to_double();
}

double root_abs(const Scalar& a, long j) {
    if (a.is_zero()) return 0.0;
    return std::exp(log_abs(a) / static_cast<double>(j));
}

}  // namespace

GapStructure detect_gaps(const BlockSeries& f, double eta, double rho) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("threshold eta must lie in (0, 1)");
    if (!(rho > 1.0)) throw std::domain_error("minimum ratio rho must exceed 1");
    auto h = f.horizon();
    if (!h) throw std::invalid_argument("coefficient series is empty");
    const double guard = std::ldexp(1.0, -50);
    const SparsePolynomial flat = f.flatten();
    std::vector<char> small(static_cast<std::size_t>(*h) + 1, 1);
    for (const auto& [k, a] : flat.terms()) {
        if (k == 0) continue;
        small[static_cast<std::size_t>(k)] = root_abs(a, k) <= eta + guard;
    }
    GapStructure g;
    long j = 1;
    while (j <= *h) {
        if (!small[static_cast<std::size_t>(j)]) {
            ++j;
            continue;
        }
        long start = j;
        while (j <= *h && small[static_cast<std::size_t>(j)]) ++j;
        long p = std::max(start - 1, 1L);
        long q = j - 1;
        if (p < q && static_cast<double>(q) >= rho * static_cast<double>(p)) g.pairs.emplace_back(p, q);
    }
    return g;
}

GapDiagnostic gap_diagnostic(const BlockSeries& f, const GapStructure& g) {
    GapDiagnostic d;
    const SparsePolynomial flat = f.flatten();
    for (const auto& [p, q] : g.pairs) {
        double best = 0.0;
        for (const auto& [k, a] : flat.restrict(p + 1, q).terms()) best = std::max(best, root_abs(a, k));
        d.max_root.push_back(best);
    }
    d.decreasing = true;
    for (std::size_t i = 1; i < d.max_root.size(); ++i)
        if (d.max_root[i] > d.max_root[i - 1]) d.decreasing = false;
    return d;
}

std::string RatioProfile::label() const {
    switch (kind) {
        case RatioClass::bounded: return "bounded_by " + max_ratio.get_str();
        case RatioClass::divergent_trend: return "divergent_trend";
        default: return "undetermined";
    }
}

RatioProfile mu_ratio_profile(const Subsequence& mu, long N, const mpq_class& bound,
                              const std::vector<mpq_class>& ladder) {
    if (N < 1) throw std::invalid_argument("ratio profile needs N >= 1");
    if (N > mu.size())
        throw std::invalid_argument("ratio profile needs " + std::to_string(N) + " terms, only " +
                                    std::to_string(mu.size()) + " available");
    RatioProfile out;
    for (long n = 1; n < N; ++n) {
        mpq_class r(mu.at(n + 1), mu.at(n));
        r.canonicalize();
        if (out.ratios.empty() || r > out.max_ratio) out.max_ratio = r;
        out.ratios.push_back(r);
    }
    if (out.ratios.empty()) return out;
    if (out.max_ratio <= bound) {
        out.kind = RatioClass::bounded;
    } else if (std::all_of(ladder.begin(), ladder.end(), [&](const mpq_class& c) { return out.max_ratio > c; })) {
        out.kind = RatioClass::divergent_trend;
    }
    return out;
}

std::optional<long> hit_gap(const Subsequence& mu, std::pair<long, long> gap) {
    for (long v : mu.values())
        if (v >= gap.first && v < gap.second) return v;
    return std::nullopt;
}

bool finite_limit_check(const std::vector<double>& values, double tol, std::size_t tail) {
    if (values.empty()) return false;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1]) return false;
    std::size_t from = values.size() > tail ? values.size() - tail : 0;
    for (std::size_t i = from; i < values.size(); ++i)
        if (!(values[i] < tol)) return false;
    return true;
}

namespace {

std::vector<Scalar> convert_points(const std::vector<std::complex<double>>& K, Mode m, mpfr_prec_t prec) {
    std::vector<Scalar> out;
    out.reserve(K.size());
    for (auto z : K) out.push_back(Scalar::from_double(z, m, prec));
    return out;
}

mpfr_prec_t series_precision(const BlockSeries& f) {
    for (const auto& b : f.blocks())
        if (!b.empty() && !b.terms().front().second.is_exact()) return b.terms().front().second.precision();
    return default_precision;
}

}  // namespace

TransferReport verify_gap_transfer(const BlockSeries& f, const GapStructure& g, const Subsequence& mu,
                                   const std::vector<std::complex<double>>& K, double tol, std::size_t tail) {
    TransferReport rep;
    const Mode m = f.mode().value_or(Mode::exact);
    const mpfr_prec_t prec = series_precision(f);
    const auto pts = convert_points(K, m, prec);
    const SparsePolynomial flat = f.flatten();
    std::vector<double> sups;
    for (std::size_t s = 0; s < g.pairs.size(); ++s) {
        auto [p, q] = g.pairs[s];
        StageCheck c;
        c.stage = static_cast<long>(s) + 1;
        c.quantity = "sup_K |S_mu(f) - S_p(f)|";
        c.bound = tol;
        c.hit = hit_gap(mu, {p, q});
        if (!c.hit) {
            c.pass = false;
            c.value = NAN;
            rep.stages.push_back(c);
            continue;
        }
        SparsePolynomial diff = flat.restrict(p + 1, *c.hit);
        c.value = kernels::max_deviation(diff, pts, {}, prec).to_double();
        c.pass = c.value < tol;
        sups.push_back(c.value);
        rep.stages.push_back(c);
    }
    if (sups.empty()) {
        rep.note = "no subsequence term hits any gap";
        return rep;
    }
    rep.pass = finite_limit_check(sups, tol, tail);
    return rep;
}

TransferReport verify_center_transfer(const BlockSeries& f, const GapStructure& g, const std::vector<Scalar>& centers,
                                      const std::vector<std::complex<double>>& K, double tol, std::size_t tail) {
    TransferReport rep;
    const Mode m = f.mode().value_or(centers.empty() ? Mode::exact : centers.front().mode());
    const mpfr_prec_t prec = series_precision(f);
    const auto pts = convert_points(K, m, prec);
    const SparsePolynomial flat = f.flatten();
    std::vector<double> values;
    for (std::size_t s = 0; s < g.pairs.size(); ++s) {
        auto [p, q] = g.pairs[s];
        SparsePolynomial tail_terms = flat.restrict(p + 1, flat.degree().value_or(p + 1));
        BigFloat best(prec);
        for (const auto& zeta : centers) {
            check_same_mode(zeta, pts.empty() ? zeta : pts.front());
            auto b = kernels::recenter_parallel(tail_terms, zeta, p, false);
            std::vector<BigFloat> mods(pts.size(), BigFloat(prec));
            const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(static) num_threads(kernels::thread_cap())
            for (long i = 0; i < n; ++i) {
                auto k = static_cast<std::size_t>(i);
                mods[k] = shifted_horner(b, p, zeta, pts[k]).abs(prec);
            }
            for (const auto& v : mods)
                if (best < v) best = v;
        }
        StageCheck c;
        c.stage = static_cast<long>(s) + 1;
        c.quantity = "D_m";
        c.value = best.to_double();
        c.bound = tol;
        c.pass = c.value < tol;
        values.push_back(c.value);
        rep.stages.push_back(c);
    }
    if (values.empty()) {
        rep.note = "no gaps to check";
        return rep;
    }
    rep.pass = finite_limit_check(values, tol, tail);
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > 0 && !(values[i] < values[i - 1])) rep.pass = false;
    return rep;
}

Lemma23Bound lemma23_bound_rhs(double r, double M, double eps, long p, long q) {
    if (!(r > 0) || !(eps > 0)) throw std::domain_error("r and eps must be positive");
    if (!(2 * eps * M < 1)) throw std::domain_error("2εM < 1 violated");
    if (!(r * (1 + eps) < 1)) throw std::domain_error("r(1+ε) < 1 violated");
    if (!(M > std::max(2.0, 2 * r))) throw std::domain_error("M > max(2, 2r) violated");
    if (!(p < q)) throw std::domain_error("p < q violated");
    Lemma23Bound b;
    b.a1 = std::exp(static_cast<double>(1 + p) * std::log(2 * eps * M)) / (1 - 2 * eps * r);
    double s = (1 + eps) * r;
    double log_a2 = std::log(static_cast<double>(1 + p)) - std::log(1 - s) +
                    static_cast<double>(p) * (std::log(M) - std::log(s)) + static_cast<double>(1 + q) * std::log(s);
    b.a2 = std::exp(log_a2);
    return b;
}

}  // namespace ostrowski
