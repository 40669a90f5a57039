#include "ostrowski/real_construction.h"

#include "stage_plan.h"

#include <cmath>
#include <stdexcept>

namespace ostrowski {

std::vector<double> real_grid(double A, long n) {
    if (!(A > 0) || !std::isfinite(A)) throw std::invalid_argument("half width A must be positive");
    if (n == 0) n = 2 * static_cast<long>(std::ceil(200 * A)) + 1;
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("real grid needs an odd count of at least 3 points");
    std::vector<double> x(static_cast<std::size_t>(n));
    const long half = n / 2;
    for (long i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = A * static_cast<double>(i - half) / half;
    return x;
}

void RealTarget::validate() const {
    if (!(A > 0)) throw std::invalid_argument("real target: A must be positive");
    if (poly) {
        if (!poly->empty() && *poly->valuation() < 1)
            throw std::invalid_argument("real target must vanish at 0 (no constant term)");
        for (const auto& [k, a] : poly->terms())
            if (!a.is_real()) throw std::invalid_argument("real target has a non-real coefficient");
        return;
    }
    const auto grid = real_grid(A);
    if (samples.size() != grid.size())
        throw std::invalid_argument("real target: expected " + std::to_string(grid.size()) + " samples, got " +
                                    std::to_string(samples.size()));
    if (std::abs(samples[samples.size() / 2]) > 1e-12)
        throw std::invalid_argument("real target must vanish at 0");
}

std::vector<Scalar> RealTarget::values(const std::vector<double>& grid, mpfr_prec_t prec) const {
    validate();
    std::vector<cplx> pts(grid.begin(), grid.end());
    if (poly) return detail::values_on(*poly, pts, prec);
    if (grid != real_grid(A)) throw std::invalid_argument("sampled real target is only known on its own grid");
    std::vector<Scalar> out;
    for (double v : samples) out.push_back(Scalar::from_complex(v, prec));
    return out;
}

RealWindowResult solve_real_window(const RealTarget& h, long l, long m, const SolverOptions& opt) {
    if (l <= 0) throw std::domain_error("real window must start at degree 1 or above");
    if (m < l) throw std::invalid_argument("real window needs l <= m");
    const auto grid = real_grid(h.A);
    SolverOptions o = opt;
    o.real_coefficients = true;
    auto r = solve_window_grids(std::vector<cplx>(grid.begin(), grid.end()), h.values(grid, o.precision), {},
                                {l, m}, 1.0, o);
    return {r.P, r.err_K, r.status};
}

CertifiedBlockSeries build_real_counterexample(const Subsequence& mu, const std::vector<RealTarget>& targets,
                                               long S, const BuildOptions& opt) {
    if (static_cast<long>(targets.size()) < S)
        throw std::invalid_argument(std::to_string(S) + " stages need as many targets, got " +
                                    std::to_string(targets.size()));
    for (const auto& t : targets) t.validate();
    const Mode mode = opt.solver.mode;
    const mpfr_prec_t prec = opt.solver.precision;

    CertifiedBlockSeries c;
    c.kind = Construction::real;
    c.mode = mode;
    c.precision = prec;
    c.mu = mu.values();
    c.probe_tol = opt.probe_tol;
    c.probe_tail = opt.probe_tail;
    const auto plan = detail::plan_stages(mu, S, c.notes);

    SparsePolynomial acc;
    for (long s = 1; s <= S; ++s) {
        const auto& tgt = targets[static_cast<std::size_t>(s - 1)];
        const auto& [n, t] = plan[static_cast<std::size_t>(s - 1)];
        const double b = 1.0 / static_cast<double>((s + 1) * (s + 1));
        auto grid = real_grid(tgt.A);
        std::vector<cplx> pts;
        std::vector<Scalar> fK;
        ApproxResult rp, rq;
        bool ok = false;
        int attempt = 0;
        for (; attempt <= opt.max_retries; ++attempt) {
            // Sampled targets are only known on their grid, so they skip the
            // densification step.
            if (attempt == 1 && tgt.poly) grid = real_grid(tgt.A, 2 * static_cast<long>(grid.size()) - 1);
            SolverOptions so = detail::escalate(opt.solver, attempt);
            so.real_coefficients = true;
            pts.assign(grid.begin(), grid.end());
            fK = tgt.values(grid, prec);
            std::vector<Scalar> h = fK, neg = fK;
            const auto accK = detail::values_on(acc, pts, prec);
            for (std::size_t i = 0; i < h.size(); ++i) {
                h[i] = h[i] - accK[i];
                neg[i] = -neg[i];
            }
            rp = solve_window_grids(pts, h, {}, {t.u, t.v}, 1.0, so);
            rq = solve_window_grids(pts, neg, {}, {t.v + 1, t.w}, 1.0, so);
            double sum = detail::sup_modulus(acc + rp.P + rq.P, pts, {}, prec);
            ok = rp.err_K < b && rq.err_K < b && sum < 2 * b;
            if (ok) break;
        }
        if (!ok)
            throw std::runtime_error("stage " + std::to_string(s) + ": real window solver missed the budget " +
                                     std::to_string(b) + " (fit " + std::to_string(rp.err_K) + ", cancel " +
                                     std::to_string(rq.err_K) + ")");
        StageRecord rec;
        rec.stage = s;
        rec.n = n;
        rec.triple = t;
        rec.K = pts;
        if (tgt.poly)
            rec.target = *tgt.poly;
        else
            rec.samples = fK;
        rec.half_width = tgt.A;
        rec.retries = attempt;
        rec.solver_status = rp.status + "/" + rq.status;
        c.stages.push_back(rec);
        c.series.append(rp.P);
        c.labels.push_back("P_" + std::to_string(s));
        c.series.append(rq.P);
        c.labels.push_back("Pt_" + std::to_string(s));
        acc = acc + rp.P + rq.P;
    }
    evaluate_certificate(c);
    return c;
}

}  // namespace ostrowski
