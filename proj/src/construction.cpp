#include "ostrowski/construction.h"

#include "ostrowski/kernels.h"
#include "ostrowski/real_construction.h"
#include "stage_plan.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ostrowski {

IndexSelection select_indices(const Subsequence& mu, long J) {
    const long avail = mu.size() - 1;
    if (J < 1) throw std::invalid_argument("need at least one index");
    if (J > avail)
        throw std::invalid_argument("asked for " + std::to_string(J) + " indices, the prefix offers " +
                                    std::to_string(std::max(avail, 0L)));
    std::vector<std::pair<mpq_class, long>> r;
    for (long n = 1; n <= avail; ++n) {
        mpq_class q(mu.at(n + 1), mu.at(n));
        q.canonicalize();
        r.emplace_back(q, n);
    }
    bool constant = std::all_of(r.begin(), r.end(), [&](const auto& x) { return x.first == r.front().first; });
    std::stable_sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    r.resize(static_cast<std::size_t>(J));
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    IndexSelection out;
    for (const auto& [q, n] : r) {
        out.indices.push_back(n);
        out.ratios.push_back(q);
    }
    if (constant) out.warning = "no divergence: every ratio equals " + r.front().first.get_str();
    return out;
}

WindowTriple build_sequences(const Subsequence& mu, long n) {
    WindowTriple t;
    t.u = mu.at(n) + 1;
    t.w = mu.at(n + 1);
    mpz_class prod = mpz_class(t.u) * mpz_class(t.w);
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    t.v = root.get_si();
    if (!(t.u < t.v && t.v < t.w))
        throw std::domain_error("window (" + std::to_string(t.u) + ", " + std::to_string(t.v) + ", " +
                                std::to_string(t.w) + ") at n = " + std::to_string(n) + " violates u < v < w");
    return t;
}

bool check_mu_avoidance(const Subsequence& mu, const std::vector<WindowTriple>& stages, long n_first) {
    for (long m = std::max(n_first + 1, 1L); m <= mu.size(); ++m) {
        long x = mu.at(m);
        for (const auto& t : stages)
            if (x >= t.u && x <= t.w - 1) return false;
    }
    return true;
}

std::string construction_name(Construction c) {
    switch (c) {
        case Construction::universal_not_mu: return "universal_not_mu";
        case Construction::center: return "center";
        default: return "real";
    }
}

Construction parse_construction(const std::string& s) {
    if (s == "universal_not_mu") return Construction::universal_not_mu;
    if (s == "center") return Construction::center;
    if (s == "real") return Construction::real;
    throw std::invalid_argument("unknown construction kind '" + s + "'");
}

bool CertifiedBlockSeries::pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* CertifiedBlockSeries::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

const SparsePolynomial* CertifiedBlockSeries::block(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size() && i < series.blocks().size(); ++i)
        if (labels[i] == label) return &series.blocks()[i];
    return nullptr;
}

std::vector<cplx> densify(const std::vector<cplx>& pts) {
    std::vector<cplx> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out.push_back(pts[i]);
        if (i + 1 == pts.size()) break;
        cplx m = 0.5 * (pts[i] + pts[i + 1]);
        if (std::abs(pts[i]) >= 1 && std::abs(pts[i + 1]) >= 1 && std::abs(m) < 1) m /= std::abs(m);
        out.push_back(m);
    }
    return out;
}

namespace detail {

std::vector<PlannedStage> plan_stages(const Subsequence& mu, long S, std::vector<std::string>& notes) {
    if (S < 1) throw std::invalid_argument("stage count must be positive");
    std::vector<std::pair<mpq_class, PlannedStage>> pool;
    for (long n = 1; n < mu.size(); ++n) {
        try {
            PlannedStage p{n, build_sequences(mu, n)};
            mpq_class q(mu.at(n + 1), mu.at(n));
            q.canonicalize();
            pool.emplace_back(q, p);
        } catch (const std::domain_error& e) {
            notes.push_back(std::string("skipped: ") + e.what());
        }
    }
    if (static_cast<long>(pool.size()) < S)
        throw std::invalid_argument("mu prefix yields " + std::to_string(pool.size()) + " valid windows, " +
                                    std::to_string(S) + " stages requested");
    std::stable_sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    pool.resize(static_cast<std::size_t>(S));
    std::vector<PlannedStage> out;
    for (const auto& [q, p] : pool) out.push_back(p);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    return out;
}

std::vector<Scalar> float_points(const std::vector<cplx>& pts, mpfr_prec_t prec) {
    std::vector<Scalar> out;
    out.reserve(pts.size());
    for (auto z : pts) out.push_back(Scalar::from_complex(z, prec));
    return out;
}

std::vector<Scalar> values_on(const SparsePolynomial& p, const std::vector<cplx>& pts, mpfr_prec_t prec) {
    if (p.empty()) return std::vector<Scalar>(pts.size(), Scalar::zero(Mode::floating, prec));
    return kernels::eval_grid_parallel(p.to_mode(Mode::floating, prec), float_points(pts, prec));
}

double sup_modulus(const SparsePolynomial& p, const std::vector<cplx>& pts, const std::vector<Scalar>& target,
                   mpfr_prec_t prec) {
    return kernels::max_deviation(p.to_mode(Mode::floating, prec), float_points(pts, prec), target, prec)
        .to_double();
}

SolverOptions escalate(const SolverOptions& base, int attempt) {
    SolverOptions o = base;
    if (attempt >= 2) {
        o.polygon_order = base.polygon_order * 2;
        o.cutting_rounds = base.cutting_rounds + 8;
    }
    return o;
}

}  // namespace detail

namespace {

using detail::float_points;
using detail::sup_modulus;
using detail::values_on;

std::vector<Scalar> negated(std::vector<Scalar> v) {
    for (auto& x : v) x = -x;
    return v;
}

std::vector<Scalar> difference(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    std::vector<Scalar> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return out;
}

std::vector<cplx> with_point(std::vector<cplx> pts, cplx z) {
    if (std::find(pts.begin(), pts.end(), z) == pts.end()) pts.push_back(z);
    return pts;
}

void check_radii(const std::vector<StageTarget>& targets, long S) {
    if (static_cast<long>(targets.size()) < S)
        throw std::invalid_argument(std::to_string(S) + " stages need as many targets, got " +
                                    std::to_string(targets.size()));
    for (long s = 0; s < S; ++s) {
        const auto& t = targets[static_cast<std::size_t>(s)];
        if (!(t.r > 0 && t.r < 1)) throw std::invalid_argument("stage radius must lie in (0, 1)");
        if (s > 0 && !(t.r > targets[static_cast<std::size_t>(s - 1)].r))
            throw std::invalid_argument("stage radii must increase");
        t.K.validate();
    }
}

std::vector<long> mu_values(const Subsequence& mu) { return mu.values(); }

Scalar value_at(const SparsePolynomial& p, const Scalar& z) {
    return p.empty() ? Scalar::zero(z.mode(), z.is_exact() ? default_precision : z.precision()) : eval(p, z);
}

}  // namespace

CertifiedBlockSeries build_U_minus_Umu(const Subsequence& mu, const std::vector<StageTarget>& targets,
                                       const Scalar& z0, long S, const BuildOptions& opt) {
    check_radii(targets, S);
    if (z0.abs_double() < 1) throw std::invalid_argument("probe point z0 must satisfy |z0| >= 1");
    const Mode mode = opt.solver.mode;
    const mpfr_prec_t prec = opt.solver.precision;

    CertifiedBlockSeries c;
    c.kind = Construction::universal_not_mu;
    c.mode = mode;
    c.precision = prec;
    c.mu = mu_values(mu);
    c.z0 = z0.to_mode(mode, prec);
    c.probe_tol = opt.probe_tol;
    c.probe_tail = opt.probe_tail;
    const auto plan = detail::plan_stages(mu, S, c.notes);
    const cplx z0c = z0.to_complex();

    SparsePolynomial acc;
    for (long s = 1; s <= S; ++s) {
        const auto& tgt = targets[static_cast<std::size_t>(s - 1)];
        const auto& [n, t] = plan[static_cast<std::size_t>(s - 1)];
        const double b = 1.0 / static_cast<double>((s + 1) * (s + 1));
        const SparsePolynomial f = tgt.f.to_mode(mode, prec);
        const auto disc = circle_grid(tgt.r, opt.disc_points);
        std::vector<cplx> base = tgt.K.points;
        ApproxResult rp, rq;
        std::vector<cplx> Kt;
        bool ok = false;
        int attempt = 0;
        for (; attempt <= opt.max_retries; ++attempt) {
            if (attempt == 1) base = densify(base);
            SolverOptions so = detail::escalate(opt.solver, attempt);
            Kt = with_point(base, z0c);
            const auto fK = values_on(f, Kt, prec);
            rp = solve_window_grids(Kt, difference(fK, values_on(acc, Kt, prec)), disc, {t.u, t.v}, 1.0, so);
            rq = solve_window_grids(Kt, negated(fK), disc, {t.v + 1, t.w}, 1.0, so);
            double sum = sup_modulus(acc + rp.P + rq.P, Kt, {}, prec);
            ok = rp.err_K < b && rp.err_disc <= b && rq.err_K < b && rq.err_disc <= b && sum < 2 * b;
            if (ok) break;
        }
        if (!ok)
            throw std::runtime_error("stage " + std::to_string(s) + ": window solver missed the budget " +
                                     std::to_string(b) + " after " + std::to_string(opt.max_retries) +
                                     " retries (fit " + std::to_string(rp.err_K) + ", cancel " +
                                     std::to_string(rq.err_K) + ")");
        StageRecord rec;
        rec.stage = s;
        rec.n = n;
        rec.triple = t;
        rec.K = Kt;
        rec.target = tgt.f;
        rec.r = tgt.r;
        rec.disc_points = opt.disc_points;
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

Scalar center_probe_point(const Center& zeta, Mode m, mpfr_prec_t prec) {
    if (zeta.zeta.is_zero()) throw std::domain_error("center construction requires zeta != 0");
    if (m == Mode::exact) {
        Scalar z = zeta.zeta.to_mode(Mode::exact);
        mpq_class n2 = z.norm_exact();
        mpz_class num = n2.get_num(), den = n2.get_den();
        if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
            throw std::domain_error("|zeta| is irrational; exact mode needs a rational modulus");
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        mpq_class mod(rn, rd);
        mod.canonicalize();
        return z / Scalar::exact(mod);
    }
    Scalar z = zeta.zeta.to_mode(Mode::floating, prec);
    return z / Scalar::from_float(z.abs(prec), BigFloat(prec));
}

CertifiedBlockSeries build_center_counterexample(const Subsequence& mu, const Center& zeta,
                                                 const std::vector<StageTarget>& targets, long S,
                                                 const BuildOptions& opt) {
    const Mode mode = opt.solver.mode;
    const mpfr_prec_t prec = opt.solver.precision;
    const Scalar z0 = center_probe_point(zeta, mode, prec);
    check_radii(targets, S);
    const Scalar zm = zeta.zeta.to_mode(mode, prec);

    CertifiedBlockSeries c;
    c.kind = Construction::center;
    c.mode = mode;
    c.precision = prec;
    c.mu = mu_values(mu);
    c.z0 = z0;
    c.zeta = zm;
    c.probe_tol = opt.probe_tol;
    c.probe_tail = opt.probe_tail;
    const auto plan = detail::plan_stages(mu, S, c.notes);
    const cplx z0c = z0.to_complex();

    SparsePolynomial acc;
    for (long l = 1; l <= S; ++l) {
        const auto& tgt = targets[static_cast<std::size_t>(l - 1)];
        const auto& [n, t] = plan[static_cast<std::size_t>(l - 1)];
        const double b = std::ldexp(1.0, static_cast<int>(-l));
        const SparsePolynomial f = tgt.f.to_mode(mode, prec);
        const auto disc = circle_grid(tgt.r, opt.disc_points);
        std::vector<cplx> base = tgt.K.points;
        ApproxResult rp;
        std::vector<cplx> Kt;
        bool ok = false;
        int attempt = 0;
        for (; attempt <= opt.max_retries; ++attempt) {
            if (attempt == 1) base = densify(base);
            SolverOptions so = detail::escalate(opt.solver, attempt);
            Kt = with_point(base, z0c);
            rp = solve_window_grids(Kt, difference(values_on(f, Kt, prec), values_on(acc, Kt, prec)), disc,
                                    {t.v + 1, t.w}, 1.0, so);
            ok = rp.err_K < b && rp.err_disc < b;
            if (ok) break;
        }
        if (!ok)
            throw std::runtime_error("stage " + std::to_string(l) + ": window solver missed the budget " +
                                     std::to_string(b) + " after " + std::to_string(opt.max_retries) +
                                     " retries (fit " + std::to_string(rp.err_K) + ")");

        const long j = t.w + 1;
        Scalar num = value_at(rp.P, z0) + value_at(acc, z0);
        Scalar den = z0.pow(j) - (z0 - zm).pow(j);
        Scalar a;
        if (mode == Mode::floating && den.abs(prec) < BigFloat(std::ldexp(1.0, -static_cast<int>(prec / 2)), prec)) {
            // Too much cancellation for the working precision: redo the
            // quotient on the exact binary values.
            Scalar ze = zm.to_mode(Mode::exact), z0e = z0.to_mode(Mode::exact);
            Scalar de = z0e.pow(j) - (z0e - ze).pow(j);
            a = (-(num.to_mode(Mode::exact)) / de).to_mode(Mode::floating, prec);
            c.notes.push_back("stage " + std::to_string(l) + ": corrective quotient computed exactly");
        } else {
            a = -num / den;
        }
        SparsePolynomial R = SparsePolynomial::monomial(j, a);

        StageRecord rec;
        rec.stage = l;
        rec.n = n;
        rec.triple = t;
        rec.K = Kt;
        rec.target = tgt.f;
        rec.r = tgt.r;
        rec.disc_points = opt.disc_points;
        rec.retries = attempt;
        rec.solver_status = rp.status;
        c.stages.push_back(rec);
        c.series.append(rp.P);
        c.labels.push_back("P_" + std::to_string(l));
        c.series.append(R);
        c.labels.push_back("R_" + std::to_string(l));
        acc = acc + rp.P + R;
    }
    evaluate_certificate(c);
    return c;
}

bool probe_decaying(const std::vector<double>& values, std::size_t tail, double tol) {
    if (values.empty() || tail == 0) return false;
    std::size_t from = values.size() > tail ? values.size() - tail : 0;
    for (std::size_t i = from; i < values.size(); ++i) {
        if (!(values[i] < tol)) return false;
        if (i > from && values[i] > values[i - 1]) return false;
    }
    return true;
}

std::vector<Scalar> probe_partial_sums(const BlockSeries& f, const Subsequence& mu, const Center& zeta,
                                       const Scalar& z0, long N) {
    if (N < 1 || N > mu.size()) throw std::invalid_argument("probe horizon N must lie in [1, |mu|]");
    auto h = f.horizon();
    if (h && mu.at(N) > *h)
        throw std::invalid_argument("mu_N = " + std::to_string(mu.at(N)) + " exceeds the series horizon " +
                                    std::to_string(*h));
    std::vector<long> ns;
    for (long n = 1; n <= N; ++n) ns.push_back(mu.at(n));
    return partial_sums_at(f, zeta, ns, z0);
}

std::vector<Witness> verify_universality_samples(const BlockSeries& f, const std::vector<StageTarget>& targets,
                                                 const std::vector<long>& indices, double tol) {
    std::vector<Witness> out;
    const SparsePolynomial flat = f.flatten();
    const mpfr_prec_t prec = std::max<mpfr_prec_t>(f.mode() == Mode::floating && !flat.empty()
                                                       ? flat.terms().front().second.precision()
                                                       : 256,
                                                   64);
    for (const auto& t : targets) {
        Witness w;
        w.error = INFINITY;
        const auto fK = values_on(t.f, t.K.points, prec);
        for (long n : indices) {
            double e = sup_modulus(flat.truncate(n), t.K.points, fK, prec);
            if (e < w.error) {
                w.error = e;
                w.best_index = n;
            }
        }
        if (w.error < tol) w.index = w.best_index;
        out.push_back(w);
    }
    return out;
}

// ------------------------------------------------------------ certificates

namespace {

struct Evaluator {
    CertifiedBlockSeries& c;
    mpfr_prec_t ep;
    std::vector<Check> checks;

    void add(long stage, const std::string& name, const std::string& rel, double value, double bound, bool pass) {
        checks.push_back({stage, name, rel, value, bound, pass});
    }
    void less(long stage, const std::string& name, double value, double bound) {
        add(stage, name, "<", value, bound, value < bound);
    }
    void less_eq(long stage, const std::string& name, double value, double bound) {
        add(stage, name, "<=", value, bound, value <= bound);
    }

    SparsePolynomial get(const std::string& label) {
        const SparsePolynomial* p = c.block(label);
        return p ? *p : SparsePolynomial();
    }

    std::vector<Scalar> target_on(const StageRecord& st) {
        if (!st.samples.empty()) {
            std::vector<Scalar> out;
            for (const auto& s : st.samples) out.push_back(s.to_mode(Mode::floating, ep));
            return out;
        }
        return values_on(st.target, st.K, ep);
    }

    // Every label present, every block inside its allowed degree range, and
    // nothing else in the series.
    void supports(const std::vector<std::tuple<std::string, long, long, long>>& plan) {
        long outside = 0, missing = 0;
        for (const auto& [label, stage, lo, hi] : plan) {
            if (!c.block(label)) {
                ++missing;
                continue;
            }
            for (const auto& [k, a] : c.block(label)->terms())
                if (k < lo || k > hi) ++outside;
        }
        long extra = 0;
        for (const auto& l : c.labels)
            if (std::none_of(plan.begin(), plan.end(), [&](const auto& p) { return std::get<0>(p) == l; })) ++extra;
        if (c.labels.size() != c.series.blocks().size()) ++extra;
        add(0, "support", "==", static_cast<double>(outside + missing + extra), 0, outside + missing + extra == 0);
    }

    void mu_avoidance() {
        std::vector<WindowTriple> ts;
        for (const auto& st : c.stages) ts.push_back(st.triple);
        bool ok = !c.stages.empty() && check_mu_avoidance(Subsequence::from_list(c.mu), ts, c.stages.front().n);
        bool windows = true;
        for (const auto& st : c.stages) {
            try {
                windows = windows && build_sequences(Subsequence::from_list(c.mu), st.n) == st.triple;
            } catch (const std::exception&) {
                windows = false;
            }
        }
        add(0, "mu_avoidance", "==", ok && windows ? 1.0 : 0.0, 1.0, ok && windows);
    }

    void fingerprint(const Scalar& at) {
        c.fingerprints.clear();
        const Scalar p = at.to_mode(c.mode, c.precision);
        for (std::size_t i = 0; i < c.labels.size() && i < c.series.blocks().size(); ++i) {
            const auto& blk = c.series.blocks()[i];
            c.fingerprints.emplace_back(c.labels[i], blk.empty() ? Scalar::zero(c.mode, c.precision) : eval(blk, p));
        }
    }

    void universal() {
        std::vector<std::tuple<std::string, long, long, long>> plan;
        for (const auto& st : c.stages) {
            plan.emplace_back("P_" + std::to_string(st.stage), st.stage, st.triple.u, st.triple.v);
            plan.emplace_back("Pt_" + std::to_string(st.stage), st.stage, st.triple.v + 1, st.triple.w);
        }
        supports(plan);
        mu_avoidance();
        SparsePolynomial acc;
        double total = 0;
        for (const auto& st : c.stages) {
            const long s = st.stage;
            const double b = 1.0 / static_cast<double>((s + 1) * (s + 1));
            total += b;
            const auto P = get("P_" + std::to_string(s));
            const auto Q = get("Pt_" + std::to_string(s));
            const auto fK = target_on(st);
            const auto disc = circle_grid(st.r, st.disc_points);
            less(s, "fit_K", sup_modulus(acc + P, st.K, fK, ep), b);
            less_eq(s, "fit_disc", sup_modulus(P, disc, {}, ep), b);
            less(s, "cancel_K", sup_modulus(Q, st.K, negated(fK), ep), b);
            less_eq(s, "cancel_disc", sup_modulus(Q, disc, {}, ep), b);
            acc = acc + P + Q;
            less(s, "block_sum_K", sup_modulus(acc, st.K, {}, ep), 2 * b);
        }
        const Scalar z0 = c.z0->to_mode(Mode::floating, ep);
        const SparsePolynomial flat = c.series.flatten().to_mode(Mode::floating, ep);
        const long horizon = c.stages.empty() ? 0 : c.stages.back().triple.w;
        double worst = 0;
        c.probes.clear();
        for (std::size_t i = 0; i < c.mu.size(); ++i) {
            if (c.mu[i] > horizon) break;
            SparsePolynomial part = flat.truncate(c.mu[i]);
            double v = part.empty() ? 0.0 : eval(part, z0).abs(ep).to_double();
            c.probes.push_back({static_cast<long>(i) + 1, c.mu[i], v});
            worst = std::max(worst, v);
        }
        less_eq(0, "probe_bound", worst, 2 * total);
        less(0, "probe_limit", worst, std::numbers::pi * std::numbers::pi / 3 - 2);
        fingerprint(*c.z0);
    }

    void center() {
        std::vector<std::tuple<std::string, long, long, long>> plan;
        for (const auto& st : c.stages) {
            plan.emplace_back("P_" + std::to_string(st.stage), st.stage, st.triple.v + 1, st.triple.w);
            plan.emplace_back("R_" + std::to_string(st.stage), st.stage, st.triple.w + 1, st.triple.w + 1);
        }
        supports(plan);
        mu_avoidance();
        const Scalar& z0 = *c.z0;
        const Scalar& zeta = *c.zeta;
        const Mode m = c.mode;
        const SparsePolynomial flat = c.series.flatten();
        SparsePolynomial acc;
        long prev_w = -1;
        for (const auto& st : c.stages) {
            const long l = st.stage;
            const long w = st.triple.w, j = w + 1;
            const double b = std::ldexp(1.0, static_cast<int>(-l));
            const auto P = get("P_" + std::to_string(l));
            const auto R = get("R_" + std::to_string(l));
            const auto fK = target_on(st);
            const auto disc = circle_grid(st.r, st.disc_points);
            less(l, "fit_K", sup_modulus(acc + P, st.K, fK, ep), b);
            less(l, "fit_disc", sup_modulus(P, disc, {}, ep), b);

            Scalar den = z0.pow(j) - (z0 - zeta).pow(j);
            double growth = 2 * den.abs(ep).to_double();
            add(l, "growth", ">", growth, 1.0, growth > 1.0);
            double fz0 = st.target.empty() ? 0.0 : eval(st.target.to_mode(m, c.precision), z0).abs(ep).to_double();
            less_eq(l, "target_at_probe", fz0, static_cast<double>(w));

            Scalar a = R.coeff(j);
            Scalar num = value_at(P, z0) + value_at(acc, z0);
            Scalar formula = -num / den;
            Scalar diff = a - formula;
            const double amod = a.abs(ep).to_double();
            if (m == Mode::exact) {
                add(l, "corrective_formula", "==", diff.abs(ep).to_double(), 0, diff.is_zero());
            } else {
                double tol = std::ldexp(1.0 + amod, -static_cast<int>(c.precision / 2));
                less_eq(l, "corrective_formula", diff.abs(ep).to_double(), tol);
            }
            less_eq(l, "corrective_bound", amod, 2.0 * static_cast<double>(1 + w));

            long lo = prev_w < 0 ? 0 : prev_w + 2;
            long nonzero = static_cast<long>(flat.restrict(lo, st.triple.v).size());
            add(l, "padding", "==", static_cast<double>(nonzero), 0, nonzero == 0);

            const SparsePolynomial head = flat.truncate(j);
            BlockSeries upto(std::vector<SparsePolynomial>{head});
            Scalar ident = partial_sum_at(upto, Center(zeta), w, z0);
            if (m == Mode::exact) {
                add(l, "identity_zero", "==", ident.abs(ep).to_double(), 0, ident.is_zero());
            } else {
                double scale = 1;
                for (const auto& [k, x] : head.terms()) scale += x.abs(ep).to_double();
                double tol = std::ldexp(scale, -static_cast<int>(c.precision / 2));
                less_eq(l, "identity_zero", ident.abs(ep).to_double(), tol);
            }
            acc = acc + P + R;
            prev_w = w;
        }

        // Probe table: every mu_n inside the horizon, then the stage orders w.
        const long horizon = flat.degree().value_or(0);
        std::vector<long> ns;
        for (long v : c.mu)
            if (v <= horizon) ns.push_back(v);
        const std::size_t n_mu = ns.size();
        for (const auto& st : c.stages) ns.push_back(st.triple.w);
        std::vector<double> vals;
        if (!flat.empty() && !ns.empty()) {
            auto sums = partial_sums_at(c.series, Center(zeta), ns, z0);
            for (const auto& s : sums) vals.push_back(s.abs(ep).to_double());
        } else {
            vals.assign(ns.size(), 0.0);
        }
        c.probes.clear();
        for (std::size_t i = 0; i < ns.size(); ++i)
            c.probes.push_back({i < n_mu ? static_cast<long>(i) + 1 : 0, ns[i], vals[i]});
        std::vector<double> stage_vals(vals.begin() + static_cast<long>(n_mu), vals.end());
        double tail_max = stage_vals.empty() ? INFINITY : 0.0;
        for (std::size_t i = stage_vals.size() > static_cast<std::size_t>(c.probe_tail)
                                 ? stage_vals.size() - static_cast<std::size_t>(c.probe_tail)
                                 : 0;
             i < stage_vals.size(); ++i)
            tail_max = std::max(tail_max, stage_vals[i]);
        add(0, "probe_decay", "<", tail_max, c.probe_tol,
            probe_decaying(stage_vals, static_cast<std::size_t>(c.probe_tail), c.probe_tol));
        fingerprint(z0);
    }

    void real() {
        std::vector<std::tuple<std::string, long, long, long>> plan;
        for (const auto& st : c.stages) {
            plan.emplace_back("P_" + std::to_string(st.stage), st.stage, st.triple.u, st.triple.v);
            plan.emplace_back("Pt_" + std::to_string(st.stage), st.stage, st.triple.v + 1, st.triple.w);
        }
        supports(plan);
        mu_avoidance();
        long low = 0;
        for (const auto& blk : c.series.blocks())
            if (!blk.empty() && *blk.valuation() < 1) ++low;
        add(0, "valuation", "==", static_cast<double>(low), 0, low == 0);
        long complex_coeffs = 0;
        const SparsePolynomial all = c.series.flatten();
        for (const auto& [k, a] : all.terms())
            if (!a.is_real()) ++complex_coeffs;
        add(0, "real_coefficients", "==", static_cast<double>(complex_coeffs), 0, complex_coeffs == 0);

        SparsePolynomial acc;
        double total = 0;
        for (const auto& st : c.stages) {
            const long s = st.stage;
            const double b = 1.0 / static_cast<double>((s + 1) * (s + 1));
            total += b;
            const auto P = get("P_" + std::to_string(s));
            const auto Q = get("Pt_" + std::to_string(s));
            const auto fK = target_on(st);
            less(s, "fit_K", sup_modulus(acc + P, st.K, fK, ep), b);
            less(s, "cancel_K", sup_modulus(Q, st.K, negated(fK), ep), b);
            acc = acc + P + Q;
            less(s, "block_sum_K", sup_modulus(acc, st.K, {}, ep), 2 * b);
        }
        std::vector<cplx> grid;
        for (double x : real_grid(1.0)) grid.emplace_back(x, 0.0);
        const SparsePolynomial flat = c.series.flatten();
        const long horizon = c.stages.empty() ? 0 : c.stages.back().triple.w;
        double worst = 0;
        c.probes.clear();
        for (std::size_t i = 0; i < c.mu.size(); ++i) {
            if (c.mu[i] > horizon) break;
            SparsePolynomial part = flat.truncate(c.mu[i]);
            double v = part.empty() ? 0.0 : sup_modulus(part, grid, {}, ep);
            c.probes.push_back({static_cast<long>(i) + 1, c.mu[i], v});
            worst = std::max(worst, v);
        }
        less_eq(0, "probe_bound", worst, 2 * total);
        less(0, "probe_limit", worst, std::numbers::pi * std::numbers::pi / 3 - 2);
        fingerprint(Scalar::one(c.mode, c.precision));
    }
};

}  // namespace

void evaluate_certificate(CertifiedBlockSeries& c) {
    Evaluator ev{c, c.mode == Mode::exact ? mpfr_prec_t(320) : c.precision, {}};
    if (c.stages.empty()) throw std::invalid_argument("certificate has no stages");
    switch (c.kind) {
        case Construction::universal_not_mu:
            if (!c.z0) throw std::invalid_argument("certificate lacks the probe point z0");
            ev.universal();
            break;
        case Construction::center:
            if (!c.z0 || !c.zeta) throw std::invalid_argument("center certificate needs z0 and zeta");
            ev.center();
            break;
        case Construction::real:
            ev.real();
            break;
    }
    c.checks = std::move(ev.checks);
}

}  // namespace ostrowski
