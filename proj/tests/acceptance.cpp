// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "ostrowski/certificate.h"
#include "ostrowski/experiment.h"
#include "ostrowski/gaps.h"
#include "ostrowski/window_solver.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

using namespace ostrowski;

namespace {

using clock_type = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

mpq_class rnd_rational(std::mt19937_64& g, long num_span, long den_max) {
    std::uniform_int_distribution<long> n(-num_span, num_span), d(1, den_max);
    mpq_class q(n(g), d(g));
    q.canonicalize();
    return q;
}

Scalar rnd_gaussian(std::mt19937_64& g, long num_span, long den_max) {
    return Scalar::exact(rnd_rational(g, num_span, den_max), rnd_rational(g, num_span, den_max));
}

// |zeta| < 1 with both parts in (-0.7, 0.7).
Scalar rnd_center(std::mt19937_64& g) {
    std::uniform_int_distribution<long> n(-7, 7), d(10, 19);
    mpq_class re(n(g), d(g)), im(n(g), d(g));
    re.canonicalize();
    im.canonicalize();
    return Scalar::exact(re, im);
}

SparsePolynomial rnd_sparse(std::mt19937_64& g, long max_degree, int terms) {
    std::uniform_int_distribution<long> deg(0, max_degree);
    std::vector<SparsePolynomial::Term> t;
    for (int i = 0; i < terms; ++i) t.push_back({deg(g), rnd_gaussian(g, 9, 9)});
    SparsePolynomial p(t);
    return p.empty() ? SparsePolynomial::monomial(max_degree, Scalar::exact(1)) : p;
}

Outcome recentering_identity() {
    auto t0 = clock_type::now();
    std::mt19937_64 g(20261016);
    long mismatches = 0, evaluations = 0;
    for (int i = 0; i < 100; ++i) {
        SparsePolynomial p = rnd_sparse(g, 64, 8);
        BlockSeries f({p});
        Center c(rnd_center(g));
        const long n = *p.degree();
        for (int k = 0; k < 20; ++k) {
            Scalar z = rnd_gaussian(g, 20, 10);
            ++evaluations;
            if (partial_sum_at(f, c, n, z) != eval(p, z)) ++mismatches;
        }
    }
    double secs = seconds_since(t0);
    return {mismatches == 0 && secs < 10,
            std::to_string(evaluations) + " evaluations, " + std::to_string(mismatches) + " mismatches, " +
                fmt("%.2f s", secs)};
}

Outcome decomposition_identity() {
    std::mt19937_64 g(7);
    long exact_bad = 0;
    double worst_rel = 0;
    for (int i = 0; i < 50; ++i) {
        std::uniform_int_distribution<long> pd(2, 20), gap(3, 30);
        const long p = pd(g), q = p + gap(g);
        SparsePolynomial poly = rnd_sparse(g, q + 20, 12);
        BlockSeries f({poly});
        Scalar zeta = rnd_center(g);
        Scalar z = rnd_gaussian(g, 20, 10);

        auto s = a1_a2_split(f, Center(zeta), p, q, z);
        Scalar rhs = partial_sum_at(f, Center(zeta), p, z) - partial_sum_at(f, Center(Scalar::exact(0)), p, z);
        if (s.a1 + s.a2 != rhs) ++exact_bad;

        BlockSeries ff = f.to_mode(Mode::floating, 256);
        Scalar zf = z.to_mode(Mode::floating, 256), cf = zeta.to_mode(Mode::floating, 256);
        auto sf = a1_a2_split(ff, Center(cf), p, q, zf);
        Scalar rf = partial_sum_at(ff, Center(cf), p, zf) -
                    partial_sum_at(ff, Center(Scalar::zero(Mode::floating, 256)), p, zf);
        double diff = (sf.a1 + sf.a2 - rf).abs(256).to_double();
        double scale = std::max(rhs.abs(256).to_double(), 1e-300);
        worst_rel = std::max(worst_rel, diff / scale);
    }
    return {exact_bad == 0 && worst_rel < 1e-20,
            "exact mismatches " + std::to_string(exact_bad) + ", worst float relative error " + fmt("%.3g", worst_rel)};
}

Outcome lemma_bound_dominance() {
    const double r = 0.25, M = 3, eps = 0.125;
    const long p = 10, q = 40;
    const double bound = lemma23_bound_rhs(r, M, eps, p, q).a1;
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(0, 1), phase(0, 2 * std::numbers::pi);
    // |a_k| <= eps^k on (p, q]; the rest of the series does not enter A1.
    std::vector<BlockSeries> series;
    for (int v = 0; v < 4; ++v) {
        std::vector<SparsePolynomial::Term> t;
        for (long k = 0; k <= p; ++k) t.push_back({k, Scalar::from_double({1.0, 0.5}, Mode::floating)});
        for (long k = p + 1; k <= q; ++k) {
            double m = v == 0 ? 1.0 : u(g);
            std::complex<double> a = std::polar(m * std::pow(eps, static_cast<double>(k)), v == 0 ? 0.0 : phase(g));
            t.push_back({k, Scalar::from_double(a, Mode::floating)});
        }
        for (long k = q + 1; k <= q + 10; ++k) t.push_back({k, Scalar::from_double({2.0, 0}, Mode::floating)});
        series.emplace_back(std::vector<SparsePolynomial>{SparsePolynomial(t)});
    }
    long violations = 0;
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        std::complex<double> zeta, w;
        if (i < 4) {
            // extremal corner: zeta = r, z - zeta = M
            zeta = r;
            w = M;
        } else {
            zeta = std::polar(r * std::sqrt(u(g)), phase(g));
            w = std::polar(M * std::sqrt(u(g)), phase(g));
        }
        const auto& f = series[static_cast<std::size_t>(i % 4)];
        auto s = a1_a2_split(f, Center(Scalar::from_double(zeta, Mode::floating)), p, q,
                             Scalar::from_double(zeta + w, Mode::floating));
        double a1 = s.a1.abs(256).to_double();
        worst = std::max(worst, a1);
        if (!(a1 <= bound)) ++violations;
    }
    return {violations == 0, "1000 samples, " + std::to_string(violations) + " violations, max |A1| " +
                                 fmt("%.4g", worst) + " vs bound " + fmt("%.4g", bound)};
}

Outcome center_transfer_trend() {
    auto t0 = clock_type::now();
    std::vector<SparsePolynomial::Term> t;
    for (long k : {0L, 1L, 2L, 3L, 4L, 16L, 64L, 256L}) {
        mpz_class n, d;
        mpz_ui_pow_ui(n.get_mpz_t(), 3, static_cast<unsigned long>(k));
        mpz_ui_pow_ui(d.get_mpz_t(), 4, static_cast<unsigned long>(k));
        t.push_back({k, Scalar::exact(mpq_class(n, d)).to_mode(Mode::floating, 256)});
    }
    BlockSeries f({SparsePolynomial(t)});
    std::vector<Scalar> centers;
    for (int i = 0; i < 8; ++i)
        centers.push_back(Scalar::from_complex(std::polar(0.25, 2 * std::numbers::pi * i / 8), 256));
    std::vector<cplx> K;
    for (int i = 0; i < 32; ++i) K.push_back(std::polar(2.0, 2 * std::numbers::pi * i / 32));
    GapStructure g{{{4, 16}, {16, 64}, {64, 256}}};
    auto rep = verify_center_transfer(f, g, centers, K, 1e-4, 1);
    double d1 = rep.stages[0].value, d2 = rep.stages[1].value, d3 = rep.stages[2].value;
    double secs = seconds_since(t0);
    return {d1 > d2 && d2 > d3 && d3 < 1e-4 && secs < 60,
            "D = " + fmt("%.3g", d1) + ", " + fmt("%.3g", d2) + ", " + fmt("%.3g", d3) + "; " + fmt("%.2f s", secs)};
}

Outcome window_decay() {
    json j = default_approx_config();
    auto cfg = parse_approx_config(j, parse_settings(j, std::nullopt, std::nullopt));
    std::vector<ApproxResult> results;
    for (const auto& w : cfg.windows) {
        ApproxRequest req = cfg.base;
        req.window = w;
        results.push_back(solve_window(req, cfg.options));
    }
    bool decreasing = true;
    std::string errs;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (i > 0 && !(results[i].err_K < results[i - 1].err_K)) decreasing = false;
        errs += (i ? ", " : "") + fmt("%.3g", results[i].err_K);
    }
    auto fit = theta_fit(results);
    return {decreasing && fit.theta < 1 && fit.residual < 0.5,
            "err_K = " + errs + "; theta " + fmt("%.4f", fit.theta) + ", residual " + fmt("%.3f", fit.residual)};
}

double stage_sum(long S) {
    double total = 0;
    for (long s = 1; s <= S; ++s) total += 2.0 / static_cast<double>((s + 1) * (s + 1));
    return total;
}

double max_probe(const CertifiedBlockSeries& c) {
    double worst = 0;
    for (const auto& p : c.probes) worst = std::max(worst, p.value);
    return worst;
}

CertifiedBlockSeries universal_run() {
    json j = default_universal_config();
    auto cfg = parse_universal_config(j, parse_settings(j, std::nullopt, std::nullopt));
    return build_U_minus_Umu(cfg.mu, cfg.targets, cfg.z0, cfg.stages, cfg.options);
}

CertifiedBlockSeries center_run() {
    json j = default_center_config();
    auto cfg = parse_center_config(j, parse_settings(j, std::nullopt, std::nullopt));
    return build_center_counterexample(cfg.mu, Center(cfg.zeta), cfg.targets, cfg.stages, cfg.options);
}

CertifiedBlockSeries real_run() {
    json j = default_real_config();
    auto cfg = parse_real_config(j, parse_settings(j, std::nullopt, std::nullopt));
    return build_real_counterexample(cfg.mu, cfg.targets, cfg.stages, cfg.options);
}

Outcome universal_construction(const CertifiedBlockSeries& c, double secs) {
    auto rep = verify_certificate(certificate_to_json(c));
    const double bound = stage_sum(4), limit = std::numbers::pi * std::numbers::pi / 3 - 2;
    const double worst = max_probe(c);
    bool ok = rep.pass && c.stages.size() == 4 && c.precision == 256 && worst <= bound && bound < limit && secs < 300;
    std::string why = rep.failures.empty() ? "" : "; first failure: " + rep.failures.front();
    return {ok, "4 stages, re-verified " + std::string(rep.pass ? "ok" : "FAILED") + ", max probe " +
                    fmt("%.4g", worst) + " <= " + fmt("%.5f", bound) + " < " + fmt("%.5f", limit) + ", " +
                    fmt("%.1f s", secs) + why};
}

Outcome center_construction(const CertifiedBlockSeries& c) {
    bool identities = c.mode == Mode::exact;
    bool bounds = true;
    long n_id = 0;
    const SparsePolynomial flat = c.series.flatten();
    for (const auto& st : c.stages) {
        const long w = st.triple.w;
        // Left side of the identity via recentering, independent of the certificate code.
        BlockSeries upto({flat.truncate(w + 1)});
        auto b = recenter_coefficients(upto, Center(*c.zeta), w);
        Scalar sum = Scalar::zero(c.mode), pw = Scalar::one(c.mode), step = *c.z0 - *c.zeta;
        for (const auto& x : b) {
            sum += x * pw;
            pw *= step;
        }
        identities = identities && sum.is_zero();
        ++n_id;
        bounds = bounds && c.series.coeff(w + 1).abs_double() <= 2.0 * static_cast<double>(w + 1);
    }
    std::vector<double> stage_probes;
    for (const auto& p : c.probes)
        if (p.n == 0) stage_probes.push_back(p.value);
    bool decay = probe_decaying(stage_probes, 2, 0.1);
    auto rep = verify_certificate(certificate_to_json(c));
    std::string vals;
    for (std::size_t i = 0; i < stage_probes.size(); ++i) vals += (i ? ", " : "") + fmt("%.3g", stage_probes[i]);
    return {identities && n_id == 3 && bounds && decay && rep.pass,
            std::to_string(n_id) + " identities exactly zero: " + (identities ? "yes" : "no") +
                ", |a_(1+w)| <= 2(1+w): " + (bounds ? "yes" : "no") + ", stage probes " + vals +
                " (threshold 0.1, calibration)"};
}

Outcome ratio_classifier() {
    auto pow2 = mu_ratio_profile(Subsequence::generate("powers-of-2", 20), 20);
    auto sq = mu_ratio_profile(Subsequence::generate("squares", 20), 20);
    auto fact = mu_ratio_profile(Subsequence::generate("factorials", 12), 12);
    bool ok = pow2.label() == "bounded_by 2" && sq.label() == "bounded_by 4" && fact.label() == "divergent_trend";
    return {ok, "2^n: " + pow2.label() + ", n^2: " + sq.label() + ", n!: " + fact.label()};
}

Outcome bounded_ratio_transfer(const CertifiedBlockSeries& c) {
    auto g = detect_gaps(c.series);
    auto mu = Subsequence::generate("powers-of-2", 40);
    std::vector<cplx> K = c.stages.front().K;
    bool hits = !g.pairs.empty();
    std::string windows;
    for (const auto& [p, q] : g.pairs) {
        hits = hits && hit_gap(mu, {p, q}).has_value() && q >= 4 * p;
        windows += "(" + std::to_string(p) + "," + std::to_string(q) + ") ";
    }
    auto rep = verify_gap_transfer(c.series, g, mu, K, 1e-6, 1);
    std::string sups;
    for (const auto& s : rep.stages) sups += fmt("%.3g ", s.value);
    bool final_small = !rep.stages.empty() && rep.stages.back().value < 1e-6;
    return {hits && rep.pass && final_small, "gaps " + windows + "sups " + sups};
}

Outcome real_construction(const CertifiedBlockSeries& c) {
    auto rep = verify_certificate(certificate_to_json(c));
    const double bound = stage_sum(3), limit = std::numbers::pi * std::numbers::pi / 3 - 2;
    const double worst = max_probe(c);
    return {rep.pass && c.stages.size() == 3 && worst <= bound && bound < limit,
            "3 stages, re-verified " + std::string(rep.pass ? "ok" : "FAILED") + ", grid probe " + fmt("%.4g", worst) +
                " <= " + fmt("%.5f", bound) + " < " + fmt("%.5f", limit)};
}

Outcome tamper_detection(const std::vector<const CertifiedBlockSeries*>& certs) {
    long tried = 0, missed = 0;
    for (const auto* c : certs) {
        const json base = certificate_to_json(*c);
        const Mode m = c->mode;
        const mpfr_prec_t prec = c->precision;
        const auto& blocks = base["series"]["blocks"];
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            for (std::size_t t = 0; t < blocks[b]["coefficients"].size(); ++t) {
                json j = base;
                json& slot = j["series"]["blocks"][b]["coefficients"][t];
                Scalar v = scalar_from_json(slot, m, prec);
                // alternate real and imaginary shifts of +-1e-3
                mpq_class d(t % 2 ? -1 : 1, 1000);
                Scalar delta = (b % 2 ? Scalar::exact(0, d) : Scalar::exact(d)).to_mode(m, prec);
                json moved = scalar_to_json(v + delta);
                slot["re"] = moved["re"];
                slot["im"] = moved["im"];
                ++tried;
                if (verify_certificate(j).pass) ++missed;
            }
        }
    }
    return {tried > 0 && missed == 0,
            std::to_string(tried) + " single-coefficient perturbations, " + std::to_string(missed) + " undetected"};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d %s: %s (%s)\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    };

    report(1, "recentering identity", recentering_identity);
    report(2, "A1/A2 decomposition", decomposition_identity);
    report(3, "A1 bound dominance", lemma_bound_dominance);
    report(4, "center-transfer trend", center_transfer_trend);
    report(5, "window solver decay", window_decay);

    std::optional<CertifiedBlockSeries> uni, cen, rea;
    report(6, "U minus U_mu construction", [&] {
        auto t0 = clock_type::now();
        uni = universal_run();
        return universal_construction(*uni, seconds_since(t0));
    });
    report(7, "center construction", [&] {
        cen = center_run();
        return center_construction(*cen);
    });
    report(8, "mu-ratio classifier", ratio_classifier);
    report(9, "bounded-ratio transfer", [&] {
        if (!cen) cen = center_run();
        return bounded_ratio_transfer(*cen);
    });
    report(10, "real construction", [&] {
        rea = real_run();
        return real_construction(*rea);
    });
    report(11, "tamper detection", [&] {
        if (!uni) uni = universal_run();
        if (!cen) cen = center_run();
        if (!rea) rea = real_run();
        return tamper_detection({&*uni, &*cen, &*rea});
    });

    std::printf("%s: %d of 11 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
