// Batch driver: one experiment per invocation, artifacts written atomically
// under --out.  Exit codes: 0 all certificates pass, 1 a certificate or
// stage failed, 2 bad input.

#include "ostrowski/certificate.h"
#include "ostrowski/experiment.h"
#include "ostrowski/gaps.h"

#include "CLI11.hpp"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace ostrowski;

namespace {

struct Common {
    std::string config;
    std::string out = ".";
    std::optional<std::string> mode;
    std::optional<long> precision;
    double tol = 1e-9;
};

json load_json(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::exception& e) {
        throw SchemaError("", std::string("cannot read ") + path + ": " + e.what());
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("", path + " is not valid JSON: " + e.what());
    }
}

json config_or(const Common& c, json fallback) { return c.config.empty() ? fallback : load_json(c.config); }

void write(const Common& c, const std::string& name, const std::string& content) {
    fs::create_directories(c.out);
    write_atomic(fs::path(c.out) / name, content);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string checks_csv(const CertifiedBlockSeries& c) {
    std::ostringstream os;
    os << "stage,name,relation,value,bound,pass\n";
    for (const auto& k : c.checks)
        os << k.stage << ',' << k.name << ",\"" << k.relation << "\"," << fmt(k.value) << ',' << fmt(k.bound) << ','
           << (k.pass ? 1 : 0) << '\n';
    return os.str();
}

std::string probes_csv(const CertifiedBlockSeries& c) {
    std::ostringstream os;
    os << "n,m,abs_value\n";
    for (const auto& p : c.probes) os << p.n << ',' << p.m << ',' << fmt(p.value) << '\n';
    return os.str();
}

int emit_certificate(const Common& opt, const CertifiedBlockSeries& c) {
    write(opt, "certificate.json", certificate_to_json(c).dump(2) + "\n");
    write(opt, "series.json", series_to_json(c.series, c.labels, c.mode, c.precision).dump(2) + "\n");
    write(opt, "checks.csv", checks_csv(c));
    write(opt, "probes.csv", probes_csv(c));
    std::ostringstream coeffs;
    write_coefficients_csv(coeffs, c.series);
    write(opt, "coefficients.csv", coeffs.str());
    for (const auto& n : c.notes) std::cout << "note: " << n << '\n';
    std::size_t passed = std::count_if(c.checks.begin(), c.checks.end(), [](const Check& k) { return k.pass; });
    std::cout << construction_name(c.kind) << ": " << c.stages.size() << " stages, " << passed << "/"
              << c.checks.size() << " checks pass\n";
    if (const Check* f = c.first_failure()) {
        std::cout << "FAIL " << stage_name(f->stage) << ": " << f->name << " " << fmt(f->value) << " " << f->relation
                  << " " << fmt(f->bound) << '\n';
        return 1;
    }
    return 0;
}

int run_construct(const Common& opt) {
    json j = config_or(opt, default_universal_config());
    auto cfg = parse_universal_config(j, parse_settings(j, opt.mode, opt.precision));
    return emit_certificate(opt, build_U_minus_Umu(cfg.mu, cfg.targets, cfg.z0, cfg.stages, cfg.options));
}

int run_center(const Common& opt) {
    json j = config_or(opt, default_center_config());
    auto cfg = parse_center_config(j, parse_settings(j, opt.mode, opt.precision));
    return emit_certificate(opt,
                            build_center_counterexample(cfg.mu, Center(cfg.zeta), cfg.targets, cfg.stages, cfg.options));
}

int run_real(const Common& opt) {
    json j = config_or(opt, default_real_config());
    auto cfg = parse_real_config(j, parse_settings(j, opt.mode, opt.precision));
    return emit_certificate(opt, build_real_counterexample(cfg.mu, cfg.targets, cfg.stages, cfg.options));
}

int run_approx(const Common& opt) {
    json j = config_or(opt, default_approx_config());
    RunSettings s = parse_settings(j, opt.mode, opt.precision);
    auto cfg = parse_approx_config(j, s);
    std::vector<ApproxResult> results;
    std::ostringstream csv;
    csv << "sigma,tau,err_K,err_disc,active_terms,method,status\n";
    json runs = json::array();
    for (const auto& w : cfg.windows) {
        ApproxRequest req = cfg.base;
        req.window = w;
        ApproxResult r = solve_window(req, cfg.options);
        csv << w.sigma << ',' << w.tau << ',' << fmt(r.err_K) << ',' << fmt(r.err_disc) << ',' << r.active_terms << ','
            << r.method << ',' << r.status << '\n';
        runs.push_back(result_to_json(r, s.mode, s.precision));
        std::cout << "window (" << w.sigma << ", " << w.tau << "): err_K " << r.err_K << ", err_disc " << r.err_disc
                  << " [" << r.status << "]\n";
        results.push_back(std::move(r));
    }
    json out = {{"request", request_to_json(cfg.base)}, {"results", runs}};
    if (results.size() >= 3) {
        ThetaFit fit = theta_fit(results);
        out["theta"] = {{"theta", fit.theta}, {"residual", fit.residual}, {"warning", fit.warning}};
        std::cout << "theta " << fit.theta << " (residual " << fit.residual << ")"
                  << (fit.warning.empty() ? "" : " " + fit.warning) << '\n';
    }
    write(opt, "approx.csv", csv.str());
    write(opt, "approx.json", out.dump(2) + "\n");
    return 0;
}

// Series documents may be given directly or inside a certificate.
BlockSeries series_of(const json& doc, std::vector<std::string>* labels) {
    if (doc.is_object() && doc.contains("series")) return series_from_json(doc["series"], labels, "/series");
    return series_from_json(doc, labels, "");
}

int run_gaps(const Common& opt, const std::string& input, double eta, double rho) {
    json doc = load_json(input.empty() ? opt.config : input);
    if (doc.is_object() && doc.contains("input")) doc = load_json(doc["input"].get<std::string>());
    BlockSeries f = series_of(doc, nullptr);
    GapStructure g;
    try {
        g = detect_gaps(f, eta, rho);
    } catch (const std::domain_error& e) {
        throw SchemaError("/eta", e.what());
    }
    GapDiagnostic d = gap_diagnostic(f, g);
    std::ostringstream csv;
    csv << "m,p,q,ratio,max_root\n";
    auto ratios = g.ratios();
    for (std::size_t i = 0; i < g.pairs.size(); ++i)
        csv << i + 1 << ',' << g.pairs[i].first << ',' << g.pairs[i].second << ',' << fmt(ratios[i]) << ','
            << fmt(d.max_root[i]) << '\n';
    write(opt, "gaps.csv", csv.str());
    std::cout << g.pairs.size() << " gaps with q/p >= " << rho << (d.decreasing ? ", max roots decreasing" : "")
              << '\n';
    return 0;
}

int run_ratios(const Common& opt, const std::string& mu_name, long n, const std::string& bound) {
    Subsequence mu = Subsequence::from_list({1});
    if (!opt.config.empty()) {
        json j = load_json(opt.config);
        mu = parse_mu(require(j, "", "mu"), "/mu", n);
    } else {
        try {
            mu = named_mu(mu_name, n);
        } catch (const std::invalid_argument& e) {
            throw SchemaError("/mu", e.what());
        }
    }
    mpq_class b;
    try {
        b = mpq_class(bound);
        b.canonicalize();
    } catch (const std::invalid_argument&) {
        throw SchemaError("/bound", "expected a rational");
    }
    RatioProfile p;
    try {
        p = mu_ratio_profile(mu, std::min(n, mu.size()), b);
    } catch (const std::invalid_argument& e) {
        throw SchemaError("/n", e.what());
    }
    std::ostringstream csv;
    csv << "n,mu_n,mu_next,ratio\n";
    for (std::size_t i = 0; i < p.ratios.size(); ++i)
        csv << i + 1 << ',' << mu.at(static_cast<long>(i) + 1) << ',' << mu.at(static_cast<long>(i) + 2) << ','
            << p.ratios[i].get_str() << '\n';
    write(opt, "ratios.csv", csv.str());
    std::cout << csv.str() << "classification: " << p.label() << '\n';
    return 0;
}

int run_probe(const Common& opt, const std::string& input, long N) {
    json doc = load_json(input.empty() ? opt.config : input);
    CertifiedBlockSeries c = certificate_from_json(doc);
    Subsequence mu = Subsequence::from_list(c.mu);
    const Scalar z0 = c.z0 ? *c.z0 : Scalar::one(c.mode, c.precision);
    const Scalar zeta = c.zeta ? *c.zeta : Scalar::zero(c.mode, c.precision);
    long horizon = c.series.horizon().value_or(0);
    long limit = 0;
    while (limit < mu.size() && mu.at(limit + 1) <= horizon) ++limit;
    if (N <= 0) N = limit;
    if (N < 1 || N > limit) throw SchemaError("/n", "probe horizon must lie in [1, " + std::to_string(limit) + "]");
    auto vals = probe_partial_sums(c.series, mu, Center(zeta), z0, N);
    std::ostringstream csv;
    csv << "n,mu_n,abs_value,re,im\n";
    std::vector<double> mods;
    for (long n = 1; n <= N; ++n) {
        const Scalar& v = vals[static_cast<std::size_t>(n - 1)];
        auto z = v.to_complex();
        mods.push_back(v.abs(c.mode == Mode::exact ? 320 : c.precision).to_double());
        csv << n << ',' << mu.at(n) << ',' << fmt(mods.back()) << ',' << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
    }
    write(opt, "probe.csv", csv.str());
    bool decaying = probe_decaying(mods, static_cast<std::size_t>(c.probe_tail), c.probe_tol);
    std::cout << csv.str() << (decaying ? "decaying" : "not decaying") << " (tail " << c.probe_tail << ", tol "
              << c.probe_tol << ")\n";
    return 0;
}

int run_verify(const Common& opt, const std::string& input) {
    json doc = load_json(input.empty() ? opt.config : input);
    VerifyReport r = verify_certificate(doc, opt.tol);
    if (r.pass) {
        std::cout << "certificate verified\n";
        return 0;
    }
    std::cout << "FAIL first failing: " << stage_name(*r.first_failing_stage) << '\n';
    for (const auto& f : r.failures) std::cout << "  " << f << '\n';
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-scale experiments on universal Taylor series and their certificates"};
    app.require_subcommand(1);
    Common opt;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", opt.config, "JSON config file");
        s->add_option("--out", opt.out, "output directory");
        s->add_option("--mode", opt.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        s->add_option("--precision", opt.precision, "float precision in bits");
        s->add_option("--tol", opt.tol, "relative tolerance for verify")->check(CLI::NonNegativeNumber);
    };
    auto* approx = app.add_subcommand("approx", "window solver sweep");
    auto* construct = app.add_subcommand("construct", "series in U(D,0) but not in U^(mu)(D,0)");
    auto* center = app.add_subcommand("center", "series in U^(mu)(D,0) but not in U^(mu)(D,zeta)");
    auto* real = app.add_subcommand("real", "real-line construction");
    auto* gaps = app.add_subcommand("gaps", "detect Ostrowski gaps in a series");
    auto* ratios = app.add_subcommand("ratios", "ratio profile of a subsequence");
    auto* probe = app.add_subcommand("probe", "partial sums at the probe point");
    auto* verify = app.add_subcommand("verify", "re-check a certificate file");
    for (auto* s : {approx, construct, center, real, gaps, ratios, probe, verify}) common(s);

    std::string input;
    double eta = 0.5, rho = 4.0;
    gaps->add_option("input", input, "series or certificate JSON");
    gaps->add_option("--eta", eta, "root threshold");
    gaps->add_option("--rho", rho, "minimum q/p");
    std::string mu_name = "factorials", bound = "4";
    long n = 8;
    ratios->add_option("--mu", mu_name, "factorials, squares, powers-of-2 or primes");
    ratios->add_option("--n", n, "number of terms")->check(CLI::PositiveNumber);
    ratios->add_option("--bound", bound, "bound B for bounded_by");
    long probe_n = 0;
    probe->add_option("input", input, "certificate JSON");
    probe->add_option("--n", probe_n, "probe mu_1..mu_n (default: all inside the horizon)");
    verify->add_option("input", input, "certificate JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*approx) return run_approx(opt);
        if (*construct) return run_construct(opt);
        if (*center) return run_center(opt);
        if (*real) return run_real(opt);
        if (*gaps) return run_gaps(opt, input, eta, rho);
        if (*ratios) return run_ratios(opt, mu_name, n, bound);
        if (*probe) return run_probe(opt, input, probe_n);
        if (*verify) return run_verify(opt, input);
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        // Builders abort with the failing stage named in the message.
        std::cerr << "FAIL " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
