#include "ostrowski/experiment.h"

#include <cmath>

namespace ostrowski {

namespace {

std::string at(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }

Scalar rational_scalar(const json& re, const json& im, Mode m, mpfr_prec_t prec, const std::string& ptr) {
    Scalar s = Scalar::exact(rational_from_json(re, ptr), im.is_null() ? mpq_class(0) : rational_from_json(im, ptr));
    return s.to_mode(m, prec);
}

template <class T>
T optional_or(const json& j, const std::string& key, const std::string& ptr, T fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j[key];
    if constexpr (std::is_same_v<T, long> || std::is_same_v<T, int>) {
        if (!v.is_number_integer()) throw SchemaError(at(ptr, key), "expected an integer");
    } else {
        if (!v.is_number()) throw SchemaError(at(ptr, key), "expected a number");
    }
    return v.get<T>();
}

BuildOptions parse_build_options(const json& j, const RunSettings& s, const std::string& ptr) {
    BuildOptions o;
    o.solver.mode = s.mode;
    o.solver.precision = s.precision;
    o.max_retries = optional_or<int>(j, "max_retries", ptr, o.max_retries);
    o.disc_points = optional_or<long>(j, "disc_points", ptr, o.disc_points);
    o.solver.active_limit = optional_or<long>(j, "active_limit", ptr, o.solver.active_limit);
    o.solver.polygon_order = optional_or<int>(j, "polygon_order", ptr, o.solver.polygon_order);
    if (j.contains("probe")) {
        const json& p = j["probe"];
        o.probe_tol = optional_or<double>(p, "tol", ptr + "/probe", o.probe_tol);
        o.probe_tail = optional_or<long>(p, "tail", ptr + "/probe", o.probe_tail);
    }
    if (o.max_retries < 0) throw SchemaError(at(ptr, "max_retries"), "must be non-negative");
    if (o.disc_points < 1) throw SchemaError(at(ptr, "disc_points"), "must be positive");
    if (o.solver.active_limit < 1) throw SchemaError(at(ptr, "active_limit"), "must be positive");
    if (o.solver.polygon_order < 2) throw SchemaError(at(ptr, "polygon_order"), "must be at least 2");
    return o;
}

long parse_stages(const json& j, std::size_t targets, const std::string& ptr) {
    long S = j.contains("stages") ? require_integer(j, ptr, "stages") : static_cast<long>(targets);
    if (S < 1) throw SchemaError(at(ptr, "stages"), "need at least one stage");
    if (static_cast<std::size_t>(S) > targets)
        throw SchemaError(at(ptr, "targets"), std::to_string(S) + " stages need as many targets");
    return S;
}

std::vector<StageTarget> parse_stage_targets(const json& j, const RunSettings& s, const std::string& ptr) {
    const json& arr = require_array(j, ptr, "targets");
    std::vector<StageTarget> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string p = ptr + "/targets/" + std::to_string(i);
        StageTarget t;
        t.K = parse_compact(require(arr[i], p, "K"), p + "/K");
        try {
            t.K.validate();
        } catch (const std::invalid_argument& e) {
            throw SchemaError(p + "/K", e.what());
        }
        t.f = parse_polynomial(require(arr[i], p, "f"), s.mode, s.precision, p + "/f");
        t.r = require_number(arr[i], p, "r");
        if (!(t.r > 0 && t.r < 1)) throw SchemaError(p + "/r", "disc radius must lie in (0, 1)");
        out.push_back(std::move(t));
    }
    return out;
}

json segment(double a_re, double a_im, double b_re, double b_im, long n) {
    return {{"segment", {{a_re, a_im}, {b_re, b_im}}}, {"n", n}};
}

json monomial(long k, const json& c) { return json::array({{{"degree", k}, {"re", c}, {"im", 0}}}); }

}  // namespace

Subsequence named_mu(const std::string& name, long count) {
    std::string rule = name;
    if (rule == "factorial") rule = "factorials";
    if (rule == "powers_of_2" || rule == "pow2") rule = "powers-of-2";
    if (rule == "square") rule = "squares";
    return Subsequence::generate(rule, count);
}

Subsequence parse_mu(const json& j, const std::string& ptr, long default_count) {
    try {
        if (j.is_string()) return named_mu(j.get<std::string>(), default_count);
        if (j.is_array()) {
            std::vector<long> v;
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (!j[i].is_number_integer()) throw SchemaError(ptr + "/" + std::to_string(i), "expected an integer");
                v.push_back(j[i].get<long>());
            }
            return Subsequence::from_list(v);
        }
        if (j.is_object()) {
            long count = j.contains("count") ? require_integer(j, ptr, "count") : default_count;
            return named_mu(require_string(j, ptr, "rule"), count);
        }
    } catch (const std::invalid_argument& e) {
        throw SchemaError(ptr, e.what());
    }
    throw SchemaError(ptr, "expected a generator name, {rule, count} or an integer list");
}

Scalar parse_scalar(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr) {
    if (j.is_array()) {
        if (j.size() != 2) throw SchemaError(ptr, "expected [re, im]");
        return rational_scalar(j[0], j[1], m, prec, ptr);
    }
    if (j.is_number() || j.is_string()) return rational_scalar(j, json(nullptr), m, prec, ptr);
    throw SchemaError(ptr, "expected a number, an \"a/b\" string or [re, im]");
}

SparsePolynomial parse_polynomial(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of {degree, re, im}");
    std::vector<SparsePolynomial::Term> terms;
    long last = -1;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string p = ptr + "/" + std::to_string(i);
        long d = require_integer(j[i], p, "degree");
        if (d <= last) throw SchemaError(p + "/degree", "degrees must be strictly increasing and non-negative");
        last = d;
        json im = j[i].contains("im") ? j[i]["im"] : json(0);
        terms.emplace_back(d, rational_scalar(require(j[i], p, "re"), im, m, prec, p));
    }
    try {
        return SparsePolynomial(std::move(terms));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(ptr, e.what());
    }
}

CompactSample parse_compact(const json& j, const std::string& ptr) {
    if (!j.is_object()) throw SchemaError(ptr, "expected a segment, arc or points object");
    auto point = [&](const json& v, const std::string& p) {
        Scalar s = parse_scalar(v, Mode::floating, 64, p);
        return s.to_complex();
    };
    try {
        if (j.contains("segment")) {
            const json& s = require_array(j, ptr, "segment");
            if (s.size() != 2) throw SchemaError(ptr + "/segment", "expected two endpoints");
            cplx a = point(s[0], ptr + "/segment/0"), b = point(s[1], ptr + "/segment/1");
            long n = j.contains("n") ? require_integer(j, ptr, "n") : default_point_count(std::abs(b - a));
            return CompactSample::segment(a, b, n);
        }
        if (j.contains("arc")) {
            const json& a = require(j, ptr, "arc");
            std::string p = ptr + "/arc";
            cplx c = point(require(a, p, "center"), p + "/center");
            double radius = require_number(a, p, "radius"), t0 = require_number(a, p, "t0"),
                   t1 = require_number(a, p, "t1");
            long n = j.contains("n") ? require_integer(j, ptr, "n") : default_point_count(radius * std::abs(t1 - t0));
            return CompactSample::arc(c, radius, t0, t1, n);
        }
        if (j.contains("points")) {
            const json& a = require_array(j, ptr, "points");
            std::vector<cplx> pts;
            for (std::size_t i = 0; i < a.size(); ++i) pts.push_back(point(a[i], ptr + "/points/" + std::to_string(i)));
            return CompactSample::from_points(pts);
        }
    } catch (const std::invalid_argument& e) {
        throw SchemaError(ptr, e.what());
    }
    throw SchemaError(ptr, "expected one of segment, arc, points");
}

RunSettings parse_settings(const json& j, const std::optional<std::string>& mode_flag,
                           const std::optional<long>& precision_flag) {
    RunSettings s;
    try {
        if (mode_flag)
            s.mode = parse_mode(*mode_flag);
        else if (j.contains("mode"))
            s.mode = parse_mode(require_string(j, "", "mode"));
    } catch (const std::invalid_argument& e) {
        throw SchemaError("/mode", e.what());
    }
    long p = precision_flag ? *precision_flag : optional_or<long>(j, "precision", "", default_precision);
    if (p < 64 || p > 1 << 16) throw SchemaError("/precision", "precision must lie in [64, 65536]");
    s.precision = static_cast<mpfr_prec_t>(p);
    return s;
}

UniversalConfig parse_universal_config(const json& j, const RunSettings& s) {
    UniversalConfig c;
    c.mu = parse_mu(require(j, "", "mu"), "/mu");
    c.targets = parse_stage_targets(j, s, "");
    c.stages = parse_stages(j, c.targets.size(), "");
    c.z0 = parse_scalar(require(j, "", "z0"), s.mode, s.precision, "/z0");
    if (c.z0.abs_double() < 1) throw SchemaError("/z0", "probe point must satisfy |z0| >= 1");
    c.options = parse_build_options(j, s, "");
    return c;
}

CenterConfig parse_center_config(const json& j, const RunSettings& s) {
    CenterConfig c;
    c.mu = parse_mu(require(j, "", "mu"), "/mu");
    c.zeta = parse_scalar(require(j, "", "zeta"), s.mode, s.precision, "/zeta");
    if (c.zeta.is_zero()) throw SchemaError("/zeta", "center must be nonzero");
    if (!(c.zeta.abs_double() < 1)) throw SchemaError("/zeta", "center must lie in the open unit disc");
    c.targets = parse_stage_targets(j, s, "");
    c.stages = parse_stages(j, c.targets.size(), "");
    c.options = parse_build_options(j, s, "");
    return c;
}

RealConfig parse_real_config(const json& j, const RunSettings& s) {
    RealConfig c;
    c.mu = parse_mu(require(j, "", "mu"), "/mu");
    const json& arr = require_array(j, "", "targets");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string p = "/targets/" + std::to_string(i);
        RealTarget t;
        t.A = require_number(arr[i], p, "A");
        if (arr[i].contains("f")) {
            t.poly = parse_polynomial(arr[i]["f"], s.mode, s.precision, p + "/f");
        } else {
            const json& smp = require_array(arr[i], p, "samples");
            for (std::size_t k = 0; k < smp.size(); ++k) {
                if (!smp[k].is_number()) throw SchemaError(p + "/samples/" + std::to_string(k), "expected a number");
                t.samples.push_back(smp[k].get<double>());
            }
        }
        try {
            t.validate();
        } catch (const std::invalid_argument& e) {
            throw SchemaError(p, e.what());
        }
        c.targets.push_back(std::move(t));
    }
    c.stages = parse_stages(j, c.targets.size(), "");
    c.options = parse_build_options(j, s, "");
    return c;
}

ApproxConfig parse_approx_config(const json& j, const RunSettings& s) {
    ApproxConfig c;
    c.options.mode = s.mode;
    c.options.precision = s.precision;
    c.options.active_limit = optional_or<long>(j, "active_limit", "", c.options.active_limit);
    c.options.polygon_order = optional_or<int>(j, "polygon_order", "", c.options.polygon_order);
    c.options.cutting_rounds = optional_or<int>(j, "cutting_rounds", "", c.options.cutting_rounds);
    c.base.K = parse_compact(require(j, "", "K"), "/K");
    c.base.r = require_number(j, "", "r");
    if (!(c.base.r > 0 && c.base.r < 1)) throw SchemaError("/r", "disc radius must lie in (0, 1)");
    c.base.disc_grid = circle_grid(c.base.r, optional_or<long>(j, "disc_points", "", 64));
    c.base.lambda = optional_or<double>(j, "lambda", "", 1.0);
    const json& t = require(j, "", "target");
    if (t.is_object() && t.contains("inverse_power")) {
        // h(z) = z^(-k), sampled on K at working precision.
        long k = require_integer(t, "/target", "inverse_power");
        if (k < 1) throw SchemaError("/target/inverse_power", "must be positive");
        for (auto z : c.base.K.points) {
            Scalar zs = Scalar::from_complex(z, s.precision);
            c.base.samples.push_back(Scalar::one(Mode::floating, s.precision) / zs.pow(k));
        }
    } else {
        c.base.target = parse_polynomial(t, s.mode, s.precision, "/target");
    }
    const json& w = require(j, "", "windows");
    if (w.is_object()) {
        // {"square": [n_from, n_to]} gives windows (n, n^2).
        const json& sq = require_array(w, "/windows", "square");
        if (sq.size() != 2 || !sq[0].is_number_integer() || !sq[1].is_number_integer())
            throw SchemaError("/windows/square", "expected [n_from, n_to]");
        for (long n = sq[0].get<long>(); n <= sq[1].get<long>(); ++n) c.windows.push_back({n, n * n});
    } else if (w.is_array()) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!w[i].is_array() || w[i].size() != 2 || !w[i][0].is_number_integer() || !w[i][1].is_number_integer())
                throw SchemaError("/windows/" + std::to_string(i), "expected [sigma, tau]");
            c.windows.push_back({w[i][0].get<long>(), w[i][1].get<long>()});
        }
    } else {
        throw SchemaError("/windows", "expected a list of [sigma, tau] or {\"square\": [a, b]}");
    }
    if (c.windows.empty()) throw SchemaError("/windows", "no windows");
    for (std::size_t i = 0; i < c.windows.size(); ++i) {
        try {
            c.windows[i].validate();
        } catch (const std::invalid_argument& e) {
            throw SchemaError("/windows/" + std::to_string(i), e.what());
        }
    }
    return c;
}

json default_universal_config() {
    json targets = json::array();
    const json fs[] = {monomial(0, 1), monomial(1, 1), monomial(0, 2), monomial(2, 1)};
    const double rs[] = {0.4, 0.5, 0.55, 0.6};
    for (int i = 0; i < 4; ++i)
        targets.push_back({{"K", segment(1.18, 0, 1.22, 0, 120)}, {"f", fs[i]}, {"r", rs[i]}});
    return {{"mu", {{"rule", "factorials"}, {"count", 6}}},
            {"stages", 4},
            {"z0", "6/5"},
            {"targets", targets},
            {"mode", "float"},
            {"precision", 256}};
}

json default_center_config() {
    json targets = json::array();
    const json fs[] = {monomial(0, 1), monomial(1, 1), monomial(0, 2)};
    const double rs[] = {0.5, 0.7, 0.9};
    for (int i = 0; i < 3; ++i) targets.push_back({{"K", segment(1.0, 0, 1.04, 0, 120)}, {"f", fs[i]}, {"r", rs[i]}});
    return {{"mu", {1, 5, 6, 40, 41, 1600}},
            {"stages", 3},
            {"zeta", "1/2"},
            {"targets", targets},
            {"mode", "exact"},
            {"precision", 256}};
}

json default_real_config() {
    json targets = json::array();
    targets.push_back({{"A", 1}, {"f", monomial(3, "1/8")}});
    targets.push_back({{"A", 2}, {"f", monomial(11, "1/2048")}});
    mpz_class p3;
    mpz_ui_pow_ui(p3.get_mpz_t(), 3, 50);
    targets.push_back({{"A", 3}, {"f", monomial(50, "1/" + p3.get_str())}});
    return {{"mu", {{"rule", "factorials"}, {"count", 5}}},
            {"stages", 3},
            {"targets", targets},
            {"mode", "float"},
            {"precision", 256}};
}

json default_approx_config() {
    return {{"K", segment(1.1, 0, 2, 0, 200)},
            {"target", {{"inverse_power", 1}}},
            {"r", 0.5},
            {"disc_points", 64},
            {"windows", {{"square", {2, 6}}}},
            {"mode", "float"},
            {"precision", 256}};
}

}  // namespace ostrowski
