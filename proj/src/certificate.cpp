#include "ostrowski/certificate.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace ostrowski {

namespace {

json points_to_json(const std::vector<cplx>& pts) {
    json a = json::array();
    for (auto z : pts) a.push_back(json::array({z.real(), z.imag()}));
    return a;
}

std::vector<cplx> points_from_json(const json& j, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of [re, im] pairs");
    std::vector<cplx> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& p = j[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw SchemaError(ptr + "/" + std::to_string(i), "expected [re, im]");
        out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
}

json stage_to_json(const StageRecord& s) {
    json j;
    j["stage"] = s.stage;
    j["n"] = s.n;
    j["triple"] = {s.triple.u, s.triple.v, s.triple.w};
    j["K"] = points_to_json(s.K);
    j["target"] = polynomial_to_json(s.target);
    json samples = json::array();
    for (const auto& x : s.samples) samples.push_back(scalar_to_json(x));
    j["samples"] = samples;
    j["r"] = s.r;
    j["disc_points"] = s.disc_points;
    j["half_width"] = s.half_width;
    j["retries"] = s.retries;
    j["solver_status"] = s.solver_status;
    return j;
}

StageRecord stage_from_json(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr) {
    StageRecord s;
    s.stage = require_integer(j, ptr, "stage");
    s.n = require_integer(j, ptr, "n");
    const json& t = require_array(j, ptr, "triple");
    if (t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() || !t[2].is_number_integer())
        throw SchemaError(ptr + "/triple", "expected [u, v, w]");
    s.triple = {t[0].get<long>(), t[1].get<long>(), t[2].get<long>()};
    s.K = points_from_json(require(j, ptr, "K"), ptr + "/K");
    if (s.K.empty()) throw SchemaError(ptr + "/K", "empty point set");
    s.target = polynomial_from_json(require(j, ptr, "target"), m, prec, ptr + "/target");
    const json& samples = require_array(j, ptr, "samples");
    for (std::size_t i = 0; i < samples.size(); ++i)
        s.samples.push_back(scalar_from_json(samples[i], m, prec, ptr + "/samples/" + std::to_string(i)));
    if (!s.samples.empty() && s.samples.size() != s.K.size())
        throw SchemaError(ptr + "/samples", "need one sample per K point");
    s.r = require_number(j, ptr, "r");
    s.disc_points = require_integer(j, ptr, "disc_points");
    if (s.r < 0 || s.r >= 1) throw SchemaError(ptr + "/r", "disc radius must lie in [0, 1)");
    if (s.r > 0 && s.disc_points < 1) throw SchemaError(ptr + "/disc_points", "must be positive");
    s.half_width = require_number(j, ptr, "half_width");
    s.retries = require_integer(j, ptr, "retries");
    s.solver_status = require_string(j, ptr, "solver_status");
    return s;
}

bool close(double a, double b, double tol) {
    if (a == b) return true;
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::string stage_name(long stage) { return stage == 0 ? "global" : "stage " + std::to_string(stage); }

json certificate_to_json(const CertifiedBlockSeries& c) {
    json j;
    j["kind"] = construction_name(c.kind);
    j["mode"] = mode_name(c.mode);
    j["precision"] = c.mode == Mode::exact ? 0 : static_cast<long>(c.precision);
    j["mu"] = c.mu;
    j["z0"] = c.z0 ? scalar_to_json(*c.z0) : json(nullptr);
    j["zeta"] = c.zeta ? scalar_to_json(*c.zeta) : json(nullptr);
    j["probe"] = {{"tol", c.probe_tol}, {"tail", c.probe_tail}};
    json stages = json::array();
    for (const auto& s : c.stages) stages.push_back(stage_to_json(s));
    j["stages"] = stages;
    j["series"] = series_to_json(c.series, c.labels, c.mode, c.precision);
    json checks = json::array();
    for (const auto& k : c.checks)
        checks.push_back({{"stage", k.stage},
                          {"name", k.name},
                          {"relation", k.relation},
                          {"value", k.value},
                          {"bound", k.bound},
                          {"pass", k.pass}});
    j["checks"] = checks;
    json probes = json::array();
    for (const auto& p : c.probes) probes.push_back({{"n", p.n}, {"m", p.m}, {"value", p.value}});
    j["probes"] = probes;
    json fps = json::array();
    for (const auto& [label, v] : c.fingerprints) {
        json f = scalar_to_json(v);
        f["label"] = label;
        fps.push_back(f);
    }
    j["fingerprints"] = fps;
    j["notes"] = c.notes;
    j["pass"] = c.pass();
    return j;
}

CertifiedBlockSeries certificate_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("", "certificate must be a JSON object");
    CertifiedBlockSeries c;
    try {
        c.kind = parse_construction(require_string(j, "", "kind"));
    } catch (const std::invalid_argument& e) {
        throw SchemaError("/kind", e.what());
    }
    try {
        c.mode = parse_mode(require_string(j, "", "mode"));
    } catch (const std::invalid_argument& e) {
        throw SchemaError("/mode", e.what());
    }
    if (c.mode == Mode::floating) {
        long p = require_integer(j, "", "precision");
        if (p < MPFR_PREC_MIN || p > 1 << 20) throw SchemaError("/precision", "precision out of range");
        c.precision = static_cast<mpfr_prec_t>(p);
    }
    const json& mu = require_array(j, "", "mu");
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (!mu[i].is_number_integer()) throw SchemaError("/mu/" + std::to_string(i), "expected an integer");
        c.mu.push_back(mu[i].get<long>());
    }
    try {
        Subsequence::from_list(c.mu);
    } catch (const std::invalid_argument& e) {
        throw SchemaError("/mu", e.what());
    }
    if (j.contains("z0") && !j["z0"].is_null()) c.z0 = scalar_from_json(j["z0"], c.mode, c.precision, "/z0");
    if (j.contains("zeta") && !j["zeta"].is_null())
        c.zeta = scalar_from_json(j["zeta"], c.mode, c.precision, "/zeta");
    const json& probe = require(j, "", "probe");
    c.probe_tol = require_number(probe, "/probe", "tol");
    c.probe_tail = require_integer(probe, "/probe", "tail");
    if (c.probe_tail < 1) throw SchemaError("/probe/tail", "must be positive");

    const json& stages = require_array(j, "", "stages");
    if (stages.empty()) throw SchemaError("/stages", "certificate has no stages");
    for (std::size_t i = 0; i < stages.size(); ++i)
        c.stages.push_back(stage_from_json(stages[i], c.mode, c.precision, "/stages/" + std::to_string(i)));

    c.series = series_from_json(require(j, "", "series"), &c.labels, "/series");
    if (c.series.mode() && *c.series.mode() != c.mode) throw SchemaError("/series/mode", "differs from the certificate mode");

    const json& checks = require_array(j, "", "checks");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        std::string p = "/checks/" + std::to_string(i);
        Check k;
        k.stage = require_integer(checks[i], p, "stage");
        k.name = require_string(checks[i], p, "name");
        k.relation = require_string(checks[i], p, "relation");
        k.value = require_number(checks[i], p, "value");
        k.bound = require_number(checks[i], p, "bound");
        const json& pass = require(checks[i], p, "pass");
        if (!pass.is_boolean()) throw SchemaError(p + "/pass", "expected a boolean");
        k.pass = pass.get<bool>();
        c.checks.push_back(k);
    }
    const json& probes = require_array(j, "", "probes");
    for (std::size_t i = 0; i < probes.size(); ++i) {
        std::string p = "/probes/" + std::to_string(i);
        c.probes.push_back({require_integer(probes[i], p, "n"), require_integer(probes[i], p, "m"),
                            require_number(probes[i], p, "value")});
    }
    const json& fps = require_array(j, "", "fingerprints");
    for (std::size_t i = 0; i < fps.size(); ++i) {
        std::string p = "/fingerprints/" + std::to_string(i);
        c.fingerprints.emplace_back(require_string(fps[i], p, "label"), scalar_from_json(fps[i], c.mode, c.precision, p));
    }
    if (j.contains("notes") && j["notes"].is_array())
        for (const auto& n : j["notes"])
            if (n.is_string()) c.notes.push_back(n.get<std::string>());
    return c;
}

VerifyReport verify_certificate(const json& j, double tol) {
    if (!(tol >= 0)) throw std::invalid_argument("tolerance must be non-negative");
    const CertifiedBlockSeries recorded = certificate_from_json(j);
    CertifiedBlockSeries fresh = recorded;
    VerifyReport rep;
    std::map<long, bool> bad;
    auto fail = [&](long stage, const std::string& what) {
        rep.failures.push_back(stage_name(stage) + ": " + what);
        bad[stage] = true;
    };
    try {
        evaluate_certificate(fresh);
    } catch (const std::exception& e) {
        fail(0, std::string("re-evaluation failed: ") + e.what());
    }

    for (const auto& k : fresh.checks) {
        if (!k.pass)
            fail(k.stage, k.name + " fails: " + std::to_string(k.value) + " " + k.relation + " " +
                              std::to_string(k.bound) + " does not hold");
        auto it = std::find_if(recorded.checks.begin(), recorded.checks.end(),
                               [&](const Check& r) { return r.stage == k.stage && r.name == k.name; });
        if (it == recorded.checks.end()) {
            fail(k.stage, k.name + " missing from the certificate");
            continue;
        }
        if (!close(it->value, k.value, tol))
            fail(k.stage, k.name + " recorded " + std::to_string(it->value) + ", recomputed " + std::to_string(k.value));
        if (it->bound != k.bound)
            fail(k.stage, k.name + " records bound " + std::to_string(it->bound) + ", expected " + std::to_string(k.bound));
        if (it->pass != k.pass) fail(k.stage, k.name + " records the wrong verdict");
    }
    if (!fresh.checks.empty() && recorded.checks.size() != fresh.checks.size())
        fail(0, "certificate lists " + std::to_string(recorded.checks.size()) + " checks, expected " +
                    std::to_string(fresh.checks.size()));

    if (recorded.probes.size() != fresh.probes.size()) {
        fail(0, "probe table has " + std::to_string(recorded.probes.size()) + " rows, expected " +
                    std::to_string(fresh.probes.size()));
    } else {
        for (std::size_t i = 0; i < fresh.probes.size(); ++i) {
            const auto& a = recorded.probes[i];
            const auto& b = fresh.probes[i];
            if (a.n != b.n || a.m != b.m || !close(a.value, b.value, tol))
                fail(0, "probe at order " + std::to_string(b.m) + " recorded " + std::to_string(a.value) +
                            ", recomputed " + std::to_string(b.value));
        }
    }

    const mpfr_prec_t ep = fresh.mode == Mode::exact ? 320 : fresh.precision;
    if (recorded.fingerprints.size() != fresh.fingerprints.size()) {
        fail(0, "fingerprint list has the wrong length");
    } else {
        for (std::size_t i = 0; i < fresh.fingerprints.size(); ++i) {
            const auto& [la, va] = recorded.fingerprints[i];
            const auto& [lb, vb] = fresh.fingerprints[i];
            long stage = 0;
            for (const auto& s : fresh.stages)
                if (lb.ends_with("_" + std::to_string(s.stage))) stage = s.stage;
            bool same;
            if (fresh.mode == Mode::exact) {
                same = va == vb;
            } else {
                double d = (va - vb).abs(ep).to_double();
                double scale = std::max(va.abs(ep).to_double(), vb.abs(ep).to_double());
                same = d <= tol * scale;
            }
            if (la != lb || !same) fail(stage, "block " + lb + " does not match its recorded fingerprint");
        }
    }

    rep.pass = rep.failures.empty();
    if (!rep.pass) {
        // Stage failures take precedence; a global-only failure reports 0.
        auto it = std::find_if(bad.begin(), bad.end(), [](const auto& kv) { return kv.first > 0; });
        rep.first_failing_stage = it != bad.end() ? it->first : 0;
    }
    return rep;
}

}  // namespace ostrowski
