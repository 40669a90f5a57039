#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ostrowski/certificate.h"
#include "ostrowski/experiment.h"

#include <stdexcept>

using namespace ostrowski;

namespace {

json universal_json() {
    static const json out = [] {
        json j = default_universal_config();
        auto cfg = parse_universal_config(j, parse_settings(j, std::nullopt, std::nullopt));
        return certificate_to_json(build_U_minus_Umu(cfg.mu, cfg.targets, cfg.z0, cfg.stages, cfg.options));
    }();
    return out;
}

json center_json() {
    static const json out = [] {
        json j = default_center_config();
        auto cfg = parse_center_config(j, parse_settings(j, std::nullopt, std::nullopt));
        return certificate_to_json(
            build_center_counterexample(cfg.mu, Center(cfg.zeta), cfg.targets, cfg.stages, cfg.options));
    }();
    return out;
}

json real_json() {
    static const json out = [] {
        json j = default_real_config();
        auto cfg = parse_real_config(j, parse_settings(j, std::nullopt, std::nullopt));
        return certificate_to_json(build_real_counterexample(cfg.mu, cfg.targets, cfg.stages, cfg.options));
    }();
    return out;
}

// Adds delta (as a rational) to the real or imaginary part of one stored coefficient.
json perturbed(json cert, std::size_t block, std::size_t term, const mpq_class& delta, bool imaginary) {
    Mode m = parse_mode(cert["mode"].get<std::string>());
    mpfr_prec_t prec = m == Mode::exact ? 0 : cert["precision"].get<long>();
    json& slot = cert["series"]["blocks"][block]["coefficients"][term];
    Scalar c = scalar_from_json(slot, m, prec);
    Scalar d = imaginary ? Scalar::exact(0, delta) : Scalar::exact(delta);
    Scalar out = c + d.to_mode(m, prec);
    json fresh = scalar_to_json(out);
    slot["re"] = fresh["re"];
    slot["im"] = fresh["im"];
    return cert;
}

long coefficient_count(const json& cert, std::size_t block) {
    return static_cast<long>(cert["series"]["blocks"][block]["coefficients"].size());
}

}  // namespace

TEST_CASE("certificates round trip through json") {
    for (const json& j : {universal_json(), center_json(), real_json()}) {
        auto c = certificate_from_json(j);
        CHECK(certificate_to_json(c) == j);
        CHECK(j["pass"].get<bool>());
    }
}

TEST_CASE("untampered certificates verify") {
    for (const json& j : {universal_json(), center_json(), real_json()}) {
        auto rep = verify_certificate(j);
        CHECK(rep.pass);
        CHECK(rep.failures.empty());
        CHECK(!rep.first_failing_stage);
    }
}

TEST_CASE("a perturbed coefficient fails verification") {
    mpq_class delta(1, 1000);
    for (const json& j : {universal_json(), center_json(), real_json()}) {
        const auto nblocks = j["series"]["blocks"].size();
        for (std::size_t b = 0; b < nblocks; ++b) {
            long n = coefficient_count(j, b);
            if (n == 0) continue;
            for (std::size_t t : {std::size_t{0}, static_cast<std::size_t>(n - 1)}) {
                CAPTURE(j["kind"]);
                CAPTURE(b);
                CAPTURE(t);
                auto up = verify_certificate(perturbed(j, b, t, delta, false));
                CHECK(!up.pass);
                REQUIRE(up.first_failing_stage);
                CHECK(*up.first_failing_stage >= 1);
                CHECK(!verify_certificate(perturbed(j, b, t, -delta, false)).pass);
                CHECK(!verify_certificate(perturbed(j, b, t, delta, true)).pass);
            }
        }
    }
}

TEST_CASE("an inserted coefficient fails verification") {
    // Degree 0 lies below every window, so only the support check objects.
    json j = center_json();
    json& first = j["series"]["blocks"][0]["coefficients"];
    first.insert(first.begin(), json{{"degree", 0}, {"re", "1/1000"}, {"im", "0"}});
    auto rep = verify_certificate(j);
    CHECK(!rep.pass);
    bool support = false;
    for (const auto& f : rep.failures) support = support || f.find("support") != std::string::npos;
    CHECK(support);
}

TEST_CASE("edited records are caught") {
    json j = universal_json();
    for (auto& ch : j["checks"])
        if (ch["name"] == "fit_K" && ch["stage"] == 2) ch["value"] = ch["value"].get<double>() * 0.5;
    auto rep = verify_certificate(j);
    CHECK(!rep.pass);
    CHECK(rep.first_failing_stage == 2);

    json k = universal_json();
    k["probes"][0]["value"] = 0.5;
    auto rp = verify_certificate(k);
    CHECK(!rp.pass);
    CHECK(rp.first_failing_stage == 0);
    CHECK(stage_name(0) == "global");
    CHECK(stage_name(3) == "stage 3");
}

TEST_CASE("malformed certificates raise schema errors") {
    json j = center_json();
    json a = j;
    a.erase("kind");
    CHECK_THROWS_AS(certificate_from_json(a), SchemaError);
    json b = j;
    b["mode"] = "double";
    try {
        certificate_from_json(b);
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.pointer() == "/mode");
    }
    json c = j;
    c["mu"][1] = "five";
    CHECK_THROWS_AS(certificate_from_json(c), SchemaError);
    json d = j;
    d["stages"] = json::array();
    CHECK_THROWS_AS(certificate_from_json(d), SchemaError);
    CHECK_THROWS_AS(certificate_from_json(json::array()), SchemaError);
}
