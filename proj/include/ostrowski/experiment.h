#pragma once

// JSON experiment configs shared by the CLI, the acceptance binary and the
// tests.  Every parser raises SchemaError with a JSON pointer.

#include "ostrowski/certificate.h"
#include "ostrowski/real_construction.h"

#include <string>
#include <vector>

namespace ostrowski {

// "factorial(s)", "squares", "powers-of-2", "primes" with a count, or an
// explicit list: {"rule": "factorials", "count": 6} | [1, 2, 6, ...] | "factorials".
Subsequence parse_mu(const json& j, const std::string& ptr, long default_count = 8);
Subsequence named_mu(const std::string& name, long count);

// Number, "a/b" string, or [re, im] of either.
Scalar parse_scalar(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr);
// [{"degree": k, "re": x, "im": y}, ...] with the same scalar forms.
SparsePolynomial parse_polynomial(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr);
// {"segment": [a, b], "n": N} | {"arc": {"center", "radius", "t0", "t1"}, "n": N} | {"points": [...]}.
CompactSample parse_compact(const json& j, const std::string& ptr);

struct RunSettings {
    Mode mode = Mode::floating;
    mpfr_prec_t precision = default_precision;
};

// Mode and precision from the config, overridden by the flags when given.
RunSettings parse_settings(const json& j, const std::optional<std::string>& mode_flag,
                           const std::optional<long>& precision_flag);

struct UniversalConfig {
    Subsequence mu = Subsequence::from_list({1});
    std::vector<StageTarget> targets;
    Scalar z0;
    long stages = 0;
    BuildOptions options;
};
struct CenterConfig {
    Subsequence mu = Subsequence::from_list({1});
    Scalar zeta;
    std::vector<StageTarget> targets;
    long stages = 0;
    BuildOptions options;
};
struct RealConfig {
    Subsequence mu = Subsequence::from_list({1});
    std::vector<RealTarget> targets;
    long stages = 0;
    BuildOptions options;
};
struct ApproxConfig {
    ApproxRequest base;                 // K, target, r, disc grid, lambda
    std::vector<WindowSpec> windows;
    SolverOptions options;
};

UniversalConfig parse_universal_config(const json& j, const RunSettings& s);
CenterConfig parse_center_config(const json& j, const RunSettings& s);
RealConfig parse_real_config(const json& j, const RunSettings& s);
ApproxConfig parse_approx_config(const json& j, const RunSettings& s);

// Configurations of the reference runs.
json default_universal_config();
json default_center_config();
json default_real_config();
json default_approx_config();

}  // namespace ostrowski
