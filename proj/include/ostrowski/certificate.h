#pragma once

#include "ostrowski/construction.h"
#include "ostrowski/series_io.h"

#include <optional>
#include <string>
#include <vector>

namespace ostrowski {

json certificate_to_json(const CertifiedBlockSeries& c);
// Throws SchemaError on a malformed document.
CertifiedBlockSeries certificate_from_json(const json& j);

struct VerifyReport {
    bool pass = false;
    std::vector<std::string> failures;
    // Smallest stage with a failure; 0 means a global check.
    std::optional<long> first_failing_stage;
};

// Recomputes every check, probe and fingerprint from the stored series.
// Budgets come from the construction kind and stage index, never from the
// file.  Recorded numbers must agree with the recomputation to relative
// tolerance `tol` (exactly, for exact-mode fingerprints).
VerifyReport verify_certificate(const json& j, double tol = 1e-9);

std::string stage_name(long stage);

}  // namespace ostrowski
