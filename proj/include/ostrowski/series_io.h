#pragma once

#include "ostrowski/series.h"

#include "json.hpp"

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ostrowski {

using json = nlohmann::json;

// Raised on malformed input documents; `pointer` is a JSON pointer to the
// offending value.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string pointer, const std::string& what)
        : std::runtime_error(pointer + ": " + what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

// Exact parts are written as rational strings ("16/15"), float parts as
// hex-float strings.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr = "");

json polynomial_to_json(const SparsePolynomial& p);
SparsePolynomial polynomial_from_json(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr = "");

json series_to_json(const BlockSeries& f, const std::vector<std::string>& labels, Mode m, mpfr_prec_t prec);
BlockSeries series_from_json(const json& j, std::vector<std::string>* labels = nullptr,
                             const std::string& ptr = "");

void write_coefficients_csv(std::ostream& os, const BlockSeries& f);

// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// Typed member access that raises SchemaError with a pointer on failure.
const json& require(const json& j, const std::string& ptr, const std::string& key);
double require_number(const json& j, const std::string& ptr, const std::string& key);
long require_integer(const json& j, const std::string& ptr, const std::string& key);
std::string require_string(const json& j, const std::string& ptr, const std::string& key);
const json& require_array(const json& j, const std::string& ptr, const std::string& key);

// Exact rational from a JSON number or "a/b" string.
mpq_class rational_from_json(const json& j, const std::string& ptr);

}  // namespace ostrowski
