#include "ostrowski/series_io.h"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ostrowski {

namespace {

mpq_class parse_rational(const std::string& s, const std::string& ptr) {
    try {
        mpq_class q(s, 10);
        q.canonicalize();
        if (sgn(q.get_den()) == 0) throw SchemaError(ptr, "zero denominator in '" + s + "'");
        return q;
    } catch (const std::invalid_argument&) {
        throw SchemaError(ptr, "malformed rational '" + s + "'");
    }
}

}  // namespace

json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) {
        const auto& q = s.as_exact();
        return json{{"re", q.re.get_str()}, {"im", q.im.get_str()}};
    }
    const auto& f = s.as_float();
    return json{{"re", f.re.to_hex()}, {"im", f.im.to_hex()}};
}

Scalar scalar_from_json(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr) {
    std::string re = require_string(j, ptr, "re");
    std::string im = require_string(j, ptr, "im");
    if (m == Mode::exact) return Scalar::exact(parse_rational(re, ptr + "/re"), parse_rational(im, ptr + "/im"));
    try {
        return Scalar::from_float(BigFloat::from_hex(re, prec), BigFloat::from_hex(im, prec));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(ptr, e.what());
    }
}

json polynomial_to_json(const SparsePolynomial& p) {
    json arr = json::array();
    for (const auto& [k, c] : p.terms()) {
        json t = scalar_to_json(c);
        t["degree"] = k;
        arr.push_back(t);
    }
    return arr;
}

SparsePolynomial polynomial_from_json(const json& j, Mode m, mpfr_prec_t prec, const std::string& ptr) {
    if (!j.is_array()) throw SchemaError(ptr, "expected an array of {degree, re, im}");
    std::vector<SparsePolynomial::Term> terms;
    long last = -1;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string p = ptr + "/" + std::to_string(i);
        long d = require_integer(j[i], p, "degree");
        if (d < 0) throw SchemaError(p + "/degree", "degree must be non-negative");
        if (d <= last) throw SchemaError(p + "/degree", "degrees must be strictly increasing");
        last = d;
        terms.emplace_back(d, scalar_from_json(j[i], m, prec, p));
    }
    return SparsePolynomial(std::move(terms));
}

json series_to_json(const BlockSeries& f, const std::vector<std::string>& labels, Mode m, mpfr_prec_t prec) {
    json blocks = json::array();
    for (std::size_t i = 0; i < f.blocks().size(); ++i) {
        json b;
        b["label"] = i < labels.size() ? labels[i] : "block_" + std::to_string(i);
        b["coefficients"] = polynomial_to_json(f.blocks()[i]);
        blocks.push_back(b);
    }
    json out;
    out["mode"] = mode_name(m);
    out["precision"] = m == Mode::exact ? 0 : static_cast<long>(prec);
    out["blocks"] = blocks;
    return out;
}

BlockSeries series_from_json(const json& j, std::vector<std::string>* labels, const std::string& ptr) {
    std::string ms = require_string(j, ptr, "mode");
    Mode m;
    try {
        m = parse_mode(ms);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(ptr + "/mode", e.what());
    }
    mpfr_prec_t prec = default_precision;
    if (m == Mode::floating) {
        long p = require_integer(j, ptr, "precision");
        if (p < MPFR_PREC_MIN || p > 1 << 20) throw SchemaError(ptr + "/precision", "precision out of range");
        prec = static_cast<mpfr_prec_t>(p);
    }
    const json& blocks = require_array(j, ptr, "blocks");
    BlockSeries f;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::string p = ptr + "/blocks/" + std::to_string(i);
        if (labels) labels->push_back(blocks[i].value("label", ""));
        SparsePolynomial poly = polynomial_from_json(require(blocks[i], p, "coefficients"), m, prec, p + "/coefficients");
        try {
            f.append(poly);
        } catch (const std::invalid_argument& e) {
            throw SchemaError(p, e.what());
        }
    }
    return f;
}

void write_coefficients_csv(std::ostream& os, const BlockSeries& f) {
    os << "degree,re,im\n";
    os << std::setprecision(17);
    const SparsePolynomial flat = f.flatten();
    for (const auto& [k, c] : flat.terms()) {
        auto z = c.to_complex();
        os << k << ',' << z.real() << ',' << z.imag() << '\n';
    }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const json& require(const json& j, const std::string& ptr, const std::string& key) {
    if (!j.is_object()) throw SchemaError(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(ptr + "/" + key, "missing required member");
    return *it;
}

double require_number(const json& j, const std::string& ptr, const std::string& key) {
    const json& v = require(j, ptr, key);
    if (!v.is_number()) throw SchemaError(ptr + "/" + key, "expected a number");
    return v.get<double>();
}

long require_integer(const json& j, const std::string& ptr, const std::string& key) {
    const json& v = require(j, ptr, key);
    if (!v.is_number_integer()) throw SchemaError(ptr + "/" + key, "expected an integer");
    return v.get<long>();
}

std::string require_string(const json& j, const std::string& ptr, const std::string& key) {
    const json& v = require(j, ptr, key);
    if (!v.is_string()) throw SchemaError(ptr + "/" + key, "expected a string");
    return v.get<std::string>();
}

const json& require_array(const json& j, const std::string& ptr, const std::string& key) {
    const json& v = require(j, ptr, key);
    if (!v.is_array()) throw SchemaError(ptr + "/" + key, "expected an array");
    return v;
}

mpq_class rational_from_json(const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long>())));
    if (j.is_number()) return BigFloat(j.get<double>(), 64).to_rational();
    if (j.is_string()) return parse_rational(j.get<std::string>(), ptr);
    throw SchemaError(ptr, "expected a number or rational string");
}

}  // namespace ostrowski
