#include "ostrowski/scalar.h"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace ostrowski {

std::string mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::exact;
    if (s == "float") return Mode::floating;
    throw std::invalid_argument("unknown mode '" + s + "' (expected exact or float)");
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    owned_ = true;
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_d(v_, v, MPFR_RNDN); }

BigFloat::BigFloat(long v, mpfr_prec_t prec) : BigFloat(prec) { mpfr_set_si(v_, v, MPFR_RNDN); }

BigFloat::BigFloat(const mpz_class& v, mpfr_prec_t prec) : BigFloat(prec) {
    mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& v, mpfr_prec_t prec) : BigFloat(prec) {
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(v_, other.precision());
    owned_ = true;
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    owned_ = true;
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    swap(other);
    return *this;
}

BigFloat::~BigFloat() {
    if (owned_) mpfr_clear(v_);
}

void BigFloat::swap(BigFloat& o) noexcept { mpfr_swap(v_, o.v_); }

mpq_class BigFloat::to_rational() const {
    if (!is_finite()) throw std::domain_error("cannot convert a non-finite float to a rational");
    if (is_zero()) return 0;
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpq_class q(m);
    if (e >= 0) {
        mpz_class p;
        mpz_mul_2exp(p.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(e));
        q *= p;
    } else {
        mpz_class p;
        mpz_mul_2exp(p.get_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
        q /= p;
    }
    q.canonicalize();
    return q;
}

std::string BigFloat::to_hex() const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%Ra", v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

BigFloat BigFloat::from_hex(const std::string& s, mpfr_prec_t prec) {
    BigFloat out(prec);
    char* end = nullptr;
    mpfr_strtofr(out.v_, s.c_str(), &end, 0, MPFR_RNDN);
    if (end == s.c_str() || *end != '\0') throw std::invalid_argument("malformed hex float '" + s + "'");
    return out;
}

namespace {

mpfr_prec_t joint(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigFloat BigFloat::operator-() const {
    BigFloat out(*this);
    mpfr_neg(out.v_, out.v_, MPFR_RNDN);
    return out;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_add(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_sub(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_mul(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_div(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return out;
}

bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

BigFloat sqrt(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_sqrt(out.raw(), a.raw(), MPFR_RNDN);
    return out;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_hypot(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return out;
}

BigFloat log(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_log(out.raw(), a.raw(), MPFR_RNDN);
    return out;
}

BigFloat exp(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_exp(out.raw(), a.raw(), MPFR_RNDN);
    return out;
}

BigFloat abs(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_abs(out.raw(), a.raw(), MPFR_RNDN);
    return out;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

// ------------------------------------------------------------------ Scalar

Scalar::Scalar() : v_(GaussianRational{0, 0}) {}

Scalar Scalar::exact(const mpq_class& re, const mpq_class& im) {
    Scalar s;
    s.v_ = GaussianRational{re, im};
    return s;
}

Scalar Scalar::from_float(const BigFloat& re, const BigFloat& im) {
    Scalar s;
    s.v_ = ComplexFloat{re, im};
    return s;
}

Scalar Scalar::from_complex(std::complex<double> z, mpfr_prec_t prec) {
    return from_float(BigFloat(z.real(), prec), BigFloat(z.imag(), prec));
}

Scalar Scalar::zero(Mode m, mpfr_prec_t prec) {
    if (m == Mode::exact) return Scalar();
    return from_float(BigFloat(prec), BigFloat(prec));
}

Scalar Scalar::one(Mode m, mpfr_prec_t prec) {
    if (m == Mode::exact) return exact(1, 0);
    return from_float(BigFloat(1L, prec), BigFloat(prec));
}

Scalar Scalar::from_double(std::complex<double> z, Mode m, mpfr_prec_t prec) {
    if (m == Mode::floating) return from_complex(z, prec);
    return exact(BigFloat(z.real(), 64).to_rational(), BigFloat(z.imag(), 64).to_rational());
}

Mode Scalar::mode() const { return std::holds_alternative<GaussianRational>(v_) ? Mode::exact : Mode::floating; }

mpfr_prec_t Scalar::precision() const {
    if (is_exact()) return 0;
    const auto& f = as_float();
    return std::max(f.re.precision(), f.im.precision());
}

bool Scalar::is_zero() const {
    if (is_exact()) {
        const auto& q = as_exact();
        return sgn(q.re) == 0 && sgn(q.im) == 0;
    }
    const auto& f = as_float();
    return f.re.is_zero() && f.im.is_zero();
}

bool Scalar::is_real() const {
    if (is_exact()) return sgn(as_exact().im) == 0;
    return as_float().im.is_zero();
}

const GaussianRational& Scalar::as_exact() const {
    if (!is_exact()) throw std::invalid_argument("scalar is not exact");
    return std::get<GaussianRational>(v_);
}

const ComplexFloat& Scalar::as_float() const {
    if (is_exact()) throw std::invalid_argument("scalar is not a float");
    return std::get<ComplexFloat>(v_);
}

std::complex<double> Scalar::to_complex() const {
    if (is_exact()) {
        const auto& q = as_exact();
        return {q.re.get_d(), q.im.get_d()};
    }
    const auto& f = as_float();
    return {f.re.to_double(), f.im.to_double()};
}

double Scalar::abs_double() const { return abs(64).to_double(); }

BigFloat Scalar::abs(mpfr_prec_t prec) const {
    if (is_exact()) {
        const auto& q = as_exact();
        return hypot(BigFloat(q.re, prec + 16), BigFloat(q.im, prec + 16));
    }
    const auto& f = as_float();
    return hypot(f.re, f.im);
}

BigFloat Scalar::norm(mpfr_prec_t prec) const {
    if (is_exact()) return BigFloat(norm_exact(), prec);
    const auto& f = as_float();
    return f.re * f.re + f.im * f.im;
}

mpq_class Scalar::norm_exact() const {
    const auto& q = as_exact();
    return q.re * q.re + q.im * q.im;
}

Scalar Scalar::conj() const {
    if (is_exact()) {
        const auto& q = as_exact();
        return exact(q.re, -q.im);
    }
    const auto& f = as_float();
    return from_float(f.re, -f.im);
}

Scalar Scalar::pow(long k) const {
    if (k < 0) return Scalar::one(mode(), std::max<mpfr_prec_t>(precision(), 2)) / pow(-k);
    Scalar result = Scalar::one(mode(), std::max<mpfr_prec_t>(precision(), 2));
    Scalar base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return result;
}

Scalar Scalar::to_float(mpfr_prec_t prec) const {
    if (is_exact()) {
        const auto& q = as_exact();
        return from_float(BigFloat(q.re, prec), BigFloat(q.im, prec));
    }
    const auto& f = as_float();
    BigFloat re(prec), im(prec);
    mpfr_set(re.raw(), f.re.raw(), MPFR_RNDN);
    mpfr_set(im.raw(), f.im.raw(), MPFR_RNDN);
    return from_float(re, im);
}

Scalar Scalar::to_mode(Mode m, mpfr_prec_t prec) const {
    if (m == Mode::floating) return to_float(prec);
    if (is_exact()) return *this;
    const auto& f = as_float();
    return exact(f.re.to_rational(), f.im.to_rational());
}

void check_same_mode(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) throw std::invalid_argument("mixed-mode arithmetic between exact and float scalars");
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same_mode(*this, o);
    if (is_exact()) {
        auto& q = std::get<GaussianRational>(v_);
        const auto& p = o.as_exact();
        q.re += p.re;
        q.im += p.im;
    } else {
        auto& f = std::get<ComplexFloat>(v_);
        const auto& g = o.as_float();
        f.re += g.re;
        f.im += g.im;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same_mode(*this, o);
    if (is_exact()) {
        auto& q = std::get<GaussianRational>(v_);
        const auto& p = o.as_exact();
        q.re -= p.re;
        q.im -= p.im;
    } else {
        auto& f = std::get<ComplexFloat>(v_);
        const auto& g = o.as_float();
        f.re -= g.re;
        f.im -= g.im;
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same_mode(*this, o);
    if (is_exact()) {
        auto& q = std::get<GaussianRational>(v_);
        const auto& p = o.as_exact();
        if (sgn(q.im) == 0 && sgn(p.im) == 0) {
            q.re *= p.re;
            return *this;
        }
        mpq_class re = q.re * p.re - q.im * p.im;
        mpq_class im = q.re * p.im + q.im * p.re;
        q.re = std::move(re);
        q.im = std::move(im);
    } else {
        auto& f = std::get<ComplexFloat>(v_);
        const auto& g = o.as_float();
        BigFloat re = f.re * g.re - f.im * g.im;
        BigFloat im = f.re * g.im + f.im * g.re;
        f.re = std::move(re);
        f.im = std::move(im);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    check_same_mode(*this, o);
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (is_exact()) {
        auto& q = std::get<GaussianRational>(v_);
        const auto& p = o.as_exact();
        if (sgn(p.im) == 0) {
            q.re /= p.re;
            q.im /= p.re;
            return *this;
        }
        mpq_class d = p.re * p.re + p.im * p.im;
        mpq_class re = (q.re * p.re + q.im * p.im) / d;
        mpq_class im = (q.im * p.re - q.re * p.im) / d;
        q.re = std::move(re);
        q.im = std::move(im);
    } else {
        auto& f = std::get<ComplexFloat>(v_);
        const auto& g = o.as_float();
        BigFloat d = g.re * g.re + g.im * g.im;
        BigFloat re = (f.re * g.re + f.im * g.im) / d;
        BigFloat im = (f.im * g.re - f.re * g.im) / d;
        f.re = std::move(re);
        f.im = std::move(im);
    }
    return *this;
}

Scalar Scalar::operator-() const {
    if (is_exact()) {
        const auto& q = as_exact();
        return exact(-q.re, -q.im);
    }
    const auto& f = as_float();
    return from_float(-f.re, -f.im);
}

bool Scalar::operator==(const Scalar& o) const {
    if (mode() != o.mode()) return false;
    if (is_exact()) {
        const auto& a = as_exact();
        const auto& b = o.as_exact();
        return a.re == b.re && a.im == b.im;
    }
    const auto& a = as_float();
    const auto& b = o.as_float();
    return a.re == b.re && a.im == b.im;
}

std::string Scalar::to_string() const {
    std::ostringstream os;
    if (is_exact()) {
        const auto& q = as_exact();
        os << q.re.get_str();
        if (sgn(q.im) != 0) os << (sgn(q.im) > 0 ? "+" : "") << q.im.get_str() << "i";
    } else {
        auto z = to_complex();
        os << z.real();
        if (z.imag() != 0) os << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
    }
    return os.str();
}

Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

Scalar scale(const Scalar& a, const mpz_class& k) {
    if (a.is_exact()) {
        const auto& q = a.as_exact();
        return Scalar::exact(q.re * k, q.im * k);
    }
    const auto& f = a.as_float();
    BigFloat re(f.re.precision()), im(f.im.precision());
    mpfr_mul_z(re.raw(), f.re.raw(), k.get_mpz_t(), MPFR_RNDN);
    mpfr_mul_z(im.raw(), f.im.raw(), k.get_mpz_t(), MPFR_RNDN);
    return Scalar::from_float(re, im);
}

}  // namespace ostrowski
