#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <string>
#include <variant>

namespace ostrowski {

enum class Mode { exact, floating };

constexpr mpfr_prec_t default_precision = 256;

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

// RAII owner of an mpfr_t.  Binary operations round to the larger of the
// two operand precisions.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = default_precision);
    BigFloat(double v, mpfr_prec_t prec);
    BigFloat(long v, mpfr_prec_t prec);
    BigFloat(const mpz_class& v, mpfr_prec_t prec);
    BigFloat(const mpq_class& v, mpfr_prec_t prec);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exact binary value as a rational; throws on inf/nan.
    mpq_class to_rational() const;
    // Hex-float text ("0x1.8p+1"), exact at the stored precision.
    std::string to_hex() const;
    static BigFloat from_hex(const std::string& s, mpfr_prec_t prec);

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    BigFloat operator-() const;

private:
    void swap(BigFloat& o) noexcept;
    mpfr_t v_;
    bool owned_ = false;
};

BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);
bool operator<(const BigFloat& a, const BigFloat& b);
bool operator<=(const BigFloat& a, const BigFloat& b);
bool operator==(const BigFloat& a, const BigFloat& b);

BigFloat sqrt(const BigFloat& a);
BigFloat hypot(const BigFloat& a, const BigFloat& b);
BigFloat log(const BigFloat& a);
BigFloat exp(const BigFloat& a);
BigFloat abs(const BigFloat& a);
BigFloat max(const BigFloat& a, const BigFloat& b);

struct GaussianRational {
    mpq_class re;
    mpq_class im;
};

struct ComplexFloat {
    BigFloat re;
    BigFloat im;
};

// A complex number that is either an exact Gaussian rational or a
// fixed-precision float pair.  Arithmetic between the two modes throws.
class Scalar {
public:
    Scalar();  // exact zero

    static Scalar exact(const mpq_class& re, const mpq_class& im = 0);
    static Scalar from_float(const BigFloat& re, const BigFloat& im);
    static Scalar from_complex(std::complex<double> z, mpfr_prec_t prec);
    static Scalar zero(Mode m, mpfr_prec_t prec = default_precision);
    static Scalar one(Mode m, mpfr_prec_t prec = default_precision);
    // Converts a double (exactly) into the requested mode.
    static Scalar from_double(std::complex<double> z, Mode m, mpfr_prec_t prec = default_precision);

    Mode mode() const;
    bool is_exact() const { return mode() == Mode::exact; }
    // Zero for exact scalars.
    mpfr_prec_t precision() const;
    bool is_zero() const;
    bool is_real() const;

    const GaussianRational& as_exact() const;
    const ComplexFloat& as_float() const;

    std::complex<double> to_complex() const;
    double abs_double() const;
    // |x| at the given precision (exact scalars are rounded once).
    BigFloat abs(mpfr_prec_t prec) const;
    BigFloat norm(mpfr_prec_t prec) const;
    // Exact |x|^2 for exact scalars.
    mpq_class norm_exact() const;

    Scalar conj() const;
    Scalar pow(long k) const;
    Scalar to_float(mpfr_prec_t prec) const;
    // Explicit cross-mode conversion; exact values are rounded, floats are
    // read back as their exact binary rationals.
    Scalar to_mode(Mode m, mpfr_prec_t prec = default_precision) const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;

    // Exact scalars compare by value; floats compare bitwise.
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::variant<GaussianRational, ComplexFloat> v_;
};

Scalar operator+(Scalar a, const Scalar& b);
Scalar operator-(Scalar a, const Scalar& b);
Scalar operator*(Scalar a, const Scalar& b);
Scalar operator/(Scalar a, const Scalar& b);

// Multiplies by an integer without mode checks.
Scalar scale(const Scalar& a, const mpz_class& k);

void check_same_mode(const Scalar& a, const Scalar& b);

}  // namespace ostrowski
