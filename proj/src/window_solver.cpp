#include "ostrowski/window_solver.h"

#include "ostrowski/kernels.h"
#include "ostrowski/lp.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ostrowski {

// ---------------------------------------------------------------- samples

long default_point_count(double length) { return std::max(2L, static_cast<long>(std::ceil(40.0 * length)) + 1); }

CompactSample CompactSample::segment(cplx a, cplx b, long n, const std::string& label) {
    if (n < 1) throw std::invalid_argument("segment needs at least one point");
    CompactSample k;
    k.label = label;
    for (long i = 0; i < n; ++i) {
        double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        k.points.push_back(a + (b - a) * t);
    }
    return k;
}

CompactSample CompactSample::arc(cplx center, double radius, double t0, double t1, long n, const std::string& label) {
    if (n < 1) throw std::invalid_argument("arc needs at least one point");
    CompactSample k;
    k.label = label;
    for (long i = 0; i < n; ++i) {
        double t = n == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
        k.points.push_back(center + std::polar(radius, t));
    }
    return k;
}

CompactSample CompactSample::from_points(std::vector<cplx> pts, const std::string& label) {
    CompactSample k;
    k.points = std::move(pts);
    k.label = label;
    return k;
}

void CompactSample::validate() const {
    if (points.empty()) throw std::invalid_argument("compact sample '" + label + "' is empty");
    for (auto z : points)
        if (!(std::abs(z) >= 1.0))
            throw std::invalid_argument("compact sample '" + label + "' has a point inside the unit disc");
}

CompactSample CompactSample::with_point(cplx z) const {
    CompactSample k = *this;
    if (std::find(k.points.begin(), k.points.end(), z) == k.points.end()) k.points.push_back(z);
    return k;
}

std::vector<cplx> circle_grid(double r, long n) {
    std::vector<cplx> out;
    for (long i = 0; i < n; ++i)
        out.push_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
    return out;
}

void WindowSpec::validate() const {
    if (sigma < 0) throw std::invalid_argument("window valuation must be non-negative");
    if (sigma > tau) throw std::invalid_argument("window needs sigma <= tau");
}

std::vector<Scalar> target_values(const ApproxRequest& req, mpfr_prec_t prec) {
    std::vector<Scalar> out;
    out.reserve(req.K.points.size());
    if (req.target) {
        SparsePolynomial h = req.target->to_mode(Mode::floating, prec);
        for (auto z : req.K.points) out.push_back(eval(h, Scalar::from_complex(z, prec)));
        return out;
    }
    if (req.samples.size() != req.K.points.size())
        throw std::invalid_argument("sampled target needs one value per K point");
    for (const auto& s : req.samples) out.push_back(s.to_mode(Mode::floating, prec));
    return out;
}

// ------------------------------------------------------- constraint kernel

namespace {

void assemble_row(const ConstraintBlock& blk, long i, long d, double angle, bool real, double* g, double* b) {
    const cplx* a = &(*blk.basis)[static_cast<std::size_t>(i * d)];
    const double c = std::cos(angle), s = std::sin(angle), w = blk.weight;
    for (long k = 0; k < d; ++k) {
        g[k] = w * (c * a[k].real() + s * a[k].imag());
        if (!real) g[d + k] = w * (s * a[k].real() - c * a[k].imag());
    }
    cplx h = blk.target ? (*blk.target)[static_cast<std::size_t>(i)] : cplx(0.0, 0.0);
    *b = w * (c * h.real() + s * h.imag());
}

AssembledLp assemble_impl(const std::vector<ConstraintBlock>& blocks, long d, const std::vector<double>& angles,
                          bool real, bool parallel) {
    AssembledLp out;
    out.vars = real ? d : 2 * d;
    std::vector<long> offsets;
    long npts = 0;
    for (const auto& blk : blocks) {
        offsets.push_back(npts);
        npts += static_cast<long>(blk.basis->size()) / d;
    }
    const long na = static_cast<long>(angles.size());
    out.rows = npts * na;
    out.g.assign(static_cast<std::size_t>(out.rows * out.vars), 0.0);
    out.b.assign(static_cast<std::size_t>(out.rows), 0.0);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& blk = blocks[bi];
        const long n = static_cast<long>(blk.basis->size()) / d;
        auto body = [&](long i) {
            for (long t = 0; t < na; ++t) {
                long row = (offsets[bi] + i) * na + t;
                assemble_row(blk, i, d, angles[static_cast<std::size_t>(t)], real,
                             &out.g[static_cast<std::size_t>(row * out.vars)], &out.b[static_cast<std::size_t>(row)]);
            }
        };
        if (parallel) {
#pragma omp parallel for schedule(static) num_threads(kernels::thread_cap())
            for (long i = 0; i < n; ++i) body(i);
        } else {
            for (long i = 0; i < n; ++i) body(i);
        }
    }
    return out;
}

}  // namespace

AssembledLp assemble_constraints_serial(const std::vector<ConstraintBlock>& blocks, long d,
                                        const std::vector<double>& angles, bool real_coefficients) {
    return assemble_impl(blocks, d, angles, real_coefficients, false);
}

AssembledLp assemble_constraints_parallel(const std::vector<ConstraintBlock>& blocks, long d,
                                          const std::vector<double>& angles, bool real_coefficients) {
    return assemble_impl(blocks, d, angles, real_coefficients, true);
}

// ----------------------------------------------------------- Arnoldi basis

namespace {

// Polynomials q_k orthonormal on the K sample, multiplied by (z/R)^sigma.
struct ArnoldiBasis {
    long sigma = 0;
    double R = 1;
    long d = 1;
    Eigen::MatrixXcd H;  // d x (d-1), upper Hessenberg

    std::vector<cplx> eval(const std::vector<cplx>& pts) const {
        std::vector<cplx> W(pts.size() * static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            cplx z = pts[i];
            cplx* w = &W[i * static_cast<std::size_t>(d)];
            w[0] = sigma == 0 ? cplx(1.0, 0.0) : std::pow(z / R, static_cast<int>(sigma));
            for (long k = 0; k + 1 < d; ++k) {
                cplx v = z * w[k];
                for (long j = 0; j <= k; ++j) v -= H(j, k) * w[j];
                w[k + 1] = v / H(k + 1, k);
            }
        }
        return W;
    }
};

ArnoldiBasis build_arnoldi(const std::vector<cplx>& K, long sigma, long d) {
    ArnoldiBasis b;
    b.sigma = sigma;
    for (auto z : K) b.R = std::max(b.R, std::abs(z));
    if (b.R == 0) b.R = 1;
    const auto m = static_cast<Eigen::Index>(K.size());
    Eigen::VectorXcd Z(m);
    for (Eigen::Index i = 0; i < m; ++i) Z(i) = K[static_cast<std::size_t>(i)];
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Zero(m, d);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, std::max<long>(d - 1, 0));
    Q.col(0).setOnes();
    const double sm = std::sqrt(static_cast<double>(m));
    long used = d;
    for (long k = 0; k + 1 < d; ++k) {
        Eigen::VectorXcd q = Z.cwiseProduct(Q.col(k));
        for (int pass = 0; pass < 2; ++pass) {
            for (long j = 0; j <= k; ++j) {
                cplx h = Q.col(j).dot(q) / static_cast<double>(m);
                H(j, k) += h;
                q -= h * Q.col(j);
            }
        }
        double nrm = q.norm() / sm;
        if (nrm < 1e-13 * b.R) {
            used = k + 1;
            break;
        }
        H(k + 1, k) = nrm;
        Q.col(k + 1) = q / nrm;
    }
    b.d = used;
    b.H = H.topLeftCorner(used, std::max<long>(used - 1, 0));
    return b;
}

struct Minimax {
    std::vector<cplx> coeffs;  // in the scaled basis
    double level = 0;
    long iterations = 0;
    std::string method;
    std::string status;
};

// Replaces the stacked columns [AK; lambda AD] by an orthonormal set and
// returns the triangular factor, so coefficients map back through R^{-1}.
// With real coefficients the real and imaginary parts are stacked so that R
// stays real.
Eigen::MatrixXcd orthonormalize(std::vector<cplx>& AK, std::vector<cplx>& AD, long d, double lambda, bool real) {
    const long nk = static_cast<long>(AK.size()) / d, nd = static_cast<long>(AD.size()) / d;
    Eigen::MatrixXcd R;
    if (real) {
        Eigen::MatrixXd M(2 * (nk + nd), d);
        for (long i = 0; i < nk + nd; ++i) {
            const cplx* a = i < nk ? &AK[static_cast<std::size_t>(i * d)] : &AD[static_cast<std::size_t>((i - nk) * d)];
            double w = i < nk ? 1.0 : lambda;
            for (long k = 0; k < d; ++k) {
                M(2 * i, k) = w * a[k].real();
                M(2 * i + 1, k) = w * a[k].imag();
            }
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
        R = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>().toDenseMatrix().cast<cplx>();
    } else {
        Eigen::MatrixXcd M(nk + nd, d);
        for (long i = 0; i < nk + nd; ++i) {
            const cplx* a = i < nk ? &AK[static_cast<std::size_t>(i * d)] : &AD[static_cast<std::size_t>((i - nk) * d)];
            double w = i < nk ? 1.0 : lambda;
            for (long k = 0; k < d; ++k) M(i, k) = w * a[k];
        }
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(M);
        R = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>().toDenseMatrix();
    }
    for (long k = 0; k < d; ++k)
        if (R(k, k) == cplx(0, 0)) R(k, k) = 1;
    auto apply = [&](std::vector<cplx>& A) {
        const long n = static_cast<long>(A.size()) / d;
        Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> V(A.data(), n, d);
        Eigen::MatrixXcd T = R.transpose().triangularView<Eigen::Lower>().solve(V.transpose());
        V = T.transpose();
    };
    apply(AK);
    apply(AD);
    return R;
}

// Residual moduli w*|A c - h| for each point of each block.
std::vector<std::pair<double, double>> residuals(const std::vector<ConstraintBlock>& blocks, long d,
                                                 const std::vector<cplx>& c) {
    std::vector<std::pair<double, double>> out;
    for (const auto& blk : blocks) {
        const long n = static_cast<long>(blk.basis->size()) / d;
        for (long i = 0; i < n; ++i) {
            cplx v(0, 0);
            const cplx* a = &(*blk.basis)[static_cast<std::size_t>(i * d)];
            for (long k = 0; k < d; ++k) v += a[k] * c[static_cast<std::size_t>(k)];
            if (blk.target) v -= (*blk.target)[static_cast<std::size_t>(i)];
            v *= blk.weight;
            out.emplace_back(std::abs(v), std::arg(v));
        }
    }
    return out;
}

Minimax lp_minimax(const std::vector<ConstraintBlock>& blocks, long d, const SolverOptions& opt) {
    const bool real = opt.real_coefficients;
    std::vector<double> angles;
    if (real) {
        angles = {0.0, std::numbers::pi};
    } else {
        int n = std::max(4, opt.polygon_order);
        for (int t = 0; t < n; ++t) angles.push_back(2.0 * std::numbers::pi * t / n);
    }
    AssembledLp A = assemble_constraints_parallel(blocks, d, angles, real);
    const long vars = A.vars;
    std::vector<double> rhs(static_cast<std::size_t>(vars) + 1, 0.0);
    rhs.back() = 1.0;
    StandardLp lp(static_cast<int>(vars + 1), rhs);
    std::vector<double> col(static_cast<std::size_t>(vars) + 1);
    auto push = [&](const double* g, double b) {
        std::copy(g, g + vars, col.begin());
        col.back() = 1.0;
        lp.add_column(col.data(), b);
    };
    for (long r = 0; r < A.rows; ++r) push(&A.g[static_cast<std::size_t>(r * vars)], A.b[static_cast<std::size_t>(r)]);

    Minimax res;
    res.method = "lp";
    auto extract = [&]() {
        const auto& pi = lp.multipliers();
        std::vector<cplx> c(static_cast<std::size_t>(d));
        for (long k = 0; k < d; ++k)
            c[static_cast<std::size_t>(k)] = cplx(pi[static_cast<std::size_t>(k)],
                                                  real ? 0.0 : pi[static_cast<std::size_t>(d + k)]);
        return std::make_pair(c, -pi[static_cast<std::size_t>(vars)]);
    };
    int round = 0;
    for (;; ++round) {
        auto st = lp.solve(opt.lp_max_iterations);
        res.iterations = lp.iterations();
        if (st != StandardLp::Status::optimal) {
            res.status = to_string(st);
            return res;
        }
        auto [c, t] = extract();
        res.coeffs = c;
        res.level = t;
        if (real || round >= opt.cutting_rounds) break;
        auto r = residuals(blocks, d, c);
        double worst = 0;
        for (auto& [m, a] : r) worst = std::max(worst, m);
        if (worst <= t * (1 + opt.cut_tolerance) + 1e-300) break;
        // Add the supporting half-plane at each violated residual direction.
        long idx = 0;
        std::vector<double> g(static_cast<std::size_t>(vars));
        for (const auto& blk : blocks) {
            const long n = static_cast<long>(blk.basis->size()) / d;
            for (long i = 0; i < n; ++i, ++idx) {
                auto [m, a] = r[static_cast<std::size_t>(idx)];
                if (m > t * (1 + opt.cut_tolerance)) {
                    double b;
                    assemble_row(blk, i, d, a, real, g.data(), &b);
                    push(g.data(), b);
                }
            }
        }
    }
    auto r = residuals(blocks, d, res.coeffs);
    double worst = 0;
    for (auto& [m, a] : r) worst = std::max(worst, m);
    res.status = worst <= res.level * (1 + 1e-4) + 1e-300 ? "optimal" : "cut_limit";
    return res;
}

Minimax irls_minimax(const std::vector<ConstraintBlock>& blocks, long d, const SolverOptions& opt) {
    const bool real = opt.real_coefficients;
    const long vars = real ? d : 2 * d;
    long npts = 0;
    for (const auto& blk : blocks) npts += static_cast<long>(blk.basis->size()) / d;
    Eigen::MatrixXd M(2 * npts, vars);
    Eigen::VectorXd rhs(2 * npts);
    long row = 0;
    for (const auto& blk : blocks) {
        const long n = static_cast<long>(blk.basis->size()) / d;
        for (long i = 0; i < n; ++i, ++row) {
            const cplx* a = &(*blk.basis)[static_cast<std::size_t>(i * d)];
            cplx h = blk.target ? (*blk.target)[static_cast<std::size_t>(i)] : cplx(0, 0);
            for (long k = 0; k < d; ++k) {
                M(2 * row, k) = blk.weight * a[k].real();
                M(2 * row + 1, k) = blk.weight * a[k].imag();
                if (!real) {
                    M(2 * row, d + k) = -blk.weight * a[k].imag();
                    M(2 * row + 1, d + k) = blk.weight * a[k].real();
                }
            }
            rhs(2 * row) = blk.weight * h.real();
            rhs(2 * row + 1) = blk.weight * h.imag();
        }
    }
    Eigen::VectorXd v = Eigen::VectorXd::Constant(npts, 1.0 / static_cast<double>(npts));
    Minimax best;
    best.method = "irls";
    best.level = INFINITY;
    best.status = "irls";
    bool deficient = false;
    for (int it = 0; it < opt.irls_iterations; ++it) {
        Eigen::MatrixXd Mw = M;
        Eigen::VectorXd bw = rhs;
        for (long i = 0; i < npts; ++i) {
            double s = std::sqrt(v(i));
            Mw.row(2 * i) *= s;
            Mw.row(2 * i + 1) *= s;
            bw(2 * i) *= s;
            bw(2 * i + 1) *= s;
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Mw);
        if (cod.rank() < vars) deficient = true;
        Eigen::VectorXd x = cod.solve(bw);
        Eigen::VectorXd r = M * x - rhs;
        Eigen::VectorXd e(npts);
        for (long i = 0; i < npts; ++i) e(i) = std::hypot(r(2 * i), r(2 * i + 1));
        double worst = e.maxCoeff();
        if (worst < best.level) {
            best.level = worst;
            best.coeffs.assign(static_cast<std::size_t>(d), cplx(0, 0));
            for (long k = 0; k < d; ++k) best.coeffs[static_cast<std::size_t>(k)] = cplx(x(k), real ? 0.0 : x(d + k));
        }
        best.iterations = it + 1;
        Eigen::VectorXd nv = v.cwiseProduct(e);
        double s = nv.sum();
        if (!(s > 0) || !std::isfinite(s)) break;
        v = nv / s;
    }
    if (deficient) best.status = "ill-conditioned";
    return best;
}

// Monomial coefficients of sum_k c_k (z/R)^sigma q_k(z), computed at the
// given precision from the exact double inputs.
SparsePolynomial to_monomials(const ArnoldiBasis& b, const std::vector<cplx>& c, mpfr_prec_t prec, bool real) {
    const long d = b.d;
    auto S = [prec](cplx z) { return Scalar::from_complex(z, prec); };
    std::vector<std::vector<Scalar>> q;
    q.push_back({Scalar::one(Mode::floating, prec)});
    for (long k = 0; k + 1 < d; ++k) {
        std::vector<Scalar> next(static_cast<std::size_t>(k) + 2, Scalar::zero(Mode::floating, prec));
        for (std::size_t i = 0; i < q[static_cast<std::size_t>(k)].size(); ++i)
            next[i + 1] += q[static_cast<std::size_t>(k)][i];
        for (long j = 0; j <= k; ++j) {
            Scalar h = S(b.H(j, k));
            if (h.is_zero()) continue;
            for (std::size_t i = 0; i < q[static_cast<std::size_t>(j)].size(); ++i)
                next[i] -= h * q[static_cast<std::size_t>(j)][i];
        }
        Scalar sub = S(b.H(k + 1, k));
        for (auto& x : next) x /= sub;
        q.push_back(std::move(next));
    }
    std::vector<Scalar> mono(static_cast<std::size_t>(d), Scalar::zero(Mode::floating, prec));
    for (long k = 0; k < d; ++k) {
        Scalar ck = S(c[static_cast<std::size_t>(k)]);
        if (ck.is_zero()) continue;
        for (std::size_t i = 0; i < q[static_cast<std::size_t>(k)].size(); ++i) mono[i] += ck * q[static_cast<std::size_t>(k)][i];
    }
    Scalar rs = Scalar::from_float(BigFloat(b.R, prec), BigFloat(prec)).pow(-b.sigma);
    std::vector<SparsePolynomial::Term> terms;
    for (long i = 0; i < d; ++i) {
        Scalar v = mono[static_cast<std::size_t>(i)] * rs;
        if (real) v = Scalar::from_float(v.as_float().re, BigFloat(prec));
        terms.emplace_back(b.sigma + i, v);
    }
    return SparsePolynomial(std::move(terms));
}

}  // namespace

ApproxResult solve_window(const ApproxRequest& req, const SolverOptions& opt) {
    req.window.validate();
    if (!(req.r > 0 && req.r < 1)) throw std::invalid_argument("disc radius r must lie in (0, 1)");
    if (req.disc_grid.empty()) throw std::invalid_argument("disc grid is empty");
    for (auto z : req.disc_grid)
        if (std::abs(z) > req.r * (1 + 1e-12)) throw std::invalid_argument("disc grid point outside |z| <= r");
    if (!opt.real_coefficients) req.K.validate();
    if (req.K.points.empty()) throw std::invalid_argument("K sample is empty");
    if (!(req.lambda > 0)) throw std::invalid_argument("balance lambda must be positive");
    return solve_window_grids(req.K.points, target_values(req, opt.precision), req.disc_grid, req.window,
                              req.lambda, opt);
}

ApproxResult solve_window_grids(const std::vector<cplx>& K, const std::vector<Scalar>& hK,
                                const std::vector<cplx>& disc, const WindowSpec& window, double lambda,
                                const SolverOptions& opt) {
    window.validate();
    if (K.empty()) throw std::invalid_argument("K sample is empty");
    if (hK.size() != K.size()) throw std::invalid_argument("target needs one value per K point");
    const long width = window.tau - window.sigma + 1;
    if (width > opt.max_coefficients)
        throw std::length_error("window has " + std::to_string(width) + " coefficients, cap is " +
                                std::to_string(opt.max_coefficients));

    const mpfr_prec_t prec = opt.precision;
    ApproxResult res;
    res.window = window;

    bool zero_target = std::all_of(hK.begin(), hK.end(), [](const Scalar& s) { return s.is_zero(); });
    if (zero_target) {
        res.method = "trivial";
        res.status = "optimal";
        return res;
    }

    long distinct = 0;
    {
        std::vector<cplx> u = K;
        std::sort(u.begin(), u.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
        distinct = static_cast<long>(std::unique(u.begin(), u.end()) - u.begin());
    }
    long d = std::min({width, opt.active_limit, distinct});
    ArnoldiBasis basis = build_arnoldi(K, window.sigma, d);
    d = basis.d;
    res.active_terms = d;

    std::vector<cplx> AK = basis.eval(K);
    std::vector<cplx> AD = basis.eval(disc);
    Eigen::MatrixXcd Rf = orthonormalize(AK, AD, d, lambda, opt.real_coefficients);
    std::vector<cplx> hd;
    for (const auto& s : hK) hd.push_back(s.to_complex());

    std::vector<ConstraintBlock> blocks = {{&AK, &hd, 1.0}};
    if (!disc.empty()) blocks.push_back({&AD, nullptr, lambda});
    const long vars = opt.real_coefficients ? d : 2 * d;
    const long rows = static_cast<long>(K.size() + disc.size()) *
                      (opt.real_coefficients ? 2 : std::max(4, opt.polygon_order));
    Minimax mm;
    if (!opt.force_irls && rows * (vars + 1) <= opt.lp_budget) {
        mm = lp_minimax(blocks, d, opt);
        if (mm.coeffs.empty()) {
            std::string why = mm.status;
            mm = irls_minimax(blocks, d, opt);
            mm.status = "irls_after_lp_" + why;
        }
    } else {
        mm = irls_minimax(blocks, d, opt);
    }
    {
        Eigen::Map<Eigen::VectorXcd> x(mm.coeffs.data(), d);
        Eigen::VectorXcd c = Rf.triangularView<Eigen::Upper>().solve(x);
        x = c;
    }

    SparsePolynomial P = to_monomials(basis, mm.coeffs, prec + 64, opt.real_coefficients);
    P = P.to_mode(Mode::floating, prec);
    if (opt.mode == Mode::exact) P = P.to_mode(Mode::exact);
    res.P = P;
    res.iterations = mm.iterations;
    res.method = mm.method;
    res.status = mm.status;

    SparsePolynomial Pf = P.to_mode(Mode::floating, prec);
    std::vector<Scalar> kp, dp;
    for (auto z : K) kp.push_back(Scalar::from_complex(z, prec));
    for (auto z : disc) dp.push_back(Scalar::from_complex(z, prec));
    res.err_K = kernels::max_deviation(Pf, kp, hK, prec).to_double();
    res.err_disc = disc.empty() ? 0.0 : kernels::max_deviation(Pf, dp, {}, prec).to_double();
    return res;
}

ThetaFit theta_fit(const std::vector<ApproxResult>& results) {
    if (results.size() < 3) throw std::invalid_argument("theta fit needs at least 3 results");
    std::vector<double> x, y;
    ThetaFit fit;
    for (const auto& r : results) {
        double e = std::max(r.err_K, r.err_disc);
        if (e == 0) {
            fit.exact = true;
            fit.theta = 0;
            fit.warning = "exact";
            return fit;
        }
        x.push_back(static_cast<double>(r.window.tau));
        y.push_back(std::log(e));
    }
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("theta fit needs distinct tau values");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    double slope = sxy / sxx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (my + slope * (x[i] - mx));
        ss += e * e;
    }
    fit.theta = std::exp(slope);
    fit.residual = std::sqrt(ss / n);
    if (slope >= -1e-12) {
        fit.theta = std::max(fit.theta, 1.0);
        fit.warning = "no decay";
    }
    return fit;
}

namespace {

json points_json(const std::vector<cplx>& pts) {
    json a = json::array();
    for (auto z : pts) a.push_back({z.real(), z.imag()});
    return a;
}

}  // namespace

json request_to_json(const ApproxRequest& req) {
    json j;
    j["window"] = {{"sigma", req.window.sigma}, {"tau", req.window.tau}};
    j["r"] = req.r;
    j["lambda"] = req.lambda;
    j["K"] = {{"label", req.K.label}, {"points", points_json(req.K.points)},
              {"connected_complement", req.K.connected_complement}};
    j["disc_grid"] = points_json(req.disc_grid);
    if (req.target) {
        j["target"] = polynomial_to_json(*req.target);
        j["target_mode"] = mode_name(req.target->mode().value_or(Mode::exact));
    } else {
        json s = json::array();
        for (const auto& v : req.samples) s.push_back(scalar_to_json(v));
        j["samples"] = s;
    }
    return j;
}

json result_to_json(const ApproxResult& res, Mode m, mpfr_prec_t prec) {
    json j;
    j["window"] = {{"sigma", res.window.sigma}, {"tau", res.window.tau}};
    j["err_K"] = res.err_K;
    j["err_disc"] = res.err_disc;
    j["iterations"] = res.iterations;
    j["active_terms"] = res.active_terms;
    j["method"] = res.method;
    j["status"] = res.status;
    j["mode"] = mode_name(m);
    j["precision"] = m == Mode::exact ? 0 : static_cast<long>(prec);
    j["P"] = polynomial_to_json(res.P);
    return j;
}

}  // namespace ostrowski
