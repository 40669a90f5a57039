#include "ostrowski/lp.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ostrowski {

std::string to_string(StandardLp::Status s) {
    switch (s) {
        case StandardLp::Status::optimal: return "optimal";
        case StandardLp::Status::infeasible: return "infeasible";
        case StandardLp::Status::unbounded: return "unbounded";
        default: return "iteration_limit";
    }
}

StandardLp::StandardLp(int rows, std::vector<double> rhs) : m_(rows), rhs_(std::move(rhs)) {
    if (rows < 1 || static_cast<int>(rhs_.size()) != rows) throw std::invalid_argument("rhs size must equal row count");
    pi_.assign(static_cast<std::size_t>(m_), 0.0);
}

void StandardLp::add_column(const double* a, double cost) {
    cols_.insert(cols_.end(), a, a + m_);
    cost_.push_back(cost);
}

namespace {

using Vec = Eigen::VectorXd;

double max_step(const Vec& v, const Vec& dv) {
    double a = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (dv(i) < 0) a = std::min(a, -v(i) / dv(i));
    return a;
}

}  // namespace

StandardLp::Status StandardLp::solve(long max_iterations) {
    const auto m = static_cast<Eigen::Index>(m_);
    const auto n = static_cast<Eigen::Index>(cost_.size());
    iterations_ = 0;
    if (n == 0) return Status::infeasible;
    Eigen::Map<const Eigen::MatrixXd> A(cols_.data(), m, n);
    Eigen::Map<const Vec> b(rhs_.data(), m);
    Eigen::Map<const Vec> c(cost_.data(), n);

    Eigen::MatrixXd AAt = A * A.transpose();
    const double reg = 1e-14 * std::max(1.0, AAt.diagonal().maxCoeff());
    AAt.diagonal().array() += reg;
    Eigen::LDLT<Eigen::MatrixXd> f0(AAt);
    Vec x = A.transpose() * f0.solve(b);
    Vec pi = f0.solve(A * c);
    Vec s = c - A.transpose() * pi;
    x.array() += std::max(-1.5 * x.minCoeff(), 0.0);
    s.array() += std::max(-1.5 * s.minCoeff(), 0.0);
    {
        double xs = x.dot(s);
        x.array() += 0.5 * xs / std::max(s.sum(), 1e-300);
        s.array() += 0.5 * xs / std::max(x.sum(), 1e-300);
    }
    x = x.cwiseMax(1e-8);
    s = s.cwiseMax(1e-8);

    const double bn = 1.0 + b.norm(), cn = 1.0 + c.norm();
    Status status = Status::iteration_limit;
    double best_merit = INFINITY;
    long since_best = 0;
    Vec best_x = x, best_pi = pi;
    for (long it = 0; it < std::min(max_iterations, 300L); ++it) {
        iterations_ = it;
        Vec rb = A * x - b;
        Vec rc = A.transpose() * pi + s - c;
        const double mu = x.dot(s) / static_cast<double>(n);
        const double pobj = c.dot(x), dobj = b.dot(pi);
        const double merit = std::max({rb.norm() / bn, rc.norm() / cn, std::abs(pobj - dobj) / (1.0 + std::abs(pobj))});
        if (merit < best_merit) {
            best_merit = merit;
            best_x = x;
            best_pi = pi;
            since_best = 0;
        } else if (++since_best > 15 && best_merit < 1e-7) {
            break;
        }
        if (merit < tolerance) {
            status = Status::optimal;
            break;
        }
        // A diverging primal iterate certifies an unbounded objective, a
        // diverging dual one an empty feasible set.
        if (x.norm() > 1e30) {
            status = Status::unbounded;
            break;
        }
        if (!std::isfinite(mu) || pi.norm() > 1e30) {
            status = Status::infeasible;
            break;
        }
        Vec D = x.cwiseQuotient(s);
        // Normal equations A D A' through a QR factor of D^{1/2} A', which
        // stays usable much closer to the optimum than a Cholesky factor.
        Eigen::MatrixXd W(n + m, m);
        W.topRows(n) = D.cwiseSqrt().asDiagonal() * A.transpose();
        W.bottomRows(m) = std::sqrt(reg) * Eigen::MatrixXd::Identity(m, m);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(W);
        Eigen::MatrixXd R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
        auto normal_solve = [&](const Vec& r) -> Vec {
            Vec y = R.transpose().triangularView<Eigen::Lower>().solve(r);
            return R.triangularView<Eigen::Upper>().solve(y);
        };
        auto direction = [&](const Vec& rxs, Vec& dx, Vec& dpi, Vec& ds) {
            Vec t = rxs.cwiseQuotient(s) + D.cwiseProduct(rc);
            dpi = normal_solve(-rb - A * t);
            ds = -rc - A.transpose() * dpi;
            dx = rxs.cwiseQuotient(s) - D.cwiseProduct(ds);
        };
        Vec dx, dpi, ds;
        Vec rxs = -x.cwiseProduct(s);
        direction(rxs, dx, dpi, ds);
        double ap = max_step(x, dx), ad = max_step(s, ds);
        double mu_aff = (x + ap * dx).dot(s + ad * ds) / static_cast<double>(n);
        double sigma = std::pow(mu_aff / mu, 3);
        rxs = rxs - dx.cwiseProduct(ds);
        rxs.array() += sigma * mu;
        direction(rxs, dx, dpi, ds);
        ap = std::min(1.0, 0.995 * max_step(x, dx));
        ad = std::min(1.0, 0.995 * max_step(s, ds));
        x += ap * dx;
        pi += ad * dpi;
        s += ad * ds;
        iterations_ = it + 1;
    }
    // Round-off can keep the last digits from settling; the best iterate is
    // accepted when it is still accurate to a few parts in 1e7.
    if (best_merit < 1e-7) status = Status::optimal;
    x = best_x;
    pi = best_pi;
    x_.assign(x.data(), x.data() + n);
    pi_.assign(pi.data(), pi.data() + m);
    objective_ = c.dot(x);
    return status;
}

}  // namespace ostrowski
