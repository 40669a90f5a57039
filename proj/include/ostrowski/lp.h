#pragma once

#include <string>
#include <vector>

namespace ostrowski {

// Primal-dual interior point solver (Mehrotra predictor-corrector) for
//   min c'y  s.t.  A y = b, y >= 0.
// Columns may be appended after a solve; every solve starts cold.
class StandardLp {
public:
    enum class Status { optimal, infeasible, unbounded, iteration_limit };

    StandardLp(int rows, std::vector<double> rhs);

    int rows() const { return m_; }
    int columns() const { return static_cast<int>(cost_.size()); }
    void add_column(const double* a, double cost);

    Status solve(long max_iterations);

    // Dual variables pi of  max b'pi  s.t.  A'pi <= c.
    const std::vector<double>& multipliers() const { return pi_; }
    const std::vector<double>& primal() const { return x_; }
    double objective() const { return objective_; }
    long iterations() const { return iterations_; }

    double tolerance = 1e-9;

private:
    int m_;
    std::vector<double> rhs_;
    std::vector<double> cols_;  // column-major m x n
    std::vector<double> cost_;
    std::vector<double> x_;
    std::vector<double> pi_;
    double objective_ = 0;
    long iterations_ = 0;
};

std::string to_string(StandardLp::Status s);

}  // namespace ostrowski
