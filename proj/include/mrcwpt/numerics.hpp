#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace mrcwpt::numerics {

/// Result of an adaptive quadrature pass.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // accumulated Kronrod error estimate
    int evaluations = 0;
};

/// Adaptive Gauss-Kronrod 15(7) on [a, b].
/// Bisects until the local error estimate meets abs_tol/rel_tol or max_depth
/// is reached; the returned error is the sum of accepted-panel estimates.
QuadResult adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, double rel_tol, int max_depth = 48);

/// Complex-valued variant (real and imaginary parts share the panel
/// subdivision). Named distinctly: a real-valued integrand would otherwise
/// convert to either signature and make calls ambiguous.
struct ComplexQuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    int evaluations = 0;
};
ComplexQuadResult adaptive_gk15_complex(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol, double rel_tol,
                                        int max_depth = 48);

/// Fixed n-point Gauss-Legendre rule on [a, b]. Nodes/weights are computed
/// once per order by Newton iteration and cached.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int n);
std::complex<double> gauss_legendre_complex(const std::function<std::complex<double>(double)>& f,
                                            double a, double b, int n);

/// Wynn epsilon-algorithm accelerator for a sequence of partial sums.
/// Feed partial sums in order; value() returns the highest-order even-column
/// extrapolation reached so far (or the raw last sum while the table is short).
template <typename T>
class EpsilonAccelerator {
public:
    void add(T partial_sum) {
        // epsilon table stored by anti-diagonals: table_[k] is eps_k of the
        // most recent entries; standard moving-lozenge update.
        std::vector<T> diag;
        diag.reserve(table_.size() + 1);
        diag.push_back(partial_sum);
        for (std::size_t k = 0; k < table_.size(); ++k) {
            T denom = diag[k] - table_[k];
            T next;
            if (std::abs(denom) < 1e-300) {
                degenerate_ = true;
                break;
            }
            if (k == 0)
                next = T(1.0) / denom;
            else
                next = table_[k - 1] + T(1.0) / denom;
            diag.push_back(next);
        }
        table_ = std::move(diag);
        // even columns carry the extrapolations
        std::size_t best = (table_.size() % 2 == 0) ? table_.size() - 2 : table_.size() - 1;
        prev_value_ = value_;
        value_ = table_.empty() ? partial_sum : table_[best];
        ++count_;
    }

    T value() const { return value_; }
    /// |value - previous value|: a practical convergence indicator.
    double last_delta() const { return count_ < 2 ? 1e300 : std::abs(value_ - prev_value_); }
    std::size_t count() const { return count_; }
    bool degenerate() const { return degenerate_; }

private:
    std::vector<T> table_;
    T value_{};
    T prev_value_{};
    std::size_t count_ = 0;
    bool degenerate_ = false;
};

namespace special {

inline constexpr double gamma_two_thirds = 1.3541179394264004;  // Gamma(2/3)

/// Upper incomplete gamma Gamma(a, z) for complex z off the negative real
/// axis. Small |z| uses the lower-gamma Kummer series (a = 2/3 with the
/// recurrence for a = -1/3); large |z| uses the Legendre continued fraction.
/// Only a in {2/3, -1/3} is required here and tested.
std::complex<double> upper_incomplete_gamma(double a, std::complex<double> z);

/// Complete elliptic integral of the second kind E(m), 0 <= m < 1 (AGM).
double elliptic_e(double m);

}  // namespace special

}  // namespace mrcwpt::numerics
