#include "mrcwpt/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mrcwpt/numerics.hpp"

namespace mrcwpt {

namespace {

using cplx = std::complex<double>;
using numerics::EpsilonAccelerator;
using numerics::adaptive_gk15;
using numerics::adaptive_gk15_complex;
using numerics::gauss_legendre;
using numerics::gauss_legendre_complex;
using numerics::special::gamma_two_thirds;
using numerics::special::upper_incomplete_gamma;

// frozen reference constants for the t -> 0 expansion of the exponent:
//   G(t) - rho^2/2 = (kCcos + j kCsin)/6 * t^{1/3} + O(t)
// kCsin = int_0^inf sin(w) w^{-4/3} dw,  kCcos = int_0^inf (cos(w)-1) w^{-4/3} dw.
constexpr double kCsin = 2.0311769091396006;   // = 3 Gamma(2/3) sin(pi/6)
constexpr double kCcos = -3.5181016057905014;  // = -3 Gamma(2/3) cos(pi/6)

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

// e^{jw} - 1 without cancellation for small w
cplx cexpm1j(double w) {
    const double s = std::sin(0.5 * w);
    return cplx(-2.0 * s * s, std::sin(w));
}

// G(t) - rho^2/2 via the incomplete-gamma closed form.  With b = rho^-6 and
// z = -j t b:
//   G(t) - rho^2/2 = (1/6) (J - 3 b^{-1/3}),
//   J = t^{1/3} e^{-j pi/6} Gamma(-1/3, z).
// For small |z| the two terms nearly cancel; the series route regroups them as
//   (1/2) b^{-1/3} (e^{j t b} - 1) - (1/2) t^{1/3} e^{-j pi/6} Gamma(2/3, z),
// which is exact and stable (the b^{-1/3} pieces cancel algebraically).
cplx inner_delta_gamma(double t, double rho) {
    const double b = std::pow(rho, -6.0);
    const double w0 = t * b;
    const cplx z(0.0, -w0);
    const cplx phase = std::polar(1.0, -M_PI / 6.0);
    const double t13 = std::cbrt(t);
    if (w0 <= 8.0) {
        const cplx g23 = upper_incomplete_gamma(2.0 / 3.0, z);
        return 0.5 * std::pow(b, -1.0 / 3.0) * cexpm1j(w0) - 0.5 * t13 * phase * g23;
    }
    const cplx gm13 = upper_incomplete_gamma(-1.0 / 3.0, z);
    const cplx J = t13 * phase * gm13;
    return (J - 3.0 * std::pow(b, -1.0 / 3.0)) / 6.0;
}

// Same quantity by direct oscillatory quadrature.  With w = t u (u the
// inverse sixth-power distance), G(t) - rho^2/2 = t^{1/3}/6 * dK(w0),
//   dK(w0) = int_{w0}^{inf} e^{jw} w^{-4/3} dw - 3 w0^{-1/3},
// evaluated as a singular head plus half-period panels with epsilon
// acceleration of the alternating panel sums.
cplx inner_delta_partition(double t, double rho, double rel_tol) {
    const double b = std::pow(rho, -6.0);
    const double w0 = t * b;
    const double t13 = std::cbrt(t);

    cplx base;
    double start;
    if (w0 < M_PI) {
        // (e^{jw} - 1) w^{-4/3} is integrable at 0; the -1 leg is analytic:
        // int_{w0}^{pi} w^{-4/3} dw = 3 (w0^{-1/3} - pi^{-1/3}).
        auto head = adaptive_gk15_complex(
            [](double w) { return cexpm1j(w) * std::pow(w, -4.0 / 3.0); }, w0, M_PI, 1e-13,
            rel_tol, 52);
        base = head.value - 3.0 * std::pow(M_PI, -1.0 / 3.0);
        start = M_PI;
    } else {
        const double w1 = (std::floor(w0 / M_PI) + 1.0) * M_PI;
        auto head = adaptive_gk15_complex(
            [](double w) {
                return cplx(std::cos(w), std::sin(w)) * std::pow(w, -4.0 / 3.0);
            },
            w0, w1, 1e-13, rel_tol, 52);
        base = head.value - 3.0 * std::pow(w0, -1.0 / 3.0);
        start = w1;
    }

    EpsilonAccelerator<cplx> acc;
    cplx partial = base;
    for (int k = 0; k < 4000; ++k) {
        const double a = start + k * M_PI;
        const cplx seg = gauss_legendre_complex(
            [](double w) {
                return cplx(std::cos(w), std::sin(w)) * std::pow(w, -4.0 / 3.0);
            },
            a, a + M_PI, 16);
        partial += seg;
        acc.add(partial);
        if (acc.count() >= 6 &&
            acc.last_delta() < std::max(1e-14, rel_tol * std::abs(acc.value())))
            break;
    }
    return t13 / 6.0 * acc.value();
}

cplx inner_delta(double t, double rho, const QuadratureConfig& cfg) {
    return cfg.inner_method == InnerMethod::IncompleteGamma
               ? inner_delta_gamma(t, rho)
               : inner_delta_partition(t, rho, cfg.inner_rel_tol);
}

}  // namespace

void OutageQuery::validate(bool strict_threshold) const {
    if (strict_threshold)
        require(threshold > 0.0, "OutageQuery: threshold must be positive");
    else
        require(threshold >= 0.0, "OutageQuery: threshold must be >= 0");
    require(typical_distance > 0.0, "OutageQuery: typical_distance must be positive");
    require(common_load > 0.0, "OutageQuery: common_load must be positive");
    require(std::abs(typical_alignment) <= 2.0,
            "OutageQuery: |typical_alignment| must be <= 2");
}

void QuadratureConfig::validate() const {
    require(outer_abs_tol > 0.0, "QuadratureConfig: outer_abs_tol must be positive");
    require(inner_rel_tol > 0.0, "QuadratureConfig: inner_rel_tol must be positive");
    require(min_intervals >= 1, "QuadratureConfig: min_intervals must be >= 1");
    require(max_intervals >= min_intervals,
            "QuadratureConfig: max_intervals must be >= min_intervals");
}

std::complex<double> characteristic_fn_S(double t, double density, double cell_radius,
                                         const QuadratureConfig& cfg) {
    require(std::isfinite(t), "characteristic_fn_S: t must be finite");
    require(density >= 0.0, "characteristic_fn_S: density must be >= 0");
    require(cell_radius > 0.0, "characteristic_fn_S: cell_radius must be positive");
    cfg.validate();
    if (t == 0.0 || density == 0.0) return {1.0, 0.0};
    if (t < 0.0) return std::conj(characteristic_fn_S(-t, density, cell_radius, cfg));
    return std::exp(2.0 * M_PI * density * inner_delta(t, cell_radius, cfg));
}

double distance_cdf(double x, double cell_radius) {
    require(cell_radius > 0.0, "distance_cdf: cell_radius must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= cell_radius) return 1.0;
    return (x / cell_radius) * (x / cell_radius);
}

double expected_abs_alignment(AlignmentRule rule) {
    auto f = [](double th) {
        const double s = std::sin(th);
        return std::sqrt(1.0 + 3.0 * s * s);
    };
    const double integral = (rule == AlignmentRule::AdaptiveKronrod)
                                ? adaptive_gk15(f, 0.0, M_PI / 2.0, 1e-13, 1e-13).value
                                : gauss_legendre(f, 0.0, M_PI / 2.0, 64);
    return 4.0 / (M_PI * M_PI) * integral;
}

double lambda_threshold(const SystemParams& p, const OutageQuery& q) {
    p.validate();
    q.validate(true);
    const double w2 = p.angular_frequency * p.angular_frequency;
    const double e2 = p.coil_constant * p.coil_constant;
    const double x = q.common_load;
    const double rx = p.rx_resistance + x;
    const double own = q.typical_alignment * q.typical_alignment /
                       std::pow(q.typical_distance, 6.0);
    const double margin = (p.transmit_power * x / rx - q.threshold) / q.threshold;
    return own * margin - p.tx_resistance * rx / (w2 * e2);
}

OutageResult outage_strong(const SystemParams& p, const OutageQuery& q,
                           const QuadratureConfig& cfg) {
    p.validate();
    q.validate(true);
    cfg.validate();

    const double lam = p.density;
    const double rho = p.cell_radius;
    const double L = lambda_threshold(p, q);

    OutageResult out;
    if (L < 0.0) {
        // threshold unreachable even with an empty cell
        out.probability = 1.0;
        out.feasible = false;
        return out;
    }
    if (lam == 0.0) return out;  // S == 0 almost surely

    const double b = std::pow(rho, -6.0);
    if (L <= b) {
        // every interferer inside the cell contributes at least rho^-6, so S
        // has no mass in (0, b]: P[S > L] = P[cell non-empty]
        out.probability = 1.0 - std::exp(-lam * M_PI * rho * rho);
        out.est_error = 1e-15;
        return out;
    }

    // Gil-Pelaez:  P[S > L] = 1/2 + (1/pi) int_0^inf Im[phi(t) e^{-jtL}]/t dt.
    // The integrand behaves like beta_s t^{-2/3} - L near 0 (E[S] is infinite,
    // so the singularity is integrable but not removable).
    auto integrand = [&](double t) {
        const cplx phi = std::exp(2.0 * M_PI * lam * inner_delta(t, rho, cfg));
        return std::imag(phi * std::polar(1.0, -t * L)) / t;
    };

    const double h = M_PI / L;  // half oscillation period of e^{-jtL}
    const double beta_s = 2.0 * M_PI * lam * kCsin / 6.0;
    const double beta_c = 2.0 * M_PI * lam * (-kCcos) / 6.0;
    double t0 = std::min(std::pow(1e-3 / beta_s, 3.0), 1e-3 * h);

    // analytic head: int_0^{t0} (e^{-a t^{1/3}} sin(b t^{1/3} - L t))/t dt
    //   ~= 3 b t0^{1/3} - (3/2) a b t0^{2/3} - L t0   (over pi)
    const double t013 = std::cbrt(t0);
    double total = (3.0 * beta_s * t013 - 1.5 * beta_c * beta_s * t013 * t013 - L * t0) / M_PI;
    double quad_err = std::pow(1e-3, 3.0) / M_PI;  // relative cubic remainder bound

    // [t0, h): integrate in s = t^{1/3} to tame the endpoint (dt = 3 s^2 ds),
    // with geometric splits so the adaptive rule sees bounded aspect ratios
    {
        auto g = [&](double s) { return 3.0 * s * s * integrand(s * s * s); };
        double a = t013;
        const double s1 = std::cbrt(h);
        while (a < s1) {
            const double bseg = std::min(a * 4.0, s1);
            auto r = adaptive_gk15(g, a, bseg, cfg.outer_abs_tol * 0.05, 1e-10, 48);
            total += r.value / M_PI;
            quad_err += r.error / M_PI;
            a = bseg;
        }
    }

    // [h, inf): half-period panels, epsilon-accelerated alternating sums
    EpsilonAccelerator<double> acc;
    double partial = 0.0;
    double tail_est = 1e300;
    int k = 1;
    for (; k < cfg.max_intervals; ++k) {
        auto r = adaptive_gk15(integrand, k * h, (k + 1) * h, cfg.outer_abs_tol * 0.02, 1e-10, 48);
        partial += r.value / M_PI;
        quad_err += r.error / M_PI;
        if (cfg.accelerate && !acc.degenerate()) {
            acc.add(partial);
            if (static_cast<int>(acc.count()) >= cfg.min_intervals) {
                tail_est = acc.last_delta();
                if (tail_est < cfg.outer_abs_tol) break;
            }
        } else {
            // raw alternating sums: last panel bounds the tail
            tail_est = std::abs(r.value) / M_PI;
            if (k >= cfg.min_intervals && tail_est < cfg.outer_abs_tol) break;
        }
    }
    const double tail = (cfg.accelerate && !acc.degenerate()) ? acc.value() : partial;
    total += tail;

    out.probability = 0.5 + total;
    out.est_error = quad_err + (tail_est > 1e299 ? 0.0 : tail_est);
    out.intervals_used = k;

    if (k >= cfg.max_intervals) {
        out.clamped = out.probability < 0.0 || out.probability > 1.0;
        out.probability = std::clamp(out.probability, 0.0, 1.0);
        throw QuadratureError("outage_strong: inversion integral did not converge within "
                              "max_intervals",
                              out);
    }
    if (out.probability < 0.0 || out.probability > 1.0) {
        // tolerate quadrature-level overshoot only
        if (out.probability < -1e-6 || out.probability > 1.0 + 1e-6)
            throw QuadratureError("outage_strong: result escaped [0,1] beyond tolerance", out);
        out.clamped = true;
        out.probability = std::clamp(out.probability, 0.0, 1.0);
    }
    return out;
}

double min_power_zero_outage(const SystemParams& p, const OutageQuery& q) {
    p.validate();
    q.validate(true);
    const double I02x = q.typical_alignment * q.typical_alignment * q.common_load;
    require(I02x > 0.0, "min_power_zero_outage: typical_alignment and load must be nonzero");
    const double w2 = p.angular_frequency * p.angular_frequency;
    const double e2 = p.coil_constant * p.coil_constant;
    const double rx = p.rx_resistance + q.common_load;
    return std::pow(p.cell_radius, 6.0) * q.threshold * p.tx_resistance * rx * rx /
           (w2 * e2 * I02x);
}

double outage_loose(const SystemParams& p, const OutageQuery& q) {
    p.validate();
    q.validate(true);
    if (q.typical_alignment == 0.0) return 1.0;  // no coupling anywhere in the cell
    const double pmin = min_power_zero_outage(p, q);
    if (p.transmit_power <= 0.0) return 1.0;
    return std::max(0.0, 1.0 - std::cbrt(p.transmit_power / pmin));
}

}  // namespace mrcwpt
