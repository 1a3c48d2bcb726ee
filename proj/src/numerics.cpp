#include "mrcwpt/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace mrcwpt::numerics {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK values, symmetric about 0).
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename T>
struct PanelResult {
    T kronrod;
    double error;
};

template <typename T>
PanelResult<T> gk15_panel(const std::function<T(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fc = f(c);
    T kron = kWgk[7] * fc;
    T gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        T lo = f(c - h * kXgk[i]);
        T hi = f(c + h * kXgk[i]);
        kron += kWgk[i] * (lo + hi);
        if (i % 2 == 1) gauss += kWg[i / 2] * (lo + hi);
    }
    kron *= h;
    gauss *= h;
    // QUADPACK-style error heuristic: sharpen the raw |K - G| difference
    const double diff = std::abs(kron - gauss);
    double err = diff;
    if (diff > 0.0) err = diff * std::min(1.0, std::pow(200.0 * diff / (std::abs(kron) + 1e-300), 1.5));
    return {kron, err};
}

template <typename T>
struct Segment {
    double a, b;
    T value;
    double error;
};

template <typename T, typename R>
R adaptive_impl(const std::function<T(double)>& f, double a, double b, double abs_tol,
                double rel_tol, int max_depth) {
    R out;
    if (a == b) return out;
    struct Item {
        double a, b;
        T value;
        double error;
        int depth;
    };
    std::vector<Item> stack;
    auto first = gk15_panel<T>(f, a, b);
    out.evaluations = 15;
    stack.push_back({a, b, first.kronrod, first.error, 0});

    T total{};
    double total_err = 0.0;
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        const double tol = std::max(abs_tol, rel_tol * std::abs(it.value));
        if (it.error <= tol || it.depth >= max_depth || (it.b - it.a) < 1e-15 * (std::abs(it.a) + std::abs(it.b))) {
            total += it.value;
            total_err += it.error;
            continue;
        }
        const double mid = 0.5 * (it.a + it.b);
        auto left = gk15_panel<T>(f, it.a, mid);
        auto right = gk15_panel<T>(f, mid, it.b);
        out.evaluations += 30;
        stack.push_back({it.a, mid, left.kronrod, left.error, it.depth + 1});
        stack.push_back({mid, it.b, right.kronrod, right.error, it.depth + 1});
    }
    out.value = total;
    out.error = total_err;
    return out;
}

}  // namespace

QuadResult adaptive_gk15(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, double rel_tol, int max_depth) {
    return adaptive_impl<double, QuadResult>(f, a, b, abs_tol, rel_tol, max_depth);
}

ComplexQuadResult adaptive_gk15_complex(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol, double rel_tol,
                                        int max_depth) {
    return adaptive_impl<std::complex<double>, ComplexQuadResult>(f, a, b, abs_tol, rel_tol,
                                                                  max_depth);
}

namespace {

// Legendre nodes on (-1,1) by Newton iteration; cached per order.
const std::vector<std::pair<double, double>>& legendre_rule(int n) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::pair<double, double>> rule(n);
    auto legendre_pair = [n](double x) {
        double p1 = 1.0, p2 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * k + 1.0) * x * p2 - k * p3) / (k + 1.0);
        }
        return std::pair<double, double>{p1, n * (x * p1 - p2) / (x * x - 1.0)};
    };
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre_pair(x);
            deriv = dp;
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        deriv = legendre_pair(x).second;
        rule[i] = {x, 2.0 / ((1.0 - x * x) * deriv * deriv)};
    }
    auto [pos, ok] = cache.emplace(n, std::move(rule));
    return pos->second;
}

template <typename T>
T gl_impl(const std::function<T(double)>& f, double a, double b, int n) {
    if (n < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
    const auto& rule = legendre_rule(n);
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T sum{};
    for (const auto& [x, w] : rule) sum += T(w) * f(c + h * x);
    return T(h) * sum;
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int n) {
    return gl_impl<double>(f, a, b, n);
}

std::complex<double> gauss_legendre_complex(const std::function<std::complex<double>(double)>& f,
                                            double a, double b, int n) {
    return gl_impl<std::complex<double>>(f, a, b, n);
}

namespace special {

namespace {

using cplx = std::complex<double>;

// Lower-gamma Kummer series: gamma(a,z) = z^a e^{-z} sum_k z^k / (a(a+1)...(a+k)).
// Converges well for |z| <= 8 with a > 0.
cplx lower_gamma_series(double a, cplx z) {
    cplx term = 1.0 / a;
    cplx sum = term;
    double ak = a;
    for (int k = 1; k < 400; ++k) {
        ak += 1.0;
        term *= z / ak;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::pow(z, a) * std::exp(-z) * sum;
}

// Legendre continued fraction for Gamma(a,z), modified Lentz evaluation.
// Accurate for |z| >= ~8 away from the negative real axis.
cplx upper_gamma_cf(double a, cplx z) {
    const double tiny = 1e-300;
    cplx b = z + 1.0 - a;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i <= 600; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cplx delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-z) * std::pow(z, a) * h;
}

}  // namespace

std::complex<double> upper_incomplete_gamma(double a, std::complex<double> z) {
    if (std::abs(z) < 1e-280) {
        if (a <= 0.0) throw std::invalid_argument("upper_incomplete_gamma: z ~ 0 with a <= 0");
        return cplx(std::tgamma(a), 0.0);
    }
    if (std::abs(z) > 8.0) return upper_gamma_cf(a, z);
    if (a > 0.0) {
        const double ga = (std::abs(a - 2.0 / 3.0) < 1e-12) ? gamma_two_thirds : std::tgamma(a);
        return ga - lower_gamma_series(a, z);
    }
    // recurrence Gamma(a,z) = (Gamma(a+1,z) - z^a e^{-z}) / a, one step for a = -1/3
    const cplx upper_next = upper_incomplete_gamma(a + 1.0, z);
    return (upper_next - std::pow(z, a) * std::exp(-z)) / a;
}

double elliptic_e(double m) {
    if (m < 0.0 || m > 1.0) throw std::invalid_argument("elliptic_e: need 0 <= m <= 1");
    if (m == 0.0) return M_PI / 2.0;
    if (m == 1.0) return 1.0;
    // AGM with the classical sum 2^{n-1} c_n^2 correction; c_{n+1} is updated
    // through c_n^2 / (4 a_{n+1}) (a^2 - b^2 = c^2 is an AGM invariant), which
    // avoids the cancellation of (a - b) / 2.
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double c = std::sqrt(m);
    double sum = 0.5 * c * c;
    double pow2 = 1.0;
    for (int i = 0; i < 64 && c > 1e-18; ++i) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        c = c * c / (4.0 * an);
        pow2 *= 2.0;
        sum += 0.5 * pow2 * c * c;
        a = an;
        b = bn;
    }
    return M_PI / (2.0 * a) * (1.0 - sum);
}

}  // namespace special

}  // namespace mrcwpt::numerics
