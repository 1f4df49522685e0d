#include "quadcert/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "quadcert/errors.hpp"

namespace quadcert {

namespace {

// Kronrod abscissae on [-1, 1] (nonnegative half); odd indices are the
// 7-point Gauss nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

struct LargerError {
    bool operator()(const Panel& lhs, const Panel& rhs) const {
        if (lhs.error != rhs.error) return lhs.error < rhs.error;
        return lhs.a > rhs.a;
    }
};

double checked(const std::function<double(double)>& g, double x) {
    const double v = g(x);
    if (!std::isfinite(v)) {
        throw NonFiniteIntegrand("integrand is not finite at t = " + std::to_string(x));
    }
    return v;
}

Panel gauss_kronrod_15(const std::function<double(double)>& g, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_center = checked(g, center);
    double kronrod = f_center * kKronrodWeights[7];
    double gauss = f_center * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = checked(g, center - dx) + checked(g, center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Lanczos coefficients (g = 671/128, 14 terms).
constexpr double kLanczosShift = 5.24218750000000000;
constexpr std::array<double, 14> kLanczosCoefficients = {
    57.1562356658629235,      -59.5979603554754912,     14.1360979747417471,
    -0.491913816097620199,    0.339946499848118887e-4,  0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3,  -0.210264441724104883e-3,
    0.217439618115212643e-3,  -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
};
constexpr double kLanczosSeriesBase = 0.999999999999997092;
constexpr double kSqrtTwoPi = 2.5066282746310005;

double lanczos_series(double x) {
    double sum = kLanczosSeriesBase;
    double denom = x;
    for (double c : kLanczosCoefficients) {
        denom += 1.0;
        sum += c / denom;
    }
    return sum;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& g, double a, double b,
                           double tol, std::span<const double> breakpoints,
                           std::size_t max_subdivisions) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw InvalidArgument("integration range requires finite a < b");
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw InvalidArgument("integration tolerance must be positive");
    }
    if (max_subdivisions == 0) {
        throw InvalidArgument("subdivision budget must be positive");
    }

    std::vector<double> cuts{a};
    for (double t : breakpoints) {
        if (!(a < t && t < b)) {
            throw InvalidArgument("breakpoint " + std::to_string(t) + " lies outside (a, b)");
        }
        cuts.push_back(t);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Panel, std::vector<Panel>, LargerError> panels;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p = gauss_kronrod_15(g, cuts[i], cuts[i + 1]);
        total_error += p.error;
        panels.push(p);
    }
    if (panels.size() > max_subdivisions) {
        throw ToleranceNotMet("breakpoints exceed the subdivision budget");
    }

    while (total_error > tol) {
        if (panels.size() >= max_subdivisions) {
            throw ToleranceNotMet("subdivision budget of " + std::to_string(max_subdivisions) +
                                  " exhausted with error estimate " +
                                  std::to_string(total_error));
        }
        const Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            throw ToleranceNotMet("panel width reached machine resolution near t = " +
                                  std::to_string(worst.a));
        }
        panels.pop();
        const Panel left = gauss_kronrod_15(g, worst.a, mid);
        const Panel right = gauss_kronrod_15(g, mid, worst.b);
        total_error += (left.error + right.error) - worst.error;
        panels.push(left);
        panels.push(right);
    }

    // Re-sum in left-to-right order so the result does not depend on the
    // incremental bookkeeping above.
    std::vector<Panel> ordered;
    ordered.reserve(panels.size());
    while (!panels.empty()) {
        ordered.push_back(panels.top());
        panels.pop();
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });

    QuadratureResult result{0.0, 0.0, ordered.size()};
    for (const Panel& p : ordered) {
        result.value += p.value;
        result.abs_error_estimate += p.error;
    }
    if (result.abs_error_estimate > tol) {
        throw ToleranceNotMet("error estimate " + std::to_string(result.abs_error_estimate) +
                              " exceeds tolerance");
    }
    return result;
}

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw InvalidArgument("log_gamma requires a finite positive argument");
    }
    const double shifted = x + kLanczosShift;
    const double head = (x + 0.5) * std::log(shifted) - shifted;
    return head + std::log(kSqrtTwoPi * lanczos_series(x) / x);
}

double beta_function(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw InvalidArgument("beta_function requires finite positive arguments");
    }
    // Fixed argument order makes B(x, y) and B(y, x) identical bit-for-bit.
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    const double sum = lo + hi;

    // Lanczos form of Gamma(lo) Gamma(hi) / Gamma(lo + hi). The exp(-shift)
    // factors collapse to a single exp(-shift) and the power terms are
    // combined through log1p, avoiding the cancellation of three separate
    // log-gamma values.
    const double t_sum = sum + kLanczosShift;
    const double log_powers = (lo + 0.5) * std::log1p(-hi / t_sum) +
                              (hi + 0.5) * std::log1p(-lo / t_sum) + 0.5 * std::log(t_sum) -
                              kLanczosShift;
    const double series =
        lanczos_series(lo) * lanczos_series(hi) / lanczos_series(sum) * (sum / (lo * hi));
    return kSqrtTwoPi * series * std::exp(log_powers);
}

}  // namespace quadcert
