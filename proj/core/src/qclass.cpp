#include "quadcert/qclass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace quadcert {

namespace {

double checked(const std::function<double(double)>& g, double x) {
    const double v = g(x);
    if (!std::isfinite(v)) {
        throw NonFiniteValue("sampled function is not finite at x = " + std::to_string(x));
    }
    return v;
}

// Rounding can push lambda x + (1-lambda) y past the segment ends; clamp so
// g is never probed outside [min(x, y), max(x, y)].
double convex_combination(double x, double y, double lambda) {
    const double z = lambda * x + (1.0 - lambda) * y;
    return std::clamp(z, std::min(x, y), std::max(x, y));
}

// Falling factorial n (n-1) ... (n-k+1).
double falling(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
    return r;
}

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

SmoothFunction monomial(int n, double coefficient, std::string name, Interval domain,
                        std::string notes) {
    std::array<SmoothFunction::Fn, 5> d;
    for (int k = 0; k <= 4; ++k) {
        const double c = coefficient * falling(n, k);
        const int power = n - k;
        if (power < 0 || c == 0.0) {
            d[static_cast<std::size_t>(k)] = [](double) { return 0.0; };
        } else {
            d[static_cast<std::size_t>(k)] = [c, power](double x) { return c * ipow(x, power); };
        }
    }
    return SmoothFunction{std::move(name), std::move(d), domain, std::move(notes)};
}

std::vector<CorpusEntry> build_corpus() {
    const Interval nonneg{0.0, 10.0};
    const Interval wide{-10.0, 10.0};
    const std::string every_q = "every q >= 1 on every subinterval of the domain";

    std::vector<CorpusEntry> out;
    out.push_back({monomial(1, 1.0, "x", wide, "affine; f''' = 0"), every_q, true, true, true});
    out.push_back({monomial(2, 1.0, "x2", wide, "f''' = 0"), every_q, true, true, false});
    out.push_back({monomial(3, 1.0, "x3", nonneg, "f''' = 6 constant"), every_q, true, true,
                   false});
    out.push_back({monomial(4, 1.0, "x4", nonneg, "f''' = 24x, nonnegative convex on [0, b]"),
                   every_q, true, true, false});
    out.push_back({monomial(5, 1.0, "x5", nonneg, "f''' = 60x^2, nonnegative convex on [0, b]"),
                   every_q, true, true, false});
    out.push_back({monomial(6, 1.0, "x6", nonneg, "f''' = 120x^3, nonnegative convex on [0, b]"),
                   every_q, true, true, false});
    out.push_back({monomial(3, 2.0, "cx3", nonneg, "c = 2, f''' = 12 constant"), every_q, true,
                   true, false});

    {
        // x^4 + alpha x^3 with alpha = 1.
        const SmoothFunction quartic = monomial(4, 1.0, "x4", nonneg, {});
        const SmoothFunction cubic = monomial(3, 1.0, "x3", nonneg, {});
        std::array<SmoothFunction::Fn, 5> d;
        for (int k = 0; k <= 4; ++k) {
            d[static_cast<std::size_t>(k)] = [quartic, cubic, k](double x) {
                return quartic.derivative(k, x) + cubic.derivative(k, x);
            };
        }
        out.push_back({SmoothFunction{"x4_plus_x3", std::move(d), nonneg,
                                      "alpha = 1, f''' = 24x + 6, nonnegative convex on [0, b]"},
                       every_q, true, true, false});
    }

    std::array<SmoothFunction::Fn, 5> exp_derivs;
    exp_derivs.fill([](double x) { return std::exp(x); });
    const SmoothFunction exponential{"exp", exp_derivs, wide, "all derivatives e^x"};
    out.push_back({exponential, every_q, true, true, false});

    out.push_back({exponential.compose_affine(2.0, -1.0, "exp_affine",
                                              "exp(2x - 1), f''' = 8 exp(2x - 1)"),
                   every_q, true, true, false});

    const SmoothFunction x4_wide = monomial(4, 1.0, "x4", wide, {});
    out.push_back({x4_wide.compose_affine(1.0, -0.5, "x4_shifted",
                                          "(x - 1/2)^4, |f'''| = 24|x - 1/2| convex"),
                   every_q, true, true, false});

    {
        // sin(pi x)/pi^3: |f'''| = |cos(pi x)| has zeros half a period apart,
        // so intervals straddling a full hump violate the class inequality.
        constexpr double pi = std::numbers::pi;
        std::array<SmoothFunction::Fn, 5> d = {
            [](double x) { return std::sin(pi * x) / (pi * pi * pi); },
            [](double x) { return std::cos(pi * x) / (pi * pi); },
            [](double x) { return -std::sin(pi * x) / pi; },
            [](double x) { return -std::cos(pi * x); },
            [](double x) { return pi * std::sin(pi * x); },
        };
        out.push_back({SmoothFunction{"sinpi", std::move(d), wide,
                                      "sin(pi x)/pi^3, f''' = -cos(pi x)"},
                       "sampled only; intervals containing two zeros of cos(pi x) fail", false,
                       false, false});
    }
    return out;
}

}  // namespace

double q_class_violation(const std::function<double(double)>& g, double x, double y,
                         double lambda) {
    const double z = convex_combination(x, y, lambda);
    return checked(g, z) - checked(g, x) / lambda - checked(g, y) / (1.0 - lambda);
}

MembershipReport test_q_membership(const std::function<double(double)>& g,
                                   const Interval& interval, std::size_t nx,
                                   std::size_t nlambda, double tol) {
    if (nx < 2 || nlambda < 1) {
        throw InvalidArgument("membership grid needs nx >= 2 and nlambda >= 1");
    }
    // With x_i = a + i h and lambda_k = k/(n+1), every convex combination
    //   lambda_k x_i + (1 - lambda_k) x_j = a + (k i + (n+1-k) j) h/(n+1)
    // lies on a lattice with spacing h/(n+1), so g is evaluated once per
    // lattice node instead of once per triple. Grid points are lattice nodes
    // too, which keeps values at retained points identical under refinement.
    const std::size_t per_cell = nlambda + 1;
    const std::size_t last = (nx - 1) * per_cell;
    const bool use_lattice = last < (std::size_t{1} << 24);

    const double a = interval.a();
    const double b = interval.b();
    const double spacing = interval.width() / static_cast<double>(last);
    const auto node = [&](std::size_t m) {
        return m == last ? b : std::min(b, a + static_cast<double>(m) * spacing);
    };

    std::vector<double> xs(nx);
    std::vector<double> gx(nx);
    bool nonneg_ok = true;
    for (std::size_t i = 0; i < nx; ++i) {
        xs[i] = node(i * per_cell);
        gx[i] = checked(g, xs[i]);
        if (gx[i] < 0.0) nonneg_ok = false;
    }

    std::vector<double> lambdas(nlambda);
    std::vector<double> complements(nlambda);
    for (std::size_t k = 0; k < nlambda; ++k) {
        lambdas[k] = static_cast<double>(k + 1) / static_cast<double>(per_cell);
        complements[k] = 1.0 - lambdas[k];
    }

    std::vector<double> g_lattice;
    if (use_lattice) {
        g_lattice.resize(last + 1);
        for (std::size_t m = 0; m <= last; ++m) g_lattice[m] = checked(g, node(m));
    }

    double worst = -std::numeric_limits<double>::infinity();
    std::size_t wi = 0, wj = 0, wk = 0;
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < nx; ++j) {
            for (std::size_t k = 0; k < nlambda; ++k) {
                double gz;
                if (use_lattice) {
                    gz = g_lattice[(k + 1) * i + (per_cell - k - 1) * j];
                } else {
                    gz = checked(g, convex_combination(xs[i], xs[j], lambdas[k]));
                }
                const double v = gz - gx[i] / lambdas[k] - gx[j] / complements[k];
                if (v > worst) {
                    worst = v;
                    wi = i;
                    wj = j;
                    wk = k;
                }
            }
        }
    }

    // Report the margin as re-evaluated at the witness so the triple always
    // reproduces it through q_class_violation.
    const MembershipWitness witness{xs[wi], xs[wj], lambdas[wk]};
    const double reported = q_class_violation(g, witness.x, witness.y, witness.lambda);

    return MembershipReport{
        .passed = nonneg_ok && reported <= tol && worst <= tol,
        .samples_tested = nx * nx * nlambda,
        .worst_violation = reported,
        .witness = witness,
        .nonneg_ok = nonneg_ok,
    };
}

std::function<double(double)> third_derivative_power(const SmoothFunction& f, double q) {
    return [f, q](double x) { return std::pow(std::abs(f.derivative(3, x)), q); };
}

const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

const CorpusEntry* find_corpus_entry(std::string_view name) {
    for (const CorpusEntry& e : corpus()) {
        if (e.function.name() == name) return &e;
    }
    return nullptr;
}

}  // namespace quadcert
