#include "sw/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sw/errors.hpp"
#include "sw/quadrature.hpp"

namespace sw {

namespace {

double cost_pow(double diff, double p) {
    const double ad = std::abs(diff);
    if (p == 1.0) return ad;
    if (p == 2.0) return ad * ad;
    return std::pow(ad, p);
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865475244); }

// Acklam's rational approximation, refined by one Halley step.
double std_normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) throw InputError("quantile: u must lie in (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (u < plow) {
        const double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - plow) {
        const double q = u - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - u));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement against erfc-based CDF.
    const double e = std_normal_cdf(x) - u;
    const double pdf = 0.3989422804014326779 * std::exp(-0.5 * x * x);
    const double v = e / pdf;
    x -= v / (1.0 + 0.5 * x * v);
    return x;
}

} // namespace

Projected1DMeasure::Projected1DMeasure(std::vector<double> values, std::vector<double> weights) {
    if (values.empty() || values.size() != weights.size())
        throw InputError("Projected1DMeasure: values/weights must be nonempty and equal length");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    double total = 0.0;
    values_.reserve(values.size());
    weights_.reserve(values.size());
    for (std::size_t idx : order) {
        const double v = values[idx];
        const double w = weights[idx];
        if (!std::isfinite(v)) throw InputError("Projected1DMeasure: non-finite value");
        if (!(w >= 0.0)) throw InputError("Projected1DMeasure: negative weight");
        total += w;
        if (!values_.empty() && values_.back() == v) {
            weights_.back() += w; // merge ties
        } else {
            values_.push_back(v);
            weights_.push_back(w);
        }
    }
    if (total <= 0.0) throw InputError("Projected1DMeasure: zero total mass");
    if (std::abs(total - 1.0) > 1e-12)
        for (double& w : weights_) w /= total;
}

Projected1DMeasure Projected1DMeasure::uniform_sorted(std::vector<double> sorted_values) {
    const std::size_t n = sorted_values.size();
    const double w = 1.0 / static_cast<double>(n);
    return Projected1DMeasure(std::move(sorted_values), std::vector<double>(n, w));
}

Projected1DMeasure project(const DiscreteMeasure& mu, const Vector& theta) {
    if (theta.size() != mu.dimension()) throw InputError("project: dimension mismatch");
    if (std::abs(norm(theta) - 1.0) > 1e-9) throw InputError("project: theta must be unit norm");
    std::vector<double> vals(mu.size());
    for (std::size_t k = 0; k < mu.size(); ++k) vals[k] = inner(theta, mu.points()[k]);
    return Projected1DMeasure(std::move(vals), mu.weights());
}

double w1d(const Projected1DMeasure& a, const Projected1DMeasure& b, double p) {
    if (!(p >= 1.0)) throw InputError("w1d: p must be >= 1");
    std::size_t i = 0, j = 0;
    double ra = a.weights()[0];
    double rb = b.weights()[0];
    double acc = 0.0;
    while (true) {
        const double diff = a.values()[i] - b.values()[j];
        if (ra < rb) {
            acc += ra * cost_pow(diff, p);
            rb -= ra;
            if (++i == a.size()) break;
            ra = a.weights()[i];
        } else if (rb < ra) {
            acc += rb * cost_pow(diff, p);
            ra -= rb;
            if (++j == b.size()) break;
            rb = b.weights()[j];
        } else {
            acc += ra * cost_pow(diff, p);
            ++i;
            ++j;
            if (i == a.size() || j == b.size()) break;
            ra = a.weights()[i];
            rb = b.weights()[j];
        }
    }
    return std::pow(acc, 1.0 / p);
}

double w1d_pow_sorted_uniform(const double* a, std::size_t n, const double* b,
                              std::size_t m, double p) {
    // Quantile-interval merge; breakpoints compared in exact integer
    // arithmetic over the common grid of denominators n*m.
    const std::uint64_t un = n, um = m;
    const double inv = 1.0 / (static_cast<double>(n) * static_cast<double>(m));
    std::uint64_t cur = 0;
    std::size_t i = 0, j = 0;
    double acc = 0.0;
    while (i < n && j < m) {
        const std::uint64_t na = (i + 1) * um;
        const std::uint64_t nb = (j + 1) * un;
        const std::uint64_t nxt = std::min(na, nb);
        acc += static_cast<double>(nxt - cur) * cost_pow(a[i] - b[j], p);
        cur = nxt;
        if (na == nxt) ++i;
        if (nb == nxt) ++j;
    }
    return acc * inv;
}

DistributionSpec1D DistributionSpec1D::uniform(double a, double b) {
    if (!(b > a)) throw InputError("uniform: requires b > a");
    DistributionSpec1D s;
    s.kind = Kind::Uniform;
    s.a = a;
    s.b = b;
    return s;
}

DistributionSpec1D DistributionSpec1D::gaussian(double mean, double sd) {
    if (!(sd > 0.0)) throw InputError("gaussian: requires sd > 0");
    DistributionSpec1D s;
    s.kind = Kind::Gaussian;
    s.mean = mean;
    s.sd = sd;
    return s;
}

DistributionSpec1D DistributionSpec1D::point(double location) {
    DistributionSpec1D s;
    s.kind = Kind::Point;
    s.location = location;
    return s;
}

double DistributionSpec1D::cdf(double x) const {
    switch (kind) {
        case Kind::Uniform:
            return std::clamp((x - a) / (b - a), 0.0, 1.0);
        case Kind::Gaussian:
            return std_normal_cdf((x - mean) / sd);
        case Kind::Point:
            return x < location ? 0.0 : 1.0;
    }
    return 0.0;
}

double DistributionSpec1D::quantile(double u) const {
    switch (kind) {
        case Kind::Uniform:
            if (!(u >= 0.0 && u <= 1.0)) throw InputError("quantile: u must lie in [0,1]");
            return a + (b - a) * u;
        case Kind::Gaussian:
            return mean + sd * std_normal_quantile(u);
        case Kind::Point:
            return location;
    }
    return 0.0;
}

double DistributionSpec1D::abs_moment(double s) const {
    if (!(s >= 0.0)) throw InputError("abs_moment: s must be >= 0");
    switch (kind) {
        case Kind::Point:
            return std::pow(std::abs(location), s);
        case Kind::Uniform: {
            // int_a^b |x|^s dx / (b-a), with antiderivative sgn(x)|x|^{s+1}/(s+1).
            auto g = [s](double x) {
                return std::copysign(std::pow(std::abs(x), s + 1.0), x) / (s + 1.0);
            };
            return (g(b) - g(a)) / (b - a);
        }
        case Kind::Gaussian: {
            if (mean == 0.0) {
                // sd^s 2^{s/2} Gamma((s+1)/2) / sqrt(pi)
                return std::pow(sd, s) * std::pow(2.0, 0.5 * s) *
                       std::tgamma(0.5 * (s + 1.0)) / std::sqrt(M_PI);
            }
            const double lo = mean - (16.0 + s) * sd;
            const double hi = mean + (16.0 + s) * sd;
            auto f = [this, s](double x) {
                const double z = (x - mean) / sd;
                return std::pow(std::abs(x), s) * 0.3989422804014326779 *
                       std::exp(-0.5 * z * z) / sd;
            };
            return quad::integrate(f, lo, hi, 1e-10).value;
        }
    }
    return 0.0;
}

Projected1DMeasure DistributionSpec1D::quantile_discretization(std::size_t m) const {
    if (m == 0) throw InputError("quantile_discretization: m must be >= 1");
    std::vector<double> vals(m);
    for (std::size_t i = 0; i < m; ++i)
        vals[i] = quantile((static_cast<double>(i) + 0.5) / static_cast<double>(m));
    return Projected1DMeasure::uniform_sorted(std::move(vals));
}

std::string DistributionSpec1D::kind_name() const {
    switch (kind) {
        case Kind::Uniform: return "uniform";
        case Kind::Gaussian: return "gaussian";
        case Kind::Point: return "point";
    }
    return "?";
}

double bobkov_integral(const DistributionSpec1D& dist, double p) {
    if (!(p >= 1.0)) throw InputError("bobkov_integral: p must be >= 1");
    auto integrand = [&dist, p](double x) {
        const double F = dist.cdf(x);
        const double g = F * (1.0 - F);
        if (g <= 0.0) return 0.0;
        const double tail = std::sqrt(g);
        return p == 1.0 ? tail : std::pow(std::abs(x), p - 1.0) * tail;
    };
    switch (dist.kind) {
        case DistributionSpec1D::Kind::Point:
            return 0.0;
        case DistributionSpec1D::Kind::Uniform:
            return quad::integrate(integrand, dist.a, dist.b, 1e-8).value;
        case DistributionSpec1D::Kind::Gaussian: {
            const double span = (14.0 + 2.0 * p) * dist.sd;
            return quad::integrate(integrand, dist.mean - span, dist.mean + span, 1e-8).value;
        }
    }
    return 0.0;
}

double bobkov_rhs(const DistributionSpec1D& dist, double p) {
    return p * std::pow(2.0, p - 1.0) * bobkov_integral(dist, p);
}

std::function<double(double)> chebyshev_envelope(const DistributionSpec1D& dist, double s) {
    if (!(s >= 1.0)) throw InputError("chebyshev_envelope: s must be >= 1");
    const double ms = dist.abs_moment(s);
    if (!std::isfinite(ms)) throw DomainError("chebyshev_envelope: infinite s-th moment");
    return [ms, s](double x) { return (1.0 + ms) / (1.0 + std::pow(std::abs(x), s)); };
}

} // namespace sw
