#include "sw/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sw/errors.hpp"
#include "sw/rng.hpp"

namespace sw {

namespace {

void require_finite(const Vector& x) {
    for (double v : x) {
        if (!std::isfinite(v)) throw InputError("coefficient vector has a non-finite entry");
    }
}

} // namespace

double inner(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw InputError("inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm_sq(const Vector& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double norm(const Vector& x) { return std::sqrt(norm_sq(x)); }

Vector basis_vector(std::size_t d, std::size_t i) {
    if (i >= d) throw InputError("basis_vector: index out of range");
    Vector e(d, 0.0);
    e[i] = 1.0;
    return e;
}

DiscreteMeasure::DiscreteMeasure(std::vector<Vector> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty() || points_.size() != weights_.size())
        throw InputError("DiscreteMeasure: points/weights must be nonempty and equal length");
    const std::size_t d = points_[0].size();
    if (d == 0) throw InputError("DiscreteMeasure: dimension must be >= 1");
    double total = 0.0;
    for (std::size_t k = 0; k < points_.size(); ++k) {
        if (points_[k].size() != d) throw InputError("DiscreteMeasure: mixed dimensions");
        require_finite(points_[k]);
        if (!(weights_[k] >= 0.0) || !std::isfinite(weights_[k]))
            throw InputError("DiscreteMeasure: weights must be nonnegative and finite");
        total += weights_[k];
    }
    if (total <= 0.0) throw InputError("DiscreteMeasure: total mass must be positive");
    if (std::abs(total - 1.0) > 1e-12) {
        for (double& w : weights_) w /= total;
    }
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<Vector> points) {
    const std::size_t n = points.size();
    const double w = 1.0 / static_cast<double>(n);
    return DiscreteMeasure(std::move(points), std::vector<double>(n, w));
}

DiscreteMeasure DiscreteMeasure::dirac(Vector point) {
    std::vector<Vector> pts;
    pts.push_back(std::move(point));
    return DiscreteMeasure(std::move(pts), {1.0});
}

double moment_p(const DiscreteMeasure& mu, double p) {
    if (!(p >= 1.0)) throw InputError("moment_p: p must be >= 1");
    double s = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k)
        s += mu.weights()[k] * std::pow(norm(mu.points()[k]), p);
    return s;
}

MeasureSpec MeasureSpec::point_mass(Vector x) {
    MeasureSpec s;
    s.kind = Kind::PointMass;
    s.dimension = x.size();
    s.point = std::move(x);
    s.validate();
    return s;
}

MeasureSpec MeasureSpec::gaussian_kl(std::vector<double> eigenvalues) {
    MeasureSpec s;
    s.kind = Kind::GaussianKl;
    s.dimension = eigenvalues.size();
    s.eigenvalues = std::move(eigenvalues);
    s.validate();
    return s;
}

MeasureSpec MeasureSpec::uniform_ball(std::size_t dimension, double radius) {
    MeasureSpec s;
    s.kind = Kind::UniformBall;
    s.dimension = dimension;
    s.radius = radius;
    s.validate();
    return s;
}

MeasureSpec MeasureSpec::shifted_basis(std::size_t dimension, std::size_t index, double scale) {
    MeasureSpec s;
    s.kind = Kind::ShiftedBasis;
    s.dimension = dimension;
    s.basis_index = index;
    s.scale = scale;
    s.validate();
    return s;
}

void MeasureSpec::validate() const {
    if (dimension == 0) throw InputError("MeasureSpec: dimension must be >= 1");
    switch (kind) {
        case Kind::PointMass:
            if (point.size() != dimension) throw InputError("MeasureSpec: point dimension mismatch");
            require_finite(point);
            break;
        case Kind::GaussianKl:
            if (eigenvalues.size() != dimension)
                throw InputError("MeasureSpec: eigenvalue count must equal dimension");
            for (double l : eigenvalues) {
                if (l == 0.0 || !std::isfinite(l))
                    throw InputError("MeasureSpec: eigenvalues must be nonzero and finite");
            }
            break;
        case Kind::UniformBall:
            if (!(radius > 0.0) || !std::isfinite(radius))
                throw InputError("MeasureSpec: ball radius must be positive");
            break;
        case Kind::ShiftedBasis:
            if (basis_index >= dimension) throw InputError("MeasureSpec: basis index out of range");
            if (!std::isfinite(scale)) throw InputError("MeasureSpec: scale must be finite");
            break;
    }
}

double MeasureSpec::analytic_moment(double s) const {
    if (!(s >= 1.0)) throw InputError("analytic_moment: s must be >= 1");
    switch (kind) {
        case Kind::PointMass:
            return std::pow(norm(point), s);
        case Kind::ShiftedBasis:
            return std::pow(std::abs(scale), s);
        case Kind::UniformBall: {
            const double d = static_cast<double>(dimension);
            return std::pow(radius, s) * d / (d + s);
        }
        case Kind::GaussianKl: {
            // ||X||^2 = sum lambda_i^2 xi_i^2; even moments via cumulants
            // kappa_r = 2^{r-1}(r-1)! sum lambda^{2r}.
            const long long m = std::llround(s);
            if (std::abs(s - static_cast<double>(m)) > 1e-12 || m % 2 != 0 || m > 8)
                throw DomainError("GaussianKl analytic moment: s must be an even integer <= 8");
            double s2 = 0, s4 = 0, s6 = 0, s8 = 0;
            for (double l : eigenvalues) {
                const double l2 = l * l;
                s2 += l2;
                s4 += l2 * l2;
                s6 += l2 * l2 * l2;
                s8 += l2 * l2 * l2 * l2;
            }
            const double k1 = s2, k2 = 2 * s4, k3 = 8 * s6, k4 = 48 * s8;
            if (m == 2) return k1;
            if (m == 4) return k2 + k1 * k1;
            if (m == 6) return k3 + 3 * k2 * k1 + k1 * k1 * k1;
            return k4 + 4 * k3 * k1 + 3 * k2 * k2 + 6 * k2 * k1 * k1 + k1 * k1 * k1 * k1;
        }
    }
    throw InputError("MeasureSpec: unknown kind");
}

std::string MeasureSpec::kind_name() const {
    switch (kind) {
        case Kind::PointMass: return "point-mass";
        case Kind::GaussianKl: return "gaussian-kl";
        case Kind::UniformBall: return "uniform-ball";
        case Kind::ShiftedBasis: return "shifted-basis";
    }
    return "?";
}

DiscreteMeasure sample_measure(const MeasureSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n == 0) throw InputError("sample_measure: n must be >= 1");
    const std::size_t d = spec.dimension;
    std::vector<Vector> pts;
    pts.reserve(n);

    switch (spec.kind) {
        case MeasureSpec::Kind::PointMass:
            pts.assign(n, spec.point);
            break;
        case MeasureSpec::Kind::ShiftedBasis: {
            Vector x(d, 0.0);
            x[spec.basis_index] = spec.scale;
            pts.assign(n, x);
            break;
        }
        case MeasureSpec::Kind::GaussianKl: {
            for (std::size_t k = 0; k < n; ++k) {
                const std::uint64_t key = rng::derive(seed, k);
                Vector x(d);
                for (std::size_t j = 0; j + 1 < d; j += 2)
                    rng::gaussian_pair(key, j / 2, x[j], x[j + 1]);
                if (d % 2 == 1) x[d - 1] = rng::gaussian(key, d / 2);
                for (std::size_t j = 0; j < d; ++j) x[j] *= spec.eigenvalues[j];
                pts.push_back(std::move(x));
            }
            break;
        }
        case MeasureSpec::Kind::UniformBall: {
            for (std::size_t k = 0; k < n; ++k) {
                const std::uint64_t key = rng::derive(seed, k);
                Vector x(d);
                for (std::size_t j = 0; j + 1 < d; j += 2)
                    rng::gaussian_pair(key, j / 2, x[j], x[j + 1]);
                if (d % 2 == 1) x[d - 1] = rng::gaussian(key, d / 2);
                const double r = norm(x);
                const double u = rng::uniform01(key, d + 7);
                const double target =
                    spec.radius * std::pow(u, 1.0 / static_cast<double>(d));
                const double c = (r > 1e-300) ? target / r : 0.0;
                for (double& v : x) v *= c;
                pts.push_back(std::move(x));
            }
            break;
        }
    }
    return DiscreteMeasure::uniform(std::move(pts));
}

} // namespace sw
