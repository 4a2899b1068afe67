#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Coefficient-space representation of a separable Hilbert space truncated
// to a fixed d-dimensional orthonormal basis, plus discrete measures and
// the synthetic measure families used in the experiments.

namespace sw {

using Vector = std::vector<double>;

double inner(const Vector& x, const Vector& y);
double norm_sq(const Vector& x);
double norm(const Vector& x);

// e_i (zero-based index) in dimension d.
Vector basis_vector(std::size_t d, std::size_t i);

// Weighted finite point set; weights renormalized at construction.
class DiscreteMeasure {
public:
    DiscreteMeasure(std::vector<Vector> points, std::vector<double> weights);

    // n equally weighted atoms.
    static DiscreteMeasure uniform(std::vector<Vector> points);
    static DiscreteMeasure dirac(Vector point);

    const std::vector<Vector>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }
    std::size_t dimension() const { return points_[0].size(); }

private:
    std::vector<Vector> points_;
    std::vector<double> weights_;
};

// M_p(mu) = sum_k w_k ||x_k||^p.
double moment_p(const DiscreteMeasure& mu, double p);

struct MeasureSpec {
    enum class Kind { PointMass, GaussianKl, UniformBall, ShiftedBasis };

    Kind kind = Kind::PointMass;
    std::size_t dimension = 1;

    Vector point;                    // PointMass
    std::vector<double> eigenvalues; // GaussianKl (all nonzero, length d)
    double radius = 1.0;             // UniformBall
    std::size_t basis_index = 0;     // ShiftedBasis (zero-based)
    double scale = 1.0;              // ShiftedBasis

    static MeasureSpec point_mass(Vector x);
    static MeasureSpec gaussian_kl(std::vector<double> eigenvalues);
    static MeasureSpec uniform_ball(std::size_t dimension, double radius);
    static MeasureSpec shifted_basis(std::size_t dimension, std::size_t index, double scale);

    void validate() const;

    // Exact M_s; for GaussianKl s must be an even integer <= 8.
    double analytic_moment(double s) const;

    std::string kind_name() const;
};

// n i.i.d. equally weighted draws; pure in (spec, n, seed).
DiscreteMeasure sample_measure(const MeasureSpec& spec, std::size_t n, std::uint64_t seed);

} // namespace sw
