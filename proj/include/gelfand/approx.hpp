#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gelfand/spectrum.hpp"

namespace gelfand {

/// Bracket for a sup-seminorm |f|_K: `lower` is the maximum over a uniform
/// grid, `upper` a certified bound (coefficient bound for polynomials).
struct SeminormEstimate {
    double lower = 0.0;
    double upper = 0.0;
    CompactBox box;
    unsigned resolution = 0;
};

/// Function on box (chart) coordinates to approximate.
class TargetFunction {
public:
    using Fn = std::function<std::complex<double>(std::span<const double>)>;

    TargetFunction(std::string name, std::size_t dimension, Fn fn, double modulus_slack = 0.0);

    /// |x - shift| (Euclidean distance to the diagonal point (shift, ..., shift)).
    static TargetFunction abs_shift(std::size_t dimension, double shift = 0.5);
    /// exp(x_1 + ... + x_d)
    static TargetFunction exponential(std::size_t dimension);
    /// x_1^k
    static TargetFunction power(std::size_t dimension, unsigned k);
    static TargetFunction constant(std::size_t dimension, double value);
    /// Multilinear interpolation of `values` on a uniform grid spanning `box`,
    /// `points_per_axis` points per axis, first axis varying slowest.
    static TargetFunction tabulated(const CompactBox& box, unsigned points_per_axis, std::vector<double> values,
                                    double modulus_slack = 0.0);
    /// "abs-shift", "exp", "square", "constant" by name.
    static TargetFunction catalog(const std::string& name, std::size_t dimension);
    static const std::vector<std::string>& catalog_names();

    const std::string& name() const noexcept { return name_; }
    std::size_t dimension() const noexcept { return dimension_; }
    double modulus_slack() const noexcept { return slack_; }
    /// Throws when the value is not finite.
    std::complex<double> operator()(std::span<const double> x) const;

private:
    std::string name_;
    std::size_t dimension_;
    Fn fn_;
    double slack_;
};

/// Calls `visit(coords)` for every point of the uniform grid with
/// `resolution` points per axis (endpoints included), in a fixed order.
void for_each_grid_point(const CompactBox& box, unsigned resolution,
                         const std::function<void(const std::vector<double>&)>& visit);

SeminormEstimate seminorm_on_box(const StarPoly& a, const CompactBox& box, unsigned resolution);
SeminormEstimate seminorm_on_box(const TargetFunction& f, const CompactBox& box, unsigned resolution);

/// Tensor Bernstein approximant of degree n per axis.
class BernsteinApproximant {
public:
    BernsteinApproximant(CompactBox box, unsigned degree, std::vector<std::complex<double>> node_values,
                         StarPoly polynomial);

    const CompactBox& box() const noexcept { return box_; }
    unsigned degree() const noexcept { return degree_; }
    /// f at the Bernstein nodes lo + (hi - lo) k/n, first axis slowest.
    const std::vector<std::complex<double>>& node_values() const noexcept { return nodes_; }
    /// Exact monomial expansion over d self-adjoint generators.
    const StarPoly& polynomial() const noexcept { return poly_; }
    /// Evaluation in Bernstein form (numerically stable at high degree).
    std::complex<double> operator()(std::span<const double> x) const;

private:
    CompactBox box_;
    unsigned degree_;
    std::vector<std::complex<double>> nodes_;
    StarPoly poly_;
    std::vector<double> binomials_;
};

struct BernsteinReport {
    BernsteinApproximant approximant;
    SeminormEstimate error;  // |f - B_n f| on the grid; upper = lower * (1 + modulus slack)
};

inline constexpr unsigned kDefaultErrorResolution = 10001;

/// Degree-n tensor Bernstein approximation of f on `box` (dimension 1..3),
/// with the sup error measured on a `resolution`-point-per-axis grid.
BernsteinReport bernstein_approx(const TargetFunction& f, const CompactBox& box, unsigned n,
                                 unsigned resolution = kDefaultErrorResolution);

struct DensityWitness {
    std::optional<unsigned> degree;  // smallest tested degree with error < epsilon
    double error = 0.0;              // error at that degree (or at max_degree)
};

/// Tries n = 1, 2, 4, ..., max_degree and reports the first with error < epsilon.
DensityWitness density_witness(const TargetFunction& f, const CompactBox& box, double epsilon,
                               unsigned max_degree = 256, unsigned resolution = kDefaultErrorResolution);

/// ∂/∂z* on a free pair: the formal derivative with respect to the adjoint
/// partner of `generator` (either half of the pair may be named).
StarPoly wirtinger_dzbar(const StarPoly& a, std::size_t generator);
StarPoly wirtinger_dzbar(const StarPoly& a, const std::string& generator);
/// The pair used when the presentation has exactly one free pair.
std::size_t default_wirtinger_pair(const Presentation& pres);

/// True iff ∂a/∂z* = 0, i.e. a lies in the image of C[z].
bool is_holomorphic_image(const StarPoly& a, std::size_t generator);

} // namespace gelfand
