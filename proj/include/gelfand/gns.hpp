#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "gelfand/states.hpp"

namespace gelfand {

using ExactMatrix = std::vector<std::vector<ComplexRational>>;
using ExactVector = std::vector<ComplexRational>;

/// Null vectors are detected at 1e-9 times the largest Gram eigenvalue;
/// eigenvalues below -1e-10 (relative, floor 1) reject the state.
inline constexpr double kNullThreshold = 1e-9;
inline constexpr double kPsdTolerance = 1e-10;

/// Degree-truncated GNS model of a state.
struct GnsModel {
    PresentationPtr presentation;
    unsigned degree = 0;
    /// Irreducible monomials of total degree <= degree, graded-lex ascending.
    std::vector<Monomial> basis;
    /// G[i][j] = E(m_i* m_j).
    Eigen::MatrixXcd gram;
    std::optional<ExactMatrix> exact_gram;

    /// Coefficient vectors over `basis`.
    std::vector<Eigen::VectorXcd> null_space;
    std::optional<std::vector<ExactVector>> exact_null_space;
    /// Columns b_i with b_i† G b_j = δ_ij.
    Eigen::MatrixXcd orthonormal;
    /// Exact route: mutually orthogonal vectors v_i and their norms v_i† G v_i,
    /// with b_i = v_i / sqrt(norm_i).
    std::optional<std::vector<ExactVector>> exact_orthogonal;
    std::optional<std::vector<Rational>> exact_norms;
    bool basis_computed = false;

    std::size_t rank() const noexcept { return static_cast<std::size_t>(orthonormal.cols()); }
};

/// Basis and Gram matrix; exact whenever the state is.
GnsModel gram_matrix(const State& e, unsigned degree);

/// Null space and orthonormal basis, Gram-Schmidt in graded-lex order with
/// zero-norm vectors deferred to the null list. Throws Rejection("not PSD").
void gns_basis(GnsModel& model);
GnsModel gns_model(const State& e, unsigned degree);

struct MultiplicationOperator {
    /// M[i][j] = <b_i, g b_j>.
    Eigen::MatrixXcd matrix;
    /// Present when every entry is rational (all norms perfect squares).
    std::optional<ExactMatrix> exact;
    /// ||g b_j||^2 - sum_i |M[i][j]|^2: mass of g b_j outside the truncation.
    std::vector<double> leakage;
};

MultiplicationOperator multiplication_operator(const State& e, const GnsModel& model, std::size_t generator);

/// The polynomial with coefficient vector v over the model basis.
StarPoly basis_polynomial(const GnsModel& model, const ExactVector& v);
/// Coefficients of p over the model basis; throws if p leaves the span.
ExactVector basis_coordinates(const GnsModel& model, const StarPoly& p);

} // namespace gelfand
