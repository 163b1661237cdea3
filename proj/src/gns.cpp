#include "gelfand/gns.hpp"

#include <algorithm>
#include <cmath>

#include "gelfand/error.hpp"

namespace gelfand {

namespace {

ComplexRational exact_value(const Number& n) {
    return std::get<ComplexRational>(n);
}

// u† A w
ComplexRational sesquilinear(const ExactVector& u, const ExactMatrix& a, const ExactVector& w) {
    ComplexRational acc(0);
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k].is_zero()) continue;
        ComplexRational row(0);
        for (std::size_t l = 0; l < w.size(); ++l)
            if (!w[l].is_zero()) row += a[k][l] * w[l];
        acc += u[k].conj() * row;
    }
    return acc;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
    mpz_class num;
    mpz_class den;
    mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
    return Rational(num, den);
}

Eigen::VectorXcd to_eigen(const ExactVector& v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].to_complex();
    return out;
}

// E(m_k* p m_l) over the model basis, exact when possible.
struct SandwichMatrix {
    Eigen::MatrixXcd numeric;
    std::optional<ExactMatrix> exact;
};

SandwichMatrix sandwich(const State& e, const GnsModel& model, const StarPoly& middle) {
    const PresentationPtr& pres = model.presentation;
    const std::size_t n = model.basis.size();
    std::vector<StarPoly> left;
    std::vector<StarPoly> right;
    for (const Monomial& m : model.basis) {
        Terms t;
        add_term(t, m, ComplexRational(1));
        StarPoly p(pres, std::move(t));
        left.push_back(involute(p));
        right.push_back(middle * p);
    }
    SandwichMatrix out;
    out.numeric = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const bool exact = e.is_exact();
    if (exact) out.exact = ExactMatrix(n, ExactVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Number v = expect(e, left[i] * right[j]);
            if (exact) (*out.exact)[i][j] = exact_value(v);
            out.numeric(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_complex(v);
        }
    return out;
}

void exact_gram_schmidt(GnsModel& model) {
    const ExactMatrix& g = *model.exact_gram;
    const std::size_t n = model.basis.size();
    std::vector<ExactVector> orthogonal;
    std::vector<Rational> norms;
    std::vector<ExactVector> null_space;
    for (std::size_t i = 0; i < n; ++i) {
        ExactVector v(n);
        v[i] = 1;
        for (std::size_t j = 0; j < orthogonal.size(); ++j) {
            const ComplexRational c = sesquilinear(orthogonal[j], g, v) / ComplexRational(norms[j]);
            if (c.is_zero()) continue;
            for (std::size_t k = 0; k < n; ++k) v[k] -= c * orthogonal[j][k];
        }
        const ComplexRational norm = sesquilinear(v, g, v);
        if (!norm.is_real() || sgn(norm.real()) < 0)
            throw Rejection("not PSD", "Gram matrix is not positive semidefinite: norm of " +
                                           format_monomial(*model.presentation, model.basis[i]) + " residual is " +
                                           to_string(norm));
        if (sgn(norm.real()) == 0) {
            for (std::size_t k = 0; k < n; ++k) {
                ComplexRational row(0);
                for (std::size_t l = 0; l < n; ++l) row += g[k][l] * v[l];
                if (!row.is_zero())
                    throw Rejection("not PSD", "Gram matrix is not positive semidefinite: zero-norm vector outside "
                                               "the kernel");
            }
            null_space.push_back(std::move(v));
            continue;
        }
        orthogonal.push_back(std::move(v));
        norms.push_back(norm.real());
    }
    model.orthonormal.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(orthogonal.size()));
    for (std::size_t j = 0; j < orthogonal.size(); ++j)
        model.orthonormal.col(static_cast<Eigen::Index>(j)) = to_eigen(orthogonal[j]) / std::sqrt(norms[j].get_d());
    for (const auto& v : null_space) model.null_space.push_back(to_eigen(v));
    model.exact_orthogonal = std::move(orthogonal);
    model.exact_norms = std::move(norms);
    model.exact_null_space = std::move(null_space);
}

void numeric_gram_schmidt(GnsModel& model) {
    const Eigen::MatrixXcd& g = model.gram;
    const auto n = g.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
    const double lmax = n > 0 ? std::max(0.0, solver.eigenvalues().maxCoeff()) : 0.0;
    const double lmin = n > 0 ? solver.eigenvalues().minCoeff() : 0.0;
    if (lmin < -kPsdTolerance * std::max(1.0, lmax))
        throw Rejection("not PSD", "Gram matrix has eigenvalue " + std::to_string(lmin));
    const double threshold = kNullThreshold * lmax;

    std::vector<Eigen::VectorXcd> units;
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v(i) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : units) v -= b * (b.adjoint() * g * v)(0, 0);
        const double norm = (v.adjoint() * g * v)(0, 0).real();
        if (norm <= threshold) {
            model.null_space.push_back(std::move(v));
            continue;
        }
        units.push_back(v / std::sqrt(norm));
    }
    model.orthonormal.resize(n, static_cast<Eigen::Index>(units.size()));
    for (std::size_t j = 0; j < units.size(); ++j) model.orthonormal.col(static_cast<Eigen::Index>(j)) = units[j];
}

} // namespace

GnsModel gram_matrix(const State& e, unsigned degree) {
    GnsModel model;
    model.presentation = e.presentation();
    model.degree = degree;
    for (Monomial& m : monomials_up_to(model.presentation->size(), degree))
        if (model.presentation->is_irreducible(m)) model.basis.push_back(std::move(m));
    const SandwichMatrix s = sandwich(e, model, StarPoly::constant(model.presentation, ComplexRational(1)));
    model.gram = s.numeric;
    model.exact_gram = s.exact;
    return model;
}

void gns_basis(GnsModel& model) {
    model.null_space.clear();
    model.exact_null_space.reset();
    model.exact_orthogonal.reset();
    model.exact_norms.reset();
    if (model.exact_gram)
        exact_gram_schmidt(model);
    else
        numeric_gram_schmidt(model);
    model.basis_computed = true;
}

GnsModel gns_model(const State& e, unsigned degree) {
    GnsModel model = gram_matrix(e, degree);
    gns_basis(model);
    return model;
}

MultiplicationOperator multiplication_operator(const State& e, const GnsModel& model, std::size_t generator) {
    if (!model.basis_computed) throw Error("multiplication operator needs the GNS basis");
    if (!structurally_equal(*e.presentation(), *model.presentation))
        throw Error("state and model live on different presentations");
    if (generator >= model.presentation->size()) throw Error("generator index out of range");
    const StarPoly g = StarPoly::generator(model.presentation, generator);
    const SandwichMatrix h = sandwich(e, model, g);
    const SandwichMatrix l = sandwich(e, model, involute(g) * g);
    const Eigen::MatrixXcd& b = model.orthonormal;

    MultiplicationOperator op;
    if (h.exact && model.exact_orthogonal) {
        const auto& vs = *model.exact_orthogonal;
        const auto& norms = *model.exact_norms;
        const std::size_t r = vs.size();
        ExactMatrix numer(r, ExactVector(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) numer[i][j] = sesquilinear(vs[i], *h.exact, vs[j]);
        op.matrix.resize(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
        std::vector<std::optional<Rational>> roots;
        bool all_square = true;
        for (const Rational& q : norms) {
            roots.push_back(rational_sqrt(q));
            all_square = all_square && roots.back().has_value();
        }
        if (all_square) op.exact = ExactMatrix(r, ExactVector(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                const double scale = std::sqrt(norms[i].get_d()) * std::sqrt(norms[j].get_d());
                op.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = numer[i][j].to_complex() / scale;
                if (all_square) (*op.exact)[i][j] = numer[i][j] / ComplexRational(Rational(*roots[i] * *roots[j]));
            }
    } else {
        op.matrix = b.adjoint() * h.numeric * b;
    }
    const Eigen::MatrixXcd outer = b.adjoint() * l.numeric * b;
    for (Eigen::Index j = 0; j < op.matrix.cols(); ++j)
        op.leakage.push_back(std::max(0.0, outer(j, j).real() - op.matrix.col(j).squaredNorm()));
    return op;
}

StarPoly basis_polynomial(const GnsModel& model, const ExactVector& v) {
    if (v.size() != model.basis.size()) throw Error("coefficient vector does not match the basis");
    Terms t;
    for (std::size_t i = 0; i < v.size(); ++i) add_term(t, model.basis[i], v[i]);
    return StarPoly(model.presentation, std::move(t));
}

ExactVector basis_coordinates(const GnsModel& model, const StarPoly& p) {
    ExactVector v(model.basis.size());
    for (const auto& [m, c] : p.terms()) {
        auto it = std::find(model.basis.begin(), model.basis.end(), m);
        if (it == model.basis.end())
            throw Error("polynomial leaves the degree-" + std::to_string(model.degree) + " truncation");
        v[static_cast<std::size_t>(it - model.basis.begin())] = c;
    }
    return v;
}

} // namespace gelfand
