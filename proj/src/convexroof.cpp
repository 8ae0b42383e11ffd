#include "mixtop/convexroof.hpp"

#include <gsl/gsl_multimin.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mixtop {

DenseState Decomposition::recombine() const {
    if (members.empty())
        throw std::invalid_argument("empty decomposition");
    CMatrix sum = CMatrix::Zero(members[0].rho.rows(), members[0].rho.cols());
    for (size_t i = 0; i < members.size(); i++)
        sum += weights[i] * members[i].rho;
    return DenseState(members[0].n, std::move(sum));
}

EigenSystem eigensystem(const DenseState &rho, double cutoff) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.rho);
    EigenSystem out;
    for (long k = es.eigenvalues().size() - 1; k >= 0; k--) {
        double l = es.eigenvalues()(k);
        if (l > cutoff) {
            out.values.push_back(l);
            out.vectors.push_back(es.eigenvectors().col(k));
        }
    }
    return out;
}

size_t isometry_parameter_count(size_t m) { return m * (m - 1); }

CMatrix givens_unitary(size_t m, const std::vector<double> &params) {
    if (params.size() != isometry_parameter_count(m))
        throw std::invalid_argument("givens_unitary: expected " + std::to_string(isometry_parameter_count(m)) +
                                    " parameters, got " + std::to_string(params.size()));
    CMatrix u = CMatrix::Identity(m, m);
    size_t k = 0;
    for (size_t i = 0; i < m; i++)
        for (size_t j = i + 1; j < m; j++) {
            double c = std::cos(params[k]), s = std::sin(params[k]);
            std::complex<double> e = std::polar(1.0, params[k + 1]);
            k += 2;
            // rotate rows i and j
            for (size_t col = 0; col < m; col++) {
                auto a = u(i, col), b = u(j, col);
                u(i, col) = c * a - s * std::conj(e) * b;
                u(j, col) = s * e * a + c * b;
            }
        }
    return u;
}

Decomposition sample_decomposition(const EigenSystem &es, size_t n, size_t m, const std::vector<double> &params,
                                   size_t groups) {
    size_t r = es.values.size();
    if (m < r)
        throw std::invalid_argument("decomposition needs at least rank = " + std::to_string(r) + " members, got " +
                                    std::to_string(m));
    CMatrix u = givens_unitary(m, params);
    size_t dim = size_t{1} << n;
    std::vector<double> w;
    std::vector<CVector> psi;
    for (size_t i = 0; i < m; i++) {
        CVector v = CVector::Zero(dim);
        for (size_t k = 0; k < r; k++)
            v += u(i, k) * std::sqrt(es.values[k]) * es.vectors[k];
        w.push_back(v.squaredNorm());
        psi.push_back(std::move(v));
    }
    Decomposition d;
    if (groups == 0) {
        d.pure_only = true;
        for (size_t i = 0; i < m; i++) {
            if (w[i] <= 1e-300)
                continue;
            d.weights.push_back(w[i]);
            d.members.push_back(DenseState(n, psi[i] * psi[i].adjoint() / w[i]));
        }
        return d;
    }
    for (size_t g = 0; g < groups; g++) {
        CMatrix sum = CMatrix::Zero(dim, dim);
        double wg = 0;
        for (size_t i = g; i < m; i += groups) {
            sum += psi[i] * psi[i].adjoint();
            wg += w[i];
        }
        if (wg <= 1e-300)
            continue;
        d.weights.push_back(wg);
        d.members.push_back(DenseState(n, sum / wg));
    }
    return d;
}

Decomposition sample_decomposition(const DenseState &rho, size_t m, const std::vector<double> &params,
                                   size_t groups) {
    return sample_decomposition(eigensystem(rho), rho.n, m, params, groups);
}

double decomposition_cmi(const Decomposition &d, const Partition &p) {
    double v = 0;
    for (size_t i = 0; i < d.members.size(); i++)
        v += d.weights[i] * cmi_dense(d.members[i], p);
    return v;
}

namespace {

struct Problem {
    const EigenSystem *es;
    size_t n, m, groups;
    const Partition *part;
};

double objective(const gsl_vector *x, void *data) {
    auto *pr = static_cast<Problem *>(data);
    std::vector<double> params(x->size);
    for (size_t i = 0; i < x->size; i++)
        params[i] = gsl_vector_get(x, i);
    return decomposition_cmi(sample_decomposition(*pr->es, pr->n, pr->m, params, pr->groups), *pr->part);
}

}  // namespace

RoofResult convex_roof_minimize(const DenseState &rho, const Partition &p, RoofMode mode, const RoofBudget &budget,
                                const std::vector<Decomposition> &candidates) {
    if (rho.n > 10)
        throw std::length_error("convex roof search is limited to 10 qubits");
    if (budget.restarts == 0 || budget.max_iterations == 0 || !(budget.tolerance > 0))
        throw std::invalid_argument("roof budget needs restarts, iterations and a positive tolerance");
    EigenSystem es = eigensystem(rho);
    size_t r = es.values.size();
    size_t m = budget.members ? budget.members : (mode == RoofMode::pure ? r * r : 2 * r * r);
    if (m < r)
        throw std::invalid_argument("member budget " + std::to_string(m) + " is below the rank " + std::to_string(r));
    size_t groups = 0;
    if (mode == RoofMode::mixed)
        groups = budget.groups ? budget.groups : std::max<size_t>(1, m / 2);

    RoofResult res;
    res.value = INFINITY;
    auto consider = [&](const Decomposition &d) {
        double v = decomposition_cmi(d, p);
        if (v < res.value) {
            res.value = v;
            res.best = d;
        }
    };
    if (mode == RoofMode::mixed) {
        Decomposition trivial;
        trivial.weights = {1.0};
        trivial.members = {rho};
        consider(trivial);
        for (auto &c : candidates)
            consider(c);
    } else {
        for (auto &c : candidates)
            if (c.pure_only)
                consider(c);
    }
    if (r == 1) {
        // a pure state has only itself as decomposition
        Decomposition d;
        d.pure_only = true;
        d.weights = {1.0};
        d.members = {DenseState::pure(rho.n, es.vectors[0])};
        consider(d);
        res.best_by_restart.assign(budget.restarts, res.value);
        return res;
    }

    size_t dim = isometry_parameter_count(m);
    Problem prob{&es, rho.n, m, groups, &p};
    gsl_multimin_function f{objective, dim, &prob};
    const gsl_multimin_fminimizer_type *T = gsl_multimin_fminimizer_nmsimplex2;
    gsl_multimin_fminimizer *s = gsl_multimin_fminimizer_alloc(T, dim);
    gsl_vector *x = gsl_vector_alloc(dim), *step = gsl_vector_alloc(dim);
    for (size_t restart = 0; restart < budget.restarts; restart++) {
        std::mt19937_64 rng(budget.seed * 1000003ULL + restart);
        std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
        for (size_t i = 0; i < dim; i++) {
            gsl_vector_set(x, i, u(rng));
            gsl_vector_set(step, i, 0.5);
        }
        gsl_multimin_fminimizer_set(s, &f, x, step);
        for (size_t it = 0; it < budget.max_iterations; it++) {
            if (gsl_multimin_fminimizer_iterate(s))
                break;
            if (budget.trace)
                res.trace.push_back({restart, it, s->fval});
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), budget.tolerance) == GSL_SUCCESS)
                break;
        }
        std::vector<double> params(dim);
        for (size_t i = 0; i < dim; i++)
            params[i] = gsl_vector_get(s->x, i);
        consider(sample_decomposition(es, rho.n, m, params, groups));
        res.best_by_restart.push_back(res.value);
    }
    gsl_vector_free(x);
    gsl_vector_free(step);
    gsl_multimin_fminimizer_free(s);
    return res;
}

double binary_entropy(double p) {
    if (p <= 0 || p >= 1)
        return 0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

double ghz_roof_closed_form(double p) { return binary_entropy((1 + 2 * std::sqrt(p * (1 - p))) / 2); }

CVector ghz_angle_state(double theta) {
    CVector v = CVector::Zero(8);
    v(0) = std::cos(theta / 2);
    v(7) = std::sin(theta / 2);
    return v;
}

double ghz_member_angle(const DenseState &member) {
    if (member.n != 3)
        throw std::invalid_argument("ghz_member_angle needs a three-qubit member");
    // pure member: |c000|^2 and |c111|^2 sit on the diagonal
    return 2 * std::atan2(std::sqrt(std::max(0.0, member.rho(7, 7).real())),
                          std::sqrt(std::max(0.0, member.rho(0, 0).real())));
}

}  // namespace mixtop
