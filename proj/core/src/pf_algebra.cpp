#include "pfkit/pf_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace pfkit {

namespace {

std::string residual_message(std::string_view what, std::string_view relation, double residual) {
    std::ostringstream os;
    os << what << ": relation '" << relation << "' violated (residual " << residual << ")";
    return os.str();
}

std::string overlap_message(double overlap) {
    std::ostringstream os;
    os << "vacua are orthogonal (|<phi0, psi0>| = " << overlap << "); cannot biorthonormalize";
    return os.str();
}

std::string intertwine_message(double residual) {
    std::ostringstream os;
    os << "S_psi H != H^dag S_psi (residual " << residual << ")";
    return os.str();
}

double hypot2(double x, double y) { return std::sqrt(x * x + y * y); }

}  // namespace

NotPseudoFermion::NotPseudoFermion(std::string rel, double res)
    : PfError(residual_message("not a pseudo-fermion pair", rel, res)), relation(std::move(rel)), residual(res) {}

NotFermion::NotFermion(std::string rel, double res)
    : PfError(residual_message("not a fermion operator", rel, res)), relation(std::move(rel)), residual(res) {}

VacuumNotFound::VacuumNotFound(std::string which)
    : PfError("no nonzero vector annihilated by " + which + " (operator has full rank)") {}

DegeneratePairing::DegeneratePairing(double overlap) : PfError(overlap_message(overlap)) {}

NotIntertwined::NotIntertwined(double res) : PfError(intertwine_message(res)), residual(res) {}

std::array<std::pair<std::string_view, double>, RelationReport::kSize> RelationReport::items() const {
    return {{{"anticomm_ab", anticomm_ab},
             {"a_squared", a_squared},
             {"b_squared", b_squared},
             {"biortho", biortho},
             {"metric_inverse", metric_inverse},
             {"intertwine_N", intertwine_N},
             {"intertwine_Ndag", intertwine_Ndag},
             {"eq224_a", eq224_a},
             {"eq224_b", eq224_b},
             {"eq225_N", eq225_N},
             {"eq225_Ndag", eq225_Ndag},
             {"eq231_forward", eq231_forward},
             {"eq231_backward", eq231_backward}}};
}

double RelationReport::max() const {
    double out = 0.0;
    for (const auto& [name, value] : items()) out = std::max(out, value);
    return out;
}

Mat2 standard_annihilator() { return Mat2::from_rows(0.0, 1.0, 0.0, 0.0); }

PFPair verify_pf(const Mat2& a, const Mat2& b, double tol) {
    if (!is_finite(a) || !is_finite(b)) throw PfError("operator pair has non-finite entries");
    const Mat2 id = Mat2::identity();
    if (const double r = frobenius(anticommutator(a, b) - id); r > tol) throw NotPseudoFermion("anticomm_ab", r);
    if (const double r = frobenius(a * a); r > tol) throw NotPseudoFermion("a_squared", r);
    if (const double r = frobenius(b * b); r > tol) throw NotPseudoFermion("b_squared", r);
    if (frobenius(a) <= tol) throw NotPseudoFermion("a_nonzero", frobenius(a));
    if (frobenius(b) <= tol) throw NotPseudoFermion("b_nonzero", frobenius(b));
    return PFPair(a, b, tol);
}

PFSystem build_system(const PFPair& pair) {
    const double tol = pair.tol();
    const Mat2& a = pair.a();
    const Mat2& b = pair.b();

    Ket2 phi0;
    try {
        phi0 = nullspace2(a, tol);
    } catch (const LinalgError&) {
        throw VacuumNotFound("a");
    }
    Ket2 dual;
    try {
        dual = nullspace2(adjoint(b), tol);
    } catch (const LinalgError&) {
        throw VacuumNotFound("b^dag");
    }
    // phi0 keeps unit norm; the full complex rescaling lands on psi0.
    const Complex overlap = inner(phi0, dual);
    if (std::abs(overlap) <= tol) throw DegeneratePairing(std::abs(overlap));
    const Ket2 psi0 = (1.0 / overlap) * dual;

    const Ket2 phi1 = b * phi0;
    const Ket2 psi1 = adjoint(a) * psi0;

    const Mat2 s_phi = outer(phi0, phi0) + outer(phi1, phi1);
    const Mat2 s_psi = outer(psi0, psi0) + outer(psi1, psi1);
    const Mat2 s_psi_half = sqrt_posdef2(s_psi, tol);
    const Mat2 s_psi_invhalf = inv2(s_psi_half, tol);

    return PFSystem{
        .pair = pair,
        .phi0 = phi0,
        .phi1 = phi1,
        .psi0 = psi0,
        .psi1 = psi1,
        .s_phi = s_phi,
        .s_psi = s_psi,
        .s_psi_half = s_psi_half,
        .s_psi_invhalf = s_psi_invhalf,
        .n_op = b * a,
        .n_dag = adjoint(a) * adjoint(b),
        .c_op = s_psi_half * a * s_psi_invhalf,
        .t_op = s_psi_invhalf,
    };
}

RelationReport check_relations(const PFSystem& sys) {
    const Mat2& a = sys.pair.a();
    const Mat2& b = sys.pair.b();
    const Mat2 id = Mat2::identity();
    const Mat2 n0 = adjoint(sys.c_op) * sys.c_op;

    Mat2 gram;
    const std::array<Ket2, 2> phi{sys.phi0, sys.phi1};
    const std::array<Ket2, 2> psi{sys.psi0, sys.psi1};
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t n = 0; n < 2; ++n) gram(k, n) = inner(phi[k], psi[n]);

    RelationReport r;
    r.anticomm_ab = frobenius(anticommutator(a, b) - id);
    r.a_squared = frobenius(a * a);
    r.b_squared = frobenius(b * b);
    r.biortho = frobenius(gram - id);
    r.metric_inverse = frobenius(sys.s_phi * sys.s_psi - id);
    r.intertwine_N = frobenius(sys.s_psi * sys.n_op - sys.n_dag * sys.s_psi);
    r.intertwine_Ndag = frobenius(sys.s_phi * sys.n_dag - sys.n_op * sys.s_phi);
    // Lowering relations, together with the vacuum conditions.
    r.eq224_a = hypot2(norm(a * sys.phi0), norm(a * sys.phi1 - sys.phi0));
    r.eq224_b = hypot2(norm(adjoint(b) * sys.psi0), norm(adjoint(b) * sys.psi1 - sys.psi0));
    r.eq225_N = hypot2(norm(sys.n_op * sys.phi0), norm(sys.n_op * sys.phi1 - sys.phi1));
    r.eq225_Ndag = hypot2(norm(sys.n_dag * sys.psi0), norm(sys.n_dag * sys.psi1 - sys.psi1));
    r.eq231_forward = frobenius(sys.n_op - sys.s_psi_invhalf * n0 * sys.s_psi_half);
    r.eq231_backward = frobenius(sys.n_dag - sys.s_psi_half * n0 * sys.s_psi_invhalf);
    return r;
}

PFPair pseudofermionize(const Mat2& c, const Mat2& t, double tol) {
    if (const double r = frobenius(anticommutator(c, adjoint(c)) - Mat2::identity()); r > tol)
        throw NotFermion("anticomm_c_cdag", r);
    if (const double r = frobenius(c * c); r > tol) throw NotFermion("c_squared", r);
    try {
        if (!posdef_check(t, tol)) throw NotPositive();
    } catch (const NotHermitian&) {
        throw NotPositive();
    }
    const Mat2 t_inv = inv2(t, tol);
    return verify_pf(t * c * t_inv, t * adjoint(c) * t_inv, tol);
}

Fermionization fermionize(const PFSystem& sys) { return {sys.c_op, sys.t_op}; }

std::array<Ket2, 2> fermion_basis(const PFSystem& sys) {
    return {sys.s_psi_half * sys.phi0, sys.s_psi_half * sys.phi1};
}

Mat2 hamiltonian_from_pf(const PFSystem& sys, double eps0, double eps1) {
    return (eps1 - eps0) * sys.n_op + Mat2::diag(eps0, eps0);
}

Mat2 similar_selfadjoint(const PFSystem& sys, const Mat2& h) {
    const double residual = frobenius(sys.s_psi * h - adjoint(h) * sys.s_psi);
    const double scale = std::max(1.0, frobenius(sys.s_psi) * frobenius(h));
    if (residual > sys.pair.tol() * scale) throw NotIntertwined(residual);
    return sys.s_psi_half * h * sys.s_psi_invhalf;
}

Complex s_inner(const PFSystem& sys, const Ket2& f, const Ket2& g) { return inner(f, sys.s_psi * g); }

Mat2 random_positive_metric(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    Mat2 g;
    for (auto& row : g.m)
        for (auto& z : row) {
            const double re = gauss(gen);
            z = Complex(re, gauss(gen));
        }
    Mat2 t = g * adjoint(g) + Mat2::diag(0.1, 0.1);
    t(0, 0) = t(0, 0).real();
    t(1, 1) = t(1, 1).real();
    t(1, 0) = std::conj(t(0, 1));
    return t;
}

PFPair random_pf_pair(std::uint64_t seed) {
    return pseudofermionize(standard_annihilator(), random_positive_metric(seed), kDefaultTol);
}

}  // namespace pfkit
