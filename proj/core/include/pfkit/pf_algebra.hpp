#pragma once

// Pseudo-fermion pairs on C^2: validation, the vacuum/ladder construction,
// metric operators, and the similarity to ordinary fermions.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "pfkit/linalg.hpp"

namespace pfkit {

class PfError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {a,b} = 1, a^2 = 0 or b^2 = 0 fails beyond tolerance.
class NotPseudoFermion : public PfError {
public:
    NotPseudoFermion(std::string relation, double residual);
    std::string relation;
    double residual;
};

class NotFermion : public PfError {
public:
    NotFermion(std::string relation, double residual);
    std::string relation;
    double residual;
};

class VacuumNotFound : public PfError {
public:
    explicit VacuumNotFound(std::string which);
};

class DegeneratePairing : public PfError {
public:
    explicit DegeneratePairing(double overlap);
};

class NotIntertwined : public PfError {
public:
    explicit NotIntertwined(double residual);
    double residual;
};

/// Operator pair (a, b) that passed verify_pf. Only verify_pf and
/// pseudofermionize produce instances.
class PFPair {
public:
    const Mat2& a() const { return a_; }
    const Mat2& b() const { return b_; }
    double tol() const { return tol_; }

private:
    PFPair(Mat2 a, Mat2 b, double tol) : a_(a), b_(b), tol_(tol) {}
    friend PFPair verify_pf(const Mat2&, const Mat2&, double);

    Mat2 a_;
    Mat2 b_;
    double tol_;
};

/// Everything derived from a pair: the biorthonormal ladder bases, the two
/// metric operators with the square roots of S_psi, the number operators and
/// the fermionization data.
struct PFSystem {
    PFPair pair;
    Ket2 phi0, phi1;
    Ket2 psi0, psi1;
    Mat2 s_phi, s_psi;
    Mat2 s_psi_half, s_psi_invhalf;
    Mat2 n_op, n_dag;
    Mat2 c_op;
    Mat2 t_op;
};

struct RelationReport {
    double anticomm_ab = 0.0;
    double a_squared = 0.0;
    double b_squared = 0.0;
    double biortho = 0.0;
    double metric_inverse = 0.0;
    double intertwine_N = 0.0;
    double intertwine_Ndag = 0.0;
    double eq224_a = 0.0;
    double eq224_b = 0.0;
    double eq225_N = 0.0;
    double eq225_Ndag = 0.0;
    double eq231_forward = 0.0;
    double eq231_backward = 0.0;

    static constexpr std::size_t kSize = 13;
    std::array<std::pair<std::string_view, double>, kSize> items() const;
    double max() const;
};

struct Fermionization {
    Mat2 c;
    Mat2 t;
};

/// The standard annihilator [[0,1],[0,0]]: c e1 = e0, c e0 = 0.
Mat2 standard_annihilator();

PFPair verify_pf(const Mat2& a, const Mat2& b, double tol = kDefaultTol);

PFSystem build_system(const PFPair& pair);

RelationReport check_relations(const PFSystem& sys);

/// (T c T^-1, T c^dag T^-1) for a fermion c and positive T.
PFPair pseudofermionize(const Mat2& c, const Mat2& t, double tol = kDefaultTol);

/// c = S_psi^{1/2} a S_psi^{-1/2}, T = S_psi^{-1/2}.
Fermionization fermionize(const PFSystem& sys);

/// Orthonormal basis f_n = S_psi^{1/2} phi_n in which c acts as the
/// standard annihilator.
std::array<Ket2, 2> fermion_basis(const PFSystem& sys);

/// H = (eps1 - eps0) b a + eps0 1, with H phi_n = eps_n phi_n.
Mat2 hamiltonian_from_pf(const PFSystem& sys, double eps0, double eps1);

/// h = S_psi^{1/2} H S_psi^{-1/2}; requires S_psi H = H^dag S_psi.
Mat2 similar_selfadjoint(const PFSystem& sys, const Mat2& h);

/// Deformed inner product <f, g>_S = <S_psi^{1/2} f, S_psi^{1/2} g> = f^dag S_psi g.
Complex s_inner(const PFSystem& sys, const Ket2& f, const Ket2& g);

/// Deterministic in seed: T = G G^dag + 0.1 1 with complex Gaussian G,
/// then pseudofermionize(standard c, T).
PFPair random_pf_pair(std::uint64_t seed);

/// The positive T drawn by random_pf_pair for the same seed.
Mat2 random_positive_metric(std::uint64_t seed);

}  // namespace pfkit
