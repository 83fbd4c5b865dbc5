#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "pfkit/grassmann.hpp"
#include "pfkit/model_zoo.hpp"

using namespace pfkit;

static_assert(!Composable<Ket2, Ket2>);
static_assert(!Composable<Ket2, Mat2>);
static_assert(!Composable<Bra2, Bra2>);
static_assert(Composable<Ket2, Bra2>);
static_assert(Composable<Bra2, Ket2>);
static_assert(Composable<Mat2, Ket2>);
static_assert(Composable<Complex, Ket2>);
static_assert(std::is_same_v<product_t<Ket2, Bra2>, Mat2>);
static_assert(std::is_same_v<product_t<Bra2, Ket2>, Complex>);

namespace {

const Mat2 kC = Mat2::from_rows(0.0, 1.0, 0.0, 0.0);

double gdist(const GElem<Complex>& x, const GElem<Complex>& y) { return distance(x, y); }

PFSystem fermion_system() { return build_system(verify_pf(kC, adjoint(kC))); }

}  // namespace

TEST_CASE("gmul examples") {
    CHECK(gmul(xi(), xi()) == GElem<Complex>{});
    CHECK(gmul(xibar(), xibar()) == GElem<Complex>{});
    CHECK(gmul(xi(), xibar()) == GElem<Complex>{0.0, 0.0, 0.0, -1.0});
    CHECK(gmul(xibar(), xi()) == GElem<Complex>{0.0, 0.0, 0.0, 1.0});

    const GElem<Complex> half{1.0, 0.0, 0.0, -0.5};
    CHECK(gmul(half, half) == GElem<Complex>{1.0, 0.0, 0.0, -1.0});
}

TEST_CASE("gmul matches the word-based oracle") {
    std::mt19937_64 gen(51);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = oracle::random_gelem(gen);
        const auto y = oracle::random_gelem(gen);
        const auto expected = oracle::to_gelem(oracle::mul(oracle::from_gelem(x), oracle::from_gelem(y)));
        CHECK(gdist(gmul(x, y), expected) <= 1e-14);
    }
}

TEST_CASE("gmul is associative and odd elements square to zero") {
    std::mt19937_64 gen(52);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = oracle::random_gelem(gen);
        const auto y = oracle::random_gelem(gen);
        const auto z = oracle::random_gelem(gen);
        CHECK(gdist(gmul(gmul(x, y), z), gmul(x, gmul(y, z))) <= 1e-12);

        const GElem<Complex> odd{0.0, x.xi, x.xibar, 0.0};
        const auto sq = gmul(odd, odd);
        CHECK(sq.one == Complex{});
        CHECK(std::abs(sq.xibarxi) <= 1e-15);
    }
}

TEST_CASE("operator payloads commute with the generators") {
    std::mt19937_64 gen(53);
    const Mat2 m = oracle::random_mat(gen);
    const Ket2 v = oracle::random_ket(gen);
    const GElem<Ket2> left = gmul(constant(m), gmul(xi(), constant(v)));
    const GElem<Ket2> right = gmul(xi(), constant(m * v));
    CHECK(distance(left, right) == 0.0);
}

TEST_CASE("conj") {
    CHECK(conj(xi()) == xibar());
    CHECK(conj(xibar()) == xi());
    CHECK(conj(constant(Complex(1.0, 2.0))) == constant(Complex(1.0, -2.0)));
    CHECK(conj(GElem<Complex>{0.0, 0.0, 0.0, 1.0}) == GElem<Complex>{0.0, 0.0, 0.0, 1.0});

    const Ket2 f0{1.0, Complex(0.0, 1.0)};
    const Ket2 f1{2.0, -1.0};
    const GElem<Bra2> c = conj(coherent_state(f0, f1));
    CHECK(c.one == adjoint(f0));
    CHECK(c.xi == Bra2{});
    CHECK(c.xibar == adjoint(f1));
    CHECK(c.xibarxi == -0.5 * adjoint(f0));
}

TEST_CASE("conj is an involutive anti-automorphism") {
    std::mt19937_64 gen(54);
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = oracle::random_gelem(gen);
        const auto y = oracle::random_gelem(gen);
        CHECK(conj(conj(x)) == x);
        CHECK(gdist(conj(x), oracle::to_gelem(oracle::conj(oracle::from_gelem(x)))) == 0.0);
        CHECK(gdist(conj(gmul(x, y)), gmul(conj(y), conj(x))) <= 1e-14);
    }
}

TEST_CASE("berezin") {
    CHECK(kBerezinSign == -1.0);
    CHECK(berezin(constant(Complex(1.0))) == Complex{});
    CHECK(berezin(xi()) == Complex{});
    CHECK(berezin(xibar()) == Complex{});
    CHECK(berezin(gmul(xibar(), xi())) == Complex(-1.0));
    CHECK(berezin(gmul(xi(), xibar())) == Complex(1.0));

    std::mt19937_64 gen(55);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = oracle::random_gelem(gen);
        CHECK(berezin(x) == oracle::berezin(oracle::from_gelem(x)));
    }
}

TEST_CASE("fermionic coherent state resolves the identity") {
    const GElem<Ket2> phi = coherent_fermion();
    CHECK(frobenius(berezin(gmul(phi, conj(phi))) - Mat2::identity()) == 0.0);
    CHECK(frobenius(oracle::resolution(phi, phi) - Mat2::identity()) == 0.0);
}

TEST_CASE("coherent_fermion") {
    const GElem<Ket2> phi = coherent_fermion();
    CHECK(phi.one == Ket2::basis(0));
    CHECK(phi.xi == Ket2::basis(1));
    CHECK(eigen_residual(kC, phi) == 0.0);
    CHECK(distance(coherent_exponential(kC, Ket2::basis(0)), phi) == 0.0);
}

TEST_CASE("bicoherent on standard fermions") {
    const BiCoherent bc = bicoherent(fermion_system());
    CHECK(distance(bc.phi_xi, coherent_fermion()) == 0.0);
    CHECK(distance(bc.psi_xi, coherent_fermion()) == 0.0);
    CHECK(bc.phi_closed_form == 0.0);
    CHECK(bc.psi_closed_form == 0.0);
    CHECK(resolution_check(bc.phi_xi, bc.psi_xi) == Mat2::identity());
}

TEST_CASE("bicoherent eigen-relations on the models") {
    const ModelOutput alpha = alpha_model(1.0, 0.5);
    const BiCoherent a_bc = bicoherent(alpha.system);
    CHECK(eigen_residual(alpha.pair.a(), a_bc.phi_xi) <= 1e-12);
    CHECK(eigen_residual(adjoint(alpha.pair.b()), a_bc.psi_xi) <= 1e-12);
    CHECK(a_bc.phi_closed_form <= 1e-12);

    const ModelOutput two = two_level_atom(0.6, 1.0);
    const BiCoherent t_bc = bicoherent(two.system);
    CHECK(eigen_residual(adjoint(two.pair.b()), t_bc.psi_xi) <= 1e-12);
    CHECK(eigen_residual(two.pair.a(), t_bc.phi_xi) <= 1e-12);
    CHECK(t_bc.psi_closed_form <= 1e-12);
}

TEST_CASE("the ladder term enters with a plus sign") {
    // With -xi phi1 the xi coefficient of a phi_xi - xi phi_xi is -2 phi0.
    const ModelOutput alpha = alpha_model(1.0, 0.5);
    const PFSystem& sys = alpha.system;
    const GElem<Ket2> flipped = coherent_state(sys.phi0, -1.0 * sys.phi1);
    CHECK(eigen_residual(sys.pair.a(), flipped) == doctest::Approx(2.0 * norm(sys.phi0)));
    CHECK(eigen_residual(sys.pair.a(), coherent_state(sys.phi0, sys.phi1)) <= 1e-14);
}

TEST_CASE("resolution_check") {
    const ModelOutput bio = biortho_hamiltonian(0.3, 0.7, -1.0, 2.0);
    const BiCoherent bc = bicoherent(bio.system);
    const Mat2 r = resolution_check(bc.phi_xi, bc.psi_xi);
    CHECK(frobenius(r - Mat2::identity()) <= 1e-12);
    CHECK(frobenius(r - oracle::resolution(bc.phi_xi, bc.psi_xi)) <= 1e-15);
    CHECK(frobenius(r - outer(bio.system.phi0, bio.system.psi0) - outer(bio.system.phi1, bio.system.psi1)) <= 1e-15);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const PFSystem sys = build_system(random_pf_pair(seed));
        const BiCoherent rb = bicoherent(sys);
        CHECK(frobenius(resolution_check(rb.phi_xi, rb.psi_xi) - Mat2::identity()) <= 1e-10);
        CHECK(eigen_residual(sys.pair.a(), rb.phi_xi) <= 1e-12);
        CHECK(eigen_residual(adjoint(sys.pair.b()), rb.psi_xi) <= 1e-12);
        CHECK(std::max(rb.phi_closed_form, rb.psi_closed_form) <= 1e-10);
    }
}
