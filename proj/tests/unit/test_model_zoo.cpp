#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "pfkit/metric_solver.hpp"
#include "pfkit/model_zoo.hpp"

using namespace pfkit;

namespace {

const Complex I{0.0, 1.0};
const Mat2 kC = Mat2::from_rows(0.0, 1.0, 0.0, 0.0);
const Mat2 kCdag = Mat2::from_rows(0.0, 0.0, 1.0, 0.0);

bool close(const Mat2& x, const Mat2& y, double tol) { return oracle::max_abs_diff(x, y) <= tol; }

double max_value(const std::map<std::string, double>& m) {
    double out = 0.0;
    for (const auto& [k, v] : m) out = std::max(out, v);
    return out;
}

// The cosh/sinh matrices of the biorthonormal example, entry by entry.
Mat2 printed_h(double th, double ph, double e0, double e1) {
    const double ch = std::cosh(th), sh = std::sinh(th);
    const Complex e = std::polar(1.0, ph);
    return Mat2::from_rows(e0 * ch * ch - e1 * sh * sh, (e1 - e0) * sh * ch * e, -(e1 - e0) * sh * ch * std::conj(e),
                           -e0 * sh * sh + e1 * ch * ch);
}

Mat2 printed_a(double th, double ph) {
    const double ch = std::cosh(th), sh = std::sinh(th);
    const Complex e = std::polar(1.0, -ph);
    return Mat2::from_rows(-sh * ch * e, ch * ch, -sh * sh * e * e, sh * ch * e);
}

Mat2 printed_b(double th, double ph) {
    const double ch = std::cosh(th), sh = std::sinh(th);
    const Complex e = std::polar(1.0, ph);
    return Mat2::from_rows(sh * ch * e, -sh * sh * e * e, ch * ch, -sh * ch * e);
}

}  // namespace

TEST_CASE("car_extension") {
    const ModelOutput unit = car_extension(1.0, 1.0);
    CHECK(unit.pair.a() == kCdag);
    CHECK(unit.pair.b() == kC);
    CHECK(unit.vector("phi0") == Ket2::basis(1));
    CHECK(max_value(unit.checks) == 0.0);

    const Mat2 n0 = kCdag * kC;
    for (const Complex beta : {Complex(1.0), Complex(2.0), Complex(0.3, -1.7), Complex(-4.0, 0.5)}) {
        const ModelOutput m = car_extension(beta, Complex(1.0, 1.0));
        CHECK(frobenius(m.system.n_op - (Mat2::identity() - n0)) <= 1e-15);
        CHECK(m.checks.at("number_operator") <= 1e-15);
        CHECK(max_value(m.checks) <= 1e-14);
        CHECK(max_value(cross_validate(m)) <= 1e-12);
    }

    CHECK_NOTHROW(verify_pf(car_extension(2.0, Complex(1.0, 1.0)).pair.a(), car_extension(2.0, Complex(1.0, 1.0)).pair.b(), 1e-14));

    const ModelOutput other = car_extension(Complex(0.5, 0.5), 2.0, CarBranch::Annihilation);
    CHECK(close(other.pair.a(), Complex(0.5, 0.5) * kC, 0.0));
    CHECK(frobenius(other.system.n_op - n0) <= 1e-15);
    CHECK(max_value(other.checks) <= 1e-14);
    CHECK(max_value(cross_validate(other)) <= 1e-12);

    CHECK_THROWS_AS(car_extension(0.0, 1.0), ZeroParameter);
    CHECK_THROWS_AS(car_extension(1.0, 0.0), ZeroParameter);
}

TEST_CASE("alpha_model") {
    const ModelOutput zero = alpha_model(1.0, 0.0);
    CHECK(zero.pair.a() == kC);
    CHECK(zero.matrix("s_phi") == Mat2::identity());

    const ModelOutput half = alpha_model(1.0, 0.5);
    CHECK(close(half.pair.a(), Mat2::from_rows(-2.0 / 3.0, 4.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0), 1e-15));
    CHECK(close(half.matrix("s_phi_half"), Mat2::from_rows(1.0, 0.5, 0.5, 1.0), 0.0));
    CHECK(close(half.matrix("s_phi"), Mat2::from_rows(1.25, 1.0, 1.0, 1.25), 1e-15));
    CHECK(close(half.matrix("c"), kC, 1e-15));
    CHECK(max_value(half.checks) <= 1e-14);

    const ModelOutput scaled = alpha_model(2.5, -0.3);
    CHECK(close(scaled.matrix("s_phi_half"), 2.5 * Mat2::from_rows(1.0, -0.3, -0.3, 1.0), 1e-15));
    CHECK(max_value(scaled.checks) <= 1e-13);

    CHECK_THROWS_AS(alpha_model(1.0, 1.0), ParameterOutOfRange);
    CHECK_THROWS_AS(alpha_model(1.0, -1.0), ParameterOutOfRange);
    CHECK_THROWS_AS(alpha_model(0.0, 0.5), ParameterOutOfRange);
    CHECK_THROWS_AS(alpha_model(1.0, std::nan("")), ParameterOutOfRange);
}

TEST_CASE("two_level_atom") {
    const ModelOutput herm = two_level_atom(0.0, 1.0);
    CHECK(close(herm.matrix("h_eff"), 0.5 * Mat2::from_rows(0.0, 1.0, 1.0, 0.0), 0.0));
    CHECK(herm_distance(herm.matrix("h_eff")) == 0.0);
    CHECK(close(oracle::trace_normalized(herm.matrix("s_phi")), Mat2::identity(), 1e-15));

    const ModelOutput m = two_level_atom(0.6, 1.0);
    const auto ev = eigenvalues2(m.matrix("h_eff"));
    CHECK(std::abs(ev[0] + 0.4) <= 1e-15);
    CHECK(std::abs(ev[1] - 0.4) <= 1e-15);
    CHECK(close(oracle::trace_normalized(m.matrix("s_phi")), Mat2::from_rows(1.0, -0.6 * I, 0.6 * I, 1.0), 1e-15));
    CHECK(max_value(m.checks) <= 1e-12);

    CHECK_THROWS_AS(two_level_atom(1.0, 1.0), ExceptionalPoint);
    CHECK_THROWS_AS(two_level_atom(2.0, Complex(0.0, 1.0)), ExceptionalPoint);
}

TEST_CASE("biortho_hamiltonian") {
    const ModelOutput flat = biortho_hamiltonian(0.0, 0.4, -1.0, 2.0);
    CHECK(flat.vector("phi0") == Ket2::basis(0));
    CHECK(flat.vector("psi1") == Ket2::basis(1));
    CHECK(close(flat.matrix("s_psi"), Mat2::identity(), 0.0));
    CHECK(close(flat.matrix("h"), Mat2::diag(-1.0, 2.0), 0.0));

    const ModelOutput m = biortho_hamiltonian(0.3, 0.7, -1.0, 2.0);
    CHECK(close(m.matrix("h_selfadjoint"), Mat2::diag(-1.0, 2.0), 1e-12));
    CHECK(close(m.matrix("h"), printed_h(0.3, 0.7, -1.0, 2.0), 1e-14));
    CHECK(close(m.pair.a(), printed_a(0.3, 0.7), 1e-14));
    CHECK(close(m.pair.b(), printed_b(0.3, 0.7), 1e-14));
    CHECK(max_value(m.checks) <= 1e-12);

    const double c2 = std::cosh(0.6), s2 = std::sinh(0.6);
    const Mat2 s_psi = Mat2::from_rows(c2, -s2 * std::polar(1.0, 0.7), -s2 * std::polar(1.0, -0.7), c2);
    CHECK(close(m.matrix("s_psi"), s_psi, 1e-14));
}

TEST_CASE("biortho_hamiltonian over (theta, phi)") {
    std::mt19937_64 gen(71);
    std::uniform_real_distribution<double> th(-1.2, 1.2);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> lv(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = th(gen), p = ph(gen), e0 = lv(gen), e1 = lv(gen);
        const ModelOutput m = biortho_hamiltonian(t, p, e0, e1);
        CHECK(frobenius(anticommutator(m.pair.a(), m.pair.b()) - Mat2::identity()) <= 1e-12);
        CHECK(close(m.matrix("h"), printed_h(t, p, e0, e1), 1e-12));
        const auto ev = eigenvalues2(m.matrix("h"));
        CHECK(std::abs(ev[0] - std::min(e0, e1)) <= 1e-10);
        CHECK(std::abs(ev[1] - std::max(e0, e1)) <= 1e-10);
    }
}

TEST_CASE("closed forms agree with the pipeline across parameter grids") {
    std::mt19937_64 gen(72);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const Complex beta = std::polar(0.2 + 3.0 * unit(gen), 2.0 * std::numbers::pi * unit(gen));
        const Complex k = std::polar(0.2 + 3.0 * unit(gen), 2.0 * std::numbers::pi * unit(gen));
        const ModelOutput car = car_extension(beta, k, trial % 2 == 0 ? CarBranch::Creation : CarBranch::Annihilation);
        CHECK(max_value(cross_validate(car)) <= 1e-10);
        CHECK(max_value(car.checks) <= 1e-10);

        const ModelOutput alpha = alpha_model(0.2 + 3.0 * unit(gen), -0.9 + 1.8 * unit(gen));
        CHECK(max_value(cross_validate(alpha)) <= 1e-10);
        CHECK(max_value(alpha.checks) <= 1e-10);

        const double mag = 0.2 + 2.0 * unit(gen);
        const double delta = 0.95 * unit(gen) * mag;
        const ModelOutput two = two_level_atom(delta, std::polar(mag, 2.0 * std::numbers::pi * unit(gen)));
        CHECK(max_value(cross_validate(two)) <= 1e-10);
        CHECK(max_value(two.checks) <= 1e-10);

        const MetricSolution sol = solve_metric(two.matrix("h_eff"));
        REQUIRE(sol.representative);
        CHECK(close(*sol.representative, oracle::trace_normalized(two.matrix("s_psi")), 1e-9));

        const ModelOutput bio = biortho_hamiltonian(-1.2 + 2.4 * unit(gen), 2.0 * std::numbers::pi * unit(gen),
                                                    -2.0 + 4.0 * unit(gen), -2.0 + 4.0 * unit(gen));
        CHECK(max_value(cross_validate(bio)) <= 1e-10);
        CHECK(max_value(bio.checks) <= 1e-10);
    }
}

TEST_CASE("cross_validate keys") {
    const auto cv = cross_validate(alpha_model(1.0, 0.5));
    for (const char* key : {"pair", "projector_0", "projector_1", "s_phi_shape", "s_psi_shape", "relations_max"})
        CHECK(cv.contains(key));
}
