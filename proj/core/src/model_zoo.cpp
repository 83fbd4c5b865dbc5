#include "pfkit/model_zoo.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace pfkit {

namespace {

constexpr Complex kI{0.0, 1.0};

double hypot2(double x, double y) { return std::sqrt(x * x + y * y); }

ModelOutput assemble(std::string name, std::vector<std::pair<std::string, Complex>> params, const Mat2& a,
                     const Mat2& b, double tol) {
    const PFPair pair = verify_pf(a, b, tol);
    ModelOutput out{
        .name = std::move(name),
        .params = std::move(params),
        .pair = pair,
        .closed_forms = {{"a", a}, {"b", b}},
        .checks = {},
        .system = build_system(pair),
    };
    return out;
}

// Lowering/raising consistency of the printed vectors: b phi0 = phi1,
// a^dag psi0 = psi1, plus the vacuum conditions and <phi0, psi0> = 1.
void add_ladder_checks(ModelOutput& m) {
    const Mat2& a = m.matrix("a");
    const Mat2& b = m.matrix("b");
    const Ket2& phi0 = m.vector("phi0");
    const Ket2& phi1 = m.vector("phi1");
    const Ket2& psi0 = m.vector("psi0");
    const Ket2& psi1 = m.vector("psi1");
    m.checks["vacua"] = hypot2(norm(a * phi0), norm(adjoint(b) * psi0));
    m.checks["ladder"] = hypot2(norm(b * phi0 - phi1), norm(adjoint(a) * psi0 - psi1));
    Mat2 gram;
    const std::array<Ket2, 2> phi{phi0, phi1};
    const std::array<Ket2, 2> psi{psi0, psi1};
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t n = 0; n < 2; ++n) gram(k, n) = inner(phi[k], psi[n]);
    m.checks["biortho"] = frobenius(gram - Mat2::identity());
}

std::string range_message(std::string_view what, double value) {
    std::ostringstream os;
    os << what << " (got " << value << ")";
    return os.str();
}

double trace_normalized_distance(const Mat2& x, const Mat2& y) {
    return frobenius((1.0 / x.trace()) * x - (1.0 / y.trace()) * y);
}

}  // namespace

ModelOutput car_extension(Complex beta_a, Complex k, CarBranch branch, double tol) {
    if (beta_a == 0.0) throw ZeroParameter("beta_a");
    if (k == 0.0) throw ZeroParameter("k");

    const Mat2 c = standard_annihilator();
    const Mat2 c_dag = adjoint(c);
    const Ket2 f0 = Ket2::basis(0);
    const Ket2 f1 = Ket2::basis(1);
    const bool creation = branch == CarBranch::Creation;

    const Mat2 a = creation ? beta_a * c_dag : beta_a * c;
    const Mat2 b = creation ? (1.0 / beta_a) * c : (1.0 / beta_a) * c_dag;
    // Vacuum of a is f1 on the creation branch and f0 on the other.
    const Ket2& vac = creation ? f1 : f0;
    const Ket2& exc = creation ? f0 : f1;

    ModelOutput m = assemble("car", {{"beta_a", beta_a}, {"k", k}, {"branch", creation ? 1.0 : 2.0}}, a, b, tol);
    m.closed_forms["phi0"] = k * vac;
    m.closed_forms["phi1"] = (k / beta_a) * exc;
    m.closed_forms["psi0"] = (1.0 / std::conj(k)) * vac;
    m.closed_forms["psi1"] = (std::conj(beta_a) / std::conj(k)) * exc;
    m.closed_forms["f0"] = f0;
    m.closed_forms["f1"] = f1;
    add_ladder_checks(m);

    const Mat2 n0 = c_dag * c;
    const Mat2 expected_n = creation ? Mat2::identity() - n0 : n0;
    m.checks["number_operator"] = frobenius(b * a - expected_n);
    return m;
}

ModelOutput alpha_model(double k, double alpha, double tol) {
    if (!(k > 0.0)) throw ParameterOutOfRange(range_message("k must be positive", k));
    if (!(alpha > -1.0 && alpha < 1.0)) throw ParameterOutOfRange(range_message("alpha must lie in (-1, 1)", alpha));

    const double w = 1.0 / (1.0 - alpha * alpha);
    const Mat2 a = w * Mat2::from_rows(-alpha, 1.0, -alpha * alpha, alpha);
    const Mat2 b = w * Mat2::from_rows(alpha, -alpha * alpha, 1.0, -alpha);

    ModelOutput m = assemble("alpha", {{"k", k}, {"alpha", alpha}}, a, b, tol);
    const double kw = 1.0 / (k * (1.0 - alpha * alpha));
    m.closed_forms["phi0"] = Ket2{k, k * alpha};
    m.closed_forms["phi1"] = Ket2{k * alpha, k};
    m.closed_forms["psi0"] = Ket2{kw, -kw * alpha};
    m.closed_forms["psi1"] = Ket2{-kw * alpha, kw};

    const double p = 1.0 + alpha * alpha;
    const Mat2 s_phi = (k * k) * Mat2::from_rows(p, 2.0 * alpha, 2.0 * alpha, p);
    const Mat2 s_psi = (w * w / (k * k)) * Mat2::from_rows(p, -2.0 * alpha, -2.0 * alpha, p);
    const Mat2 s_phi_half = k * Mat2::from_rows(1.0, alpha, alpha, 1.0);
    const Mat2 s_phi_invhalf = kw * Mat2::from_rows(1.0, -alpha, -alpha, 1.0);
    const Mat2 c = standard_annihilator();
    m.closed_forms["s_phi"] = s_phi;
    m.closed_forms["s_psi"] = s_psi;
    m.closed_forms["s_phi_half"] = s_phi_half;
    m.closed_forms["s_phi_invhalf"] = s_phi_invhalf;
    m.closed_forms["c"] = c;
    m.closed_forms["c_dag"] = adjoint(c);
    m.closed_forms["f0"] = Ket2::basis(0);
    m.closed_forms["f1"] = Ket2::basis(1);
    add_ladder_checks(m);

    const Mat2 id = Mat2::identity();
    m.checks["metric_inverse"] = frobenius(s_phi * s_psi - id);
    m.checks["metric_sums"] = hypot2(
        frobenius(s_phi - outer(m.vector("phi0"), m.vector("phi0")) - outer(m.vector("phi1"), m.vector("phi1"))),
        frobenius(s_psi - outer(m.vector("psi0"), m.vector("psi0")) - outer(m.vector("psi1"), m.vector("psi1"))));
    m.checks["sqrt"] = hypot2(frobenius(s_phi_half * s_phi_half - s_phi), frobenius(s_phi_half * s_phi_invhalf - id));
    m.checks["fermion_a"] = frobenius(s_phi_invhalf * a * s_phi_half - c);
    m.checks["fermion_b"] = frobenius(s_phi_invhalf * b * s_phi_half - adjoint(c));
    m.checks["basis_to_f"] = hypot2(norm(s_phi_invhalf * m.vector("phi0") - Ket2::basis(0)),
                                    norm(s_phi_invhalf * m.vector("phi1") - Ket2::basis(1)));
    return m;
}

ModelOutput two_level_atom(double delta, Complex omega, double tol) {
    const double mod = std::abs(omega);
    const double gap = mod * mod - delta * delta;
    if (!(gap > tol)) throw ExceptionalPoint(range_message("|omega|^2 - delta^2 must be positive", gap));
    const double big_omega = std::sqrt(gap);
    const double theta = std::arg(omega);
    const Complex e_p = std::exp(kI * theta);
    const Complex e_m = std::conj(e_p);

    const Mat2 h_eff = 0.5 * Mat2::from_rows(-kI * delta, std::conj(omega), omega, kI * delta);
    const Complex plus = big_omega + kI * delta;
    const Complex minus = big_omega - kI * delta;
    const double w = 1.0 / (2.0 * big_omega);
    const Mat2 a = w * Mat2::from_rows(-mod, -e_m * plus, e_p * minus, mod);
    const Mat2 b = w * Mat2::from_rows(-mod, e_m * minus, -e_p * plus, mod);

    ModelOutput m = assemble("two-level", {{"delta", delta}, {"omega", omega}}, a, b, tol);

    // k = 1; k' fixed by <phi0, psi0> = conj(k) k' (1 + (Omega + i delta)^2 / |omega|^2) = 1.
    const Complex k = 1.0;
    const Complex k_prime = 1.0 / (std::conj(k) * (1.0 + plus * plus / (mod * mod)));
    const Ket2 phi0 = k * Ket2{1.0, -e_p * minus / mod};
    const Ket2 psi0 = k_prime * Ket2{1.0, -e_p * plus / mod};
    const Ket2 phi1 = k * Ket2{(kI * delta - big_omega) / mod, -e_p};
    const Ket2 psi1 = k_prime * Ket2{(-kI * delta - big_omega) / mod, -e_p};
    const double k2 = std::norm(k);
    const Mat2 s_phi = (2.0 * k2) * Mat2::from_rows(1.0, -kI * delta / mod * e_m, kI * delta / mod * e_p, 1.0);
    const Mat2 s_psi = (mod * mod / (2.0 * k2 * gap)) *
                       Mat2::from_rows(1.0, kI * delta / mod * e_m, -kI * delta / mod * e_p, 1.0);

    m.closed_forms["h_eff"] = h_eff;
    m.closed_forms["phi0"] = phi0;
    m.closed_forms["phi1"] = phi1;
    m.closed_forms["psi0"] = psi0;
    m.closed_forms["psi1"] = psi1;
    m.closed_forms["s_phi"] = s_phi;
    m.closed_forms["s_psi"] = s_psi;
    m.params.emplace_back("Omega", big_omega);
    m.params.emplace_back("theta", theta);
    add_ladder_checks(m);

    const Mat2 id = Mat2::identity();
    m.checks["factorization"] = frobenius(h_eff - big_omega * (b * a - 0.5 * id));
    const double half = 0.5 * big_omega;
    const Mat2 h_dag = adjoint(h_eff);
    m.checks["eigen_relations"] = std::max({norm(h_eff * phi0 + half * phi0), norm(h_eff * phi1 - half * phi1),
                                            norm(h_dag * psi0 + half * psi0), norm(h_dag * psi1 - half * psi1)});
    m.checks["metric_inverse"] = frobenius(s_phi * s_psi - id);
    m.checks["metric_sums"] = hypot2(frobenius(s_phi - outer(phi0, phi0) - outer(phi1, phi1)),
                                     frobenius(s_psi - outer(psi0, psi0) - outer(psi1, psi1)));

    // <H f, g>_S = <f, H g>_S with <f, g>_S = <S_phi^{-1/2} f, S_phi^{-1/2} g> = f^dag S_psi g.
    std::mt19937_64 gen(0x5eed);
    std::normal_distribution<double> gauss;
    auto draw = [&] {
        Ket2 v;
        v.c0 = Complex(gauss(gen), gauss(gen));
        v.c1 = Complex(gauss(gen), gauss(gen));
        return v;
    };
    double symmetry = 0.0;
    for (int i = 0; i < 16; ++i) {
        const Ket2 f = draw();
        const Ket2 g = draw();
        symmetry = std::max(symmetry, std::abs(inner(h_eff * f, s_psi * g) - inner(f, s_psi * (h_eff * g))));
    }
    m.checks["s_inner_symmetry"] = symmetry;
    return m;
}

ModelOutput biortho_hamiltonian(double theta, double phi, double eps0, double eps1, double tol) {
    const double ch = std::cosh(theta);
    const double sh = std::sinh(theta);
    const Complex e_p = std::exp(kI * phi);
    const Complex e_m = std::conj(e_p);

    const Ket2 phi0{ch, sh * e_m};
    const Ket2 phi1{sh * e_p, ch};
    const Ket2 psi0{ch, -sh * e_m};
    const Ket2 psi1{-sh * e_p, ch};

    const Mat2 a = Mat2::from_rows(-sh * ch * e_m, ch * ch, -sh * sh * e_m * e_m, sh * ch * e_m);
    const Mat2 b = Mat2::from_rows(sh * ch * e_p, -sh * sh * e_p * e_p, ch * ch, -sh * ch * e_p);
    const double gap = eps1 - eps0;
    const Mat2 h = Mat2::from_rows(eps0 * ch * ch - eps1 * sh * sh, gap * sh * ch * e_p, -gap * sh * ch * e_m,
                                   -eps0 * sh * sh + eps1 * ch * ch);
    const Mat2 s_psi = Mat2::from_rows(std::cosh(2.0 * theta), -std::sinh(2.0 * theta) * e_p,
                                       -std::sinh(2.0 * theta) * e_m, std::cosh(2.0 * theta));
    const Mat2 h_self = Mat2::diag(eps0, eps1);

    ModelOutput m = assemble("biortho", {{"theta", theta}, {"phi", phi}, {"eps0", eps0}, {"eps1", eps1}}, a, b, tol);
    m.closed_forms["phi0"] = phi0;
    m.closed_forms["phi1"] = phi1;
    m.closed_forms["psi0"] = psi0;
    m.closed_forms["psi1"] = psi1;
    m.closed_forms["h"] = h;
    m.closed_forms["s_psi"] = s_psi;
    m.closed_forms["h_selfadjoint"] = h_self;
    add_ladder_checks(m);

    const Mat2 id = Mat2::identity();
    const Mat2 spectral = eps0 * outer(phi0, psi0) + eps1 * outer(phi1, psi1);
    m.checks["completeness"] = frobenius(outer(phi0, psi0) + outer(phi1, psi1) - id);
    m.checks["spectral_form"] = frobenius(h - spectral);
    m.checks["a_dyad"] = frobenius(a - outer(phi0, psi1));
    m.checks["b_dyad"] = frobenius(b - outer(phi1, psi0));
    m.checks["factorization"] = frobenius(h - (gap * (b * a) + eps0 * id));
    m.checks["metric_sum"] = frobenius(s_psi - outer(psi0, psi0) - outer(psi1, psi1));
    m.checks["intertwining"] = frobenius(s_psi * h - adjoint(h) * s_psi);
    const Mat2 root = sqrt_posdef2(s_psi, tol);
    m.checks["selfadjoint_diag"] = frobenius(root * h * inv2(root, tol) - h_self);
    return m;
}

std::map<std::string, double> cross_validate(const ModelOutput& model) {
    const PFSystem& sys = model.system;
    const auto has = [&](const char* key) { return model.closed_forms.contains(key); };

    std::map<std::string, double> out;
    out["pair"] = hypot2(frobenius(model.matrix("a") - sys.pair.a()), frobenius(model.matrix("b") - sys.pair.b()));
    if (has("phi0") && has("psi0"))
        out["projector_0"] = frobenius(outer(model.vector("phi0"), model.vector("psi0")) - outer(sys.phi0, sys.psi0));
    if (has("phi1") && has("psi1"))
        out["projector_1"] = frobenius(outer(model.vector("phi1"), model.vector("psi1")) - outer(sys.phi1, sys.psi1));
    if (has("s_phi")) out["s_phi_shape"] = trace_normalized_distance(model.matrix("s_phi"), sys.s_phi);
    if (has("s_psi")) out["s_psi_shape"] = trace_normalized_distance(model.matrix("s_psi"), sys.s_psi);
    out["relations_max"] = check_relations(sys).max();
    return out;
}

}  // namespace pfkit
