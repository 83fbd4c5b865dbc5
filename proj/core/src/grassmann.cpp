#include "pfkit/grassmann.hpp"

namespace pfkit {

GElem<Ket2> coherent_state(const Ket2& f0, const Ket2& f1) { return {f0, f1, Ket2{}, -0.5 * f0}; }

GElem<Ket2> coherent_fermion() { return coherent_state(Ket2::basis(0), Ket2::basis(1)); }

GElem<Ket2> coherent_exponential(const Mat2& c, const Ket2& f0) {
    const GElem<Mat2> x{Mat2::zero(), adjoint(c), -c, Mat2::zero()};
    const GElem<Mat2> exp_x = constant(Mat2::identity()) + x + 0.5 * gmul(x, x);
    return gmul(exp_x, constant(f0));
}

double eigen_residual(const Mat2& op, const GElem<Ket2>& state) {
    return distance(apply(op, state), gmul(xi(), state));
}

BiCoherent bicoherent(const PFSystem& sys) {
    const auto f = fermion_basis(sys);
    const GElem<Ket2> coherent = coherent_exponential(sys.c_op, f[0]);

    BiCoherent out;
    out.phi_xi = coherent_state(sys.phi0, sys.phi1);
    out.psi_xi = coherent_state(sys.psi0, sys.psi1);
    out.phi_closed_form = distance(apply(sys.s_psi_invhalf, coherent), out.phi_xi);
    out.psi_closed_form = distance(apply(sys.s_psi_half, coherent), out.psi_xi);
    return out;
}

Mat2 resolution_check(const GElem<Ket2>& phi_xi, const GElem<Ket2>& psi_xi) {
    return berezin(gmul(phi_xi, conj(psi_xi)));
}

}  // namespace pfkit
