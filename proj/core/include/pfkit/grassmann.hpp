#pragma once

// Grassmann algebra on two generators xi, xibar with payload-valued
// coefficients, and Berezin integration.
//
// Elements are stored in the canonical monomial basis {1, xi, xibar, xibar xi}.
// Payloads (scalars, kets, bras, operators) are even: they commute with the
// generators, so products only pick up signs from reordering generators.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <utility>

#include "pfkit/linalg.hpp"
#include "pfkit/pf_algebra.hpp"

namespace pfkit {

template <class P>
struct GElem {
    P one{};
    P xi{};
    P xibar{};
    P xibarxi{};

    friend bool operator==(const GElem&, const GElem&) = default;
};

template <class L, class R>
concept Composable = requires(const L& l, const R& r) {
    { l * r };
};

template <class L, class R>
using product_t = decltype(std::declval<const L&>() * std::declval<const R&>());

template <class P>
GElem<P> constant(const P& p) {
    return {p, P{}, P{}, P{}};
}

inline GElem<Complex> xi() { return {0.0, 1.0, 0.0, 0.0}; }
inline GElem<Complex> xibar() { return {0.0, 0.0, 1.0, 0.0}; }

template <class P>
GElem<P> operator+(const GElem<P>& x, const GElem<P>& y) {
    return {x.one + y.one, x.xi + y.xi, x.xibar + y.xibar, x.xibarxi + y.xibarxi};
}

template <class P>
GElem<P> operator-(const GElem<P>& x, const GElem<P>& y) {
    return {x.one - y.one, x.xi - y.xi, x.xibar - y.xibar, x.xibarxi - y.xibarxi};
}

template <class P>
GElem<P> operator*(Complex s, const GElem<P>& x) {
    return {s * x.one, s * x.xi, s * x.xibar, s * x.xibarxi};
}

/// Normal-ordered product. xi xi = xibar xibar = 0 and xi xibar = -xibar xi;
/// payload order is preserved, so operator-valued coefficients multiply in
/// the order written.
template <class L, class R>
    requires Composable<L, R>
GElem<product_t<L, R>> gmul(const GElem<L>& x, const GElem<R>& y) {
    return {
        x.one * y.one,
        x.one * y.xi + x.xi * y.one,
        x.one * y.xibar + x.xibar * y.one,
        x.one * y.xibarxi + x.xibarxi * y.one + x.xibar * y.xi - x.xi * y.xibar,
    };
}

/// Involution: xi <-> xibar, products reversed (so xibar xi is
/// self-conjugate), payloads replaced by their adjoints (ket <-> bra).
template <class P>
auto conj(const GElem<P>& x) -> GElem<decltype(adjoint(x.one))> {
    return {adjoint(x.one), adjoint(x.xibar), adjoint(x.xi), adjoint(x.xibarxi)};
}

/// Sign of the double integral of xibar xi over dxi dxibar.
///
/// The single-variable rules (integral of 1 vanishes, integral of xi dxi is
/// 1) leave the ordering of the iterated integral open. The value -1, i.e.
/// integral(xi xibar dxi dxibar) = +1, is the one for which the fermionic
/// coherent states resolve the identity.
inline constexpr double kBerezinSign = -1.0;

/// Double integral over dxi dxibar: only the top monomial survives.
template <class P>
P berezin(const GElem<P>& x) {
    return kBerezinSign * x.xibarxi;
}

inline double payload_norm(Complex z) { return std::abs(z); }
inline double payload_norm(const Ket2& v) { return norm(v); }
inline double payload_norm(const Bra2& v) { return norm(adjoint(v)); }
inline double payload_norm(const Mat2& m) { return frobenius(m); }

/// Largest coefficient-wise distance between two elements.
template <class P>
double distance(const GElem<P>& x, const GElem<P>& y) {
    const GElem<P> d = x - y;
    return std::max({payload_norm(d.one), payload_norm(d.xi), payload_norm(d.xibar), payload_norm(d.xibarxi)});
}

/// Operator acting on a ket-valued element.
inline GElem<Ket2> apply(const Mat2& op, const GElem<Ket2>& state) { return gmul(constant(op), state); }

/// (1 - xibar xi / 2) f0 + xi f1.
GElem<Ket2> coherent_state(const Ket2& f0, const Ket2& f1);

/// Coherent state of the standard fermion on the canonical basis.
GElem<Ket2> coherent_fermion();

/// exp(c^dag xi - xibar c) f0, expanded; the series stops at second order
/// because every monomial of degree three vanishes.
GElem<Ket2> coherent_exponential(const Mat2& c, const Ket2& f0);

/// |op state - xi state| coefficient-wise.
double eigen_residual(const Mat2& op, const GElem<Ket2>& state);

struct BiCoherent {
    GElem<Ket2> phi_xi;
    GElem<Ket2> psi_xi;
    /// Distance between S_psi^{-+1/2} exp(c^dag xi - xibar c) f0 and the
    /// ladder-basis forms (1 - xibar xi / 2) phi0 + xi phi1, (same for psi).
    double phi_closed_form = 0.0;
    double psi_closed_form = 0.0;
};

/// phi_xi = (1 - xibar xi / 2) phi0 + xi phi1 and likewise psi_xi. The
/// residuals compare them with S_psi^{-+1/2} Phi_xi, Phi_xi being the
/// coherent state of the fermionized c on its own basis f_n.
BiCoherent bicoherent(const PFSystem& sys);

/// Integral of |phi_xi><psi_xi| over dxi dxibar.
Mat2 resolution_check(const GElem<Ket2>& phi_xi, const GElem<Ket2>& psi_xi);

}  // namespace pfkit
