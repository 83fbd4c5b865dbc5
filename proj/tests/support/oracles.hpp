#pragma once

// Reference implementations used to cross-check the library. None of them
// share code with pfkit beyond the value types.

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pfkit/grassmann.hpp"
#include "pfkit/linalg.hpp"

namespace oracle {

using pfkit::Complex;
using pfkit::Ket2;
using pfkit::Mat2;
using pfkit::Mat4R;
using pfkit::Vec4R;

inline Eigen::Matrix2cd to_eigen(const Mat2& m) {
    Eigen::Matrix2cd e;
    e << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
    return e;
}

inline Mat2 from_eigen(const Eigen::Matrix2cd& e) { return Mat2::from_rows(e(0, 0), e(0, 1), e(1, 0), e(1, 1)); }

inline Eigen::Matrix4d to_eigen(const Mat4R& x) {
    Eigen::Matrix4d e;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e(i, j) = x(i, j);
    return e;
}

/// V diag(sqrt(lambda)) V^dag from a Hermitian eigendecomposition.
inline Mat2 sqrt_hermitian(const Mat2& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(to_eigen(m));
    const Eigen::Vector2d root = es.eigenvalues().cwiseSqrt();
    return from_eigen(es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint());
}

inline std::array<Complex, 2> eigenvalues(const Mat2& m) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(to_eigen(m), false);
    std::array<Complex, 2> ev{es.eigenvalues()(0), es.eigenvalues()(1)};
    std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return ev;
}

inline int rank(const Eigen::MatrixXd& x, double rel = 1e-10) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i) r += s(i) > rel * s(0) ? 1 : 0;
    return r;
}

/// The intertwining system rebuilt by linearity: column k is the real image
/// of S h0 - h0^dag S for the k-th unit vector of (s11, s22, Re s, Im s).
/// Rows are (Im R00, Im R11, Re R01, Im R01) of the anti-Hermitian residual R.
inline Eigen::Matrix4d intertwining_by_linearity(const Mat2& h0) {
    Eigen::Matrix4d y;
    for (int k = 0; k < 4; ++k) {
        Vec4R v{};
        v[static_cast<std::size_t>(k)] = 1.0;
        const Complex s(v[2], v[3]);
        const Mat2 sm = Mat2::from_rows(v[0], s, std::conj(s), v[1]);
        const Mat2 r = sm * h0 - pfkit::adjoint(h0) * sm;
        y(0, k) = r(0, 0).imag();
        y(1, k) = r(1, 1).imag();
        y(2, k) = r(0, 1).real();
        y(3, k) = r(0, 1).imag();
    }
    return y;
}

// Grassmann algebra over words in the generators. A monomial is a word; the
// canonical order is xibar before xi. Products concatenate words and sort
// with a sign per transposition; a repeated generator kills the term.

enum Gen : int { kXibar = 0, kXi = 1 };

using Word = std::vector<int>;

struct Poly {
    std::map<Word, Complex> terms;

    Complex coeff(const Word& w) const {
        const auto it = terms.find(w);
        return it == terms.end() ? Complex{} : it->second;
    }
};

/// Bubble-sorts w into canonical order; returns 0 if a generator repeats.
inline int normalize(Word& w) {
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
            if (w[j] > w[j + 1]) {
                std::swap(w[j], w[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1]) return 0;
    return sign;
}

inline void add_term(Poly& p, Word w, Complex c) {
    const int sign = normalize(w);
    if (sign == 0 || c == Complex{}) return;
    p.terms[w] += static_cast<double>(sign) * c;
}

inline Poly mul(const Poly& x, const Poly& y) {
    Poly out;
    for (const auto& [wx, cx] : x.terms)
        for (const auto& [wy, cy] : y.terms) {
            Word w = wx;
            w.insert(w.end(), wy.begin(), wy.end());
            add_term(out, w, cx * cy);
        }
    return out;
}

inline Poly add(const Poly& x, const Poly& y) {
    Poly out = x;
    for (const auto& [w, c] : y.terms) out.terms[w] += c;
    return out;
}

/// Reverse each word, swap xi <-> xibar, conjugate coefficients.
inline Poly conj(const Poly& x) {
    Poly out;
    for (const auto& [w, c] : x.terms) {
        Word r(w.rbegin(), w.rend());
        for (int& g : r) g = g == kXi ? kXibar : kXi;
        add_term(out, r, std::conj(c));
    }
    return out;
}

/// Left Berezin integral over one generator: move it to the front, drop it.
inline Poly integrate(const Poly& x, int gen) {
    Poly out;
    for (const auto& [w, c] : x.terms) {
        const auto it = std::find(w.begin(), w.end(), gen);
        if (it == w.end()) continue;
        const auto pos = it - w.begin();
        Word rest = w;
        rest.erase(rest.begin() + pos);
        out.terms[rest] += (pos % 2 == 0 ? 1.0 : -1.0) * c;
    }
    return out;
}

/// Integral over dxi dxibar: the xi integral is the inner one.
inline Complex berezin(const Poly& x) { return integrate(integrate(x, kXi), kXibar).coeff({}); }

inline Poly from_gelem(const pfkit::GElem<Complex>& g) {
    Poly p;
    add_term(p, {}, g.one);
    add_term(p, {kXi}, g.xi);
    add_term(p, {kXibar}, g.xibar);
    add_term(p, {kXibar, kXi}, g.xibarxi);
    return p;
}

inline pfkit::GElem<Complex> to_gelem(const Poly& p) {
    return {p.coeff({}), p.coeff({kXi}), p.coeff({kXibar}), p.coeff({kXibar, kXi})};
}

/// Component i of a ket-valued element as a scalar polynomial.
inline Poly component(const pfkit::GElem<Ket2>& g, std::size_t i) {
    return from_gelem({g.one[i], g.xi[i], g.xibar[i], g.xibarxi[i]});
}

/// Integral of |phi_xi><psi_xi| computed entrywise on scalar polynomials.
inline Mat2 resolution(const pfkit::GElem<Ket2>& phi, const pfkit::GElem<Ket2>& psi) {
    Mat2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out(i, j) = berezin(mul(component(phi, i), conj(component(psi, j))));
    return out;
}

// Random data.

inline Complex random_complex(std::mt19937_64& gen) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(gen);
    return {re, n(gen)};
}

inline Mat2 random_mat(std::mt19937_64& gen) {
    const Complex a = random_complex(gen), b = random_complex(gen), c = random_complex(gen), d = random_complex(gen);
    return Mat2::from_rows(a, b, c, d);
}

inline Ket2 random_ket(std::mt19937_64& gen) {
    const Complex a = random_complex(gen);
    return {a, random_complex(gen)};
}

inline Mat2 random_posdef(std::mt19937_64& gen) {
    const Mat2 g = random_mat(gen);
    return g * pfkit::adjoint(g) + 0.1 * Mat2::identity();
}

inline pfkit::GElem<Complex> random_gelem(std::mt19937_64& gen) {
    const Complex a = random_complex(gen), b = random_complex(gen), c = random_complex(gen);
    return {a, b, c, random_complex(gen)};
}

inline double max_abs_diff(const Mat2& x, const Mat2& y) {
    double d = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) d = std::max(d, std::abs(x(i, j) - y(i, j)));
    return d;
}

inline Mat2 trace_normalized(const Mat2& m) { return (2.0 / m.trace()) * m; }

}  // namespace oracle
