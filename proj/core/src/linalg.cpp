#include "pfkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace pfkit {

namespace {

std::string not_hermitian_message(double d) {
    std::ostringstream os;
    os << "matrix is not Hermitian (|M - M^dag|_F = " << d << ")";
    return os.str();
}

}  // namespace

NotHermitian::NotHermitian(double d) : LinalgError(not_hermitian_message(d)), distance(d) {}

Mat4R Mat4R::identity() {
    Mat4R out;
    for (std::size_t i = 0; i < 4; ++i) out.x[i][i] = 1.0;
    return out;
}

Mat2 operator+(const Mat2& lhs, const Mat2& rhs) {
    Mat2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out.m[i][j] = lhs.m[i][j] + rhs.m[i][j];
    return out;
}

Mat2 operator-(const Mat2& lhs, const Mat2& rhs) {
    Mat2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out.m[i][j] = lhs.m[i][j] - rhs.m[i][j];
    return out;
}

Mat2 operator-(const Mat2& m) { return Complex{-1.0} * m; }

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
    Mat2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            out.m[i][j] = lhs.m[i][0] * rhs.m[0][j] + lhs.m[i][1] * rhs.m[1][j];
    return out;
}

Mat2 operator*(Complex s, const Mat2& m) {
    Mat2 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) out.m[i][j] = s * m.m[i][j];
    return out;
}

Mat2 operator*(const Mat2& m, Complex s) { return s * m; }

Ket2 operator*(const Mat2& m, const Ket2& v) {
    return {m.m[0][0] * v.c0 + m.m[0][1] * v.c1, m.m[1][0] * v.c0 + m.m[1][1] * v.c1};
}

Bra2 operator*(const Bra2& v, const Mat2& m) {
    return {v.c0 * m.m[0][0] + v.c1 * m.m[1][0], v.c0 * m.m[0][1] + v.c1 * m.m[1][1]};
}

Ket2 operator+(const Ket2& lhs, const Ket2& rhs) { return {lhs.c0 + rhs.c0, lhs.c1 + rhs.c1}; }
Ket2 operator-(const Ket2& lhs, const Ket2& rhs) { return {lhs.c0 - rhs.c0, lhs.c1 - rhs.c1}; }
Ket2 operator-(const Ket2& v) { return {-v.c0, -v.c1}; }
Ket2 operator*(Complex s, const Ket2& v) { return {s * v.c0, s * v.c1}; }
Ket2 operator*(const Ket2& v, Complex s) { return s * v; }
Bra2 operator+(const Bra2& lhs, const Bra2& rhs) { return {lhs.c0 + rhs.c0, lhs.c1 + rhs.c1}; }
Bra2 operator-(const Bra2& lhs, const Bra2& rhs) { return {lhs.c0 - rhs.c0, lhs.c1 - rhs.c1}; }
Bra2 operator-(const Bra2& v) { return {-v.c0, -v.c1}; }
Bra2 operator*(Complex s, const Bra2& v) { return {s * v.c0, s * v.c1}; }
Bra2 operator*(const Bra2& v, Complex s) { return s * v; }

Mat2 operator*(const Ket2& ket, const Bra2& bra) {
    return Mat2::from_rows(ket.c0 * bra.c0, ket.c0 * bra.c1, ket.c1 * bra.c0, ket.c1 * bra.c1);
}

Complex operator*(const Bra2& bra, const Ket2& ket) { return bra.c0 * ket.c0 + bra.c1 * ket.c1; }

Mat2 adjoint(const Mat2& m) {
    return Mat2::from_rows(std::conj(m.m[0][0]), std::conj(m.m[1][0]), std::conj(m.m[0][1]),
                           std::conj(m.m[1][1]));
}

Bra2 adjoint(const Ket2& v) { return {std::conj(v.c0), std::conj(v.c1)}; }
Ket2 adjoint(const Bra2& v) { return {std::conj(v.c0), std::conj(v.c1)}; }

Complex inner(const Ket2& f, const Ket2& g) { return adjoint(f) * g; }

Mat2 outer(const Ket2& f, const Ket2& g) { return f * adjoint(g); }

Mat2 anticommutator(const Mat2& x, const Mat2& y) { return x * y + y * x; }
Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

double frobenius(const Mat2& m) {
    double s = 0.0;
    for (const auto& row : m.m)
        for (const auto& z : row) s += std::norm(z);
    return std::sqrt(s);
}

double norm(const Ket2& v) { return std::sqrt(std::norm(v.c0) + std::norm(v.c1)); }

double frobenius(const Mat4R& x) {
    double s = 0.0;
    for (const auto& row : x.x)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

double norm(const Vec4R& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
}

Vec4R operator*(const Mat4R& x, const Vec4R& v) {
    Vec4R out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) out[i] += x.x[i][j] * v[j];
    return out;
}

namespace {

Eigen::Matrix4d to_eigen(const Mat4R& x) {
    Eigen::Matrix4d out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = x.x[i][j];
    return out;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Kernel direction of a matrix assumed to have rank <= 1; no rank checks.
Ket2 null_direction(const Mat2& m) {
    const double r0 = std::norm(m.m[0][0]) + std::norm(m.m[0][1]);
    const double r1 = std::norm(m.m[1][0]) + std::norm(m.m[1][1]);
    if (r0 == 0.0 && r1 == 0.0) return Ket2::basis(0);
    const auto& row = r0 >= r1 ? m.m[0] : m.m[1];
    const Ket2 v{-row[1], row[0]};
    return apply_phase_convention((1.0 / norm(v)) * v);
}

}  // namespace

double det(const Mat4R& x) { return to_eigen(x).determinant(); }

bool is_finite(const Mat2& m) {
    return std::ranges::all_of(m.m, [](const auto& row) { return finite(row[0]) && finite(row[1]); });
}

bool is_finite(const Ket2& v) { return finite(v.c0) && finite(v.c1); }

Ket2 apply_phase_convention(const Ket2& v) {
    const double n = norm(v);
    if (n == 0.0) return v;
    for (std::size_t i = 0; i < 2; ++i) {
        if (std::abs(v[i]) > 1e-12 * n) {
            const Complex phase = std::abs(v[i]) / v[i];
            Ket2 out = phase * v;
            out[i] = std::abs(v[i]);
            return out;
        }
    }
    return v;
}

double herm_distance(const Mat2& m) { return frobenius(m - adjoint(m)); }

bool posdef_check(const Mat2& m, double tol) {
    if (const double d = herm_distance(m); d > tol) throw NotHermitian(d);
    return m.m[0][0].real() > tol && m.det().real() > tol;
}

Mat2 sqrt_posdef2(const Mat2& m, double tol) {
    try {
        if (!posdef_check(m, tol)) throw NotPositive();
    } catch (const NotHermitian&) {
        throw NotPositive();
    }
    const Mat2 h = 0.5 * (m + adjoint(m));
    const double d = std::sqrt(h.det().real());
    const double s = std::sqrt(h.trace().real() + 2.0 * d);
    Mat2 r = (1.0 / s) * (h + Mat2::diag(d, d));
    r.m[0][0] = r.m[0][0].real();
    r.m[1][1] = r.m[1][1].real();
    r.m[1][0] = std::conj(r.m[0][1]);
    return r;
}

Mat2 inv2(const Mat2& m, double tol) {
    const Complex d = m.det();
    if (std::abs(d) <= tol) throw Singular();
    return (1.0 / d) * Mat2::from_rows(m.m[1][1], -m.m[0][1], -m.m[1][0], m.m[0][0]);
}

SingularValues2 singular_values(const Mat2& m) {
    const double f = frobenius(m);
    const double f2 = f * f;
    const double d = std::abs(m.det());
    if (f2 == 0.0) return {};
    const double disc = std::max(0.0, (f2 - 2.0 * d) * (f2 + 2.0 * d));
    const double smax = std::sqrt(0.5 * (f2 + std::sqrt(disc)));
    return {smax, d / smax};
}

Ket2 nullspace2(const Mat2& m, double tol) {
    const auto sv = singular_values(m);
    if (sv.max <= tol) throw ZeroMatrix();
    if (sv.min > tol * sv.max) throw FullRank();
    return null_direction(m);
}

std::array<Complex, 2> eigenvalues2(const Mat2& m) {
    const Complex half_trace = 0.5 * m.trace();
    const Complex half_diff = 0.5 * (m.m[0][0] - m.m[1][1]);
    const Complex root = std::sqrt(half_diff * half_diff + m.m[0][1] * m.m[1][0]);
    // Pick the sign that avoids cancellation, recover the other root from det.
    const bool plus = (std::conj(half_trace) * root).real() >= 0.0;
    const Complex l1 = plus ? half_trace + root : half_trace - root;
    const Complex l2 = l1 != 0.0 ? m.det() / l1 : 2.0 * half_trace - l1;
    std::array<Complex, 2> out{l1, l2};
    std::ranges::sort(out, [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
}

std::vector<EigenPair> eig2(const Mat2& m, double tol) {
    const double scale = frobenius(m);
    const Complex half_trace = 0.5 * m.trace();
    if (scale == 0.0) return {{0.0, Ket2::basis(0)}, {0.0, Ket2::basis(1)}};

    const Complex half_diff = 0.5 * (m.m[0][0] - m.m[1][1]);
    const Complex root = std::sqrt(half_diff * half_diff + m.m[0][1] * m.m[1][0]);
    if (std::abs(root) <= tol * scale) {
        const Mat2 shifted = m - Mat2::diag(half_trace, half_trace);
        if (frobenius(shifted) <= tol * scale)
            return {{half_trace, Ket2::basis(0)}, {half_trace, Ket2::basis(1)}};
        return {{half_trace, null_direction(shifted), true}};
    }

    std::vector<EigenPair> out;
    for (const Complex lambda : eigenvalues2(m)) {
        out.push_back({lambda, null_direction(m - Mat2::diag(lambda, lambda))});
    }
    return out;
}

std::vector<Vec4R> nullspace4(const Mat4R& x, double tol) {
    const Eigen::JacobiSVD<Eigen::Matrix4d> svd(to_eigen(x), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<Vec4R> out;
    if (sv(0) == 0.0) {
        for (std::size_t i = 0; i < 4; ++i) {
            Vec4R e{};
            e[i] = 1.0;
            out.push_back(e);
        }
        return out;
    }
    for (int j = 0; j < 4; ++j) {
        if (sv(j) > tol * sv(0)) continue;
        Vec4R v{};
        for (int i = 0; i < 4; ++i) v[i] = svd.matrixV()(i, j);
        // Deterministic sign: first non-negligible component positive.
        for (double e : v) {
            if (std::abs(e) > 1e-12) {
                if (e < 0.0)
                    for (double& c : v) c = -c;
                break;
            }
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace pfkit
