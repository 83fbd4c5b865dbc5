#pragma once

// Fixed-shape dense linear algebra: 2x2 complex operators, complex 2-vectors
// and the 4x4 real system used by the metric solver.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfkit {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

class LinalgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public LinalgError {
public:
    explicit NotHermitian(double distance);
    double distance;
};

class NotPositive : public LinalgError {
public:
    NotPositive() : LinalgError("matrix is not positive definite") {}
};

class Singular : public LinalgError {
public:
    Singular() : LinalgError("matrix is singular") {}
};

class FullRank : public LinalgError {
public:
    FullRank() : LinalgError("matrix has full numerical rank") {}
};

class ZeroMatrix : public LinalgError {
public:
    ZeroMatrix() : LinalgError("matrix is numerically zero") {}
};

/// Column vector in C^2, components in the canonical basis.
struct Ket2 {
    Complex c0{};
    Complex c1{};

    Complex& operator[](std::size_t i) { return i == 0 ? c0 : c1; }
    const Complex& operator[](std::size_t i) const { return i == 0 ? c0 : c1; }

    static Ket2 basis(std::size_t i) { return i == 0 ? Ket2{1.0, 0.0} : Ket2{0.0, 1.0}; }

    friend bool operator==(const Ket2&, const Ket2&) = default;
};

/// Row vector (the adjoint of a Ket2). Kept distinct so that ket*bra and
/// bra*ket resolve to an operator and a scalar respectively.
struct Bra2 {
    Complex c0{};
    Complex c1{};

    Complex& operator[](std::size_t i) { return i == 0 ? c0 : c1; }
    const Complex& operator[](std::size_t i) const { return i == 0 ? c0 : c1; }

    friend bool operator==(const Bra2&, const Bra2&) = default;
};

/// 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<std::array<Complex, 2>, 2> m{};

    Complex& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

    static Mat2 identity() { return Mat2{{{{1.0, 0.0}, {0.0, 1.0}}}}; }
    static Mat2 zero() { return Mat2{}; }
    static Mat2 diag(Complex d0, Complex d1) { return Mat2{{{{d0, 0.0}, {0.0, d1}}}}; }
    static Mat2 from_rows(Complex m00, Complex m01, Complex m10, Complex m11) {
        return Mat2{{{{m00, m01}, {m10, m11}}}};
    }

    Complex trace() const { return m[0][0] + m[1][1]; }
    Complex det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

using Vec4R = std::array<double, 4>;

struct Mat4R {
    std::array<std::array<double, 4>, 4> x{};

    double& operator()(std::size_t i, std::size_t j) { return x[i][j]; }
    double operator()(std::size_t i, std::size_t j) const { return x[i][j]; }

    static Mat4R identity();

    friend bool operator==(const Mat4R&, const Mat4R&) = default;
};

// Arithmetic.

Mat2 operator+(const Mat2& lhs, const Mat2& rhs);
Mat2 operator-(const Mat2& lhs, const Mat2& rhs);
Mat2 operator-(const Mat2& m);
Mat2 operator*(const Mat2& lhs, const Mat2& rhs);
Mat2 operator*(Complex s, const Mat2& m);
Mat2 operator*(const Mat2& m, Complex s);
Ket2 operator*(const Mat2& m, const Ket2& v);
Bra2 operator*(const Bra2& v, const Mat2& m);

Ket2 operator+(const Ket2& lhs, const Ket2& rhs);
Ket2 operator-(const Ket2& lhs, const Ket2& rhs);
Ket2 operator-(const Ket2& v);
Ket2 operator*(Complex s, const Ket2& v);
Ket2 operator*(const Ket2& v, Complex s);
Bra2 operator+(const Bra2& lhs, const Bra2& rhs);
Bra2 operator-(const Bra2& lhs, const Bra2& rhs);
Bra2 operator-(const Bra2& v);
Bra2 operator*(Complex s, const Bra2& v);
Bra2 operator*(const Bra2& v, Complex s);

/// |ket><bra| as an operator.
Mat2 operator*(const Ket2& ket, const Bra2& bra);
/// <bra|ket>.
Complex operator*(const Bra2& bra, const Ket2& ket);

Mat2 adjoint(const Mat2& m);
Bra2 adjoint(const Ket2& v);
Ket2 adjoint(const Bra2& v);
inline Complex adjoint(Complex z) { return std::conj(z); }

/// Physics convention: antilinear in the first argument.
Complex inner(const Ket2& f, const Ket2& g);
/// |f><g|, acting as h -> <g, h> f.
Mat2 outer(const Ket2& f, const Ket2& g);

Mat2 anticommutator(const Mat2& x, const Mat2& y);
Mat2 commutator(const Mat2& x, const Mat2& y);

double frobenius(const Mat2& m);
double norm(const Ket2& v);
double frobenius(const Mat4R& x);
double norm(const Vec4R& v);

Vec4R operator*(const Mat4R& x, const Vec4R& v);
double det(const Mat4R& x);

bool is_finite(const Mat2& m);
bool is_finite(const Ket2& v);

/// Rescales v so that its first component of non-negligible modulus is real
/// positive; v must be nonzero.
Ket2 apply_phase_convention(const Ket2& v);

// Operations.

/// Frobenius distance from M to its adjoint; zero iff M is Hermitian.
double herm_distance(const Mat2& m);

/// 2x2 Sylvester criterion: m00 > tol and det > tol.
/// Throws NotHermitian when herm_distance(m) > tol.
bool posdef_check(const Mat2& m, double tol = kDefaultTol);

/// Principal square root of a Hermitian positive-definite matrix, via
/// R = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
Mat2 sqrt_posdef2(const Mat2& m, double tol = kDefaultTol);

/// Throws Singular when |det M| <= tol.
Mat2 inv2(const Mat2& m, double tol = kDefaultTol);

/// Unit vector spanning the kernel of a numerically rank-1 matrix, with the
/// phase convention applied. Rank is decided on singular values: rank 2 if
/// sigma_min > tol * sigma_max, rank 0 if sigma_max <= tol.
Ket2 nullspace2(const Mat2& m, double tol = kDefaultTol);

struct SingularValues2 {
    double max = 0.0;
    double min = 0.0;
};
SingularValues2 singular_values(const Mat2& m);

struct EigenPair {
    Complex value;
    Ket2 vector;
    bool defective = false;
};

/// Eigenpairs ordered by (Re, Im) of the eigenvalue. A defective matrix
/// yields a single pair flagged `defective`; a scalar matrix yields the
/// canonical basis.
std::vector<EigenPair> eig2(const Mat2& m, double tol = kDefaultTol);

/// Eigenvalues only, ordered as in eig2 and listed with multiplicity.
std::array<Complex, 2> eigenvalues2(const Mat2& m);

/// Orthonormal basis of the numerical null space: right singular vectors
/// whose singular value is <= tol * sigma_max. An all-zero matrix returns
/// the canonical basis.
std::vector<Vec4R> nullspace4(const Mat4R& x, double tol = kDefaultTol);

}  // namespace pfkit
