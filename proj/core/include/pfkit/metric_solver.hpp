#pragma once

// Existence of a positive metric for 2x2 Hamiltonians: find Hermitian S > 0
// with S H = H^dag S.
//
// For traceless H = (a, b; c, -a) and S = (s11, s; conj(s), s22) the
// intertwining relation is the real linear system X v = 0 with
// v = (s11, s22, Re s, Im s).

#include <optional>
#include <string_view>
#include <vector>

#include "pfkit/linalg.hpp"

namespace pfkit {

class ComplexTrace : public std::runtime_error {
public:
    explicit ComplexTrace(double imag_trace);
    double imag_trace;
};

struct MetricProblem {
    Mat2 h_in;
    Mat2 h0;  ///< traceless part
    Complex shift;
    Complex a, b, c;  ///< h0 = (a, b; c, -a)
};

enum class MetricStatus { PositiveMetricFound, NullspaceOnlyIndefinite, NoSolution };

std::string_view to_string(MetricStatus status);

struct MetricSolution {
    Mat4R x_matrix;
    /// Orthonormal basis, each vector ordered (s11, s22, Re s, Im s).
    std::vector<Vec4R> nullspace;
    /// Positive-definite S normalized to tr S = 2, maximizing the smallest
    /// eigenvalue over the solution space.
    std::optional<Mat2> representative;
    /// |2 Re(a) Im(a) + Im(bc)|
    double condition_residual = 0.0;
    double det_x = 0.0;
    MetricStatus status = MetricStatus::NoSolution;
};

/// Splits off tr(H)/2. Throws ComplexTrace when |Im tr H| > tol, since a
/// Hermitian S cannot intertwine a non-real multiple of the identity.
MetricProblem make_traceless(const Mat2& h, double tol = kDefaultTol);

Mat4R build_x(const MetricProblem& prob);

struct NecessaryCondition {
    double residual = 0.0;  ///< |2 Re(a) Im(a) + Im(bc)|
    double det_x = 0.0;     ///< equals the signed condition squared
};

NecessaryCondition necessary_condition(const MetricProblem& prob);

/// Maps a null-space vector (s11, s22, Re s, Im s) to its Hermitian matrix.
Mat2 metric_from_vector(const Vec4R& v);

MetricSolution solve_metric(const Mat2& h, double tol = kDefaultTol);

/// |S H - H^dag S|_F
double verify_intertwining(const Mat2& s, const Mat2& h);

}  // namespace pfkit
