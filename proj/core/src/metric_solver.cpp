#include "pfkit/metric_solver.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace pfkit {

namespace {

std::string complex_trace_message(double imag_trace) {
    std::ostringstream os;
    os << "Hamiltonian has complex trace (Im tr H = " << imag_trace
       << "); no Hermitian metric can intertwine a non-real multiple of the identity";
    return os.str();
}

}  // namespace

ComplexTrace::ComplexTrace(double im) : std::runtime_error(complex_trace_message(im)), imag_trace(im) {}

std::string_view to_string(MetricStatus status) {
    switch (status) {
        case MetricStatus::PositiveMetricFound: return "PositiveMetricFound";
        case MetricStatus::NullspaceOnlyIndefinite: return "NullspaceOnlyIndefinite";
        case MetricStatus::NoSolution: return "NoSolution";
    }
    return "unknown";
}

MetricProblem make_traceless(const Mat2& h, double tol) {
    if (!is_finite(h)) throw std::invalid_argument("Hamiltonian has non-finite entries");
    const Complex tr = h.trace();
    if (std::abs(tr.imag()) > tol) throw ComplexTrace(tr.imag());

    MetricProblem p;
    p.h_in = h;
    p.shift = 0.5 * tr;
    p.a = 0.5 * (h(0, 0) - h(1, 1));
    p.b = h(0, 1);
    p.c = h(1, 0);
    p.h0 = Mat2::from_rows(p.a, p.b, p.c, -p.a);
    return p;
}

Mat4R build_x(const MetricProblem& p) {
    const double ar = p.a.real(), ai = p.a.imag();
    const double br = p.b.real(), bi = p.b.imag();
    const double cr = p.c.real(), ci = p.c.imag();
    Mat4R x;
    x.x = {{
        {ai, 0.0, ci, cr},
        {0.0, ai, -bi, br},
        {br, -cr, -2.0 * ar, 0.0},
        {bi, ci, 0.0, -2.0 * ar},
    }};
    return x;
}

NecessaryCondition necessary_condition(const MetricProblem& p) {
    const double signed_condition = 2.0 * p.a.real() * p.a.imag() + (p.b * p.c).imag();
    return {std::abs(signed_condition), det(build_x(p))};
}

Mat2 metric_from_vector(const Vec4R& v) {
    const Complex s(v[2], v[3]);
    return Mat2::from_rows(v[0], s, std::conj(s), v[1]);
}

MetricSolution solve_metric(const Mat2& h, double tol) {
    const MetricProblem prob = make_traceless(h, tol);

    MetricSolution out;
    out.x_matrix = build_x(prob);
    const auto cond = necessary_condition(prob);
    out.condition_residual = cond.residual;
    out.det_x = cond.det_x;
    out.nullspace = nullspace4(out.x_matrix, tol);

    const auto d = static_cast<Eigen::Index>(out.nullspace.size());
    if (d == 0) {
        out.status = MetricStatus::NoSolution;
        return out;
    }

    // Write S = t 1 + r.sigma, so lambda_min(S) = t - |r|. On the slice
    // tr S = 2 (t = 1) the most positive element minimizes |r|, a least
    // squares problem over an affine subspace of the null space.
    Eigen::MatrixXd basis(4, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < 4; ++i) basis(i, j) = out.nullspace[j][i];

    Eigen::Matrix<double, 3, 4> pauli;
    pauli << 0.5, -0.5, 0.0, 0.0,  //
        0.0, 0.0, 1.0, 0.0,        //
        0.0, 0.0, 0.0, 1.0;
    const Eigen::MatrixXd r_map = pauli * basis;
    const Eigen::VectorXd trace = basis.row(0).transpose() + basis.row(1).transpose();

    if (trace.norm() <= tol) {
        out.status = MetricStatus::NullspaceOnlyIndefinite;
        return out;
    }

    Eigen::VectorXd w = (2.0 / trace.squaredNorm()) * trace;
    if (d > 1) {
        // Directions that keep the trace fixed.
        const Eigen::JacobiSVD<Eigen::MatrixXd> tsvd(trace.transpose(), Eigen::ComputeFullV);
        const Eigen::MatrixXd free_dirs = tsvd.matrixV().rightCols(d - 1);
        const Eigen::MatrixXd lhs = r_map * free_dirs;
        const Eigen::VectorXd rhs = -(r_map * w);
        const Eigen::VectorXd z = lhs.completeOrthogonalDecomposition().solve(rhs);
        w += free_dirs * z;
    }

    const Eigen::Vector4d v = basis * w;
    const Mat2 s = metric_from_vector({v(0), v(1), v(2), v(3)});
    if (posdef_check(s, tol)) {
        out.representative = s;
        out.status = MetricStatus::PositiveMetricFound;
    } else {
        out.status = MetricStatus::NullspaceOnlyIndefinite;
    }
    return out;
}

double verify_intertwining(const Mat2& s, const Mat2& h) { return frobenius(s * h - adjoint(h) * s); }

}  // namespace pfkit
