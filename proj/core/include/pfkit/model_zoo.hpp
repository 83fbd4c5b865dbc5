#pragma once

// Closed-form pseudo-fermion models. Each constructor builds the operators,
// vectors and metrics from explicit formulas, checks the identities those
// formulas are supposed to satisfy, and runs the generic pipeline on the
// same pair so the two routes can be compared.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "pfkit/linalg.hpp"
#include "pfkit/pf_algebra.hpp"

namespace pfkit {

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ZeroParameter : public ModelError {
public:
    explicit ZeroParameter(const std::string& name) : ModelError("parameter '" + name + "' must be nonzero") {}
};

class ParameterOutOfRange : public ModelError {
public:
    using ModelError::ModelError;
};

/// |omega|^2 - delta^2 <= tol: the frequency Omega is not real positive.
class ExceptionalPoint : public ModelError {
public:
    using ModelError::ModelError;
};

using ClosedForm = std::variant<Mat2, Ket2>;

struct ModelOutput {
    std::string name;
    std::vector<std::pair<std::string, Complex>> params;
    PFPair pair;
    std::map<std::string, ClosedForm> closed_forms;
    /// Residuals of the identities the closed forms satisfy.
    std::map<std::string, double> checks;
    PFSystem system;

    const Mat2& matrix(const std::string& key) const { return std::get<Mat2>(closed_forms.at(key)); }
    const Ket2& vector(const std::string& key) const { return std::get<Ket2>(closed_forms.at(key)); }
};

enum class CarBranch { Creation, Annihilation };

/// a = beta c^dag, b = c / beta (Creation) or a = beta c, b = c^dag / beta
/// (Annihilation), with phi0 scaled by k.
ModelOutput car_extension(Complex beta_a, Complex k, CarBranch branch = CarBranch::Creation,
                          double tol = kDefaultTol);

/// Real one-parameter family, k > 0 and -1 < alpha < 1.
ModelOutput alpha_model(double k, double alpha, double tol = kDefaultTol);

/// Effective two-level atom H_eff = (1/2)(-i delta, conj(omega); omega, i delta).
ModelOutput two_level_atom(double delta, Complex omega, double tol = kDefaultTol);

/// H = eps0 |phi0><psi0| + eps1 |phi1><psi1| on the cosh/sinh biorthonormal
/// pair parametrized by (theta, phi).
ModelOutput biortho_hamiltonian(double theta, double phi, double eps0, double eps1, double tol = kDefaultTol);

/// Closed forms versus the generic pipeline: projectors |phi_n><psi_n|, the
/// pair itself, and trace-normalized metrics. Includes "relations_max", the
/// largest residual of check_relations on the pipeline system.
std::map<std::string, double> cross_validate(const ModelOutput& model);

}  // namespace pfkit
