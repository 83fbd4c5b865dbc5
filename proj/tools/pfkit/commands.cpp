#include <chrono>
#include <cmath>

#include "cli.hpp"

namespace pfkit::cli {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json spectrum(const Mat2& m) {
    json out = json::array();
    for (const Complex z : eigenvalues2(m)) out.push_back(to_json(z));
    return out;
}

json error_json(std::string_view kind, const std::exception& e) {
    return {{"kind", std::string(kind)}, {"message", e.what()}};
}

bool all_within(const std::map<std::string, double>& values, double tol) {
    return std::ranges::all_of(values, [tol](const auto& kv) { return kv.second <= tol; });
}

Complex param(const ModelRef& ref, const std::string& key) {
    const auto it = ref.params.find(key);
    if (it == ref.params.end()) throw MalformedInput("params." + key, "is required for model '" + ref.name + "'");
    return it->second;
}

Complex param_or(const ModelRef& ref, const std::string& key, Complex fallback) {
    const auto it = ref.params.find(key);
    return it == ref.params.end() ? fallback : it->second;
}

double real_param(const ModelRef& ref, const std::string& key) {
    const Complex z = param(ref, key);
    if (z.imag() != 0.0) throw MalformedInput("params." + key, "must be real");
    return z.real();
}

// Pair-derived sections shared by verify, model and coherent reports.
void describe_system(json& report, const PFSystem& sys) {
    report["residuals"] = to_json(check_relations(sys));
    report["system"] = to_json(sys);
    const auto fz = fermionize(sys);
    report["fermionization"] = {{"c", to_json(fz.c)}, {"T", to_json(fz.t)}};
    report["spectra"] = {{"N", spectrum(sys.n_op)}, {"N_dag", spectrum(sys.n_dag)}};
}

}  // namespace

ModelOutput make_model(const ModelRef& ref, double tol) {
    if (ref.name == "car") {
        const Complex branch = param_or(ref, "branch", 1.0);
        if (branch != 1.0 && branch != 2.0) throw MalformedInput("params.branch", "must be 1 or 2");
        return car_extension(param(ref, "beta"), param_or(ref, "k", 1.0),
                             branch == 1.0 ? CarBranch::Creation : CarBranch::Annihilation, tol);
    }
    if (ref.name == "alpha") return alpha_model(real_param(ref, "k"), real_param(ref, "alpha"), tol);
    if (ref.name == "two-level") return two_level_atom(real_param(ref, "delta"), param(ref, "omega"), tol);
    if (ref.name == "biortho")
        return biortho_hamiltonian(real_param(ref, "theta"), real_param(ref, "phi"), real_param(ref, "eps0"),
                                   real_param(ref, "eps1"), tol);
    throw UsageError("unknown model '" + ref.name + "' (expected car, alpha, two-level or biortho)");
}

CommandResult cmd_verify(const json& doc, double tol) {
    const auto start = Clock::now();
    const PairInput in = parse_pair_input(doc);
    json report{{"command", "verify"}, {"tol", tol}, {"input", to_json(in)}};

    try {
        const PFPair pair = verify_pf(in.a, in.b, tol);
        const PFSystem sys = build_system(pair);
        describe_system(report, sys);
        report["metric"] = to_json(solve_metric(sys.n_op, tol));
        const bool ok = check_relations(sys).max() <= tol;
        report["status"] = ok ? "ok" : "ResidualAboveTolerance";
        report["elapsed_ms"] = elapsed_ms(start);
        return {report, ok ? kExitOk : kExitFailure};
    } catch (const NotPseudoFermion& e) {
        report["status"] = "NotPseudoFermion";
        report["error"] = error_json("NotPseudoFermion", e);
        report["error"]["relation"] = e.relation;
        report["error"]["residual"] = e.residual;
        report["residuals"] = {
            {"anticomm_ab", frobenius(anticommutator(in.a, in.b) - Mat2::identity())},
            {"a_squared", frobenius(in.a * in.a)},
            {"b_squared", frobenius(in.b * in.b)},
        };
    } catch (const VacuumNotFound& e) {
        report["status"] = "VacuumNotFound";
        report["error"] = error_json("VacuumNotFound", e);
    } catch (const DegeneratePairing& e) {
        report["status"] = "DegeneratePairing";
        report["error"] = error_json("DegeneratePairing", e);
    } catch (const PfError& e) {
        report["status"] = "PfError";
        report["error"] = error_json("PfError", e);
    } catch (const LinalgError& e) {
        report["status"] = "LinalgError";
        report["error"] = error_json("LinalgError", e);
    }
    report["elapsed_ms"] = elapsed_ms(start);
    return {report, kExitFailure};
}

CommandResult cmd_metric(const json& doc, double tol) {
    const auto start = Clock::now();
    const HamiltonianInput in = parse_hamiltonian_input(doc);
    json report{{"command", "metric"}, {"tol", tol}, {"input", to_json(in)}};
    report["spectra"] = {{"H", spectrum(in.h)}};

    try {
        const MetricSolution sol = solve_metric(in.h, tol);
        report["metric"] = to_json(sol);
        report["status"] = std::string(to_string(sol.status));
        if (sol.representative) {
            const Mat2& s = *sol.representative;
            const Mat2 root = sqrt_posdef2(s, tol);
            const Mat2 h = root * in.h * inv2(root, tol);
            report["metric"]["intertwining_residual"] = verify_intertwining(s, in.h);
            report["metric"]["h_selfadjoint"] = to_json(h);
            report["metric"]["h_herm_distance"] = herm_distance(h);
            report["spectra"]["h"] = spectrum(h);
        }
        report["elapsed_ms"] = elapsed_ms(start);
        return {report, sol.status == MetricStatus::PositiveMetricFound ? kExitOk : kExitFailure};
    } catch (const ComplexTrace& e) {
        report["status"] = "ComplexTrace";
        report["error"] = error_json("ComplexTrace", e);
        report["error"]["imag_trace"] = e.imag_trace;
    }
    report["elapsed_ms"] = elapsed_ms(start);
    return {report, kExitFailure};
}

CommandResult cmd_model(const ModelRef& ref, double tol) {
    const auto start = Clock::now();
    json report{{"command", "model"}, {"tol", tol}, {"input", to_json(ref)}};
    try {
        const ModelOutput model = make_model(ref, tol);
        report["model"] = to_json(model);
        describe_system(report, model.system);
        const auto cross = cross_validate(model);
        report["cross_validation"] = cross;
        if (model.closed_forms.contains("h_eff"))
            report["spectra"]["H_eff"] = spectrum(model.matrix("h_eff"));
        if (model.closed_forms.contains("h")) report["spectra"]["H"] = spectrum(model.matrix("h"));
        const bool ok = all_within(model.checks, tol) && all_within(cross, tol);
        report["status"] = ok ? "ok" : "ResidualAboveTolerance";
        report["elapsed_ms"] = elapsed_ms(start);
        return {report, ok ? kExitOk : kExitFailure};
    } catch (const ExceptionalPoint& e) {
        report["status"] = "ExceptionalPoint";
        report["error"] = error_json("ExceptionalPoint", e);
    } catch (const ParameterOutOfRange& e) {
        report["status"] = "ParameterOutOfRange";
        report["error"] = error_json("ParameterOutOfRange", e);
    } catch (const ZeroParameter& e) {
        report["status"] = "ZeroParameter";
        report["error"] = error_json("ZeroParameter", e);
    } catch (const PfError& e) {
        report["status"] = "PfError";
        report["error"] = error_json("PfError", e);
    }
    report["elapsed_ms"] = elapsed_ms(start);
    return {report, kExitFailure};
}

CommandResult cmd_coherent(const json& doc, double tol) {
    const auto start = Clock::now();
    const CoherentInput in = parse_coherent_input(doc);
    json report{{"command", "coherent"}, {"tol", tol}, {"input", to_json(in)}};
    try {
        const PFSystem sys = [&] {
            if (in.pair) return build_system(verify_pf(in.pair->a, in.pair->b, tol));
            if (in.model) return make_model(*in.model, tol).system;
            return build_system(random_pf_pair(*in.seed));
        }();
        const BiCoherent bc = bicoherent(sys);
        const Mat2 resolution = resolution_check(bc.phi_xi, bc.psi_xi);

        const std::map<std::string, double> residuals{
            {"eigen_a_phi", eigen_residual(sys.pair.a(), bc.phi_xi)},
            {"eigen_bdag_psi", eigen_residual(adjoint(sys.pair.b()), bc.psi_xi)},
            {"closed_form_phi", bc.phi_closed_form},
            {"closed_form_psi", bc.psi_closed_form},
            {"resolution", frobenius(resolution - Mat2::identity())},
        };
        report["phi_xi"] = to_json(bc.phi_xi);
        report["psi_xi"] = to_json(bc.psi_xi);
        report["resolution"] = to_json(resolution);
        report["coherent_residuals"] = residuals;
        report["residuals"] = to_json(check_relations(sys));
        const bool ok = all_within(residuals, tol);
        report["status"] = ok ? "ok" : "ResidualAboveTolerance";
        report["elapsed_ms"] = elapsed_ms(start);
        return {report, ok ? kExitOk : kExitFailure};
    } catch (const ModelError& e) {
        report["status"] = "ModelError";
        report["error"] = error_json("ModelError", e);
    } catch (const PfError& e) {
        report["status"] = "PfError";
        report["error"] = error_json("PfError", e);
    } catch (const LinalgError& e) {
        report["status"] = "LinalgError";
        report["error"] = error_json("LinalgError", e);
    }
    report["elapsed_ms"] = elapsed_ms(start);
    return {report, kExitFailure};
}

}  // namespace pfkit::cli
