#include <algorithm>
#include <random>
#include <thread>

#include "cli.hpp"

namespace pfkit::cli {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Trial {
    std::map<std::string, double> residuals;
    bool failed = false;
    bool missing_metric = false;
};

Trial run_trial(std::uint64_t trial_seed) {
    Trial t;
    try {
        const PFPair pair = random_pf_pair(trial_seed);
        const PFSystem sys = build_system(pair);
        for (const auto& [name, value] : check_relations(sys).items()) t.residuals[std::string(name)] = value;

        const auto fz = fermionize(sys);
        const Mat2 id = Mat2::identity();
        t.residuals["fermion_anticomm"] = frobenius(anticommutator(fz.c, adjoint(fz.c)) - id);
        t.residuals["fermion_square"] = frobenius(fz.c * fz.c);
        const PFPair back = pseudofermionize(fz.c, fz.t, pair.tol());
        t.residuals["round_trip"] = std::max(frobenius(back.a() - pair.a()), frobenius(back.b() - pair.b()));

        const BiCoherent bc = bicoherent(sys);
        t.residuals["bicoherent_closed_form"] = std::max(bc.phi_closed_form, bc.psi_closed_form);
        t.residuals["eigen_a_phi"] = eigen_residual(pair.a(), bc.phi_xi);
        t.residuals["eigen_bdag_psi"] = eigen_residual(adjoint(pair.b()), bc.psi_xi);
        t.residuals["resolution"] = frobenius(resolution_check(bc.phi_xi, bc.psi_xi) - id);

        std::mt19937_64 gen(splitmix64(trial_seed));
        std::uniform_real_distribution<double> level(-2.0, 2.0);
        std::uniform_real_distribution<double> gap(0.1, 2.0);
        const double eps0 = level(gen);
        const double eps1 = eps0 + gap(gen);
        const Mat2 h = hamiltonian_from_pf(sys, eps0, eps1);
        const MetricSolution sol = solve_metric(h, pair.tol());
        if (sol.representative) {
            t.residuals["metric_intertwining"] = verify_intertwining(*sol.representative, h);
        } else {
            t.missing_metric = true;
        }
    } catch (const std::exception&) {
        t.failed = true;
    }
    return t;
}

}  // namespace

FuzzSummary run_fuzz(std::uint64_t count, std::uint64_t seed, unsigned jobs) {
    const std::uint64_t base = splitmix64(seed);
    std::vector<Trial> trials(count);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<std::uint64_t>(count, 64))));
    {
        std::vector<std::jthread> workers;
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w] {
                for (std::uint64_t i = w; i < count; i += jobs) trials[i] = run_trial(base + i);
            });
        }
    }

    FuzzSummary s;
    s.count = count;
    s.seed = seed;
    for (const Trial& t : trials) {
        for (const auto& [name, value] : t.residuals) {
            auto& slot = s.max_residual[name];
            slot = std::max(slot, value);
        }
        s.failed_trials += t.failed ? 1 : 0;
        s.missing_metric += t.missing_metric ? 1 : 0;
    }
    for (const auto& [name, value] : s.max_residual) s.overall_max = std::max(s.overall_max, value);
    s.pass = s.failed_trials == 0 && s.missing_metric == 0 && s.overall_max <= kFuzzThreshold;
    return s;
}

json to_json(const FuzzSummary& s) {
    return {
        {"command", "fuzz"},
        {"count", s.count},
        {"seed", s.seed},
        {"max_residual", s.max_residual},
        {"failed_trials", s.failed_trials},
        {"missing_metric", s.missing_metric},
        {"overall_max", s.overall_max},
        {"threshold", kFuzzThreshold},
        {"status", s.pass ? "pass" : "fail"},
    };
}

CommandResult cmd_fuzz(std::uint64_t count, std::uint64_t seed, unsigned jobs) {
    if (count == 0) throw UsageError("fuzz: --count must be at least 1");
    const FuzzSummary s = run_fuzz(count, seed, jobs);
    return {to_json(s), s.pass ? kExitOk : kExitFailure};
}

}  // namespace pfkit::cli
