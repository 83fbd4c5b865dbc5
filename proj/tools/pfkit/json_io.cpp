#include "json_io.hpp"

#include <charconv>
#include <cmath>

namespace pfkit::cli {

MalformedInput::MalformedInput(const std::string& f, const std::string& expectation)
    : std::runtime_error("malformed input: field '" + f + "' " + expectation), field(f) {}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const Ket2& v) { return json::array({to_json(v.c0), to_json(v.c1)}); }

json to_json(const Mat2& m) {
    return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                        json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

json to_json(const Vec4R& v) { return json(v); }

json to_json(const Mat4R& x) { return json(x.x); }

json to_json(const GElem<Ket2>& g) {
    return {{"one", to_json(g.one)}, {"xi", to_json(g.xi)}, {"xibar", to_json(g.xibar)}, {"xibarxi", to_json(g.xibarxi)}};
}

json to_json(const RelationReport& r) {
    json out = json::object();
    for (const auto& [name, value] : r.items()) out[std::string(name)] = value;
    return out;
}

json to_json(const PFSystem& sys) {
    return {
        {"a", to_json(sys.pair.a())},
        {"b", to_json(sys.pair.b())},
        {"phi0", to_json(sys.phi0)},
        {"phi1", to_json(sys.phi1)},
        {"psi0", to_json(sys.psi0)},
        {"psi1", to_json(sys.psi1)},
        {"s_phi", to_json(sys.s_phi)},
        {"s_psi", to_json(sys.s_psi)},
        {"s_psi_half", to_json(sys.s_psi_half)},
        {"s_psi_invhalf", to_json(sys.s_psi_invhalf)},
        {"n_op", to_json(sys.n_op)},
        {"n_dag", to_json(sys.n_dag)},
        {"c_op", to_json(sys.c_op)},
        {"t_op", to_json(sys.t_op)},
    };
}

json to_json(const MetricSolution& sol) {
    json null = json::array();
    for (const auto& v : sol.nullspace) null.push_back(to_json(v));
    json out{
        {"status", std::string(to_string(sol.status))},
        {"x_matrix", to_json(sol.x_matrix)},
        {"nullspace", null},
        {"nullspace_dim", sol.nullspace.size()},
        {"condition_residual", sol.condition_residual},
        {"det_x", sol.det_x},
    };
    out["representative"] = sol.representative ? to_json(*sol.representative) : json(nullptr);
    return out;
}

json to_json(const ModelOutput& model) {
    json params = json::object();
    for (const auto& [name, value] : model.params) params[name] = to_json(value);
    json forms = json::object();
    for (const auto& [name, form] : model.closed_forms)
        forms[name] = std::visit([](const auto& v) { return to_json(v); }, form);
    return {
        {"name", model.name},
        {"params", params},
        {"closed_forms", forms},
        {"checks", model.checks},
        {"system", to_json(model.system)},
    };
}

Complex parse_complex(const json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        const Complex z(j[0].get<double>(), j[1].get<double>());
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw MalformedInput(field, "must be finite");
        return z;
    }
    throw MalformedInput(field, "must be a number or a [re, im] pair");
}

Ket2 parse_ket(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) throw MalformedInput(field, "must be a 2-vector of [re, im] pairs");
    return {parse_complex(j[0], field + "[0]"), parse_complex(j[1], field + "[1]")};
}

Mat2 parse_matrix(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2)
        throw MalformedInput(field, "must be a 2x2 matrix (rows of [re, im] pairs)");
    Mat2 m;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k)
            m(i, k) = parse_complex(j[i][k], field + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    return m;
}

Mat2 require_matrix(const json& doc, const std::string& key) {
    if (!doc.is_object()) throw MalformedInput("<document>", "must be a JSON object");
    if (!doc.contains(key)) throw MalformedInput(key, "is missing");
    return parse_matrix(doc.at(key), key);
}

Complex parse_complex_flag(const std::string& text, const std::string& flag) {
    auto parse_double = [&](std::string_view s) {
        double v = 0.0;
        const auto* end = s.data() + s.size();
        const auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc() || ptr != end || !std::isfinite(v))
            throw MalformedInput(flag, "must be 're' or 're,im' (got '" + text + "')");
        return v;
    };
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_double(text), 0.0};
    const std::string_view sv(text);
    return {parse_double(sv.substr(0, comma)), parse_double(sv.substr(comma + 1))};
}

PairInput parse_pair_input(const json& doc) { return {require_matrix(doc, "a"), require_matrix(doc, "b")}; }

HamiltonianInput parse_hamiltonian_input(const json& doc) { return {require_matrix(doc, "H")}; }

CoherentInput parse_coherent_input(const json& doc) {
    if (!doc.is_object()) throw MalformedInput("<document>", "must be a JSON object");
    CoherentInput in;
    int sources = 0;
    if (doc.contains("a") || doc.contains("b")) {
        in.pair = parse_pair_input(doc);
        ++sources;
    }
    if (doc.contains("model")) {
        const json& m = doc.at("model");
        if (!m.is_object() || !m.contains("name") || !m.at("name").is_string())
            throw MalformedInput("model", "must be an object with a string 'name'");
        ModelRef ref{m.at("name").get<std::string>(), {}};
        if (m.contains("params")) {
            if (!m.at("params").is_object()) throw MalformedInput("model.params", "must be an object");
            for (const auto& [key, value] : m.at("params").items())
                ref.params[key] = parse_complex(value, "model.params." + key);
        }
        in.model = std::move(ref);
        ++sources;
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) throw MalformedInput("seed", "must be a non-negative integer");
        in.seed = doc.at("seed").get<std::uint64_t>();
        ++sources;
    }
    if (sources != 1) throw MalformedInput("<document>", "must contain exactly one of {a, b}, model, seed");
    return in;
}

json to_json(const PairInput& in) { return {{"a", to_json(in.a)}, {"b", to_json(in.b)}}; }

json to_json(const HamiltonianInput& in) { return {{"H", to_json(in.h)}}; }

json to_json(const ModelRef& in) {
    json params = json::object();
    for (const auto& [key, value] : in.params) params[key] = to_json(value);
    return {{"name", in.name}, {"params", params}};
}

json to_json(const CoherentInput& in) {
    if (in.pair) return to_json(*in.pair);
    if (in.model) return {{"model", to_json(*in.model)}};
    if (in.seed) return {{"seed", *in.seed}};
    return json::object();
}

}  // namespace pfkit::cli
