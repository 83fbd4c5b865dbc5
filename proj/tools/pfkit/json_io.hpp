#pragma once

// JSON wire format: complex numbers are [re, im], matrices row-major nested
// arrays of complex numbers, vectors arrays of complex numbers.

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pfkit/grassmann.hpp"
#include "pfkit/linalg.hpp"
#include "pfkit/metric_solver.hpp"
#include "pfkit/model_zoo.hpp"
#include "pfkit/pf_algebra.hpp"

namespace pfkit::cli {

using json = nlohmann::json;

/// Input document is missing a field or has the wrong shape.
class MalformedInput : public std::runtime_error {
public:
    MalformedInput(const std::string& field, const std::string& expectation);
    std::string field;
};

json to_json(Complex z);
json to_json(const Ket2& v);
json to_json(const Mat2& m);
json to_json(const Vec4R& v);
json to_json(const Mat4R& x);
json to_json(const GElem<Ket2>& g);
json to_json(const RelationReport& r);
json to_json(const PFSystem& sys);
json to_json(const MetricSolution& sol);
json to_json(const ModelOutput& model);

/// Accepts [re, im] or a bare real number.
Complex parse_complex(const json& j, const std::string& field);
Ket2 parse_ket(const json& j, const std::string& field);
Mat2 parse_matrix(const json& j, const std::string& field);
Mat2 require_matrix(const json& doc, const std::string& key);

/// "re,im" or "re" as given on the command line.
Complex parse_complex_flag(const std::string& text, const std::string& flag);

/// Typed input documents; serializing a parsed document reproduces it.
struct PairInput {
    Mat2 a;
    Mat2 b;
};

struct HamiltonianInput {
    Mat2 h;
};

struct ModelRef {
    std::string name;
    std::map<std::string, Complex> params;
};

/// Coherent-state input: exactly one of an explicit pair, a model
/// reference, or a random seed.
struct CoherentInput {
    std::optional<PairInput> pair;
    std::optional<ModelRef> model;
    std::optional<std::uint64_t> seed;
};

PairInput parse_pair_input(const json& doc);
HamiltonianInput parse_hamiltonian_input(const json& doc);
CoherentInput parse_coherent_input(const json& doc);

json to_json(const PairInput& in);
json to_json(const HamiltonianInput& in);
json to_json(const ModelRef& in);
json to_json(const CoherentInput& in);

}  // namespace pfkit::cli
