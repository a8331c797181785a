#include "infoframe/json_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace infoframe {

namespace {

using nlohmann::json;

json operator_to_json_value(const Matrix& op) {
    if (op.rows() != op.cols()) throw std::invalid_argument("operator_to_json: matrix must be square");
    json entries = json::array();
    for (Index m = 0; m < op.rows(); ++m) {
        for (Index n = 0; n < op.cols(); ++n) {
            entries.push_back({op(m, n).real(), op(m, n).imag()});
        }
    }
    return json{{"dim", op.rows()}, {"entries", std::move(entries)}};
}

Matrix operator_from_json_value(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
        throw std::invalid_argument("operator JSON must carry dim and entries");
    }
    const Index d = j.at("dim").get<Index>();
    if (d < 1) throw std::invalid_argument("operator JSON: dim must be >= 1");
    const json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(d * d)) {
        throw std::invalid_argument("operator JSON: entries must hold dim^2 [re, im] pairs");
    }
    Matrix op(d, d);
    for (Index m = 0; m < d; ++m) {
        for (Index n = 0; n < d; ++n) {
            const json& e = entries.at(static_cast<std::size_t>(m * d + n));
            if (!e.is_array() || e.size() != 2) {
                throw std::invalid_argument("operator JSON: each entry must be [re, im]");
            }
            op(m, n) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return op;
}

json frame_to_json_value(Index dim, const std::vector<Matrix>& elements, const std::string& kind) {
    json elems = json::array();
    for (const Matrix& p : elements) elems.push_back(operator_to_json_value(p));
    return json{{"dim", dim}, {"kind", kind}, {"elements", std::move(elems)}};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::string operator_to_json(const Matrix& op) { return operator_to_json_value(op).dump(); }

Matrix operator_from_json(const std::string& text) {
    return operator_from_json_value(json::parse(text));
}

std::string povm_to_json(const DiscretePovm& povm) {
    return frame_to_json_value(povm.dim, povm.elements, "povm").dump();
}

DiscretePovm povm_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.is_object() || !j.contains("elements")) {
        throw std::invalid_argument("povm JSON must carry an elements array");
    }
    std::vector<Matrix> elements;
    for (const json& e : j.at("elements")) elements.push_back(operator_from_json_value(e));
    DiscretePovm povm = make_povm(std::move(elements));
    if (j.contains("dim") && j.at("dim").get<Index>() != povm.dim) {
        throw std::invalid_argument("povm JSON: declared dim does not match elements");
    }
    return povm;
}

std::string dual_to_json(const DualFrame& dual) {
    const char* kind = dual.kind == DualKind::Canonical ? "canonical"
                       : dual.kind == DualKind::Alternate ? "alternate"
                                                          : "weighted";
    return frame_to_json_value(dual.dim, dual.elements, kind).dump();
}

Matrix load_operator(const std::string& path) { return operator_from_json(read_file(path)); }

DiscretePovm load_povm(const std::string& path) { return povm_from_json(read_file(path)); }

}  // namespace infoframe
