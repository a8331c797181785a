#include "infoframe/descriptor.hpp"

#include "infoframe/json_io.hpp"

#include <charconv>
#include <vector>

namespace infoframe {

namespace {

std::vector<Index> parse_index_list(const std::string& body, std::size_t expected,
                                    Index bound, const std::string& full) {
    std::vector<Index> out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const std::size_t comma = body.find(',', pos);
        const std::string piece = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                              : comma - pos);
        long value = 0;
        const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty()) {
            throw DescriptorError("descriptor: expected an integer in '" + full + "'", piece);
        }
        if (value < 0 || value >= bound) {
            throw DescriptorError("descriptor: index out of range in '" + full + "'", piece);
        }
        out.push_back(static_cast<Index>(value));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expected) {
        throw DescriptorError("descriptor: wrong number of indices in '" + full + "'", body);
    }
    return out;
}

Matrix pauli_tensor(const std::string& body, Index d, const std::string& full) {
    if (d != 2) {
        throw DescriptorError("descriptor: pauli operators require dim 2", full);
    }
    if (body.size() != 2) {
        throw DescriptorError("descriptor: pauli string must name both factors", body);
    }
    Matrix op = Matrix::Identity(1, 1);
    for (const char c : body) {
        Matrix factor;
        switch (c) {
            case 'I': factor = Matrix::Identity(2, 2); break;
            case 'X': factor = sigma_x(); break;
            case 'Y': factor = sigma_y(); break;
            case 'Z': factor = sigma_z(); break;
            default:
                throw DescriptorError("descriptor: invalid pauli letter", std::string(1, c));
        }
        op = kron(op, factor);
    }
    return op;
}

Matrix weyl_tensor(const std::string& body, Index d, const std::string& full) {
    const std::size_t split = body.find('x');
    if (split == std::string::npos) {
        throw DescriptorError("descriptor: weyl factors must be separated by 'x'", body);
    }
    const auto left = parse_index_list(body.substr(0, split), 2, d, full);
    const auto right = parse_index_list(body.substr(split + 1), 2, d, full);
    const auto basis = weyl_basis(d);
    return kron(basis[static_cast<std::size_t>(left[0] * d + left[1])],
                basis[static_cast<std::size_t>(right[0] * d + right[1])]);
}

}  // namespace

Matrix parse_operator_descriptor(const std::string& text, Index d) {
    if (d < 2) throw std::invalid_argument("parse_operator_descriptor: d must be >= 2");
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw DescriptorError("descriptor: missing ':' separator", text);
    }
    const std::string head = text.substr(0, colon);
    const std::string body = text.substr(colon + 1);

    if (head == "pauli") return pauli_tensor(body, d, text);
    if (head == "weyl") return weyl_tensor(body, d, text);
    if (head == "matelem") {
        const auto idx = parse_index_list(body, 4, d, text);
        return kron(basis_matrix(d, idx[0], idx[1]), basis_matrix(d, idx[2], idx[3]));
    }
    if (head == "bellproj" || head == "belloffdiag") {
        const auto idx = parse_index_list(body, head == "bellproj" ? 1 : 2, d * d, text);
        const auto basis = weyl_basis(d);
        const Vector vk = dket(basis[static_cast<std::size_t>(idx[0])]);
        const Vector vl = dket(basis[static_cast<std::size_t>(idx.back())]);
        return (vk * vl.adjoint()) / static_cast<double>(d);
    }
    if (head == "file") {
        const Matrix op = load_operator(body);
        if (op.rows() != d * d) {
            throw DescriptorError("descriptor: file operator does not act on the d^2-dim space", text);
        }
        return op;
    }
    throw DescriptorError("descriptor: unknown operator kind", head);
}

}  // namespace infoframe
