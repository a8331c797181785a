// descriptor.hpp — the operator-descriptor mini-language shared by the CLI
// and the covariant comparison tooling. All descriptors name operators on the
// bipartite d^2-dimensional space:
//
//   pauli:<chars>        tensor of I,X,Y,Z per character (d = 2 only)
//   weyl:<a,b>x<c,e>     U_{a,b} (x) U_{c,e} from the shift-and-multiply basis
//   matelem:<i,j,n,m>    |i><j| (x) |n><m|
//   bellproj:<k>         (1/d)|V_k>><<V_k|, V_k from the Weyl basis
//   belloffdiag:<k,l>    (1/d)|V_k>><<V_l|
//   file:<path>          JSON-encoded operator {"dim": n, "entries": [[re,im],...]}

#pragma once

#include "infoframe/operator_algebra.hpp"

#include <stdexcept>
#include <string>

namespace infoframe {

class DescriptorError : public std::invalid_argument {
public:
    DescriptorError(const std::string& what, std::string token)
        : std::invalid_argument(what), token_(std::move(token)) {}
    const std::string& token() const { return token_; }

private:
    std::string token_;
};

Matrix parse_operator_descriptor(const std::string& text, Index d);

}  // namespace infoframe
