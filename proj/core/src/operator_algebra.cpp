#include "infoframe/operator_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace infoframe {

Matrix identity_matrix(Index d) {
    if (d < 1) throw std::invalid_argument("identity_matrix: d must be >= 1");
    return Matrix::Identity(d, d);
}

Matrix basis_matrix(Index d, Index i, Index j) {
    if (d < 1) throw std::invalid_argument("basis_matrix: d must be >= 1");
    if (i < 0 || i >= d || j < 0 || j >= d) throw std::out_of_range("basis_matrix: index out of range");
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

Vector basis_ket(Index d, Index i) {
    if (i < 0 || i >= d) throw std::out_of_range("basis_ket: index out of range");
    Vector v = Vector::Zero(d);
    v(i) = 1.0;
    return v;
}

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("hs_inner: dimension mismatch");
    }
    return (a.adjoint() * b).trace();
}

double hs_norm(const Matrix& a) { return a.norm(); }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vector dket(const Matrix& op) {
    if (op.rows() != op.cols()) throw std::invalid_argument("dket: operator must be square");
    const Index d = op.rows();
    Vector v(d * d);
    for (Index m = 0; m < d; ++m) {
        v.segment(m * d, d) = op.row(m).transpose();
    }
    return v;
}

Matrix undket(const Vector& v) {
    const auto n = v.size();
    const Index d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) throw std::invalid_argument("undket: length is not a perfect square");
    Matrix op(d, d);
    for (Index m = 0; m < d; ++m) {
        op.row(m) = v.segment(m * d, d).transpose();
    }
    return op;
}

Matrix partial_trace(const Matrix& x, int subsystem, Index d) {
    if (subsystem != 1 && subsystem != 2) {
        throw std::invalid_argument("partial_trace: subsystem must be 1 or 2");
    }
    if (d < 1 || x.rows() != x.cols() || x.rows() != d * d) {
        throw std::invalid_argument("partial_trace: operator dimension is not d*d");
    }
    Matrix out = Matrix::Zero(d, d);
    if (subsystem == 1) {
        // (Tr_1 X)_{n n'} = sum_m X_{(m n),(m n')}
        for (Index n = 0; n < d; ++n)
            for (Index np = 0; np < d; ++np)
                for (Index m = 0; m < d; ++m) out(n, np) += x(m * d + n, m * d + np);
    } else {
        // (Tr_2 X)_{m m'} = sum_n X_{(m n),(m' n)}
        for (Index m = 0; m < d; ++m)
            for (Index mp = 0; mp < d; ++mp)
                for (Index n = 0; n < d; ++n) out(m, mp) += x(m * d + n, mp * d + n);
    }
    return out;
}

Matrix swap_operator(Index d) {
    if (d < 1) throw std::invalid_argument("swap_operator: d must be >= 1");
    Matrix e = Matrix::Zero(d * d, d * d);
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n) e(m * d + n, n * d + m) = 1.0;
    return e;
}

Matrix symmetric_projector(Index d) {
    return 0.5 * (Matrix::Identity(d * d, d * d) + swap_operator(d));
}

Matrix antisymmetric_projector(Index d) {
    return 0.5 * (Matrix::Identity(d * d, d * d) - swap_operator(d));
}

Matrix interleaved_kron(const Matrix& a, const Matrix& b, Index d) {
    const Index dd = d * d;
    if (a.rows() != dd || a.cols() != dd || b.rows() != dd || b.cols() != dd) {
        throw std::invalid_argument("interleaved_kron: factors must be d^2 x d^2");
    }
    Matrix out(dd * dd, dd * dd);
    for (Index m1 = 0; m1 < d; ++m1)
        for (Index m2 = 0; m2 < d; ++m2)
            for (Index m3 = 0; m3 < d; ++m3)
                for (Index m4 = 0; m4 < d; ++m4) {
                    const Index row = ((m1 * d + m2) * d + m3) * d + m4;
                    for (Index n1 = 0; n1 < d; ++n1)
                        for (Index n2 = 0; n2 < d; ++n2)
                            for (Index n3 = 0; n3 < d; ++n3)
                                for (Index n4 = 0; n4 < d; ++n4) {
                                    const Index col = ((n1 * d + n2) * d + n3) * d + n4;
                                    out(row, col) = a(m1 * d + m3, n1 * d + n3) * b(m2 * d + m4, n2 * d + n4);
                                }
                }
    return out;
}

PseudoInverse pinv(const Matrix& m, const Tolerance& tol) {
    if (m.size() == 0) return {Matrix(m.cols(), m.rows()), 0};
    if (!m.allFinite()) throw std::invalid_argument("pinv: matrix has non-finite entries");

    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = tol.rank_cutoff_factor * std::numeric_limits<double>::epsilon() *
                          static_cast<double>(std::max(m.rows(), m.cols())) * smax;

    Index rank = 0;
    RealVector inv_sv = RealVector::Zero(sv.size());
    for (Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > cutoff && sv(k) > 0.0) {
            inv_sv(k) = 1.0 / sv(k);
            ++rank;
        }
    }
    Matrix out = svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
    return {std::move(out), rank};
}

std::vector<Matrix> weyl_basis(Index d) {
    if (d < 2) throw std::invalid_argument("weyl_basis: d must be >= 2");
    const double theta = 2.0 * std::numbers::pi / static_cast<double>(d);

    Matrix shift = Matrix::Zero(d, d);  // X|k> = |k+1 mod d>
    for (Index k = 0; k < d; ++k) shift((k + 1) % d, k) = 1.0;
    Matrix clock = Matrix::Zero(d, d);  // Z = diag(omega^k)
    for (Index k = 0; k < d; ++k) clock(k, k) = std::polar(1.0, theta * static_cast<double>(k));

    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(d * d));
    Matrix xa = Matrix::Identity(d, d);
    for (Index a = 0; a < d; ++a) {
        Matrix u = xa;
        for (Index b = 0; b < d; ++b) {
            basis.push_back(u);
            u = u * clock;
        }
        xa = xa * shift;
    }
    return basis;
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_positive_semidefinite(const Matrix& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) return false;
    return es.eigenvalues().minCoeff() >= -tol;
}

bool is_unitary(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a.adjoint() * a - Matrix::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_density_matrix(const Matrix& a, double tol) {
    if (!is_positive_semidefinite(a, tol)) return false;
    return std::abs(a.trace() - Complex(1.0, 0.0)) <= tol;
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

}  // namespace infoframe
