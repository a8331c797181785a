// operator_algebra.hpp — dense complex operators, the operator<->vector
// isomorphism on the doubled space, partial traces, SVD pseudoinverse, and
// the shift-and-multiply (Weyl) operator basis.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace infoframe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical knobs shared across the library. A singular value sigma counts
/// as nonzero iff sigma > rank_cutoff_factor * eps * max_dim * sigma_max.
struct Tolerance {
    double rank_cutoff_factor = 10.0;
    double equality_abs = 1e-10;
};

// Relative residual below which an operator counts as lying in a span.
inline constexpr double kSpanResidualRel = 1e-8;

// --------------------------- small constructors ------------------------------

Matrix identity_matrix(Index d);
Matrix basis_matrix(Index d, Index i, Index j);  // |i><j|
Vector basis_ket(Index d, Index i);

Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

// --------------------------- Hilbert-Schmidt helpers -------------------------

Complex hs_inner(const Matrix& a, const Matrix& b);  // Tr[a^dag b]
double hs_norm(const Matrix& a);

Matrix kron(const Matrix& a, const Matrix& b);

// ---------------------- operator <-> doubled-space vector --------------------

// |O>> with component m*d+n equal to <m|O|n> (row-major stacking); undket is
// the exact inverse and rejects vectors whose length is not a perfect square.
Vector dket(const Matrix& op);
Matrix undket(const Vector& v);

// --------------------------- bipartite structure -----------------------------

// Trace out subsystem 1 or 2 of an operator on a d*d-dimensional space.
Matrix partial_trace(const Matrix& x, int subsystem, Index d);

Matrix swap_operator(Index d);            // E|phi>|psi> = |psi>|phi>
Matrix symmetric_projector(Index d);      // (I + E)/2
Matrix antisymmetric_projector(Index d);  // (I - E)/2

// Given a on H1(x)H3 and b on H2(x)H4 (each a d^2 x d^2 matrix over d-dim
// factors), build the operator a_13 (x) b_24 on H1(x)H2(x)H3(x)H4.
Matrix interleaved_kron(const Matrix& a, const Matrix& b, Index d);

// --------------------------- pseudoinverse -----------------------------------

struct PseudoInverse {
    Matrix matrix;
    Index rank = 0;
};

// Moore-Penrose pseudoinverse; total function, rank reported alongside.
PseudoInverse pinv(const Matrix& m, const Tolerance& tol = {});

// --------------------------- operator bases ----------------------------------

// The d^2 operators X^a Z^b (X the cyclic shift, Z = diag(omega^k)), indexed
// a*d+b; element 0 is the identity, the rest are traceless, and
// Tr[U_i^dag U_j] = d * delta_ij.
std::vector<Matrix> weyl_basis(Index d);

// --------------------------- predicates --------------------------------------

bool is_hermitian(const Matrix& a, double tol);
bool is_positive_semidefinite(const Matrix& a, double tol);
bool is_unitary(const Matrix& a, double tol);
bool is_density_matrix(const Matrix& a, double tol);
double purity(const Matrix& rho);  // Tr[rho^2]

}  // namespace infoframe
