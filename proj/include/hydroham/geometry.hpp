#ifndef HYDROHAM_GEOMETRY_HPP
#define HYDROHAM_GEOMETRY_HPP

#include <initializer_list>
#include <vector>

#include "hydroham/rational.hpp"

namespace hydroham {

using Mat = std::vector<std::vector<RationalFn>>;

RationalFn mat_det(const Mat& m);
/// Exact inverse; throws SingularPencil when the determinant is the zero
/// function. Vanishing on a proper subvariety is fine.
Mat mat_inverse(const Mat& m);
Mat mat_identity(int n, int nvars);

/// Dense tensor with exact components, contravariant indices first.
class Tensor {
public:
    Tensor() = default;
    Tensor(int nvars, int p, int q);

    int nvars() const { return nvars_; }
    int contravariant() const { return p_; }
    int covariant() const { return q_; }
    int rank() const { return p_ + q_; }

    const RationalFn& at(std::initializer_list<int> idx) const { return comp_[flat(idx)]; }
    RationalFn& at(std::initializer_list<int> idx) { return comp_[flat(idx)]; }
    const std::vector<RationalFn>& components() const { return comp_; }
    std::vector<RationalFn>& components() { return comp_; }

    bool is_zero() const;
    bool operator==(const Tensor& o) const;
    Tensor operator-(const Tensor& o) const;
    Tensor operator+(const Tensor& o) const;

    static Tensor vector_field(const std::vector<RationalFn>& comps);
    static Tensor from_matrix(const Mat& m); // (1,1): [upper][lower]
    Mat as_matrix() const;                   // requires valence (1,1) or (2,0)

private:
    std::size_t flat(std::initializer_list<int> idx) const;

    int nvars_ = 0;
    int p_ = 0;
    int q_ = 0;
    std::vector<RationalFn> comp_;
};

/// Affine connection by its Christoffel symbols A^c_{ab}, stored [c][a][b]
/// with a the direction and b the argument.
class Connection {
public:
    Connection() = default;
    explicit Connection(int nvars);

    int nvars() const { return n_; }
    const RationalFn& at(int c, int a, int b) const { return gamma_[idx(c, a, b)]; }
    RationalFn& at(int c, int a, int b) { return gamma_[idx(c, a, b)]; }

    bool operator==(const Connection& o) const { return n_ == o.n_ && gamma_ == o.gamma_; }

private:
    std::size_t idx(int c, int a, int b) const {
        return (static_cast<std::size_t>(c) * n_ + a) * n_ + b;
    }
    int n_ = 0;
    std::vector<RationalFn> gamma_;
};

/// T^c_{ab} = A^c_{ab} - A^c_{ba}.
Tensor torsion(const Connection& C);

/// R^c_{abm} = dA^c_{bm}/dv^a - dA^c_{am}/dv^b + A^c_{al}A^l_{bm} - A^c_{bl}A^l_{am}.
Tensor curvature(const Connection& C);
bool is_flat(const Connection& C);
bool is_torsionless(const Connection& C);

/// Exterior covariant derivative of a vector-valued k-form for k in {0,1}:
/// a vector field (1,0) maps to nabla X; a (1,1) tensor to the antisymmetrized
/// covariant derivative. Throws UnsupportedDegree otherwise.
Tensor d_nabla(const Connection& C, const Tensor& omega);

/// L-deformed exterior covariant derivative built on the dual connection,
/// with the L-bracket replacing the Lie bracket.
Tensor d_L_nabla(const Connection& Cstar, const Tensor& L, const Tensor& omega);

/// N^c_{ab} = L^m_a dL^c_b/dv^m - L^m_b dL^c_a/dv^m - L^c_m dL^m_b/dv^a + L^c_m dL^m_a/dv^b.
Tensor nijenhuis(const Tensor& L);

struct GmFlatness {
    bool flat;
    Tensor residual; // (1,3): [c][a][b][m]
};

/// nabla_a (L^l_b Delta^c_{lm}) - nabla_b (L^l_a Delta^c_{lm}) with
/// Delta = Cstar - C and the covariant derivative taken in C.
GmFlatness gm_flatness_condition(const Tensor& L, const Connection& C, const Connection& Cstar);

/// d_nabla(C, L) == d_nabla(Cstar, L).
bool ahe_check(const Tensor& L, const Connection& C, const Connection& Cstar);

/// Gauss-Manin connection at parameter z0:
///   G^c_{ab} = B^c_{ab} + z0 (L_z^{-1})^r_a (B^c_{rb} - A^c_{rb}).
/// Throws SingularPencil when det(L - z0 I) is identically zero.
Connection gm_christoffels_at(const Tensor& L, const Connection& C, const Connection& Cstar,
                              const Rational& z0);

/// (Lie_E c)^a_{bg} = E^m dc - c dm E^a + c dE + c dE (structure-tensor Lie derivative).
Tensor lie_derivative_product(const Tensor& E, const Tensor& c);

} // namespace hydroham

#endif
