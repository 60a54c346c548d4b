#include "hydroham/geometry.hpp"

namespace hydroham {

RationalFn mat_det(const Mat& m) {
    const int n = static_cast<int>(m.size());
    if (n == 0)
        throw Error("EmptyMatrix", "determinant of an empty matrix");
    const int nv = m[0][0].nvars();
    Mat a = m;
    RationalFn det = RationalFn::constant(nv, Rational(1));
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (!a[row][col].is_zero()) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0)
            return RationalFn(nv);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int row = col + 1; row < n; ++row) {
            if (a[row][col].is_zero())
                continue;
            RationalFn factor = a[row][col] / a[col][col];
            for (int k = col; k < n; ++k)
                a[row][k] -= factor * a[col][k];
        }
    }
    return det;
}

Mat mat_identity(int n, int nvars) {
    Mat id(n, std::vector<RationalFn>(n, RationalFn(nvars)));
    for (int i = 0; i < n; ++i)
        id[i][i] = RationalFn::constant(nvars, Rational(1));
    return id;
}

Mat mat_inverse(const Mat& m) {
    const int n = static_cast<int>(m.size());
    const int nv = m[0][0].nvars();
    Mat a = m;
    Mat inv = mat_identity(n, nv);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (!a[row][col].is_zero()) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0)
            throw SingularPencil("matrix is singular as a rational-function matrix");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        RationalFn d = a[col][col];
        for (int k = 0; k < n; ++k) {
            a[col][k] /= d;
            inv[col][k] /= d;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero())
                continue;
            RationalFn factor = a[row][col];
            for (int k = 0; k < n; ++k) {
                a[row][k] -= factor * a[col][k];
                inv[row][k] -= factor * inv[col][k];
            }
        }
    }
    return inv;
}

Tensor::Tensor(int nvars, int p, int q) : nvars_(nvars), p_(p), q_(q) {
    std::size_t count = 1;
    for (int i = 0; i < p + q; ++i)
        count *= static_cast<std::size_t>(nvars);
    comp_.assign(count, RationalFn(nvars));
}

std::size_t Tensor::flat(std::initializer_list<int> idx) const {
    std::size_t f = 0;
    for (int i : idx)
        f = f * static_cast<std::size_t>(nvars_) + static_cast<std::size_t>(i);
    return f;
}

bool Tensor::is_zero() const {
    for (const RationalFn& c : comp_)
        if (!c.is_zero())
            return false;
    return true;
}

bool Tensor::operator==(const Tensor& o) const {
    return nvars_ == o.nvars_ && p_ == o.p_ && q_ == o.q_ && comp_ == o.comp_;
}

Tensor Tensor::operator-(const Tensor& o) const {
    Tensor r = *this;
    for (std::size_t i = 0; i < comp_.size(); ++i)
        r.comp_[i] = comp_[i] - o.comp_[i];
    return r;
}

Tensor Tensor::operator+(const Tensor& o) const {
    Tensor r = *this;
    for (std::size_t i = 0; i < comp_.size(); ++i)
        r.comp_[i] = comp_[i] + o.comp_[i];
    return r;
}

Tensor Tensor::vector_field(const std::vector<RationalFn>& comps) {
    Tensor t(static_cast<int>(comps.size()), 1, 0);
    t.comp_ = comps;
    return t;
}

Tensor Tensor::from_matrix(const Mat& m) {
    const int n = static_cast<int>(m.size());
    Tensor t(n, 1, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.at({i, j}) = m[i][j];
    return t;
}

Mat Tensor::as_matrix() const {
    Mat m(nvars_, std::vector<RationalFn>(nvars_, RationalFn(nvars_)));
    for (int i = 0; i < nvars_; ++i)
        for (int j = 0; j < nvars_; ++j)
            m[i][j] = at({i, j});
    return m;
}

Connection::Connection(int nvars) : n_(nvars) {
    gamma_.assign(static_cast<std::size_t>(nvars) * nvars * nvars, RationalFn(nvars));
}

Tensor torsion(const Connection& C) {
    const int n = C.nvars();
    Tensor t(n, 1, 2);
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                t.at({c, a, b}) = C.at(c, a, b) - C.at(c, b, a);
    return t;
}

Tensor curvature(const Connection& C) {
    const int n = C.nvars();
    Tensor r(n, 1, 3);
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                for (int m = 0; m < n; ++m) {
                    RationalFn v = C.at(c, b, m).partial(a) - C.at(c, a, m).partial(b);
                    for (int l = 0; l < n; ++l)
                        v += C.at(c, a, l) * C.at(l, b, m) - C.at(c, b, l) * C.at(l, a, m);
                    r.at({c, a, b, m}) = v;
                }
            }
        }
    }
    return r;
}

bool is_flat(const Connection& C) { return curvature(C).is_zero(); }
bool is_torsionless(const Connection& C) { return torsion(C).is_zero(); }

namespace {

// nabla_a of the value vector field omega(e_b): d omega^c_b / dv^a + A^c_{al} omega^l_b
RationalFn value_deriv_11(const Connection& C, const Tensor& X, int c, int a, int b) {
    RationalFn v = X.at({c, b}).partial(a);
    for (int l = 0; l < C.nvars(); ++l)
        v += C.at(c, a, l) * X.at({l, b});
    return v;
}

} // namespace

Tensor d_nabla(const Connection& C, const Tensor& omega) {
    const int n = C.nvars();
    if (omega.contravariant() != 1 || omega.covariant() > 1)
        throw UnsupportedDegree("d_nabla supports vector-valued k-forms with k <= 1");
    if (omega.covariant() == 0) {
        Tensor r(n, 1, 1);
        for (int c = 0; c < n; ++c) {
            for (int b = 0; b < n; ++b) {
                RationalFn v = omega.at({c}).partial(b);
                for (int l = 0; l < n; ++l)
                    v += C.at(c, b, l) * omega.at({l});
                r.at({c, b}) = v;
            }
        }
        return r;
    }
    // the Lie-bracket term vanishes on coordinate fields
    Tensor r(n, 1, 2);
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                r.at({c, a, b}) =
                    value_deriv_11(C, omega, c, a, b) - value_deriv_11(C, omega, c, b, a);
    return r;
}

Tensor d_L_nabla(const Connection& Cstar, const Tensor& L, const Tensor& omega) {
    const int n = Cstar.nvars();
    if (omega.contravariant() != 1 || omega.covariant() > 1)
        throw UnsupportedDegree("d_L_nabla supports vector-valued k-forms with k <= 1");
    // nabla*_{L e_b} acting on the value vector field
    auto star_deriv = [&](int c, int b, auto value) {
        RationalFn v(n);
        for (int m = 0; m < n; ++m) {
            if (L.at({m, b}).is_zero())
                continue;
            RationalFn inner = value(c).partial(m);
            for (int l = 0; l < n; ++l)
                inner += Cstar.at(c, m, l) * value(l);
            v += L.at({m, b}) * inner;
        }
        return v;
    };
    if (omega.covariant() == 0) {
        Tensor r(n, 1, 1);
        for (int c = 0; c < n; ++c)
            for (int b = 0; b < n; ++b)
                r.at({c, b}) = star_deriv(c, b, [&](int i) { return omega.at({i}); });
        return r;
    }
    Tensor r(n, 1, 2);
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                RationalFn v = star_deriv(c, a, [&](int i) { return omega.at({i, b}); }) -
                               star_deriv(c, b, [&](int i) { return omega.at({i, a}); });
                // omega([e_a, e_b]_L), [e_a,e_b]_L^m = d_a L^m_b - d_b L^m_a
                for (int m = 0; m < n; ++m)
                    v -= omega.at({c, m}) * (L.at({m, b}).partial(a) - L.at({m, a}).partial(b));
                r.at({c, a, b}) = v;
            }
        }
    }
    return r;
}

Tensor nijenhuis(const Tensor& L) {
    const int n = L.nvars();
    Tensor r(n, 1, 2);
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                RationalFn v(n);
                for (int m = 0; m < n; ++m) {
                    v += L.at({m, a}) * L.at({c, b}).partial(m);
                    v -= L.at({m, b}) * L.at({c, a}).partial(m);
                    v -= L.at({c, m}) * L.at({m, b}).partial(a);
                    v += L.at({c, m}) * L.at({m, a}).partial(b);
                }
                r.at({c, a, b}) = v;
            }
        }
    }
    return r;
}

namespace {

// S^c_{bm} = L^l_b Delta^c_{lm}
Tensor l_delta(const Tensor& L, const Connection& C, const Connection& Cstar) {
    const int n = C.nvars();
    Tensor s(n, 1, 2);
    for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b)
            for (int m = 0; m < n; ++m) {
                RationalFn v(n);
                for (int l = 0; l < n; ++l)
                    v += L.at({l, b}) * (Cstar.at(c, l, m) - C.at(c, l, m));
                s.at({c, b, m}) = v;
            }
    return s;
}

RationalFn cov_deriv_12(const Connection& C, const Tensor& S, int c, int a, int b, int m) {
    RationalFn v = S.at({c, b, m}).partial(a);
    for (int l = 0; l < C.nvars(); ++l) {
        v += C.at(c, a, l) * S.at({l, b, m});
        v -= C.at(l, a, b) * S.at({c, l, m});
        v -= C.at(l, a, m) * S.at({c, b, l});
    }
    return v;
}

} // namespace

GmFlatness gm_flatness_condition(const Tensor& L, const Connection& C, const Connection& Cstar) {
    const int n = C.nvars();
    Tensor S = l_delta(L, C, Cstar);
    Tensor residual(n, 1, 3);
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int m = 0; m < n; ++m)
                    residual.at({c, a, b, m}) =
                        cov_deriv_12(C, S, c, a, b, m) - cov_deriv_12(C, S, c, b, a, m);
    return {residual.is_zero(), residual};
}

bool ahe_check(const Tensor& L, const Connection& C, const Connection& Cstar) {
    return (d_nabla(C, L) - d_nabla(Cstar, L)).is_zero();
}

Connection gm_christoffels_at(const Tensor& L, const Connection& C, const Connection& Cstar,
                              const Rational& z0) {
    const int n = C.nvars();
    const int nv = L.nvars();
    Mat lz = L.as_matrix();
    for (int i = 0; i < n; ++i)
        lz[i][i] -= RationalFn::constant(nv, z0);
    if (mat_det(lz).is_zero())
        throw SingularPencil("det(L - z I) vanishes identically at z = " + z0.str());
    Mat inv = mat_inverse(lz);
    Connection G(n);
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                RationalFn v = Cstar.at(c, a, b);
                for (int r = 0; r < n; ++r)
                    v += inv[r][a].scaled(z0) * (Cstar.at(c, r, b) - C.at(c, r, b));
                G.at(c, a, b) = v;
            }
        }
    }
    return G;
}

Tensor lie_derivative_product(const Tensor& E, const Tensor& c) {
    const int n = E.nvars();
    Tensor r(n, 1, 2);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int g = 0; g < n; ++g) {
                RationalFn v(n);
                for (int m = 0; m < n; ++m) {
                    v += E.at({m}) * c.at({a, b, g}).partial(m);
                    v -= c.at({m, b, g}) * E.at({a}).partial(m);
                    v += c.at({a, m, g}) * E.at({m}).partial(b);
                    v += c.at({a, b, m}) * E.at({m}).partial(g);
                }
                r.at({a, b, g}) = v;
            }
        }
    }
    return r;
}

} // namespace hydroham
