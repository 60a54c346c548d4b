#include "hydroham/fman.hpp"

namespace hydroham {

Tensor product_tensor(const Tensor& c, const std::vector<RationalFn>& X) {
    const int n = c.nvars();
    Tensor t(n, 1, 1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            RationalFn v(n);
            for (int m = 0; m < n; ++m)
                v += c.at({a, m, b}) * X[m];
            t.at({a, b}) = v;
        }
    return t;
}

namespace {

using Vf = std::vector<RationalFn>; // vector field components

Vf coordinate_field(int n, int i) {
    Vf e(n, RationalFn(n));
    e[i] = RationalFn::constant(n, Rational(1));
    return e;
}

Vf vf_product(const Tensor& c, const Vf& u, const Vf& v) {
    const int n = c.nvars();
    Vf w(n, RationalFn(n));
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                w[a] += c.at({a, i, j}) * u[i] * v[j];
    return w;
}

Vf vf_bracket(const Vf& u, const Vf& v) {
    const int n = static_cast<int>(u.size());
    Vf w(n, RationalFn(n));
    for (int a = 0; a < n; ++a)
        for (int m = 0; m < n; ++m)
            w[a] += u[m] * v[a].partial(m) - v[m] * u[a].partial(m);
    return w;
}

} // namespace

HertlingManinResult hertling_manin_check(const Tensor& c) {
    const int n = c.nvars();
    HertlingManinResult res;
    res.ok = true;
    for (int i = 0; i < n; ++i) {
        Vf X = coordinate_field(n, i);
        for (int j = 0; j < n; ++j) {
            Vf Y = coordinate_field(n, j);
            for (int k = 0; k < n; ++k) {
                Vf W = coordinate_field(n, k);
                for (int l = 0; l < n; ++l) {
                    Vf Z = coordinate_field(n, l);
                    Vf XY = vf_product(c, X, Y);
                    Vf ZW = vf_product(c, Z, W);
                    Vf acc = vf_bracket(XY, ZW);
                    Vf t = vf_product(c, vf_bracket(XY, Z), W);
                    Vf t2 = vf_product(c, vf_bracket(XY, W), Z);
                    Vf t3 = vf_product(c, X, vf_bracket(Y, ZW));
                    Vf t4 = vf_product(c, X, vf_product(c, vf_bracket(Y, Z), W));
                    Vf t5 = vf_product(c, X, vf_product(c, vf_bracket(Y, W), Z));
                    Vf t6 = vf_product(c, Y, vf_bracket(X, ZW));
                    Vf t7 = vf_product(c, Y, vf_product(c, vf_bracket(X, Z), W));
                    Vf t8 = vf_product(c, Y, vf_product(c, vf_bracket(X, W), Z));
                    for (int a = 0; a < n; ++a) {
                        RationalFn v = acc[a] - t[a] - t2[a] - t3[a] + t4[a] + t5[a] -
                                       t6[a] + t7[a] + t8[a];
                        if (!v.is_zero()) {
                            res.ok = false;
                            res.residuals.push_back({{a, i, j, k, l}, v});
                        }
                    }
                }
            }
        }
    }
    return res;
}

FlatFReport flat_f_check(const FlatFData& d) {
    const int n = d.nvars();
    FlatFReport r{};
    r.commutative = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g)
                if (d.c.at({a, b, g}) != d.c.at({a, g, b}))
                    r.commutative = false;
    r.unit = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            RationalFn v(n);
            for (int g = 0; g < n; ++g)
                v += d.c.at({a, b, g}) * d.e[g];
            if (v != (a == b ? RationalFn::constant(n, Rational(1)) : RationalFn(n)))
                r.unit = false;
        }
    r.unit_flat = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (!d.e[a].partial(b).is_zero())
                r.unit_flat = false;
    r.family_flat_torsionless = true;
    for (std::int64_t lambda : {0, 1, -1}) {
        Connection C(n);
        for (int g = 0; g < n; ++g)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    C.at(g, a, b) = d.c.at({g, a, b}).scaled(Rational(-lambda));
        if (!is_flat(C) || !is_torsionless(C))
            r.family_flat_torsionless = false;
    }
    r.associative = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g)
                for (int nn = 0; nn < n; ++nn) {
                    RationalFn lhs(n), rhs(n);
                    for (int m = 0; m < n; ++m) {
                        lhs += d.c.at({m, a, b}) * d.c.at({nn, m, g});
                        rhs += d.c.at({m, b, g}) * d.c.at({nn, m, a});
                    }
                    if (lhs != rhs)
                        r.associative = false;
                }
    r.hertling_manin = hertling_manin_check(d.c).ok;
    return r;
}

Tensor dual_product(const Tensor& c, const std::vector<RationalFn>& E) {
    const int n = c.nvars();
    Tensor eo = product_tensor(c, E);
    Mat m = eo.as_matrix();
    if (mat_det(m).is_zero())
        throw SingularPencil("det(E o) = 0 identically");
    Mat inv = mat_inverse(m);
    Tensor r(n, 1, 2);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int g = 0; g < n; ++g) {
                RationalFn v(n);
                for (int mu = 0; mu < n; ++mu)
                    v += inv[a][mu] * c.at({mu, b, g});
                r.at({a, b, g}) = v;
            }
    return r;
}

BiFlatReport biflat_check(const BiFlatData& b) {
    const int n = b.nvars();
    BiFlatReport r{};
    r.star_torsionless = is_torsionless(b.nablaStar);
    r.star_flat = is_flat(b.nablaStar);
    r.star_euler_flat = d_nabla(b.nablaStar, Tensor::vector_field(b.E)).is_zero();
    r.euler_scales_product = (lie_derivative_product(Tensor::vector_field(b.E), b.c) - b.c).is_zero();
    r.compatible_connections = true;
    for (int i = 0; i < n; ++i) {
        Tensor xo = product_tensor(b.c, coordinate_field(n, i));
        if (!(d_nabla(b.nabla, xo) - d_nabla(b.nablaStar, xo)).is_zero())
            r.compatible_connections = false;
    }
    return r;
}

std::vector<HierarchyFlow> principal_flows(const FlatFData& d, int pmax) {
    const int n = d.nvars();
    for (const RationalFn& comp : d.c.components())
        if (!comp.is_polynomial())
            throw NonPolynomial("structure constants must be polynomial for the recursion");
    std::vector<HierarchyFlow> flows;
    for (int alpha = 0; alpha < n; ++alpha) {
        Vf x = coordinate_field(n, alpha);
        flows.push_back({alpha, -1, x});
        for (int p = -1; p < pmax; ++p) {
            // rhs^l_b = (X o)^l_b must be a closed gradient in b for each l
            Tensor xo = product_tensor(d.c, x);
            for (int l = 0; l < n; ++l)
                for (int bb = 0; bb < n; ++bb)
                    for (int dd = 0; dd < n; ++dd)
                        if (xo.at({l, bb}).partial(dd) != xo.at({l, dd}).partial(bb))
                            throw NotClosed("hierarchy recursion: d_nabla(X o) != 0 at level " +
                                            std::to_string(p));
            Vf next(n, RationalFn(n));
            for (int l = 0; l < n; ++l) {
                std::vector<Poly> grad;
                for (int bb = 0; bb < n; ++bb) {
                    const RationalFn& rat = xo.at({l, bb});
                    if (!rat.is_polynomial())
                        throw NonPolynomial("hierarchy integrand is not polynomial");
                    grad.push_back(rat.num().scaled(Rational(1) / rat.den().constant_value()));
                }
                next[l] = RationalFn(homotopy_potential(grad));
            }
            x = next;
            flows.push_back({alpha, p + 1, x});
        }
    }
    return flows;
}

HydroFlow hierarchy_hydro_flow(const Tensor& c, const HierarchyFlow& f) {
    HydroFlow flow;
    flow.X = product_tensor(c, f.X).as_matrix();
    return flow;
}

bool flows_commute(const HierarchyFlow& f1, const HierarchyFlow& f2, const Tensor& c) {
    const int n = c.nvars();
    Derivation d1 = flow_derivation(hierarchy_hydro_flow(c, f1), n);
    Derivation d2 = flow_derivation(hierarchy_hydro_flow(c, f2), n);
    return graded_commutator(d1, d2).is_zero();
}

BiGeometricData frobenius_pencil(const Mat& eta, const Tensor& c,
                                 const std::vector<RationalFn>& E, const Rational& nu) {
    const int n = c.nvars();
    Tensor L = product_tensor(c, E);
    Mat lmat = L.as_matrix();
    if (mat_det(lmat).is_zero())
        throw SingularPencil("det(E o) = 0 identically");
    Mat etainv = mat_inverse(eta);
    // contravariant intersection form g^{ab} = (E o)^a_m (eta^{-1})^{mb}
    Mat gsharp(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            RationalFn v(n);
            for (int m = 0; m < n; ++m)
                v += lmat[a][m] * etainv[m][b];
            gsharp[a][b] = v;
        }
    Mat glow = mat_inverse(gsharp);
    // Levi-Civita Christoffels of the metric glow
    Connection star(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                RationalFn v(n);
                for (int l = 0; l < n; ++l)
                    v += gsharp[k][l] *
                         (glow[l][j].partial(i) + glow[l][i].partial(j) - glow[i][j].partial(l));
                star.at(k, i, j) = v.scaled(Rational(1, 2));
            }
    Tensor dual = dual_product(c, E);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                star.at(k, i, j) += dual.at({k, i, j}).scaled(nu);
    BiGeometricData b;
    b.L = L;
    b.nabla = Connection(n);
    b.nablaStar = star;
    return b;
}

SemisimpleCanonical semisimple_canonical(const std::map<std::pair<int, int>, RationalFn>& A,
                                         int n) {
    auto entry = [&](int i, int j) -> const RationalFn& {
        auto it = A.find({i, j});
        if (it == A.end())
            throw ManifestError("canonical A entry " + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + " is missing");
        return it->second;
    };
    auto idx = [](int i, int j) {
        return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    };
    // the defining PDE system
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            const RationalFn& a_ij = entry(i, j);
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j)
                    continue;
                RationalFn rhs = -a_ij * entry(i, k) + a_ij * entry(j, k) +
                                 entry(i, k) * entry(k, j);
                if (a_ij.partial(k) != rhs)
                    throw PDEViolation("d_k A^i_{ij} equation fails at " + idx(i, j) +
                                       ", k=" + std::to_string(k + 1));
            }
            RationalFn e_dir(n);
            RationalFn E_dir(n);
            for (int l = 0; l < n; ++l) {
                e_dir += a_ij.partial(l);
                E_dir += RationalFn::variable(n, l) * a_ij.partial(l);
            }
            if (!e_dir.is_zero())
                throw PDEViolation("e(A^i_{ij}) = 0 fails at " + idx(i, j));
            if (E_dir != -a_ij)
                throw PDEViolation("E(A^i_{ij}) = -A^i_{ij} fails at " + idx(i, j));
        }
    }

    SemisimpleCanonical out;
    Connection nab(n), star(n);
    for (int i = 0; i < n; ++i) {
        RationalFn aii(n), bii(n);
        const RationalFn ui = RationalFn::variable(n, i);
        for (int l = 0; l < n; ++l) {
            if (l == i)
                continue;
            const RationalFn& a_il = entry(i, l);
            nab.at(i, i, l) = a_il;
            nab.at(i, l, i) = a_il;
            nab.at(i, l, l) = -a_il;
            star.at(i, i, l) = a_il;
            star.at(i, l, i) = a_il;
            star.at(i, l, l) = -(ui / RationalFn::variable(n, l)) * a_il;
            aii -= a_il;
            bii -= (RationalFn::variable(n, l) / ui) * a_il;
        }
        nab.at(i, i, i) = aii;
        star.at(i, i, i) = bii - ui.inverse();
    }
    Tensor c(n, 1, 2);
    Tensor L(n, 1, 1);
    std::vector<RationalFn> e, E;
    for (int i = 0; i < n; ++i) {
        c.at({i, i, i}) = RationalFn::constant(n, Rational(1));
        L.at({i, i}) = RationalFn::variable(n, i);
        e.push_back(RationalFn::constant(n, Rational(1)));
        E.push_back(RationalFn::variable(n, i));
    }
    out.biflat = BiFlatData{c, e, E, nab, star};
    out.geometry = BiGeometricData{L, nab, star};
    return out;
}

} // namespace hydroham
