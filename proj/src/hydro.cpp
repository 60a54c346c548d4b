#include "hydroham/hydro.hpp"

namespace hydroham {

Arr3 make_arr3(int n) {
    return Arr3(n, Mat(n, std::vector<RationalFn>(n, RationalFn(n))));
}

Arr4 make_arr4(int n) { return Arr4(n, make_arr3(n)); }

OddHydroDerivation OddHydroDerivation::zero(int n) {
    OddHydroDerivation d;
    d.n = n;
    d.g = Mat(n, std::vector<RationalFn>(n, RationalFn(n)));
    d.gamma = make_arr3(n);
    d.V = make_arr3(n);
    d.Q = make_arr4(n);
    return d;
}

Mat lower_metric(const Mat& g) {
    if (mat_det(g).is_zero())
        throw DegenerateTensor("det(g) = 0 identically");
    Mat inv = mat_inverse(g);
    const int n = static_cast<int>(g.size());
    Mat low(n, std::vector<RationalFn>(n, RationalFn(static_cast<int>(g[0][0].nvars()))));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            low[a][b] = inv[b][a]; // g^{ma} g_{mb} = delta^a_b
    return low;
}

Derivation to_derivation(const OddHydroDerivation& D) {
    const int n = D.n;
    std::vector<DiffPoly> a(n, DiffPoly(n)), b(n, DiffPoly(n));
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            a[al] += DiffPoly::odd_jet(n, be, 1).scaled(D.g[al][be]);
            for (int ga = 0; ga < n; ++ga)
                a[al] += (DiffPoly::even_jet(n, ga, 1) * DiffPoly::odd_jet(n, be, 0))
                             .scaled(D.gamma[al][be][ga]);
        }
        for (int m = 0; m < n; ++m) {
            for (int l = 0; l < n; ++l) {
                b[al] += (DiffPoly::odd_jet(n, l, 0) * DiffPoly::odd_jet(n, m, 1))
                             .scaled(D.V[m][l][al]);
                for (int ga = 0; ga < n; ++ga)
                    b[al] += (DiffPoly::even_jet(n, ga, 1) * DiffPoly::odd_jet(n, l, 0) *
                              DiffPoly::odd_jet(n, m, 0))
                                 .scaled(D.Q[m][l][al][ga]);
            }
        }
    }
    return Derivation(n, 1, std::move(a), std::move(b));
}

namespace {

SuperMonomial mono_odd1(int b) {
    SuperMonomial m;
    m.odd.push_back(OddVar{b, 1});
    return m;
}

SuperMonomial mono_vx_odd(int g, int b) {
    SuperMonomial m;
    m.even.push_back({EvenJet{g, 1}, 1});
    m.odd.push_back(OddVar{b, 0});
    return m;
}

SuperMonomial mono_odd_odd1(int l, int m) {
    SuperMonomial mo;
    mo.odd.push_back(OddVar{l, 0});
    mo.odd.push_back(OddVar{m, 1});
    return mo;
}

SuperMonomial mono_vx_odd_odd(int g, int l, int m) {
    SuperMonomial mo;
    mo.even.push_back({EvenJet{g, 1}, 1});
    mo.odd.push_back(OddVar{l, 0});
    mo.odd.push_back(OddVar{m, 0});
    return mo;
}

RationalFn coeff_of(const DiffPoly& p, const SuperMonomial& m) {
    auto it = p.terms().find(m);
    return it == p.terms().end() ? RationalFn(p.nvars()) : it->second;
}

} // namespace

OddHydroDerivation from_derivation_images(const Derivation& tau) {
    const int n = tau.nvars();
    OddHydroDerivation D = OddHydroDerivation::zero(n);
    for (int al = 0; al < n; ++al) {
        for (int be = 0; be < n; ++be) {
            D.g[al][be] = coeff_of(tau.a(al), mono_odd1(be));
            for (int ga = 0; ga < n; ++ga)
                D.gamma[al][be][ga] = coeff_of(tau.a(al), mono_vx_odd(ga, be));
        }
        for (int m = 0; m < n; ++m) {
            for (int l = 0; l < n; ++l) {
                D.V[m][l][al] = coeff_of(tau.b(al), mono_odd_odd1(l, m));
                if (l < m) {
                    for (int ga = 0; ga < n; ++ga) {
                        RationalFn c = coeff_of(tau.b(al), mono_vx_odd_odd(ga, l, m));
                        if (c.is_zero())
                            continue;
                        RationalFn half = c.scaled(Rational(1, 2));
                        D.Q[m][l][al][ga] = half;
                        D.Q[l][m][al][ga] = -half;
                    }
                }
            }
        }
    }
    // validate the hydrodynamic shape: everything extracted must rebuild tau
    Derivation rebuilt = to_derivation(D);
    for (int al = 0; al < n; ++al) {
        if (rebuilt.a(al) != tau.a(al) || rebuilt.b(al) != tau.b(al))
            throw Error("NotHydrodynamic",
                        "derivation images are not of hydrodynamic shape");
    }
    return D;
}

OddHydroDerivation derivation_from_data(const GeometricData& d) {
    const int n = static_cast<int>(d.gsharp.size());
    OddHydroDerivation D = OddHydroDerivation::zero(n);
    D.g = d.gsharp;
    Mat low = lower_metric(d.gsharp); // also rejects det = 0
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be)
            for (int ga = 0; ga < n; ++ga) {
                RationalFn v = d.gsharp[al][be].partial(ga);
                for (int mu = 0; mu < n; ++mu)
                    v += d.gsharp[mu][be] * d.nabla.at(al, ga, mu);
                D.gamma[al][be][ga] = v;
            }
    // V^{ml}_b = g_{ab} G^{al}_c g^{cm}
    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l)
            for (int b = 0; b < n; ++b) {
                RationalFn v(n);
                for (int a = 0; a < n; ++a)
                    for (int c = 0; c < n; ++c)
                        v += low[a][b] * D.gamma[a][l][c] * D.g[c][m];
                D.V[m][l][b] = v;
            }
    // Q^{lm}_{bd} = g_{ab} (G^{al}_c G^{cm}_d - G^{am}_c G^{cl}_d) / 2
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
            for (int b = 0; b < n; ++b)
                for (int dd = 0; dd < n; ++dd) {
                    RationalFn v(n);
                    for (int a = 0; a < n; ++a)
                        for (int c = 0; c < n; ++c)
                            v += low[a][b] *
                                 (D.gamma[a][l][c] * D.gamma[c][m][dd] -
                                  D.gamma[a][m][c] * D.gamma[c][l][dd]);
                    D.Q[l][m][b][dd] = v.scaled(Rational(1, 2));
                }
    return D;
}

GeometricData data_from_derivation(const OddHydroDerivation& D) {
    const int n = D.n;
    GeometricData out;
    out.gsharp = D.g;
    Mat low = lower_metric(D.g);
    Connection A(n);
    for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                RationalFn v(n);
                for (int m = 0; m < n; ++m) {
                    v -= low[b][m] * D.g[l][m].partial(a);
                    v += low[b][m] * D.gamma[l][m][a];
                }
                A.at(l, a, b) = v;
            }
    out.nabla = A;
    // consistency of V and Q with their defining identities
    OddHydroDerivation rebuilt = derivation_from_data(out);
    if (rebuilt.gamma != D.gamma)
        throw Error("Internal", "transported connection does not reproduce Gamma");
    if (rebuilt.V != D.V || rebuilt.Q != D.Q)
        throw InconsistentVQ("V or Q do not satisfy their defining identities");
    return out;
}

GhsResult is_ghs(const OddHydroDerivation& D) {
    Derivation tau = to_derivation(D);
    GhsResult r;
    r.ok = true;
    for (int al = 0; al < D.n; ++al) {
        r.W.push_back(tau.apply(tau.a(al)));
        r.Z.push_back(tau.apply(tau.b(al)));
        if (!r.W.back().is_zero() || !r.Z.back().is_zero())
            r.ok = false;
    }
    return r;
}

bool is_ghs_geometric(const OddHydroDerivation& D) {
    GeometricData d = data_from_derivation(D); // throws InconsistentVQ
    return is_torsionless(d.nabla) && is_flat(d.nabla);
}

bool is_gbhs(const OddHydroDerivation& D0, const OddHydroDerivation& D1) {
    if (!is_ghs(D0).ok || !is_ghs(D1).ok)
        return false;
    return graded_commutator(to_derivation(D0), to_derivation(D1)).is_zero();
}

BiGeometricData bi_data(const OddHydroDerivation& D0, const OddHydroDerivation& D1) {
    const int n = D0.n;
    BiGeometricData b;
    Mat etainv = mat_inverse(D0.g);
    if (mat_det(D1.g).is_zero())
        throw DegenerateTensor("det(g) = 0 identically");
    Mat L(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RationalFn v(n);
            for (int k = 0; k < n; ++k)
                v += D1.g[i][k] * etainv[k][j];
            L[i][j] = v;
        }
    b.L = Tensor::from_matrix(L);
    b.nabla = data_from_derivation(D0).nabla;
    b.nablaStar = data_from_derivation(D1).nabla;
    return b;
}

PropertyReport check_by_properties(const BiGeometricData& b) {
    PropertyReport r;
    r.ahe = ahe_check(b.L, b.nabla, b.nablaStar);
    r.nijenhuis_residual = nijenhuis(b.L);
    r.nijenhuis_zero = r.nijenhuis_residual.is_zero();
    GmFlatness g = gm_flatness_condition(b.L, b.nabla, b.nablaStar);
    r.gm_flat = g.flat;
    r.gm_residual = g.residual;
    return r;
}

std::pair<OddHydroDerivation, OddHydroDerivation>
pencil_from_bi_data(const BiGeometricData& b, const Mat& etasharp) {
    const int n = b.nabla.nvars();
    if (!is_torsionless(b.nabla))
        throw PreconditionFailed("nabla has torsion");
    if (!is_flat(b.nabla))
        throw PreconditionFailed("nabla is not flat");
    if (!is_torsionless(b.nablaStar))
        throw PreconditionFailed("nablaStar has torsion");
    if (!is_flat(b.nablaStar))
        throw PreconditionFailed("nablaStar is not flat");
    if (!nijenhuis(b.L).is_zero())
        throw PreconditionFailed("Nijenhuis torsion of L does not vanish");
    if (!gm_flatness_condition(b.L, b.nabla, b.nablaStar).flat)
        throw PreconditionFailed("Gauss-Manin flatness condition fails");
    OddHydroDerivation D0 = derivation_from_data({etasharp, b.nabla});
    Mat g1(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            RationalFn v(n);
            for (int k = 0; k < n; ++k)
                v += b.L.at({i, k}) * etasharp[k][j];
            g1[i][j] = v;
        }
    OddHydroDerivation D1 = derivation_from_data({g1, b.nablaStar});
    return {D0, D1};
}

Derivation flow_derivation(const HydroFlow& X, int n) {
    std::vector<DiffPoly> a(n, DiffPoly(n)), b(n, DiffPoly(n));
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be)
            a[al] += DiffPoly::even_jet(n, be, 1).scaled(X.X[al][be]);
    return Derivation(n, 0, std::move(a), std::move(b));
}

Derivation extended_flow_derivation(const HydroFlow& X, const FlowExtension& ext, int n) {
    std::vector<DiffPoly> a(n, DiffPoly(n)), b(n, DiffPoly(n));
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be) {
            a[al] += DiffPoly::even_jet(n, be, 1).scaled(X.X[al][be]);
            b[al] += DiffPoly::odd_jet(n, be, 1).scaled(ext.Y[be][al]);
            for (int ga = 0; ga < n; ++ga)
                b[al] += (DiffPoly::even_jet(n, ga, 1) * DiffPoly::odd_jet(n, be, 0))
                             .scaled(ext.M[be][al][ga]);
        }
    return Derivation(n, 0, std::move(a), std::move(b));
}

FlowExtension extend_flow(const HydroFlow& X, const OddHydroDerivation& D) {
    const int n = D.n;
    if (!is_ghs(D).ok)
        throw PreconditionFailed("structure is not generalised Hamiltonian");
    GeometricData data = data_from_derivation(D);
    Mat low = lower_metric(D.g);

    FlowExtension ext;
    ext.Y = Mat(n, std::vector<RationalFn>(n, RationalFn(n)));
    ext.M = make_arr3(n);
    // g^{ab} Y^l_b = X^a_b g^{bl}
    for (int l = 0; l < n; ++l)
        for (int b = 0; b < n; ++b) {
            RationalFn v(n);
            for (int a = 0; a < n; ++a)
                for (int r = 0; r < n; ++r)
                    v += low[a][b] * X.X[a][r] * D.g[r][l];
            ext.Y[l][b] = v;
        }
    // X^a_r G^{rl}_c = g^{ab} M^l_{bc} + G^{al}_r X^r_c
    for (int l = 0; l < n; ++l)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                RationalFn v(n);
                for (int a = 0; a < n; ++a) {
                    RationalFn s(n);
                    for (int r = 0; r < n; ++r)
                        s += X.X[a][r] * D.gamma[r][l][c] - D.gamma[a][l][r] * X.X[r][c];
                    v += low[a][b] * s;
                }
                ext.M[l][b][c] = v;
            }
    ext.residual = d_nabla(data.nabla, Tensor::from_matrix(X.X));
    ext.compatible = ext.residual.is_zero();
    if (ext.compatible) {
        Derivation t = extended_flow_derivation(X, ext, n);
        if (!graded_commutator(to_derivation(D), t).is_zero())
            throw Error("Internal", "extension does not commute with the structure");
    }
    return ext;
}

std::pair<GeometricData, HydroFlow>
conservation_law_structure(const std::vector<RationalFn>& V) {
    const int n = static_cast<int>(V.size());
    GeometricData data;
    data.gsharp = mat_identity(n, n);
    data.nabla = Connection(n);
    HydroFlow flow;
    flow.X = Mat(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            flow.X[a][b] = V[a].partial(b);
    return {data, flow};
}

OneForm hamiltonian_one_form(const HydroFlow& X, const OddHydroDerivation& D) {
    const int n = D.n;
    FlowExtension ext = extend_flow(X, D);
    if (!ext.compatible)
        throw NotClosed("flow is not compatible with the structure: d_nabla X != 0");
    Mat low = lower_metric(D.g);
    // M_{ab} = X^l_a g_{lb}
    Mat Mab(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            RationalFn v(n);
            for (int l = 0; l < n; ++l)
                v += X.X[l][a] * low[l][b];
            Mab[a][b] = v;
        }
    for (int r = 0; r < n; ++r)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (Mab[a][b].partial(r) != Mab[r][b].partial(a))
                    throw NotClosed("d_r (X^l_a g_lb) != d_a (X^l_r g_lb)");
    OneForm H;
    for (int b = 0; b < n; ++b) {
        std::vector<Poly> grad;
        for (int a = 0; a < n; ++a) {
            if (!Mab[a][b].is_polynomial())
                throw NonIntegrable("line integral of a non-polynomial integrand");
            grad.push_back(Mab[a][b].num().scaled(
                Rational(1) / Mab[a][b].den().constant_value()));
        }
        H.f.push_back(DiffPoly(RationalFn(homotopy_potential(grad))));
    }
    // verify d/dt = [tau, H] on the even generators; the closed-form
    // integration is exact in a reduced odd frame (tau(theta) = 0), where
    // the G^{ab}_c H_b correction term is absent
    std::vector<DiffPoly> ha(n, DiffPoly(n)), hb;
    for (int b = 0; b < n; ++b)
        hb.push_back(H.f[b]);
    Derivation Hder(n, -1, ha, hb);
    Derivation flow = graded_commutator(to_derivation(D), Hder);
    Derivation expected = flow_derivation(X, n);
    for (int a = 0; a < n; ++a)
        if (flow.a(a) != expected.a(a))
            throw PreconditionFailed(
                "structure is not in a reduced odd frame (tau(theta) != 0); "
                "apply odd_change_of_variables to a frame with Gamma = 0 first");
    return H;
}

namespace {

std::vector<Poly> identity_base(int n) {
    std::vector<Poly> base;
    base.reserve(n);
    for (int i = 0; i < n; ++i)
        base.push_back(Poly::variable(n, i));
    return base;
}

// split a parity-1 image into (g row, Gamma row) coefficients
void decompose_even_image(const DiffPoly& h, int n, Mat& g, Arr3& gamma, int al) {
    DiffPoly rest = h;
    for (int be = 0; be < n; ++be) {
        g[al][be] = coeff_of(h, mono_odd1(be));
        rest.add_term(mono_odd1(be), -g[al][be]);
        for (int ga = 0; ga < n; ++ga) {
            gamma[al][be][ga] = coeff_of(h, mono_vx_odd(ga, be));
            rest.add_term(mono_vx_odd(ga, be), -gamma[al][be][ga]);
        }
    }
    if (!rest.is_zero())
        throw Error("NotHydrodynamic", "transformed image of v is not of hydrodynamic shape");
}

void decompose_odd_image(const DiffPoly& h, int n, Arr3& V, Arr4& Q, int al) {
    DiffPoly rest = h;
    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) {
            V[m][l][al] = coeff_of(h, mono_odd_odd1(l, m));
            rest.add_term(mono_odd_odd1(l, m), -V[m][l][al]);
            if (l < m) {
                for (int ga = 0; ga < n; ++ga) {
                    RationalFn c = coeff_of(h, mono_vx_odd_odd(ga, l, m));
                    rest.add_term(mono_vx_odd_odd(ga, l, m), -c);
                    RationalFn half = c.scaled(Rational(1, 2));
                    Q[m][l][al][ga] = half;
                    Q[l][m][al][ga] = -half;
                }
            }
        }
    if (!rest.is_zero())
        throw Error("NotHydrodynamic",
                    "transformed image of theta is not of hydrodynamic shape");
}

} // namespace

OddHydroDerivation odd_change_of_variables(const OddHydroDerivation& D, const Mat& T) {
    const int n = D.n;
    if (mat_det(T).is_zero())
        throw DegenerateTensor("odd frame change with det(T) = 0");
    Mat Tinv = mat_inverse(T);
    Derivation tau = to_derivation(D);
    std::vector<Poly> base = identity_base(n);

    OddHydroDerivation out = OddHydroDerivation::zero(n);
    for (int al = 0; al < n; ++al) {
        DiffPoly image = tau.a(al).substitute(base, T);
        decompose_even_image(image, n, out.g, out.gamma, al);
    }
    for (int be = 0; be < n; ++be) {
        // tau(s_be) with s_be = Tinv[a][be] th_a, expanded in the old frame
        DiffPoly raw(n);
        for (int a = 0; a < n; ++a) {
            raw += tau.apply(DiffPoly(Tinv[a][be])) * DiffPoly::odd_jet(n, a, 0);
            raw += tau.b(a).scaled(Tinv[a][be]);
        }
        DiffPoly image = raw.substitute(base, T);
        decompose_odd_image(image, n, out.V, out.Q, be);
    }
    return out;
}

namespace {

// Express a univariate polynomial exactly in powers of phi; throws
// NotInverse when impossible.
Poly express_poly_in_phi(const Poly& h, const Poly& phi) {
    Poly rem = h;
    Poly out(1);
    const std::uint64_t dphi = phi.total_degree();
    if (dphi == 0)
        throw NotInverse("coordinate map is constant");
    const Rational lead_phi = phi.leading().second;
    while (!rem.is_zero() && rem.total_degree() > 0) {
        std::uint64_t d = rem.total_degree();
        if (d % dphi != 0)
            throw NotInverse("component is not expressible in the new coordinate");
        std::uint32_t k = static_cast<std::uint32_t>(d / dphi);
        Rational lead_k(1);
        for (std::uint32_t i = 0; i < k; ++i)
            lead_k *= lead_phi;
        Rational c = rem.leading().second / lead_k;
        out.add_term({k}, c);
        rem -= phi.pow(k).scaled(c);
        if (!rem.is_zero() && rem.total_degree() >= d)
            throw NotInverse("component is not expressible in the new coordinate");
    }
    if (!rem.is_zero())
        out.add_term({0}, rem.constant_value());
    return out;
}

RationalFn rewrite_in_new_coordinates(const RationalFn& h, const std::vector<Poly>& phi,
                                      const std::vector<Poly>& phiInv) {
    if (!phiInv.empty())
        return h.compose(phiInv);
    return RationalFn(express_poly_in_phi(h.num(), phi[0]),
                      express_poly_in_phi(h.den(), phi[0]));
}

} // namespace

OddHydroDerivation coordinate_transform(const OddHydroDerivation& D,
                                        const std::vector<Poly>& phi,
                                        const std::vector<Poly>& phiInv) {
    const int n = D.n;
    if (phiInv.empty()) {
        if (n != 1)
            throw NotInverse("inverse map required for dimension > 1");
    } else {
        for (int a = 0; a < n; ++a)
            if (phiInv[a].compose(phi) != Poly::variable(n, a))
                throw NotInverse("phiInv(phi(v)) != v in component " + std::to_string(a + 1));
    }
    // Jacobian of phi in the old coordinates and its inverse
    Mat J(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            J[a][b] = RationalFn(phi[a].partial(b));
    Mat Jinv = mat_inverse(J);

    Derivation tau = to_derivation(D);
    std::vector<Poly> base = identity_base(n);

    // mixed images: new odd frame th_r -> sum_a J^a_r(v) th_a, old even jets
    OddHydroDerivation mixed = OddHydroDerivation::zero(n);
    for (int al = 0; al < n; ++al) {
        DiffPoly raw(n);
        for (int b = 0; b < n; ++b)
            raw += tau.a(b).scaled(J[al][b]);
        decompose_even_image(raw.substitute(base, J), n, mixed.g, mixed.gamma, al);
    }
    for (int be = 0; be < n; ++be) {
        DiffPoly raw(n);
        for (int a = 0; a < n; ++a) {
            raw += tau.apply(DiffPoly(Jinv[a][be])) * DiffPoly::odd_jet(n, a, 0);
            raw += tau.b(a).scaled(Jinv[a][be]);
        }
        decompose_odd_image(raw.substitute(base, J), n, mixed.V, mixed.Q, be);
    }

    // convert the remaining old v_x index: v^g_x = Jinv^g_d vbar^d_x,
    // then rewrite every scalar in the new coordinates
    OddHydroDerivation out = OddHydroDerivation::zero(n);
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be) {
            out.g[al][be] = rewrite_in_new_coordinates(mixed.g[al][be], phi, phiInv);
            for (int de = 0; de < n; ++de) {
                RationalFn v(n);
                for (int ga = 0; ga < n; ++ga)
                    v += mixed.gamma[al][be][ga] * Jinv[ga][de];
                out.gamma[al][be][de] = rewrite_in_new_coordinates(v, phi, phiInv);
            }
        }
    for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l)
            for (int al = 0; al < n; ++al) {
                out.V[m][l][al] = rewrite_in_new_coordinates(mixed.V[m][l][al], phi, phiInv);
                for (int de = 0; de < n; ++de) {
                    RationalFn v(n);
                    for (int ga = 0; ga < n; ++ga)
                        v += mixed.Q[m][l][al][ga] * Jinv[ga][de];
                    out.Q[m][l][al][de] = rewrite_in_new_coordinates(v, phi, phiInv);
                }
            }
    return out;
}

HydroFlow transform_flow(const HydroFlow& X, const std::vector<Poly>& phi,
                         const std::vector<Poly>& phiInv) {
    const int n = static_cast<int>(phi.size());
    Mat J(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            J[a][b] = RationalFn(phi[a].partial(b));
    Mat Jinv = mat_inverse(J);
    HydroFlow out;
    out.X = Mat(n, std::vector<RationalFn>(n, RationalFn(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            RationalFn v(n);
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    v += J[a][l] * X.X[l][m] * Jinv[m][b];
            out.X[a][b] = rewrite_in_new_coordinates(v, phi, phiInv);
        }
    return out;
}

} // namespace hydroham
