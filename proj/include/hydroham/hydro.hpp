#ifndef HYDROHAM_HYDRO_HPP
#define HYDROHAM_HYDRO_HPP

#include <utility>
#include <vector>

#include "hydroham/brackets.hpp"
#include "hydroham/geometry.hpp"
#include "hydroham/superjet.hpp"

namespace hydroham {

using Arr3 = std::vector<std::vector<std::vector<RationalFn>>>;
using Arr4 = std::vector<Arr3>;

Arr3 make_arr3(int n);
Arr4 make_arr4(int n);

/// Odd hydrodynamic derivation
///   v^a   -> g^{ab} th_b' + G^{ab}_c v^c_x th_b
///   th_a  -> V^{ml}_a th_l th_m' + Q^{ml}_{ac} v^c_x th_l th_m
/// with Q antisymmetric in its upper pair and det(g) != 0.
struct OddHydroDerivation {
    int n = 0;
    Mat g;      // g[a][b] = g^{ab}
    Arr3 gamma; // gamma[a][b][c] = G^{ab}_c
    Arr3 V;     // V[m][l][a] = V^{ml}_a
    Arr4 Q;     // Q[m][l][a][c] = Q^{ml}_{ac}

    static OddHydroDerivation zero(int n);
};

/// g_{ab} with g^{ma} g_{mb} = id; throws DegenerateTensor on det(g) = 0.
Mat lower_metric(const Mat& g);

Derivation to_derivation(const OddHydroDerivation& D);
/// Inverse of to_derivation; validates that the images have the
/// hydrodynamic shape.
OddHydroDerivation from_derivation_images(const Derivation& tau);

struct GeometricData {
    Mat gsharp;       // invertible (2,0) tensor
    Connection nabla; // transported connection
};

/// The unique structure with the given geometric data: G^{ab}_c from the
/// connection, V and Q from their defining identities.
OddHydroDerivation derivation_from_data(const GeometricData& d);

/// Transported connection A^l_{ab} = -g_{bm} d_a g^{lm} + g_{bc} G^{lc}_a;
/// throws InconsistentVQ when V or Q do not match their defining identities.
GeometricData data_from_derivation(const OddHydroDerivation& D);

struct GhsResult {
    bool ok;
    std::vector<DiffPoly> W; // tau(tau(v^a))
    std::vector<DiffPoly> Z; // tau(tau(th_a))
};

/// Direct bracket test [tau,tau] = 0.
GhsResult is_ghs(const OddHydroDerivation& D);

/// Geometric test: torsion and curvature of the transported connection.
/// Must agree with is_ghs on every input with consistent V, Q.
bool is_ghs_geometric(const OddHydroDerivation& D);

/// Pencil test: both structures and the mixed bracket.
bool is_gbhs(const OddHydroDerivation& D0, const OddHydroDerivation& D1);

struct BiGeometricData {
    Tensor L; // g_sharp (eta_sharp)^{-1}
    Connection nabla;
    Connection nablaStar;
};

BiGeometricData bi_data(const OddHydroDerivation& D0, const OddHydroDerivation& D1);

struct PropertyReport {
    bool ahe;
    bool nijenhuis_zero;
    bool gm_flat;
    Tensor nijenhuis_residual;
    Tensor gm_residual;
    bool all() const { return ahe && nijenhuis_zero && gm_flat; }
};

PropertyReport check_by_properties(const BiGeometricData& b);

/// Rebuild the pencil from geometric data and a chosen eta_sharp; throws
/// PreconditionFailed naming the violated condition.
std::pair<OddHydroDerivation, OddHydroDerivation>
pencil_from_bi_data(const BiGeometricData& b, const Mat& etasharp);

struct HydroFlow {
    Mat X; // X[a][b] = X^a_b, the system v^a_t = X^a_b v^b_x
};

struct FlowExtension {
    bool compatible;
    Tensor residual; // d_nabla X, zero iff compatible
    Mat Y;           // Y[l][b] = Y^l_b
    Arr3 M;          // M[l][b][c] = M^l_{bc}
};

/// Flow as the parity-0 derivation v^a -> X^a_b v^b_x (theta images zero
/// unless the extension is supplied).
Derivation flow_derivation(const HydroFlow& X, int n);
Derivation extended_flow_derivation(const HydroFlow& X, const FlowExtension& ext, int n);

/// Y and M from their defining identities; compatible iff d_nabla X = 0.
/// The returned extension is verified to commute with the structure.
FlowExtension extend_flow(const HydroFlow& X, const OddHydroDerivation& D);

/// Conservation-law system v^a_t = dx(V^a): trivial connection, identity
/// metric, X = Jacobian of V.
std::pair<GeometricData, HydroFlow>
conservation_law_structure(const std::vector<RationalFn>& V);

/// Densities H_b with dH_b/dv^a = X^l_a g_{lb}, fixed by H(0) = 0; the flow
/// is reproduced as [tau, H] on the even generators. Throws NotClosed or
/// NonIntegrable.
OneForm hamiltonian_one_form(const HydroFlow& X, const OddHydroDerivation& D);

/// Change of the odd frame th_a = T_a^b s_b; the transported connection is
/// unchanged while g_sharp picks up T.
OddHydroDerivation odd_change_of_variables(const OddHydroDerivation& D, const Mat& T);

/// Polynomial change of base coordinates. When phiInv is supplied it must
/// invert phi (verified; NotInverse otherwise). When phiInv is empty and
/// n = 1, every transformed component is instead rewritten exactly as a
/// polynomial in phi — this covers nonlinear one-dimensional maps, whose
/// polynomial inverses do not exist; NotInverse when a component is not
/// expressible.
OddHydroDerivation coordinate_transform(const OddHydroDerivation& D,
                                        const std::vector<Poly>& phi,
                                        const std::vector<Poly>& phiInv);

/// The (1,1) flow tensor in the new coordinates, same conventions as
/// coordinate_transform.
HydroFlow transform_flow(const HydroFlow& X, const std::vector<Poly>& phi,
                         const std::vector<Poly>& phiInv);

} // namespace hydroham

#endif
