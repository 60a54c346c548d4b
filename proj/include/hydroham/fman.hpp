#ifndef HYDROHAM_FMAN_HPP
#define HYDROHAM_FMAN_HPP

#include <map>
#include <utility>
#include <vector>

#include "hydroham/geometry.hpp"
#include "hydroham/hydro.hpp"

namespace hydroham {

/// Flat F-manifold data in flat coordinates of nabla (Christoffels zero):
/// structure constants c^a_{bg} and the unit field e.
struct FlatFData {
    Tensor c; // (1,2)
    std::vector<RationalFn> e;
    int nvars() const { return c.nvars(); }
};

/// Bi-flat data; nabla is carried explicitly so the canonical semisimple
/// form (nonzero Christoffels in canonical coordinates) is representable.
struct BiFlatData {
    Tensor c;
    std::vector<RationalFn> e;
    std::vector<RationalFn> E;
    Connection nabla;
    Connection nablaStar;
    int nvars() const { return c.nvars(); }
};

/// (X o)^a_b = c^a_{mb} X^m.
Tensor product_tensor(const Tensor& c, const std::vector<RationalFn>& X);

struct HertlingManinResult {
    bool ok;
    // nonzero components of the nine-term expression: (a,i,j,k,l) -> value
    std::vector<std::pair<std::vector<int>, RationalFn>> residuals;
};

/// The Hertling-Manin integrability condition evaluated on all quadruples
/// of coordinate fields (the expression is tensorial).
HertlingManinResult hertling_manin_check(const Tensor& c);

struct FlatFReport {
    bool commutative;
    bool unit;
    bool unit_flat;
    bool family_flat_torsionless; // nabla - lambda o at lambda in {0,1,-1}
    bool associative;
    bool hertling_manin;
    bool all() const {
        return commutative && unit && unit_flat && family_flat_torsionless && associative &&
               hertling_manin;
    }
};

FlatFReport flat_f_check(const FlatFData& d);

/// Dual product c*^a_{bg} = ((E o)^{-1})^a_m c^m_{bg}; SingularPencil when
/// det(E o) = 0 identically.
Tensor dual_product(const Tensor& c, const std::vector<RationalFn>& E);

struct BiFlatReport {
    bool star_torsionless;
    bool star_flat;
    bool star_euler_flat;     // nablaStar E = 0
    bool euler_scales_product; // Lie_E o = o
    bool compatible_connections; // (d_nabla - d_nablaStar)(X o) = 0
    bool all() const {
        return star_torsionless && star_flat && star_euler_flat && euler_scales_product &&
               compatible_connections;
    }
};

BiFlatReport biflat_check(const BiFlatData& b);

struct HierarchyFlow {
    int alpha;                   // primitive index, 0-based
    int level;                   // p >= -1
    std::vector<RationalFn> X;   // the vector field X_{(alpha, level)}
};

/// Levels -1..pmax for every primitive direction, by exact integration of
/// the recursion with X(0) = 0 at each step. Throws NotClosed or
/// NonPolynomial.
std::vector<HierarchyFlow> principal_flows(const FlatFData& d, int pmax);

/// The hydrodynamic flow tensor X o of a hierarchy flow.
HydroFlow hierarchy_hydro_flow(const Tensor& c, const HierarchyFlow& f);

bool flows_commute(const HierarchyFlow& f1, const HierarchyFlow& f2, const Tensor& c);

/// L = E o, nabla trivial, nablaStar = Levi-Civita(g) + nu * with
/// g_sharp = (E o) eta^{-1}. eta is the covariant constant metric.
BiGeometricData frobenius_pencil(const Mat& eta, const Tensor& c,
                                 const std::vector<RationalFn>& E, const Rational& nu);

struct SemisimpleCanonical {
    BiFlatData biflat;
    BiGeometricData geometry;
};

/// Canonical-coordinate bi-flat structure from off-diagonal functions
/// A^i_{ij} (keys are 0-based (i,j), i != j). The defining PDE system is
/// verified symbolically; PDEViolation names the failed equation.
SemisimpleCanonical semisimple_canonical(const std::map<std::pair<int, int>, RationalFn>& A,
                                         int n);

} // namespace hydroham

#endif
