#ifndef HYDROHAM_BRACKETS_HPP
#define HYDROHAM_BRACKETS_HPP

#include <vector>

#include "hydroham/superjet.hpp"

namespace hydroham {

/// Variational 1-form: densities f_alpha of super degree 0. Corresponds to
/// the degree -1 derivation with X(v^alpha) = 0, X(theta_alpha) = -f_alpha.
struct OneForm {
    std::vector<DiffPoly> f;

    int nvars() const { return static_cast<int>(f.size()); }
    bool is_zero() const;
    bool operator==(const OneForm& o) const { return f == o.f; }
};

Derivation one_form_to_derivation(const OneForm& w);
OneForm one_form_from_derivation(const Derivation& X);

/// Schouten-Nijenhuis bracket
///   [F,G] = int dF/dtheta_a dG/dv^a + (-1)^p dF/dv^a dG/dtheta_a
/// for F theta-homogeneous of degree p. Throws InhomogeneousInput.
LocalFunctional schouten(const LocalFunctional& F, const LocalFunctional& G);

/// D(F): the evolutionary derivation with a^a = dF/dtheta_a and
/// b_a = (-1)^p dF/dv^a, of parity p - 1.
Derivation d_map(const LocalFunctional& F);

/// P = 1/2 int sum_s P^{ab}_s theta_a theta_b^s from operator coefficients;
/// coeffs[s][a][b] must have super degree 0.
LocalFunctional hamiltonian_from_operator(const std::vector<std::vector<std::vector<DiffPoly>>>& coeffs,
                                          int nvars);

/// True iff tau is an odd derivation with [tau, tau] = 0.
bool is_generalised_hamiltonian(const Derivation& tau);

/// Poisson bracket {w,z} = [[tau,w], z] on variational 1-forms. The
/// structure tau must satisfy [tau,tau] = 0 (NotHamiltonian otherwise).
OneForm one_form_bracket(const OneForm& w, const OneForm& z, const Derivation& tau);

/// Cyclic Jacobi sum of nested one-form brackets; true iff it vanishes.
bool one_form_jacobi(const OneForm& w, const OneForm& z, const OneForm& x,
                     const Derivation& tau);

} // namespace hydroham

#endif
