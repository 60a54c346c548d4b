#include "hydroham/brackets.hpp"

namespace hydroham {

bool OneForm::is_zero() const {
    for (const DiffPoly& d : f)
        if (!d.is_zero())
            return false;
    return true;
}

Derivation one_form_to_derivation(const OneForm& w) {
    const int n = w.nvars();
    std::vector<DiffPoly> a(n, DiffPoly(n)), b;
    b.reserve(n);
    for (const DiffPoly& d : w.f) {
        if (!d.theta_homogeneous() || (!d.is_zero() && d.theta_degree() != 0))
            throw InhomogeneousInput("one-form density has nonzero super degree");
        b.push_back(-d);
    }
    return Derivation(n, -1, std::move(a), std::move(b));
}

OneForm one_form_from_derivation(const Derivation& X) {
    if (X.parity() != -1)
        throw InhomogeneousInput("derivation of parity != -1 is not a variational 1-form");
    OneForm w;
    for (int alpha = 0; alpha < X.nvars(); ++alpha) {
        if (!X.a(alpha).is_zero())
            throw InhomogeneousInput("variational 1-form must annihilate the even generators");
        w.f.push_back(-X.b(alpha));
    }
    return w;
}

namespace {

int homogeneous_degree(const LocalFunctional& F, const char* who) {
    if (!F.density().theta_homogeneous())
        throw InhomogeneousInput(std::string(who) + ": density is not theta-homogeneous");
    return F.density().theta_degree();
}

} // namespace

LocalFunctional schouten(const LocalFunctional& F, const LocalFunctional& G) {
    const int n = F.nvars();
    const int p = homogeneous_degree(F, "schouten");
    DiffPoly density(n);
    for (int alpha = 0; alpha < n; ++alpha) {
        density += var_derivative_odd(F, alpha) * var_derivative_even(G, alpha);
        DiffPoly second = var_derivative_even(F, alpha) * var_derivative_odd(G, alpha);
        density += p % 2 == 0 ? second : -second;
    }
    return LocalFunctional(density);
}

Derivation d_map(const LocalFunctional& F) {
    const int n = F.nvars();
    const int p = homogeneous_degree(F, "d_map");
    std::vector<DiffPoly> a, b;
    a.reserve(n);
    b.reserve(n);
    for (int alpha = 0; alpha < n; ++alpha) {
        a.push_back(var_derivative_odd(F, alpha));
        DiffPoly db = var_derivative_even(F, alpha);
        b.push_back(p % 2 == 0 ? db : -db);
    }
    return Derivation(n, p - 1, std::move(a), std::move(b));
}

LocalFunctional hamiltonian_from_operator(
    const std::vector<std::vector<std::vector<DiffPoly>>>& coeffs, int nvars) {
    DiffPoly density(nvars);
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
        for (int a = 0; a < nvars; ++a) {
            for (int b = 0; b < nvars; ++b) {
                const DiffPoly& c = coeffs[s][a][b];
                if (c.is_zero())
                    continue;
                if (!c.theta_homogeneous() || c.theta_degree() != 0)
                    throw InhomogeneousInput("operator coefficient has nonzero super degree");
                density += c * DiffPoly::odd_jet(nvars, a, 0) *
                           DiffPoly::odd_jet(nvars, b, static_cast<int>(s));
            }
        }
    }
    return LocalFunctional(density.scaled(Rational(1, 2)));
}

bool is_generalised_hamiltonian(const Derivation& tau) {
    return tau.parity() == 1 && graded_commutator(tau, tau).is_zero();
}

OneForm one_form_bracket(const OneForm& w, const OneForm& z, const Derivation& tau) {
    if (!is_generalised_hamiltonian(tau))
        throw NotHamiltonian("[tau,tau] != 0: not a generalised Hamiltonian structure");
    Derivation X = one_form_to_derivation(w);
    Derivation Y = one_form_to_derivation(z);
    Derivation Xtau = graded_commutator(tau, X);
    return one_form_from_derivation(graded_commutator(Xtau, Y));
}

bool one_form_jacobi(const OneForm& w, const OneForm& z, const OneForm& x,
                     const Derivation& tau) {
    OneForm t1 = one_form_bracket(w, one_form_bracket(z, x, tau), tau);
    OneForm t2 = one_form_bracket(z, one_form_bracket(x, w, tau), tau);
    OneForm t3 = one_form_bracket(x, one_form_bracket(w, z, tau), tau);
    for (int alpha = 0; alpha < w.nvars(); ++alpha)
        if (!(t1.f[alpha] + t2.f[alpha] + t3.f[alpha]).is_zero())
            return false;
    return true;
}

} // namespace hydroham
