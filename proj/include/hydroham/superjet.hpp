#ifndef HYDROHAM_SUPERJET_HPP
#define HYDROHAM_SUPERJET_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hydroham/rational.hpp"

namespace hydroham {

/// Jet-order safety cap for intermediate expressions (default 20). Raising a
/// jet above the cap throws JetOrderExceeded; hydrodynamic computations stay
/// at order <= 3, so hitting the cap signals a runaway input.
int max_jet_order();
void set_max_jet_order(int cap);

/// Odd jet variable theta_alpha^s (alpha 0-based, s >= 0). Canonical order:
/// by s, then alpha.
struct OddVar {
    int alpha = 0;
    int s = 0;
    friend bool operator<(const OddVar& x, const OddVar& y) {
        return x.s != y.s ? x.s < y.s : x.alpha < y.alpha;
    }
    friend bool operator==(const OddVar& x, const OddVar& y) {
        return x.alpha == y.alpha && x.s == y.s;
    }
};

/// Even jet variable v^{alpha,s} with s >= 1; the s = 0 dependence lives in
/// the RationalFn coefficients.
struct EvenJet {
    int alpha = 0;
    int s = 1;
    friend bool operator<(const EvenJet& x, const EvenJet& y) {
        return x.s != y.s ? x.s < y.s : x.alpha < y.alpha;
    }
    friend bool operator==(const EvenJet& x, const EvenJet& y) {
        return x.alpha == y.alpha && x.s == y.s;
    }
};

/// Product of even jet powers and pairwise-distinct odd jets, odd factors
/// stored in canonical ascending order (theta^2 = 0 by construction; any
/// reordering sign is absorbed into the coefficient at construction time).
class SuperMonomial {
public:
    std::vector<std::pair<EvenJet, std::uint32_t>> even; // sorted, exponents > 0
    std::vector<OddVar> odd;                             // strictly ascending

    int theta_degree() const { return static_cast<int>(odd.size()); }
    std::uint64_t x_degree() const;
    int max_order() const;

    bool operator<(const SuperMonomial& o) const;
    bool operator==(const SuperMonomial& o) const { return even == o.even && odd == o.odd; }

    /// Canonicalize an arbitrary odd factor list: returns the permutation
    /// sign, or nullopt when a factor repeats (the monomial is zero).
    static std::optional<int> sort_odd(std::vector<OddVar>& odd);
};

/// Element of the graded differential algebra: a sparse sum of super
/// monomials with rational-function coefficients in the base variables.
class DiffPoly {
public:
    using TermMap = std::map<SuperMonomial, RationalFn>;

    DiffPoly() = default;
    explicit DiffPoly(int nvars) : nvars_(nvars) {}
    explicit DiffPoly(RationalFn coeff);
    static DiffPoly constant(int nvars, const Rational& c);
    /// v^{alpha,s}; s = 0 yields the coefficient v^alpha.
    static DiffPoly even_jet(int nvars, int alpha, int s);
    /// theta_alpha^s.
    static DiffPoly odd_jet(int nvars, int alpha, int s);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    void add_term(const SuperMonomial& m, const RationalFn& c);

    DiffPoly operator-() const;
    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator*(const DiffPoly& o) const; // graded product
    DiffPoly& operator+=(const DiffPoly& o) { return *this = *this + o; }
    DiffPoly& operator-=(const DiffPoly& o) { return *this = *this - o; }
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
    DiffPoly scaled(const RationalFn& c) const;
    DiffPoly scaled(const Rational& c) const;

    bool operator==(const DiffPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    /// Total x-derivative.
    DiffPoly dx() const;
    DiffPoly dx_pow(int s) const;

    /// Partial derivative in v^{alpha,s} (s >= 0).
    DiffPoly pd_even(int alpha, int s) const;
    /// Left partial derivative in theta_alpha^s.
    DiffPoly pd_odd(int alpha, int s) const;

    /// Super degree when theta-homogeneous.
    bool theta_homogeneous() const;
    int theta_degree() const; // requires homogeneous (0 for the zero element)

    int max_even_order() const; // largest s among even jets (0 when none)
    int max_odd_order() const;  // largest s among odd jets (-1 when none)

    /// Value after setting every positive-order jet and every theta to zero.
    RationalFn jet_free_part() const;

    /// Differential-algebra morphism: v^gamma -> base_images[gamma],
    /// theta_rho -> sum_a odd_coef[a][rho] * theta_a, prolonged to all jets
    /// by powers of dx.
    DiffPoly substitute(const std::vector<Poly>& base_images,
                        const std::vector<std::vector<RationalFn>>& odd_coef) const;

private:
    int nvars_ = 0;
    TermMap terms_;
};

std::string to_string(const SuperMonomial& m);
std::string to_string(const DiffPoly& p);

/// Equivalence class of densities modulo total x-derivatives.
class LocalFunctional {
public:
    LocalFunctional() = default;
    explicit LocalFunctional(DiffPoly density) : density_(std::move(density)) {}
    const DiffPoly& density() const { return density_; }
    int nvars() const { return density_.nvars(); }

private:
    DiffPoly density_;
};

/// delta F / delta v^alpha = sum_s (-dx)^s d f / d v^{alpha,s}.
DiffPoly var_derivative_even(const LocalFunctional& F, int alpha);
/// delta F / delta theta_alpha.
DiffPoly var_derivative_odd(const LocalFunctional& F, int alpha);

/// True when the functional is zero: all 2n variational derivatives vanish
/// and the jet-free part of the density is the zero function.
bool functional_is_zero(const LocalFunctional& F);
bool functional_equal(const LocalFunctional& F, const LocalFunctional& G);

/// Evolutionary derivation (commutes with dx), determined by its values on
/// the generators v^alpha and theta_alpha and prolonged on demand.
class Derivation {
public:
    Derivation() = default;
    /// parity = super degree; images a[alpha] = X(v^alpha) must have theta
    /// degree parity, b[alpha] = X(theta_alpha) degree parity + 1.
    Derivation(int nvars, int parity, std::vector<DiffPoly> a, std::vector<DiffPoly> b);
    static Derivation zero(int nvars, int parity);

    int nvars() const { return nvars_; }
    int parity() const { return parity_; }
    const DiffPoly& a(int alpha) const { return a_[alpha]; }
    const DiffPoly& b(int alpha) const { return b_[alpha]; }
    const std::vector<DiffPoly>& a() const { return a_; }
    const std::vector<DiffPoly>& b() const { return b_; }
    bool is_zero() const;

    /// Prolonged application to an arbitrary element.
    DiffPoly apply(const DiffPoly& f) const;

private:
    int nvars_ = 0;
    int parity_ = 0;
    std::vector<DiffPoly> a_, b_;
};

/// Graded commutator [X,Y] = X Y - (-1)^{pq} Y X, by generator images.
Derivation graded_commutator(const Derivation& X, const Derivation& Y);

} // namespace hydroham

#endif
