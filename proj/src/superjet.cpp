#include "hydroham/superjet.hpp"

#include <algorithm>
#include <atomic>
#include <tuple>

namespace hydroham {

namespace {
std::atomic<int> g_max_jet_order{20};
}

int max_jet_order() { return g_max_jet_order.load(); }
void set_max_jet_order(int cap) { g_max_jet_order.store(cap); }

std::uint64_t SuperMonomial::x_degree() const {
    std::uint64_t d = 0;
    for (const auto& [jet, k] : even)
        d += static_cast<std::uint64_t>(jet.s) * k;
    for (const OddVar& o : odd)
        d += static_cast<std::uint64_t>(o.s);
    return d;
}

int SuperMonomial::max_order() const {
    int m = 0;
    for (const auto& [jet, k] : even)
        m = std::max(m, jet.s);
    for (const OddVar& o : odd)
        m = std::max(m, o.s);
    return m;
}

bool SuperMonomial::operator<(const SuperMonomial& o) const {
    auto pack = [](const std::pair<EvenJet, std::uint32_t>& p) {
        return std::make_tuple(p.first.s, p.first.alpha, p.second);
    };
    if (even != o.even) {
        return std::lexicographical_compare(
            even.begin(), even.end(), o.even.begin(), o.even.end(),
            [&](const auto& x, const auto& y) { return pack(x) < pack(y); });
    }
    return std::lexicographical_compare(odd.begin(), odd.end(), o.odd.begin(), o.odd.end());
}

std::optional<int> SuperMonomial::sort_odd(std::vector<OddVar>& odd) {
    // insertion sort with swap counting; a repeated factor kills the monomial
    int sign = 1;
    for (std::size_t i = 1; i < odd.size(); ++i) {
        OddVar v = odd[i];
        std::size_t j = i;
        while (j > 0 && v < odd[j - 1]) {
            odd[j] = odd[j - 1];
            sign = -sign;
            --j;
        }
        odd[j] = v;
    }
    for (std::size_t i = 1; i < odd.size(); ++i)
        if (odd[i - 1] == odd[i])
            return std::nullopt;
    return sign;
}

DiffPoly::DiffPoly(RationalFn coeff) : nvars_(coeff.nvars()) {
    if (!coeff.is_zero())
        terms_.emplace(SuperMonomial{}, std::move(coeff));
}

DiffPoly DiffPoly::constant(int nvars, const Rational& c) {
    return DiffPoly(RationalFn::constant(nvars, c));
}

DiffPoly DiffPoly::even_jet(int nvars, int alpha, int s) {
    if (s == 0)
        return DiffPoly(RationalFn::variable(nvars, alpha));
    DiffPoly p(nvars);
    SuperMonomial m;
    m.even.push_back({EvenJet{alpha, s}, 1});
    p.terms_.emplace(std::move(m), RationalFn::constant(nvars, Rational(1)));
    return p;
}

DiffPoly DiffPoly::odd_jet(int nvars, int alpha, int s) {
    DiffPoly p(nvars);
    SuperMonomial m;
    m.odd.push_back(OddVar{alpha, s});
    p.terms_.emplace(std::move(m), RationalFn::constant(nvars, Rational(1)));
    return p;
}

void DiffPoly::add_term(const SuperMonomial& m, const RationalFn& c) {
    if (c.is_zero())
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r(nvars_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace(m, -c);
    return r;
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    DiffPoly r = *this;
    for (const auto& [m, c] : o.terms_)
        r.add_term(m, c);
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const {
    DiffPoly r = *this;
    for (const auto& [m, c] : o.terms_)
        r.add_term(m, -c);
    return r;
}

namespace {

// Graded product of canonical monomials: merges even exponents, interleaves
// odd lists counting inversions. Returns the sign, or nullopt when an odd
// factor repeats.
std::optional<int> multiply_monomials(const SuperMonomial& x, const SuperMonomial& y,
                                      SuperMonomial& out) {
    out.even.clear();
    out.odd.clear();
    std::size_t i = 0, j = 0;
    while (i < x.even.size() || j < y.even.size()) {
        if (j == y.even.size() || (i < x.even.size() && x.even[i].first < y.even[j].first))
            out.even.push_back(x.even[i++]);
        else if (i == x.even.size() || y.even[j].first < x.even[i].first)
            out.even.push_back(y.even[j++]);
        else {
            out.even.push_back({x.even[i].first, x.even[i].second + y.even[j].second});
            ++i;
            ++j;
        }
    }
    int sign = 1;
    i = 0;
    j = 0;
    while (i < x.odd.size() && j < y.odd.size()) {
        if (x.odd[i] == y.odd[j])
            return std::nullopt;
        if (x.odd[i] < y.odd[j]) {
            out.odd.push_back(x.odd[i++]);
        } else {
            // y-element jumps over the remaining x-elements
            if ((x.odd.size() - i) % 2 == 1)
                sign = -sign;
            out.odd.push_back(y.odd[j++]);
        }
    }
    while (i < x.odd.size())
        out.odd.push_back(x.odd[i++]);
    while (j < y.odd.size())
        out.odd.push_back(y.odd[j++]);
    return sign;
}

} // namespace

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    DiffPoly r(nvars_);
    SuperMonomial prod;
    for (const auto& [mx, cx] : terms_) {
        for (const auto& [my, cy] : o.terms_) {
            auto sign = multiply_monomials(mx, my, prod);
            if (!sign)
                continue;
            RationalFn c = cx * cy;
            if (*sign < 0)
                c = -c;
            r.add_term(prod, c);
        }
    }
    return r;
}

DiffPoly DiffPoly::scaled(const RationalFn& c) const {
    DiffPoly r(nvars_);
    if (c.is_zero())
        return r;
    for (const auto& [m, v] : terms_)
        r.add_term(m, v * c);
    return r;
}

DiffPoly DiffPoly::scaled(const Rational& c) const {
    return scaled(RationalFn::constant(nvars_, c));
}

DiffPoly DiffPoly::dx() const {
    const int cap = max_jet_order();
    DiffPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
        // chain rule through the coefficient
        for (int alpha = 0; alpha < nvars_; ++alpha) {
            RationalFn dc = c.partial(alpha);
            if (dc.is_zero())
                continue;
            SuperMonomial vjet;
            vjet.even.push_back({EvenJet{alpha, 1}, 1});
            SuperMonomial prod;
            auto sign = multiply_monomials(vjet, m, prod);
            if (sign)
                r.add_term(prod, *sign < 0 ? -dc : dc);
        }
        // even jet factors
        for (std::size_t f = 0; f < m.even.size(); ++f) {
            const auto& [jet, k] = m.even[f];
            if (jet.s + 1 > cap)
                throw JetOrderExceeded("x-derivative raises a jet beyond order " +
                                       std::to_string(cap));
            SuperMonomial reduced = m;
            if (k == 1)
                reduced.even.erase(reduced.even.begin() + static_cast<long>(f));
            else
                reduced.even[f].second = k - 1;
            SuperMonomial raise;
            raise.even.push_back({EvenJet{jet.alpha, jet.s + 1}, 1});
            SuperMonomial prod;
            auto sign = multiply_monomials(raise, reduced, prod);
            RationalFn coeff = c.scaled(Rational(static_cast<std::int64_t>(k)));
            if (sign)
                r.add_term(prod, *sign < 0 ? -coeff : coeff);
        }
        // odd factors: dx is an even derivation; only the reordering of the
        // raised factor can introduce a sign
        for (std::size_t f = 0; f < m.odd.size(); ++f) {
            if (m.odd[f].s + 1 > cap)
                throw JetOrderExceeded("x-derivative raises a jet beyond order " +
                                       std::to_string(cap));
            std::vector<OddVar> odd = m.odd;
            odd[f].s += 1;
            auto sign = SuperMonomial::sort_odd(odd);
            if (!sign)
                continue;
            SuperMonomial nm;
            nm.even = m.even;
            nm.odd = std::move(odd);
            r.add_term(nm, *sign < 0 ? -c : c);
        }
    }
    return r;
}

DiffPoly DiffPoly::dx_pow(int s) const {
    DiffPoly r = *this;
    for (int i = 0; i < s; ++i)
        r = r.dx();
    return r;
}

DiffPoly DiffPoly::pd_even(int alpha, int s) const {
    DiffPoly r(nvars_);
    if (s == 0) {
        for (const auto& [m, c] : terms_)
            r.add_term(m, c.partial(alpha));
        return r;
    }
    for (const auto& [m, c] : terms_) {
        for (std::size_t f = 0; f < m.even.size(); ++f) {
            const auto& [jet, k] = m.even[f];
            if (jet.alpha != alpha || jet.s != s)
                continue;
            SuperMonomial reduced = m;
            if (k == 1)
                reduced.even.erase(reduced.even.begin() + static_cast<long>(f));
            else
                reduced.even[f].second = k - 1;
            r.add_term(reduced, c.scaled(Rational(static_cast<std::int64_t>(k))));
        }
    }
    return r;
}

DiffPoly DiffPoly::pd_odd(int alpha, int s) const {
    DiffPoly r(nvars_);
    OddVar target{alpha, s};
    for (const auto& [m, c] : terms_) {
        for (std::size_t f = 0; f < m.odd.size(); ++f) {
            if (!(m.odd[f] == target))
                continue;
            SuperMonomial reduced = m;
            reduced.odd.erase(reduced.odd.begin() + static_cast<long>(f));
            r.add_term(reduced, f % 2 == 0 ? c : -c);
            break;
        }
    }
    return r;
}

bool DiffPoly::theta_homogeneous() const {
    if (terms_.empty())
        return true;
    int d = terms_.begin()->first.theta_degree();
    for (const auto& [m, c] : terms_)
        if (m.theta_degree() != d)
            return false;
    return true;
}

int DiffPoly::theta_degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.theta_degree();
}

int DiffPoly::max_even_order() const {
    int m = 0;
    for (const auto& [mono, c] : terms_)
        for (const auto& [jet, k] : mono.even)
            m = std::max(m, jet.s);
    return m;
}

int DiffPoly::max_odd_order() const {
    int m = -1;
    for (const auto& [mono, c] : terms_)
        for (const OddVar& o : mono.odd)
            m = std::max(m, o.s);
    return m;
}

RationalFn DiffPoly::jet_free_part() const {
    SuperMonomial empty;
    auto it = terms_.find(empty);
    return it == terms_.end() ? RationalFn(nvars_) : it->second;
}

DiffPoly DiffPoly::substitute(const std::vector<Poly>& base_images,
                              const std::vector<std::vector<RationalFn>>& odd_coef) const {
    const int n = nvars_;
    std::vector<std::vector<DiffPoly>> even_im(n), odd_im(n);
    auto even_image = [&](int gamma, int s) -> const DiffPoly& {
        auto& tower = even_im[gamma];
        if (tower.empty())
            tower.push_back(DiffPoly(RationalFn(base_images[gamma])));
        while (static_cast<int>(tower.size()) <= s)
            tower.push_back(tower.back().dx());
        return tower[s];
    };
    auto odd_image = [&](int rho, int s) -> const DiffPoly& {
        auto& tower = odd_im[rho];
        if (tower.empty()) {
            DiffPoly im(n);
            for (int a = 0; a < n; ++a)
                im += DiffPoly::odd_jet(n, a, 0).scaled(odd_coef[a][rho]);
            tower.push_back(std::move(im));
        }
        while (static_cast<int>(tower.size()) <= s)
            tower.push_back(tower.back().dx());
        return tower[s];
    };

    DiffPoly r(n);
    for (const auto& [m, c] : terms_) {
        DiffPoly piece(c.compose(base_images));
        for (const auto& [jet, k] : m.even)
            for (std::uint32_t i = 0; i < k; ++i)
                piece = piece * even_image(jet.alpha, jet.s);
        for (const OddVar& o : m.odd)
            piece = piece * odd_image(o.alpha, o.s);
        r += piece;
    }
    return r;
}

std::string to_string(const SuperMonomial& m) {
    std::string s;
    for (const auto& [jet, k] : m.even) {
        if (!s.empty())
            s += "*";
        s += "v" + std::to_string(jet.alpha + 1) + "_" + std::to_string(jet.s);
        if (k > 1)
            s += "^" + std::to_string(k);
    }
    for (const OddVar& o : m.odd) {
        if (!s.empty())
            s += "*";
        s += "th" + std::to_string(o.alpha + 1) + "_" + std::to_string(o.s);
    }
    return s;
}

std::string to_string(const DiffPoly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : p.terms()) {
        if (!out.empty())
            out += " + ";
        std::string mono = to_string(m);
        if (mono.empty())
            out += "(" + to_string(c) + ")";
        else if (c.is_constant() && c.constant_value().is_one())
            out += mono;
        else
            out += "(" + to_string(c) + ")*" + mono;
    }
    return out;
}

DiffPoly var_derivative_even(const LocalFunctional& F, int alpha) {
    const DiffPoly& f = F.density();
    DiffPoly r(f.nvars());
    int smax = f.max_even_order();
    for (int s = 0; s <= smax; ++s) {
        DiffPoly g = f.pd_even(alpha, s).dx_pow(s);
        r += s % 2 == 0 ? g : -g;
    }
    return r;
}

DiffPoly var_derivative_odd(const LocalFunctional& F, int alpha) {
    const DiffPoly& f = F.density();
    DiffPoly r(f.nvars());
    int smax = f.max_odd_order();
    for (int s = 0; s <= smax; ++s) {
        DiffPoly g = f.pd_odd(alpha, s).dx_pow(s);
        r += s % 2 == 0 ? g : -g;
    }
    return r;
}

bool functional_is_zero(const LocalFunctional& F) {
    if (!F.density().jet_free_part().is_zero())
        return false;
    for (int alpha = 0; alpha < F.nvars(); ++alpha) {
        if (!var_derivative_even(F, alpha).is_zero())
            return false;
        if (!var_derivative_odd(F, alpha).is_zero())
            return false;
    }
    return true;
}

bool functional_equal(const LocalFunctional& F, const LocalFunctional& G) {
    return functional_is_zero(LocalFunctional(F.density() - G.density()));
}

Derivation::Derivation(int nvars, int parity, std::vector<DiffPoly> a, std::vector<DiffPoly> b)
    : nvars_(nvars), parity_(parity), a_(std::move(a)), b_(std::move(b)) {
    for (const DiffPoly& x : a_) {
        if (!x.theta_homogeneous() || (!x.is_zero() && x.theta_degree() != parity_))
            throw InhomogeneousInput("derivation image of v has super degree != parity");
    }
    for (const DiffPoly& x : b_) {
        if (!x.theta_homogeneous() || (!x.is_zero() && x.theta_degree() != parity_ + 1))
            throw InhomogeneousInput("derivation image of theta has super degree != parity+1");
    }
}

Derivation Derivation::zero(int nvars, int parity) {
    return Derivation(nvars, parity, std::vector<DiffPoly>(nvars, DiffPoly(nvars)),
                      std::vector<DiffPoly>(nvars, DiffPoly(nvars)));
}

bool Derivation::is_zero() const {
    for (const DiffPoly& x : a_)
        if (!x.is_zero())
            return false;
    for (const DiffPoly& x : b_)
        if (!x.is_zero())
            return false;
    return true;
}

DiffPoly Derivation::apply(const DiffPoly& f) const {
    const int n = nvars_;
    const int p = parity_;
    const int se = f.max_even_order();
    const int so = f.max_odd_order();

    std::vector<std::vector<DiffPoly>> ax(n), bx(n);
    for (int alpha = 0; alpha < n; ++alpha) {
        ax[alpha].push_back(a_[alpha]);
        for (int s = 1; s <= se; ++s)
            ax[alpha].push_back(ax[alpha].back().dx());
        if (so >= 0) {
            bx[alpha].push_back(b_[alpha]);
            for (int s = 1; s <= so; ++s)
                bx[alpha].push_back(bx[alpha].back().dx());
        }
    }

    DiffPoly out(n);
    auto mono_poly = [&](const SuperMonomial& m) {
        DiffPoly r(n);
        r.add_term(m, RationalFn::constant(n, Rational(1)));
        return r;
    };

    for (const auto& [m, c] : f.terms()) {
        // through the coefficient: X(c) = sum dc/dv^alpha X(v^alpha)
        for (int alpha = 0; alpha < n; ++alpha) {
            RationalFn dc = c.partial(alpha);
            if (dc.is_zero() || ax[alpha][0].is_zero())
                continue;
            out += ax[alpha][0].scaled(dc) * mono_poly(m);
        }
        // even jet factors (prefix factors are even: no sign)
        for (std::size_t fct = 0; fct < m.even.size(); ++fct) {
            const auto& [jet, k] = m.even[fct];
            if (ax[jet.alpha][jet.s].is_zero())
                continue;
            SuperMonomial reduced = m;
            if (k == 1)
                reduced.even.erase(reduced.even.begin() + static_cast<long>(fct));
            else
                reduced.even[fct].second = k - 1;
            out += ax[jet.alpha][jet.s].scaled(c.scaled(Rational(static_cast<std::int64_t>(k)))) *
                   mono_poly(reduced);
        }
        // odd factors: passing fct odd factors costs (-1)^{parity * fct}
        for (std::size_t fct = 0; fct < m.odd.size(); ++fct) {
            const OddVar& o = m.odd[fct];
            if (bx[o.alpha][o.s].is_zero())
                continue;
            SuperMonomial left;
            left.even = m.even;
            left.odd.assign(m.odd.begin(), m.odd.begin() + static_cast<long>(fct));
            SuperMonomial right;
            right.odd.assign(m.odd.begin() + static_cast<long>(fct) + 1, m.odd.end());
            bool flip = (p % 2 != 0) && (fct % 2 == 1);
            out += mono_poly(left).scaled(flip ? -c : c) * bx[o.alpha][o.s] * mono_poly(right);
        }
    }
    return out;
}

Derivation graded_commutator(const Derivation& X, const Derivation& Y) {
    const int n = X.nvars();
    const int sign = (X.parity() * Y.parity()) % 2 == 0 ? 1 : -1;
    std::vector<DiffPoly> a, b;
    a.reserve(n);
    b.reserve(n);
    for (int alpha = 0; alpha < n; ++alpha) {
        DiffPoly xa = X.apply(Y.a(alpha));
        DiffPoly ya = Y.apply(X.a(alpha));
        a.push_back(sign > 0 ? xa - ya : xa + ya);
        DiffPoly xb = X.apply(Y.b(alpha));
        DiffPoly yb = Y.apply(X.b(alpha));
        b.push_back(sign > 0 ? xb - yb : xb + yb);
    }
    return Derivation(n, X.parity() + Y.parity(), std::move(a), std::move(b));
}

} // namespace hydroham
