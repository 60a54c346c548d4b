#include "hydroham/rational.hpp"

#include <algorithm>
#include <numeric>

namespace hydroham {

Rational Rational::make(BigInt num, BigInt den) {
    if (den.is_zero())
        throw DivisionByZero("rational number with zero denominator");
    Rational r;
    if (den.sign() < 0) {
        num = -num;
        den = -den;
    }
    if (num.is_zero()) {
        r.num_ = BigInt(0);
        r.den_ = BigInt(1);
        return r;
    }
    BigInt g = BigInt::gcd(num, den);
    r.num_ = num / g;
    r.den_ = den / g;
    return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    *this = make(BigInt(num), BigInt(den));
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
    return make(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_.is_zero())
        throw DivisionByZero("division of rational numbers by zero");
    return *this * o.inverse();
}

Rational Rational::inverse() const {
    if (num_.is_zero())
        throw DivisionByZero("inverse of zero");
    return make(den_, num_);
}

bool Rational::operator<(const Rational& o) const {
    return num_ * o.den_ < o.num_ * den_;
}

std::string Rational::str() const {
    if (den_.is_one())
        return num_.str();
    return num_.str() + "/" + den_.str();
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    std::uint64_t da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    std::uint64_t db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db)
        return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (!c.is_zero())
        p.terms_.emplace(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int index) {
    Poly p(nvars);
    Exponents e(nvars, 0);
    e.at(index) = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty())
        return true;
    if (terms_.size() > 1)
        return false;
    const Exponents& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Rational Poly::constant_value() const {
    if (terms_.empty())
        return Rational(0);
    return terms_.begin()->second;
}

std::uint64_t Poly::total_degree() const {
    if (terms_.empty())
        return 0;
    const Exponents& e = terms_.rbegin()->first; // graded order: last term has max degree
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

void Poly::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero())
        return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(e, -c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add_term(e, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    for (const auto& [e, c] : o.terms_)
        r.add_term(e, -c);
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            Exponents e(ea);
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(nvars_);
    if (c.is_zero())
        return r;
    for (const auto& [e, v] : terms_)
        r.terms_.emplace(e, v * c);
    return r;
}

Poly Poly::pow(std::uint32_t k) const {
    Poly base = *this;
    Poly r = Poly::constant(nvars_, Rational(1));
    while (k) {
        if (k & 1)
            r = r * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return r;
}

bool Poly::operator<(const Poly& o) const {
    if (nvars_ != o.nvars_)
        return nvars_ < o.nvars_;
    auto ai = terms_.begin(), bi = o.terms_.begin();
    GradedLexLess less;
    for (; ai != terms_.end() && bi != o.terms_.end(); ++ai, ++bi) {
        if (less(ai->first, bi->first))
            return true;
        if (less(bi->first, ai->first))
            return false;
        if (ai->second < bi->second)
            return true;
        if (bi->second < ai->second)
            return false;
    }
    return bi != o.terms_.end();
}

Poly Poly::partial(int index) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[index] == 0)
            continue;
        Exponents d(e);
        d[index] -= 1;
        r.add_term(d, c * Rational(static_cast<std::int64_t>(e[index])));
    }
    return r;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
    int target_n = images.empty() ? nvars_ : images.front().nvars();
    Poly r(target_n);
    for (const auto& [e, c] : terms_) {
        Poly term = Poly::constant(target_n, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0)
                term = term * images[i].pow(e[i]);
        r += term;
    }
    return r;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
    Rational r(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k)
                t *= point[i];
        r += t;
    }
    return r;
}

const std::pair<const Exponents, Rational>& Poly::leading() const {
    return *terms_.rbegin();
}

Rational Poly::primitive_scale() const {
    // lcm of denominators over gcd of numerators, sign from the leading term
    BigInt num_gcd(0);
    BigInt den_lcm(1);
    for (const auto& [e, c] : terms_) {
        num_gcd = BigInt::gcd(num_gcd, c.num());
        BigInt g = BigInt::gcd(den_lcm, c.den());
        den_lcm = (den_lcm / g) * c.den();
    }
    Rational scale = Rational::make(den_lcm, num_gcd);
    if ((leading().second * scale).sign() < 0)
        scale = -scale;
    return scale;
}

Poly Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero())
        throw DivisionByZero("polynomial division by zero");
    Poly rem = *this;
    Poly quot(nvars_);
    const auto& dlead = divisor.leading();
    while (!rem.is_zero()) {
        const auto& rlead = rem.leading();
        Exponents q(nvars_, 0);
        for (int i = 0; i < nvars_; ++i) {
            if (rlead.first[i] < dlead.first[i])
                throw Error("NotDivisible", "inexact polynomial division");
            q[i] = rlead.first[i] - dlead.first[i];
        }
        Rational qc = rlead.second / dlead.second;
        Poly t(nvars_);
        t.terms_.emplace(q, qc);
        quot += t;
        rem -= t * divisor;
    }
    return quot;
}

namespace {

// Univariate view of p in variable `var`: degree -> coefficient polynomial
// (with var's exponent cleared).
std::map<std::uint32_t, Poly> decompose(const Poly& p, int var) {
    std::map<std::uint32_t, Poly> out;
    for (const auto& [e, c] : p.terms()) {
        Exponents r(e);
        std::uint32_t d = r[var];
        r[var] = 0;
        auto it = out.find(d);
        if (it == out.end())
            it = out.emplace(d, Poly(p.nvars())).first;
        it->second.add_term(r, c);
    }
    return out;
}

Poly content_in_var(const Poly& p, int var) {
    Poly g(p.nvars());
    for (const auto& [d, c] : decompose(p, var))
        g = poly_gcd(g, c);
    return g;
}

std::vector<std::uint32_t> max_degrees(const Poly& p) {
    std::vector<std::uint32_t> d(p.nvars(), 0);
    for (const auto& [e, c] : p.terms())
        for (int i = 0; i < p.nvars(); ++i)
            d[i] = std::max(d[i], e[i]);
    return d;
}

int pick_main_var(const Poly& a, const Poly& b) {
    // prefer a variable present in both operands with the shortest
    // pseudo-remainder chain, falling back to any variable present
    int n = a.nvars();
    std::vector<std::uint32_t> da = max_degrees(a);
    std::vector<std::uint32_t> db = max_degrees(b);
    int best = -1;
    std::uint32_t best_deg = 0;
    for (int i = 0; i < n; ++i) {
        if (da[i] == 0 || db[i] == 0)
            continue;
        std::uint32_t deg = std::min(da[i], db[i]);
        if (best < 0 || deg < best_deg) {
            best = i;
            best_deg = deg;
        }
    }
    if (best >= 0)
        return best;
    for (int i = 0; i < n; ++i)
        if (da[i] > 0 || db[i] > 0)
            return i;
    return -1;
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    auto normalized = [](const Poly& p) { return p.scaled(p.primitive_scale()); };
    if (a.is_zero())
        return b.is_zero() ? b : normalized(b);
    if (b.is_zero())
        return normalized(a);
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.nvars(), Rational(1));

    int var = pick_main_var(a, b);
    Poly cont_a = content_in_var(a, var);
    Poly cont_b = content_in_var(b, var);
    Poly cont = poly_gcd(cont_a, cont_b);

    auto primitive = [&](const Poly& p, const Poly& c) { return p.divide_exact(c); };
    Poly p0 = primitive(a, cont_a);
    Poly p1 = primitive(b, cont_b);

    auto deg_in = [&](const Poly& p) { return decompose(p, var).rbegin()->first; };
    if (deg_in(p0) < deg_in(p1))
        std::swap(p0, p1);

    // primitive PRS
    while (!p1.is_zero()) {
        auto c0 = decompose(p0, var);
        auto c1 = decompose(p1, var);
        std::uint32_t d1 = c1.rbegin()->first;
        Poly lead1 = c1.rbegin()->second;
        Poly x = Poly::variable(a.nvars(), var);
        // pseudo-remainder: eliminate the top term until degree drops below d1
        Poly rem = p0;
        while (!rem.is_zero()) {
            auto cr = decompose(rem, var);
            std::uint32_t dr = cr.rbegin()->first;
            if (dr < d1)
                break;
            Poly leadr = cr.rbegin()->second;
            rem = rem * lead1 - p1 * leadr * x.pow(dr - d1);
            // keep the integer content primitive pass by pass; only the
            // associate class matters for the gcd
            if (!rem.is_zero())
                rem = rem.scaled(rem.primitive_scale());
        }
        if (!rem.is_zero()) {
            rem = rem.divide_exact(content_in_var(rem, var));
            rem = rem.scaled(rem.primitive_scale());
        }
        p0 = p1;
        p1 = rem;
    }
    Poly g = p0.divide_exact(content_in_var(p0, var));
    return normalized(cont * g);
}

Poly homotopy_potential(const std::vector<Poly>& grad) {
    const int n = static_cast<int>(grad.size());
    Poly h(n);
    for (int a = 0; a < n; ++a) {
        for (const auto& [e, c] : grad[a].terms()) {
            std::uint64_t total = std::accumulate(e.begin(), e.end(), std::uint64_t{0});
            Exponents lifted(e);
            lifted[a] += 1;
            h.add_term(lifted, c / Rational(static_cast<std::int64_t>(total + 1)));
        }
    }
    return h;
}

RationalFn::RationalFn(int nvars)
    : num_(Poly(nvars)), den_(Poly::constant(nvars, Rational(1))) {}

RationalFn::RationalFn(Poly num) : num_(std::move(num)) {
    den_ = Poly::constant(num_.nvars(), Rational(1));
    canonicalize();
}

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw DivisionByZero("rational function with zero denominator");
    canonicalize();
}

RationalFn RationalFn::constant(int nvars, const Rational& c) {
    return RationalFn(Poly::constant(nvars, c));
}

RationalFn RationalFn::variable(int nvars, int index) {
    return RationalFn(Poly::variable(nvars, index));
}

void RationalFn::canonicalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.nvars(), Rational(1));
        return;
    }
    if (!den_.is_constant()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
    }
    Rational s = den_.primitive_scale();
    den_ = den_.scaled(s);
    num_ = num_.scaled(s);
}

bool RationalFn::is_polynomial() const {
    return den_.is_constant();
}

Rational RationalFn::constant_value() const {
    return num_.constant_value() / den_.constant_value();
}

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    if (den_ == o.den_)
        return RationalFn(num_ + o.num_, den_);
    return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator-(const RationalFn& o) const { return *this + (-o); }

RationalFn RationalFn::operator*(const RationalFn& o) const {
    return RationalFn(num_ * o.num_, den_ * o.den_);
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
    if (o.is_zero())
        throw DivisionByZero("division by the zero function");
    return RationalFn(num_ * o.den_, den_ * o.num_);
}

RationalFn RationalFn::inverse() const {
    if (is_zero())
        throw DivisionByZero("inverse of the zero function");
    return RationalFn(den_, num_);
}

RationalFn RationalFn::scaled(const Rational& c) const {
    return RationalFn(num_.scaled(c), den_);
}

bool RationalFn::operator<(const RationalFn& o) const {
    if (num_ < o.num_)
        return true;
    if (o.num_ < num_)
        return false;
    return den_ < o.den_;
}

RationalFn RationalFn::partial(int index) const {
    if (is_polynomial())
        return RationalFn(num_.partial(index), den_);
    Poly dn = num_.partial(index) * den_ - num_ * den_.partial(index);
    return RationalFn(std::move(dn), den_ * den_);
}

RationalFn RationalFn::compose(const std::vector<Poly>& images) const {
    Poly n = num_.compose(images);
    Poly d = den_.compose(images);
    if (d.is_zero())
        throw DivisionByZero("denominator vanishes identically after substitution");
    return RationalFn(std::move(n), std::move(d));
}

Rational RationalFn::eval(const std::vector<Rational>& point) const {
    Rational d = den_.eval(point);
    if (d.is_zero())
        throw DivisionByZero("denominator vanishes at evaluation point");
    return num_.eval(point) / d;
}

std::string to_string(const Rational& r) { return r.str(); }

namespace {

std::string monomial_str(const Exponents& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += "v" + std::to_string(i + 1);
        if (e[i] > 1)
            s += "^" + std::to_string(e[i]);
    }
    return s;
}

} // namespace

std::string to_string(const Poly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    // print leading term first
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Rational& c = it->second;
        Rational mag = c.abs();
        if (out.empty())
            out += c.sign() < 0 ? "-" : "";
        else
            out += c.sign() < 0 ? " - " : " + ";
        std::string mono = monomial_str(it->first);
        if (mono.empty())
            out += mag.str();
        else if (mag.is_one())
            out += mono;
        else
            out += mag.str() + "*" + mono;
    }
    return out;
}

std::string to_string(const RationalFn& f) {
    if (f.den().is_constant() && f.den().constant_value().is_one())
        return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

namespace {

class ExprParser {
public:
    ExprParser(const std::string& src, int nvars) : src_(src), n_(nvars) {}

    RationalFn run() {
        RationalFn v = expr();
        skip_ws();
        if (pos_ != src_.size())
            throw SyntaxError(pos_, "unexpected trailing input");
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                      src_[pos_] == '\n' || src_[pos_] == '\r'))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    RationalFn expr() {
        RationalFn v = term();
        while (true) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    RationalFn term() {
        RationalFn v = factor();
        while (true) {
            if (eat('*'))
                v *= factor();
            else if (eat('/')) {
                std::size_t at = pos_;
                RationalFn d = factor();
                if (d.is_zero())
                    throw DivisionByZero("division by zero at byte " + std::to_string(at));
                v /= d;
            } else
                return v;
        }
    }

    RationalFn factor() {
        if (eat('-'))
            return -factor();
        RationalFn v = atom();
        if (eat('^')) {
            std::uint64_t k = uint_lit();
            RationalFn r = RationalFn::constant(n_, Rational(1));
            for (std::uint64_t i = 0; i < k; ++i)
                r *= v;
            return r;
        }
        return v;
    }

    RationalFn atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RationalFn v = expr();
            if (!eat(')'))
                throw SyntaxError(pos_, "expected ')'");
            return v;
        }
        if (c >= '0' && c <= '9')
            return RationalFn::constant(n_, Rational(static_cast<std::int64_t>(uint_lit())));
        if (c == 'v' || c == 'u') {
            std::size_t at = pos_;
            ++pos_;
            if (pos_ >= src_.size() || src_[pos_] < '0' || src_[pos_] > '9')
                throw SyntaxError(pos_, "expected variable index after 'v'/'u'");
            std::uint64_t idx = uint_lit();
            if (idx < 1 || idx > static_cast<std::uint64_t>(n_))
                throw UnknownVariable("variable " + src_.substr(at, pos_ - at) +
                                      " outside v1..v" + std::to_string(n_));
            return RationalFn::variable(n_, static_cast<int>(idx) - 1);
        }
        throw SyntaxError(pos_, "expected number, variable or '('");
    }

    std::uint64_t uint_lit() {
        skip_ws();
        if (pos_ >= src_.size() || src_[pos_] < '0' || src_[pos_] > '9')
            throw SyntaxError(pos_, "expected unsigned integer");
        std::uint64_t v = 0;
        while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
            v = v * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
            if (v > (1ull << 40))
                throw SyntaxError(pos_, "integer literal too large");
            ++pos_;
        }
        return v;
    }

    const std::string& src_;
    int n_;
    std::size_t pos_ = 0;
};

} // namespace

RationalFn parse_expr(const std::string& src, int nvars) {
    return ExprParser(src, nvars).run();
}

} // namespace hydroham
