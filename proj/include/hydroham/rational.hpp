#ifndef HYDROHAM_RATIONAL_HPP
#define HYDROHAM_RATIONAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hydroham/bigint.hpp"
#include "hydroham/errors.hpp"

namespace hydroham {

/// Exact rational number on arbitrary-precision integers. Always stored
/// with den > 0 and gcd(|num|, den) = 1.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : num_(value) {}
    Rational(std::int64_t num, std::int64_t den);
    static Rational make(BigInt num, BigInt den);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational inverse() const;
    Rational abs() const { return num_ < 0 ? -*this : *this; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    std::string str() const;

private:
    BigInt num_ = BigInt(0);
    BigInt den_ = BigInt(1);
};

/// Exponent vector of a monomial in the n base variables.
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order: compare total degree first, ties broken
/// lexicographically. The serialization order of every polynomial.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// base variables. Zero coefficients are never stored.
class Poly {
public:
    using TermMap = std::map<Exponents, Rational, GradedLexLess>;

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}
    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int index); // 0-based

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // requires is_constant()
    std::uint64_t total_degree() const;
    const TermMap& terms() const { return terms_; }

    void add_term(const Exponents& e, const Rational& c);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const Rational& c) const;
    Poly pow(std::uint32_t k) const;

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const; // arbitrary total order, for map keys

    /// d/dv^index, 0-based.
    Poly partial(int index) const;

    /// Substitute images[i] for variable i. Images live in a possibly
    /// different variable space; all must share one nvars.
    Poly compose(const std::vector<Poly>& images) const;

    /// Evaluate at a rational point.
    Rational eval(const std::vector<Rational>& point) const;

    /// Leading term in graded lex order. Requires nonzero.
    const std::pair<const Exponents, Rational>& leading() const;

    /// The rational r such that (*this) * r has integer coefficients with
    /// gcd 1 and positive leading coefficient. Requires nonzero.
    Rational primitive_scale() const;

    /// Exact division; throws Error("NotDivisible") if the division leaves
    /// a remainder.
    Poly divide_exact(const Poly& divisor) const;

private:
    int nvars_ = 0;
    TermMap terms_;
};

/// GCD in Q[v1..vn], normalized to integer primitive form with positive
/// leading coefficient (graded lex). gcd(0,0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Potential of a closed polynomial gradient along the straight path from
/// the origin: dH/dv^a = grad[a], H(0) = 0. Caller checks closedness.
Poly homotopy_potential(const std::vector<Poly>& grad);

/// Ratio of polynomials in canonical form: gcd(num, den) = 1 and den is
/// integer-primitive with positive leading coefficient, so equal values
/// have equal representations.
class RationalFn {
public:
    RationalFn() = default;
    explicit RationalFn(int nvars);
    RationalFn(Poly num, Poly den);
    explicit RationalFn(Poly num);
    static RationalFn constant(int nvars, const Rational& c);
    static RationalFn variable(int nvars, int index); // 0-based

    int nvars() const { return num_.nvars(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    RationalFn operator-() const;
    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-(const RationalFn& o) const;
    RationalFn operator*(const RationalFn& o) const;
    RationalFn operator/(const RationalFn& o) const;
    RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
    RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
    RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
    RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }
    RationalFn inverse() const;
    RationalFn scaled(const Rational& c) const;

    bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFn& o) const { return !(*this == o); }
    bool operator<(const RationalFn& o) const;

    /// d/dv^index by the quotient rule, canonicalized.
    RationalFn partial(int index) const;

    /// Substitute polynomial images for the base variables.
    RationalFn compose(const std::vector<Poly>& images) const;

    Rational eval(const std::vector<Rational>& point) const;

private:
    void canonicalize();

    Poly num_;
    Poly den_; // never the zero polynomial
};

/// Canonical printing; print/parse round-trips to an equal value.
std::string to_string(const Rational& r);
std::string to_string(const Poly& p);
std::string to_string(const RationalFn& f);

/// Parse an expression in v1..vn (u-aliases accepted) against the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' uint)? | '-' factor
///   atom   := rationalNumber | ident | '(' expr ')'
///   ident  := ('v'|'u') uint
/// Throws SyntaxError (with byte offset) or UnknownVariable.
RationalFn parse_expr(const std::string& src, int nvars);

} // namespace hydroham

#endif
