#ifndef HYDROHAM_BIGINT_HPP
#define HYDROHAM_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hydroham {

/// Arbitrary-precision signed integer, sign + little-endian base 2^32
/// magnitude. Sized for exact polynomial arithmetic: numbers stay small,
/// correctness beats speed.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    bool is_zero() const { return sign_ == 0; }
    bool is_one() const;
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    /// Truncated division; remainder carries the dividend's sign.
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    bool operator==(const BigInt& o) const { return sign_ == o.sign_ && mag_ == o.mag_; }
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;

    BigInt abs() const;
    std::string str() const;

    static BigInt gcd(const BigInt& a, const BigInt& b);
    static void divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem);

private:
    using Mag = std::vector<std::uint32_t>;

    static int cmp_mag(const Mag& a, const Mag& b);
    static Mag add_mag(const Mag& a, const Mag& b);
    static Mag sub_mag(const Mag& a, const Mag& b); // requires a >= b
    static Mag mul_mag(const Mag& a, const Mag& b);
    static void trim(Mag& m);

    int sign_ = 0;
    Mag mag_;
};

} // namespace hydroham

#endif
