#include "hydroham/bigint.hpp"

#include <stdexcept>

namespace hydroham {

BigInt::BigInt(std::int64_t v) {
    if (v == 0)
        return;
    sign_ = v < 0 ? -1 : 1;
    std::uint64_t mag = v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    mag_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
    if (mag >> 32)
        mag_.push_back(static_cast<std::uint32_t>(mag >> 32));
}

bool BigInt::is_one() const {
    return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1;
}

void BigInt::trim(Mag& m) {
    while (!m.empty() && m.back() == 0)
        m.pop_back();
}

int BigInt::cmp_mag(const Mag& a, const Mag& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    return 0;
}

BigInt::Mag BigInt::add_mag(const Mag& a, const Mag& b) {
    Mag out;
    out.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        std::uint64_t s = carry;
        if (i < a.size())
            s += a[i];
        if (i < b.size())
            s += b[i];
        out.push_back(static_cast<std::uint32_t>(s & 0xffffffffu));
        carry = s >> 32;
    }
    if (carry)
        out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

BigInt::Mag BigInt::sub_mag(const Mag& a, const Mag& b) {
    Mag out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow -
                         (i < b.size() ? static_cast<std::int64_t>(b[i]) : 0);
        borrow = 0;
        if (s < 0) {
            s += (std::int64_t{1} << 32);
            borrow = 1;
        }
        out.push_back(static_cast<std::uint32_t>(s));
    }
    trim(out);
    return out;
}

BigInt::Mag BigInt::mul_mag(const Mag& a, const Mag& b) {
    if (a.empty() || b.empty())
        return {};
    Mag out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    trim(out);
    return out;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0)
        return o;
    if (o.sign_ == 0)
        return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.sign_ = sign_;
        r.mag_ = add_mag(mag_, o.mag_);
        return r;
    }
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0)
        return BigInt();
    if (c > 0) {
        r.sign_ = sign_;
        r.mag_ = sub_mag(mag_, o.mag_);
    } else {
        r.sign_ = o.sign_;
        r.mag_ = sub_mag(o.mag_, mag_);
    }
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0 || o.sign_ == 0)
        return r;
    r.sign_ = sign_ * o.sign_;
    r.mag_ = mul_mag(mag_, o.mag_);
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem) {
    if (b.sign_ == 0)
        throw std::domain_error("BigInt division by zero");
    quot = BigInt();
    rem = BigInt();
    if (a.sign_ == 0)
        return;
    int c = cmp_mag(a.mag_, b.mag_);
    if (c < 0) {
        rem = a;
        return;
    }
    // shift-subtract long division on magnitudes
    Mag q(a.mag_.size(), 0);
    Mag r;
    for (std::size_t bit = a.mag_.size() * 32; bit-- > 0;) {
        // r = (r << 1) | bit(a)
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::uint32_t nxt = r[i] >> 31;
            r[i] = (r[i] << 1) | carry;
            carry = nxt;
        }
        if (carry)
            r.push_back(carry);
        std::uint32_t abit = (a.mag_[bit / 32] >> (bit % 32)) & 1u;
        if (abit) {
            if (r.empty())
                r.push_back(1);
            else
                r[0] |= 1u;
        }
        if (cmp_mag(r, b.mag_) >= 0) {
            r = sub_mag(r, b.mag_);
            q[bit / 32] |= (1u << (bit % 32));
        }
    }
    trim(q);
    trim(r);
    if (!q.empty()) {
        quot.sign_ = a.sign_ * b.sign_;
        quot.mag_ = std::move(q);
    }
    if (!r.empty()) {
        rem.sign_ = a.sign_;
        rem.mag_ = std::move(r);
    }
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divmod(*this, o, q, r);
    return r;
}

bool BigInt::operator<(const BigInt& o) const {
    if (sign_ != o.sign_)
        return sign_ < o.sign_;
    int c = cmp_mag(mag_, o.mag_);
    return sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0)
        r.sign_ = 1;
    return r;
}

namespace {

void shift_right_one(std::vector<std::uint32_t>& m) {
    std::uint32_t carry = 0;
    for (std::size_t i = m.size(); i-- > 0;) {
        std::uint32_t nxt = m[i] & 1u;
        m[i] = (m[i] >> 1) | (carry << 31);
        carry = nxt;
    }
    while (!m.empty() && m.back() == 0)
        m.pop_back();
}

int trailing_zero_bits(const std::vector<std::uint32_t>& m) {
    int tz = 0;
    for (std::uint32_t limb : m) {
        if (limb == 0) {
            tz += 32;
            continue;
        }
        return tz + __builtin_ctz(limb);
    }
    return tz;
}

} // namespace

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    // binary gcd: no division, linear in the bit length per step
    if (a.is_zero())
        return b.abs();
    if (b.is_zero())
        return a.abs();
    Mag x = a.mag_;
    Mag y = b.mag_;
    int sx = trailing_zero_bits(x);
    int sy = trailing_zero_bits(y);
    int shared = std::min(sx, sy);
    for (int i = 0; i < sx; ++i)
        shift_right_one(x);
    for (int i = 0; i < sy; ++i)
        shift_right_one(y);
    while (!y.empty()) {
        if (x.empty())
            break;
        int c = cmp_mag(x, y);
        if (c == 0)
            break;
        if (c > 0)
            std::swap(x, y);
        y = sub_mag(y, x); // even difference of odd numbers
        int tz = trailing_zero_bits(y);
        for (int i = 0; i < tz && !y.empty(); ++i)
            shift_right_one(y);
    }
    BigInt r;
    r.sign_ = 1;
    r.mag_ = x.empty() ? y : x;
    for (int i = 0; i < shared; ++i) {
        // shift back up by doubling
        r.mag_ = add_mag(r.mag_, r.mag_);
    }
    return r;
}

std::string BigInt::str() const {
    if (sign_ == 0)
        return "0";
    // repeated division by 10^9
    Mag work = mag_;
    std::string digits;
    while (!work.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = work.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | work[i];
            work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        trim(work);
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0')
        digits.pop_back();
    std::string out(sign_ < 0 ? "-" : "");
    out.append(digits.rbegin(), digits.rend());
    return out;
}

} // namespace hydroham
