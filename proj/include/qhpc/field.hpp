#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qhpc {

/// Ground field descriptor: p == 0 means the rationals, p > 0 a prime field F_p.
struct Field {
    std::int64_t p = 0;

    bool is_fp() const { return p > 0; }
    bool operator==(const Field& o) const { return p == o.p; }
    bool operator!=(const Field& o) const { return p != o.p; }
    std::string str() const { return is_fp() ? "F" + std::to_string(p) : "Q"; }
};

bool is_prime(std::int64_t n);

/// Sign-magnitude arbitrary precision integer, base 2^32.
/// Numbers stay desk-scale here; schoolbook arithmetic throughout.
struct BigInt {
    int sgn = 0;                    // -1, 0, +1
    std::vector<std::uint32_t> mag; // little-endian limbs, no leading zeros

    BigInt() = default;
    BigInt(std::int64_t v);

    static BigInt from_string(const std::string& s);
    std::string str() const;

    bool is_zero() const { return sgn == 0; }
    bool is_one() const { return sgn == 1 && mag.size() == 1 && mag[0] == 1; }

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt operator-() const;

    // Truncated division (quotient rounds toward zero).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    static BigInt gcd(const BigInt& a, const BigInt& b); // nonnegative
    static int cmp(const BigInt& a, const BigInt& b);

    bool operator==(const BigInt& o) const { return cmp(*this, o) == 0; }
    bool operator!=(const BigInt& o) const { return cmp(*this, o) != 0; }
    bool operator<(const BigInt& o) const { return cmp(*this, o) < 0; }

    bool fits_int64() const;
    std::int64_t to_int64() const;
};

/// Rational in lowest terms with positive denominator.
struct Rat {
    BigInt num;
    BigInt den; // > 0

    Rat() : num(0), den(1) {}
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(BigInt n, BigInt d);

    static Rat from_string(const std::string& s); // "a" or "a/b"
    std::string str() const;

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const;
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
};

std::int64_t fp_inv(std::int64_t a, std::int64_t p);

/// Field element. Over F_p the value is the canonical representative in [0, p);
/// over Q an exact rational in lowest terms.
class Scalar {
public:
    Scalar() = default;
    Scalar(Field f, std::int64_t v);
    Scalar(Field f, const Rat& q);

    static Scalar zero(Field f) { return Scalar(f, 0); }
    static Scalar one(Field f) { return Scalar(f, 1); }

    Field field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar operator-() const;
    Scalar inv() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

    // F_p representative (valid only when field().is_fp()).
    std::int64_t fp() const { return v_; }
    const Rat& rat() const { return q_; }

private:
    Field f_{};
    std::int64_t v_ = 0; // F_p value
    Rat q_;              // Q value
};

Scalar parse_scalar(Field f, const std::string& tok);

} // namespace qhpc
