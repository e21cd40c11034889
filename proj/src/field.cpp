#include "qhpc/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace qhpc {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------- BigInt

namespace {

void trim(std::vector<std::uint32_t>& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        std::uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        r.push_back(static_cast<std::uint32_t>(s));
        carry = s >> 32;
    }
    if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
}

// requires |a| >= |b|
std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r;
    r.reserve(a.size());
    std::int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) {
            s += (1LL << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r.push_back(static_cast<std::uint32_t>(s));
    }
    trim(r);
    return r;
}

std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                   const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = static_cast<std::uint64_t>(a[i]) * b[j] + r[i + j] + carry;
            r[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = r[k] + carry;
            r[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    trim(r);
    return r;
}

int bit_length(const std::vector<std::uint32_t>& m) {
    if (m.empty()) return 0;
    int bl = static_cast<int>(m.size() - 1) * 32;
    std::uint32_t top = m.back();
    while (top) {
        ++bl;
        top >>= 1;
    }
    return bl;
}

bool get_bit(const std::vector<std::uint32_t>& m, int i) {
    return (m[i / 32] >> (i % 32)) & 1u;
}

void set_bit(std::vector<std::uint32_t>& m, int i) {
    if (static_cast<size_t>(i / 32) >= m.size()) m.resize(i / 32 + 1, 0);
    m[i / 32] |= (1u << (i % 32));
}

// m = m*2 + bit
void shl1_add(std::vector<std::uint32_t>& m, bool bit) {
    std::uint32_t carry = bit ? 1u : 0u;
    for (auto& limb : m) {
        std::uint32_t next = limb >> 31;
        limb = (limb << 1) | carry;
        carry = next;
    }
    if (carry) m.push_back(carry);
    trim(m);
}

} // namespace

BigInt::BigInt(std::int64_t v) {
    if (v == 0) {
        sgn = 0;
        return;
    }
    sgn = v > 0 ? 1 : -1;
    std::uint64_t a = v > 0 ? static_cast<std::uint64_t>(v)
                            : (~static_cast<std::uint64_t>(v) + 1);
    while (a) {
        mag.push_back(static_cast<std::uint32_t>(a));
        a >>= 32;
    }
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
    if (a.sgn != b.sgn) return a.sgn < b.sgn ? -1 : 1;
    int c = cmp_mag(a.mag, b.mag);
    return a.sgn >= 0 ? c : -c;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sgn == 0) return b;
    if (b.sgn == 0) return a;
    BigInt r;
    if (a.sgn == b.sgn) {
        r.sgn = a.sgn;
        r.mag = add_mag(a.mag, b.mag);
    } else {
        int c = cmp_mag(a.mag, b.mag);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sgn = a.sgn;
            r.mag = sub_mag(a.mag, b.mag);
        } else {
            r.sgn = b.sgn;
            r.mag = sub_mag(b.mag, a.mag);
        }
    }
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sgn = -r.sgn;
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.sgn == 0 || b.sgn == 0) return r;
    r.sgn = a.sgn * b.sgn;
    r.mag = mul_mag(a.mag, b.mag);
    return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sgn == 0) throw std::domain_error("BigInt: division by zero");
    q = BigInt();
    r = BigInt();
    if (a.sgn == 0) return;
    std::vector<std::uint32_t> rem, quo;
    int n = bit_length(a.mag);
    for (int i = n - 1; i >= 0; --i) {
        shl1_add(rem, get_bit(a.mag, i));
        if (cmp_mag(rem, b.mag) >= 0) {
            rem = sub_mag(rem, b.mag);
            set_bit(quo, i);
        }
    }
    trim(quo);
    trim(rem);
    if (!quo.empty()) {
        q.sgn = a.sgn * b.sgn;
        q.mag = std::move(quo);
    }
    if (!rem.empty()) {
        r.sgn = a.sgn; // remainder carries the dividend sign
        r.mag = std::move(rem);
    }
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    BigInt x = a, y = b;
    x.sgn = x.mag.empty() ? 0 : 1;
    y.sgn = y.mag.empty() ? 0 : 1;
    while (!y.is_zero()) {
        BigInt q, r;
        divmod(x, y, q, r);
        x = y;
        y = r;
    }
    return x;
}

bool BigInt::fits_int64() const {
    if (mag.size() > 2) return false;
    if (mag.size() == 2 && mag[1] >= 0x80000000u) return false;
    return true;
}

std::int64_t BigInt::to_int64() const {
    std::uint64_t v = 0;
    if (!mag.empty()) v = mag[0];
    if (mag.size() > 1) v |= static_cast<std::uint64_t>(mag[1]) << 32;
    return sgn < 0 ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
}

BigInt BigInt::from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -1;
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty literal");
    BigInt ten(10);
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
        r = r * ten + BigInt(s[i] - '0');
    }
    if (sign < 0) r.sgn = -r.sgn;
    return r;
}

std::string BigInt::str() const {
    if (is_zero()) return "0";
    BigInt x = *this;
    x.sgn = 1;
    std::string digits;
    BigInt ten(10), q, r;
    while (!x.is_zero()) {
        divmod(x, ten, q, r);
        digits.push_back(static_cast<char>('0' + (r.is_zero() ? 0 : r.mag[0])));
        x = q;
    }
    if (sgn < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

// ---------------------------------------------------------------- Rat

Rat::Rat(BigInt n, BigInt d) {
    if (d.is_zero()) throw std::domain_error("Rat: zero denominator");
    if (d.sgn < 0) {
        n.sgn = -n.sgn;
        d.sgn = -d.sgn;
    }
    BigInt g = BigInt::gcd(n, d);
    if (!g.is_zero() && !g.is_one()) {
        BigInt q, r;
        BigInt::divmod(n, g, q, r);
        n = q;
        BigInt::divmod(d, g, q, r);
        d = q;
    }
    if (n.is_zero()) d = BigInt(1);
    num = std::move(n);
    den = std::move(d);
}

Rat operator+(const Rat& a, const Rat& b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
Rat operator-(const Rat& a, const Rat& b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num * b.num, a.den * b.den); }
Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(a.num * b.den, a.den * b.num);
}
Rat Rat::operator-() const {
    Rat r = *this;
    r.num.sgn = -r.num.sgn;
    return r;
}

Rat Rat::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(BigInt::from_string(s), BigInt(1));
    return Rat(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
}

std::string Rat::str() const {
    if (den.is_one()) return num.str();
    return num.str() + "/" + den.str();
}

// ---------------------------------------------------------------- Scalar

std::int64_t fp_inv(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::domain_error("fp_inv: not invertible");
    return ((t % p) + p) % p;
}

namespace {
std::int64_t fp_norm(std::int64_t v, std::int64_t p) {
    v %= p;
    if (v < 0) v += p;
    return v;
}
std::int64_t fp_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}
} // namespace

Scalar::Scalar(Field f, std::int64_t v) : f_(f) {
    if (f_.is_fp())
        v_ = fp_norm(v, f_.p);
    else
        q_ = Rat(v);
}

Scalar::Scalar(Field f, const Rat& q) : f_(f) {
    if (!f_.is_fp()) {
        q_ = q;
        return;
    }
    BigInt qq, r;
    BigInt::divmod(q.num, BigInt(f_.p), qq, r);
    std::int64_t n = r.to_int64();
    BigInt::divmod(q.den, BigInt(f_.p), qq, r);
    std::int64_t d = r.to_int64();
    if (fp_norm(d, f_.p) == 0) throw std::domain_error("Scalar: denominator divisible by p");
    v_ = fp_mul(fp_norm(n, f_.p), fp_inv(fp_norm(d, f_.p), f_.p), f_.p);
}

bool Scalar::is_zero() const { return f_.is_fp() ? v_ == 0 : q_.is_zero(); }
bool Scalar::is_one() const { return f_.is_fp() ? v_ == 1 : q_.is_one(); }

static void check_fields(const Scalar& a, const Scalar& b) {
    if (a.field() != b.field()) throw std::invalid_argument("Scalar: field mismatch");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_fields(a, b);
    if (a.field().is_fp()) return Scalar(a.field(), a.fp() + b.fp());
    return Scalar(a.field(), a.rat() + b.rat());
}
Scalar operator-(const Scalar& a, const Scalar& b) {
    check_fields(a, b);
    if (a.field().is_fp()) return Scalar(a.field(), a.fp() - b.fp());
    return Scalar(a.field(), a.rat() - b.rat());
}
Scalar operator*(const Scalar& a, const Scalar& b) {
    check_fields(a, b);
    if (a.field().is_fp()) return Scalar(a.field(), fp_mul(a.fp(), b.fp(), a.field().p));
    return Scalar(a.field(), a.rat() * b.rat());
}
Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

Scalar Scalar::operator-() const {
    if (f_.is_fp()) return Scalar(f_, -v_);
    return Scalar(f_, -q_);
}

Scalar Scalar::inv() const {
    if (is_zero()) throw std::domain_error("Scalar: inverse of zero");
    if (f_.is_fp()) return Scalar(f_, fp_inv(v_, f_.p));
    return Scalar(f_, Rat(q_.den, q_.num));
}

bool Scalar::operator==(const Scalar& o) const {
    if (f_ != o.f_) return false;
    return f_.is_fp() ? v_ == o.v_ : q_ == o.q_;
}

std::string Scalar::str() const { return f_.is_fp() ? std::to_string(v_) : q_.str(); }

Scalar parse_scalar(Field f, const std::string& tok) {
    return Scalar(f, Rat::from_string(tok));
}

} // namespace qhpc
