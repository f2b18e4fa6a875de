#include "maf/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maf {

// ---------------------------------------------------------------------------
// BigInt storage

void BigInt::reserve(uint32_t n) {
    if (n <= cap_) return;
    uint32_t newcap = std::max(n, cap_ * 2);
    auto* p = new uint32_t[newcap];
    std::memcpy(p, limbs(), size_ * sizeof(uint32_t));
    if (cap_ != kInlineLimbs) delete[] heap_;
    heap_ = p;
    cap_ = newcap;
}

void BigInt::set_size(uint32_t n) {
    reserve(n);
    size_ = n;
}

void BigInt::trim() {
    while (size_ > 0 && limbs()[size_ - 1] == 0) --size_;
    if (size_ == 0) sign_ = 0;
}

void BigInt::assign_from(const BigInt& other) {
    set_size(other.size_);
    std::memcpy(limbs(), other.limbs(), other.size_ * sizeof(uint32_t));
    sign_ = other.sign_;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    unsigned long long m = v > 0 ? static_cast<unsigned long long>(v)
                                 : ~static_cast<unsigned long long>(v) + 1ULL;
    while (m != 0) {
        reserve(size_ + 1);
        limbs()[size_++] = static_cast<uint32_t>(m & 0xffffffffULL);
        m >>= 32;
    }
}

BigInt::BigInt(const BigInt& other) { assign_from(other); }

BigInt::BigInt(BigInt&& other) noexcept {
    sign_ = other.sign_;
    size_ = other.size_;
    if (other.cap_ == kInlineLimbs) {
        std::memcpy(inline_, other.inline_, size_ * sizeof(uint32_t));
    } else {
        heap_ = other.heap_;
        cap_ = other.cap_;
        other.cap_ = kInlineLimbs;
    }
    other.size_ = 0;
    other.sign_ = 0;
}

BigInt& BigInt::operator=(const BigInt& other) {
    if (this != &other) assign_from(other);
    return *this;
}

BigInt& BigInt::operator=(BigInt&& other) noexcept {
    if (this == &other) return *this;
    if (cap_ != kInlineLimbs) delete[] heap_;
    sign_ = other.sign_;
    size_ = other.size_;
    cap_ = kInlineLimbs;
    if (other.cap_ == kInlineLimbs) {
        std::memcpy(inline_, other.inline_, size_ * sizeof(uint32_t));
    } else {
        heap_ = other.heap_;
        cap_ = other.cap_;
        other.cap_ = kInlineLimbs;
    }
    other.size_ = 0;
    other.sign_ = 0;
    return *this;
}

BigInt::~BigInt() {
    if (cap_ != kInlineLimbs) delete[] heap_;
}

bool BigInt::fits_longlong() const {
    if (size_ > 2) return false;
    if (size_ < 2) return true;
    unsigned long long m =
        (static_cast<unsigned long long>(limbs()[1]) << 32) | limbs()[0];
    return sign_ > 0 ? m <= 0x7fffffffffffffffULL : m <= 0x8000000000000000ULL;
}

long long BigInt::to_longlong() const {
    unsigned long long m = 0;
    for (uint32_t i = size_; i-- > 0;) m = (m << 32) | limbs()[i];
    return sign_ >= 0 ? static_cast<long long>(m) : -static_cast<long long>(m);
}

double BigInt::to_double() const {
    double v = 0;
    for (uint32_t i = size_; i-- > 0;) v = v * 4294967296.0 + limbs()[i];
    return sign_ < 0 ? -v : v;
}

// ---------------------------------------------------------------------------
// Magnitude arithmetic

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_ ? -1 : 1;
    for (uint32_t i = a.size_; i-- > 0;) {
        if (a.limbs()[i] != b.limbs()[i]) return a.limbs()[i] < b.limbs()[i] ? -1 : 1;
    }
    return 0;
}

void BigInt::add_mag(const BigInt& a, const BigInt& b, BigInt& out) {
    const BigInt& lo = a.size_ >= b.size_ ? b : a;
    const BigInt& hi = a.size_ >= b.size_ ? a : b;
    out.set_size(hi.size_ + 1);
    uint64_t carry = 0;
    uint32_t i = 0;
    for (; i < lo.size_; ++i) {
        uint64_t s = static_cast<uint64_t>(hi.limbs()[i]) + lo.limbs()[i] + carry;
        out.limbs()[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    for (; i < hi.size_; ++i) {
        uint64_t s = static_cast<uint64_t>(hi.limbs()[i]) + carry;
        out.limbs()[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    out.limbs()[i] = static_cast<uint32_t>(carry);
    out.trim();
}

void BigInt::sub_mag(const BigInt& a, const BigInt& b, BigInt& out) {
    out.set_size(a.size_);
    int64_t borrow = 0;
    for (uint32_t i = 0; i < a.size_; ++i) {
        int64_t d = static_cast<int64_t>(a.limbs()[i]) -
                    (i < b.size_ ? b.limbs()[i] : 0) - borrow;
        borrow = d < 0;
        if (d < 0) d += 1LL << 32;
        out.limbs()[i] = static_cast<uint32_t>(d);
    }
    out.trim();
}

void BigInt::mul_mag(const BigInt& a, const BigInt& b, BigInt& out) {
    out.set_size(a.size_ + b.size_);
    std::memset(out.limbs(), 0, out.size_ * sizeof(uint32_t));
    for (uint32_t i = 0; i < a.size_; ++i) {
        uint64_t carry = 0;
        uint64_t ai = a.limbs()[i];
        for (uint32_t j = 0; j < b.size_; ++j) {
            uint64_t t = ai * b.limbs()[j] + out.limbs()[i + j] + carry;
            out.limbs()[i + j] = static_cast<uint32_t>(t);
            carry = t >> 32;
        }
        out.limbs()[i + b.size_] = static_cast<uint32_t>(carry);
    }
    out.trim();
}

int BigInt::bit_length() const {
    if (size_ == 0) return 0;
    uint32_t top = limbs()[size_ - 1];
    int b = 0;
    while (top != 0) { ++b; top >>= 1; }
    return static_cast<int>(size_ - 1) * 32 + b;
}

bool BigInt::bit(int i) const {
    uint32_t limb = static_cast<uint32_t>(i) / 32;
    if (limb >= size_) return false;
    return (limbs()[limb] >> (i % 32)) & 1u;
}

void BigInt::shift_left_one_add_bit(bool b) {
    uint32_t carry = b ? 1u : 0u;
    for (uint32_t i = 0; i < size_; ++i) {
        uint32_t v = limbs()[i];
        limbs()[i] = (v << 1) | carry;
        carry = v >> 31;
    }
    if (carry) {
        set_size(size_ + 1);
        limbs()[size_ - 1] = carry;
    }
    if (size_ > 0) sign_ = 1;
}

// Schoolbook shift-subtract division on magnitudes.  Operands here stay small
// (a few limbs), so the O(bits * limbs) cost is irrelevant.
void BigInt::divrem_mag(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem) {
    quot = BigInt();
    rem = BigInt();
    if (cmp_mag(a, b) < 0) {
        rem.assign_from(a);
        rem.sign_ = rem.size_ ? 1 : 0;
        return;
    }
    int nbits = a.bit_length();
    quot.set_size((static_cast<uint32_t>(nbits) + 31) / 32);
    std::memset(quot.limbs(), 0, quot.size_ * sizeof(uint32_t));
    BigInt tmp;
    for (int i = nbits - 1; i >= 0; --i) {
        rem.shift_left_one_add_bit(a.bit(i));
        if (cmp_mag(rem, b) >= 0) {
            sub_mag(rem, b, tmp);
            rem = tmp;
            quot.limbs()[i / 32] |= 1u << (i % 32);
        }
    }
    quot.sign_ = 1;
    quot.trim();
    rem.sign_ = rem.size_ ? 1 : 0;
    rem.trim();
}

// ---------------------------------------------------------------------------
// Signed operations

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt out;
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    if (a.sign_ == b.sign_) {
        BigInt::add_mag(a, b, out);
        out.sign_ = out.size_ ? a.sign_ : 0;
    } else {
        int c = BigInt::cmp_mag(a, b);
        if (c == 0) return BigInt();
        if (c > 0) {
            BigInt::sub_mag(a, b, out);
            out.sign_ = out.size_ ? a.sign_ : 0;
        } else {
            BigInt::sub_mag(b, a, out);
            out.sign_ = out.size_ ? b.sign_ : 0;
        }
    }
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out(*this);
    out.sign_ = -out.sign_;
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt out;
    BigInt::mul_mag(a, b, out);
    out.sign_ = out.size_ ? a.sign_ * b.sign_ : 0;
    return out;
}

void BigInt::divrem(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem) {
    if (b.is_zero()) throw std::domain_error("BigInt division by zero");
    divrem_mag(a, b, quot, rem);
    if (quot.size_) quot.sign_ = a.sign_ * b.sign_;
    if (rem.size_) rem.sign_ = a.sign_;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    BigInt x(a), y(b), q, r;
    x.sign_ = x.size_ ? 1 : 0;
    y.sign_ = y.size_ ? 1 : 0;
    while (!y.is_zero()) {
        divrem_mag(x, y, q, r);
        x = std::move(y);
        y = std::move(r);
        y.sign_ = y.size_ ? 1 : 0;
    }
    return x;
}

int cmp(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    int c = BigInt::cmp_mag(a, b);
    return a.sign_ >= 0 ? c : -c;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::string digits;
    BigInt cur(*this), q, r;
    cur.sign_ = 1;
    const BigInt billion(1000000000LL);
    while (!cur.is_zero()) {
        divrem_mag(cur, billion, q, r);
        long long chunk = r.is_zero() ? 0 : r.to_longlong();
        for (int i = 0; i < 9; ++i) {
            digits.push_back(static_cast<char>('0' + chunk % 10));
            chunk /= 10;
        }
        cur = std::move(q);
        cur.sign_ = cur.size_ ? 1 : 0;
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

// ---------------------------------------------------------------------------
// Rat

void Rat::normalize() {
    if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (cmp(g, BigInt(1)) != 0) {
        BigInt q, r;
        BigInt::divrem(num_, g, q, r);
        num_ = std::move(q);
        BigInt::divrem(den_, g, q, r);
        den_ = std::move(q);
    }
}

Rat::Rat(long long num, long long den) : num_(num), den_(den) { normalize(); }
Rat::Rat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

Rat Rat::from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("non-finite double");
    int exp = 0;
    double m = std::frexp(v, &exp);   // v = m * 2^exp, |m| in [0.5, 1)
    // 53 bits of mantissa
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    BigInt num(mant), den(1);
    BigInt two(2);
    while (exp > 0) { num = num * two; --exp; }
    while (exp < 0) { den = den * two; ++exp; }
    return Rat(std::move(num), std::move(den));
}

bool Rat::is_integer() const { return cmp(den_, BigInt(1)) == 0; }

double Rat::to_double() const { return num_.to_double() / den_.to_double(); }

BigInt Rat::floor() const {
    BigInt q, r;
    BigInt::divrem(num_, den_, q, r);
    if (num_.sign() < 0 && !r.is_zero()) q = q - BigInt(1);
    return q;
}

BigInt Rat::ceil() const {
    BigInt q, r;
    BigInt::divrem(num_, den_, q, r);
    if (num_.sign() > 0 && !r.is_zero()) q = q + BigInt(1);
    return q;
}

std::string Rat::to_fraction_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

std::string Rat::to_decimal_string(int max_frac_digits) const {
    BigInt q, r;
    BigInt::divrem(num_, den_, q, r);
    std::string out;
    if (sign() < 0) out += "-";
    BigInt aq = q.sign() < 0 ? -q : q;
    out += aq.to_string();
    if (r.is_zero() || max_frac_digits <= 0) return out;
    std::string frac;
    BigInt rem = r.sign() < 0 ? -r : r;
    const BigInt ten(10);
    for (int i = 0; i < max_frac_digits && !rem.is_zero(); ++i) {
        rem = rem * ten;
        BigInt d, r2;
        BigInt::divrem(rem, den_, d, r2);
        frac += d.is_zero() ? "0" : d.to_string();
        rem = std::move(r2);
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return out;
}

Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rat operator*(const Rat& a, const Rat& b) {
    if (a.is_zero() || b.is_zero()) return Rat();
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
}

Rat Rat::operator-() const {
    Rat out(*this);
    out.num_ = -out.num_;
    return out;
}

int cmp(const Rat& a, const Rat& b) {
    if (a.num_.sign() != b.num_.sign())
        return a.num_.sign() < b.num_.sign() ? -1 : 1;
    return cmp(a.num_ * b.den_, b.num_ * a.den_);
}

} // namespace maf
