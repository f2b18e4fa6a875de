#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <utility>

namespace maf {

// Arbitrary-precision unsigned magnitude with sign, base 2^32.  Values up to
// 128 bits live in an inline buffer; anything bigger spills to the heap.
// Only what the exact simplex and the certificates need: add, sub, mul,
// divrem, gcd, comparisons, decimal I/O.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);                 // NOLINT: implicit by design
    BigInt(const BigInt& other);
    BigInt(BigInt&& other) noexcept;
    BigInt& operator=(const BigInt& other);
    BigInt& operator=(BigInt&& other) noexcept;
    ~BigInt();

    bool is_zero() const { return size_ == 0; }
    int sign() const { return sign_; }
    bool fits_longlong() const;
    long long to_longlong() const;       // requires fits_longlong()
    double to_double() const;

    std::string to_string() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    BigInt operator-() const;

    // Truncating division; remainder has the sign of the dividend.
    static void divrem(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem);
    static BigInt gcd(const BigInt& a, const BigInt& b);   // always >= 0

    friend int cmp(const BigInt& a, const BigInt& b);
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

private:
    static constexpr int kInlineLimbs = 4;

    int sign_ = 0;        // -1, 0, +1; zero iff size_ == 0
    uint32_t size_ = 0;   // limb count, no leading zero limb
    uint32_t cap_ = kInlineLimbs;
    union {
        uint32_t inline_[kInlineLimbs];
        uint32_t* heap_;
    };

    const uint32_t* limbs() const { return cap_ == kInlineLimbs ? inline_ : heap_; }
    uint32_t* limbs() { return cap_ == kInlineLimbs ? inline_ : heap_; }
    void reserve(uint32_t n);
    void set_size(uint32_t n);           // reserve + size_, limbs uninitialized
    void trim();                         // drop leading zero limbs, fix sign
    void assign_from(const BigInt& other);

    static int cmp_mag(const BigInt& a, const BigInt& b);
    static void add_mag(const BigInt& a, const BigInt& b, BigInt& out);
    static void sub_mag(const BigInt& a, const BigInt& b, BigInt& out);  // |a| >= |b|
    static void mul_mag(const BigInt& a, const BigInt& b, BigInt& out);
    static void divrem_mag(const BigInt& a, const BigInt& b, BigInt& quot, BigInt& rem);
    int bit_length() const;
    bool bit(int i) const;
    void shift_left_one_add_bit(bool b);  // this = this*2 + b, magnitude only
};

// Exact rational, always normalized: gcd(|num|, den) == 1, den > 0.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}       // NOLINT: implicit by design
    Rat(long long num, long long den);
    Rat(BigInt num, BigInt den);

    static Rat from_double(double v);            // exact binary expansion

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const;
    int sign() const { return num_.sign(); }
    double to_double() const;
    BigInt floor() const;
    BigInt ceil() const;

    // "p/q", with "/q" omitted when q == 1.
    std::string to_fraction_string() const;
    // Fixed-point decimal, truncated toward zero at max_frac_digits, trailing
    // zeros (and a trailing '.') removed.
    std::string to_decimal_string(int max_frac_digits = 9) const;

    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend Rat operator*(const Rat& a, const Rat& b);
    friend Rat operator/(const Rat& a, const Rat& b);   // b != 0
    Rat operator-() const;
    Rat& operator+=(const Rat& b) { *this = *this + b; return *this; }
    Rat& operator-=(const Rat& b) { *this = *this - b; return *this; }
    Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }
    Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

    friend int cmp(const Rat& a, const Rat& b);
    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }

private:
    BigInt num_;
    BigInt den_;
    void normalize();
};

} // namespace maf
