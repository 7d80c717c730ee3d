#ifndef QTWO_ARITH_HPP
#define QTWO_ARITH_HPP

// Exact arithmetic in Z_(3), the integers localized at 3: rationals whose
// denominator is coprime to 3.  This is a discrete valuation ring with
// maximal ideal (3); every nonzero element is 3^v * unit.  All higher layers
// (the ring B, the connecting-map matrices, Smith normal form) work over
// this ring, so correctness here is load-bearing.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace qtwo {

using Int = boost::multiprecision::cpp_int;

// a truncated computation changed shape between V and V+4
struct NonStabilizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// a verified structural claim failed on concrete data
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int pow3(long k) {
    if (k < 0)
        throw std::domain_error("pow3: negative exponent");
    Int r = 1;
    for (long i = 0; i < k; ++i)
        r *= 3;
    return r;
}

inline Int pow_int(Int base, long e) {
    if (e < 0)
        throw std::domain_error("pow_int: negative exponent");
    Int r = 1;
    while (e > 0) {
        if (e & 1)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n)
        return 0;
    Int r = 1;
    for (long i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

// 3-adic valuation value; +infinity is reserved for zero and sorts above
// every finite valuation so min-valuation pivot search is total.
struct Val3 {
    bool finite = true;
    long v = 0;

    static Val3 infinity() { return Val3{false, 0}; }

    friend bool operator==(const Val3& a, const Val3& b) {
        return a.finite == b.finite && (!a.finite || a.v == b.v);
    }
    friend bool operator<(const Val3& a, const Val3& b) {
        if (!a.finite)
            return false;
        if (!b.finite)
            return true;
        return a.v < b.v;
    }
    friend bool operator<=(const Val3& a, const Val3& b) { return a < b || a == b; }

    friend Val3 operator+(const Val3& a, const Val3& b) {
        if (!a.finite || !b.finite)
            return infinity();
        return Val3{true, a.v + b.v};
    }

    std::string str() const { return finite ? std::to_string(v) : "inf"; }
};

inline long val3_int(const Int& n) {
    if (n == 0)
        throw std::domain_error("val3_int: zero");
    Int m = n;
    long v = 0;
    while (m % 3 == 0) {
        m /= 3;
        ++v;
    }
    return v;
}

// An element of Z_(3) in canonical form: gcd(num, den) = 1, den > 0 and
// coprime to 3; zero is (0, 1).  Canonical form makes equality structural.
// Values are immutable after construction.
class LocalScalar {
  public:
    LocalScalar() : num_(0), den_(1) {}
    LocalScalar(long n) : num_(n), den_(1) {}
    LocalScalar(Int n) : num_(std::move(n)), den_(1) {}
    LocalScalar(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static LocalScalar zero() { return LocalScalar(); }
    static LocalScalar one() { return LocalScalar(1); }

    // 2^e for e of either sign (2 is a unit in Z_(3)).
    static LocalScalar two_pow(long e) {
        if (e >= 0)
            return LocalScalar(pow_int(2, e));
        return LocalScalar(1, pow_int(2, -e));
    }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_unit() const { return num_ != 0 && num_ % 3 != 0; }

    friend bool operator==(const LocalScalar& a, const LocalScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const LocalScalar& a, const LocalScalar& b) { return !(a == b); }
    friend bool operator<(const LocalScalar& a, const LocalScalar& b) {
        // arbitrary total order, used only for deterministic containers
        if (a.num_ != b.num_)
            return a.num_ < b.num_;
        return a.den_ < b.den_;
    }

    friend LocalScalar operator+(const LocalScalar& a, const LocalScalar& b) {
        return LocalScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend LocalScalar operator-(const LocalScalar& a, const LocalScalar& b) {
        return LocalScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend LocalScalar operator*(const LocalScalar& a, const LocalScalar& b) {
        return LocalScalar(a.num_ * b.num_, a.den_ * b.den_);
    }
    LocalScalar operator-() const {
        LocalScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    LocalScalar& operator+=(const LocalScalar& b) { return *this = *this + b; }
    LocalScalar& operator-=(const LocalScalar& b) { return *this = *this - b; }
    LocalScalar& operator*=(const LocalScalar& b) { return *this = *this * b; }

    // Division stays inside Z_(3), so it requires val3(b) <= val3(a).
    friend LocalScalar operator/(const LocalScalar& a, const LocalScalar& b) {
        if (b.is_zero())
            throw std::domain_error("LocalScalar: division by zero");
        LocalScalar r(a.num_ * b.den_, a.den_ * b.num_);
        return r;
    }

    LocalScalar pow(long e) const {
        if (e >= 0) {
            LocalScalar r = one(), base = *this;
            long k = e;
            while (k > 0) {
                if (k & 1)
                    r *= base;
                base *= base;
                k >>= 1;
            }
            return r;
        }
        if (!is_unit())
            throw std::domain_error("LocalScalar::pow: negative power of a non-unit");
        return (one() / *this).pow(-e);
    }

    Val3 val3() const {
        if (num_ == 0)
            return Val3::infinity();
        return Val3{true, val3_int(num_)};  // den_ is 3-free by invariant
    }

    // x / 3^val3(x); the unit factor of x.
    LocalScalar unit_part() const {
        if (is_zero())
            throw std::domain_error("LocalScalar::unit_part: zero has no unit part");
        return LocalScalar(num_ / pow3(val3().v), den_);
    }

    // num * den^{-1} mod 3^k, as a representative in [0, 3^k).  k = 0 is the
    // zero ring and yields 0.
    Int reduce_mod(long k) const {
        if (k < 0)
            throw std::domain_error("LocalScalar::reduce_mod: negative modulus exponent");
        if (k == 0)
            return 0;
        Int mod = pow3(k);
        Int n = num_ % mod;
        if (n < 0)
            n += mod;
        Int d = den_ % mod;
        Int dinv = mod_inverse(d, mod);
        return (n * dinv) % mod;
    }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1)
            s += "/" + den_.str();
        return s;
    }

  private:
    Int num_;
    Int den_;

    void normalize() {
        using boost::multiprecision::gcd;
        if (den_ == 0)
            throw std::domain_error("LocalScalar: zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = gcd(num_ < 0 ? Int(-num_) : num_, den_);
        num_ /= g;
        den_ /= g;
        if (den_ % 3 == 0)
            throw std::domain_error("LocalScalar: denominator divisible by 3, not in Z_(3)");
    }

    static Int mod_inverse(Int a, const Int& mod) {
        // extended Euclid; a is coprime to mod (mod is a power of 3, a is 3-free)
        Int old_r = a % mod, r = mod;
        if (old_r < 0)
            old_r += mod;
        Int old_s = 1, s = 0;
        while (r != 0) {
            Int q = old_r / r;
            Int tmp = old_r - q * r;
            old_r = r;
            r = tmp;
            tmp = old_s - q * s;
            old_s = s;
            s = tmp;
        }
        if (old_r != 1)
            throw std::domain_error("mod_inverse: not invertible");
        Int inv = old_s % mod;
        if (inv < 0)
            inv += mod;
        return inv;
    }
};

inline Val3 val3(const LocalScalar& x) { return x.val3(); }
inline LocalScalar unit_part(const LocalScalar& x) { return x.unit_part(); }
inline Int reduce_mod(const LocalScalar& x, long k) { return x.reduce_mod(k); }

// floor division and a true mod for negative operands
inline long floor_div(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline long mod_pos(long a, long b) { return a - b * floor_div(a, b); }

// nu_3 of an ordinary integer, with nu_3(0) = +infinity
inline Val3 val3_of(long n) {
    if (n == 0)
        return Val3::infinity();
    return Val3{true, val3_int(Int(n))};
}

}  // namespace qtwo

#endif
