#pragma once

// Exact integer and rational arithmetic.
//
// BigInt and BigRational are value types over GMP.  Everything above this
// header is exact: no floating point reaches an algebraic computation.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stemcert {

class BigInt {
public:
    BigInt() = default;
    BigInt(int v) : v_(static_cast<long>(v)) {}
    BigInt(long v) : v_(v) {}
    BigInt(long long v) : v_(static_cast<long>(v)) {}
    BigInt(unsigned v) : v_(static_cast<unsigned long>(v)) {}
    BigInt(unsigned long v) : v_(v) {}
    explicit BigInt(mpz_class v) : v_(std::move(v)) {}

    // Decimal, optional leading sign.
    static BigInt parse(std::string_view text) {
        std::string s(text);
        if (s.empty()) throw std::invalid_argument("empty integer literal");
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
        for (std::size_t j = i; j < s.size(); ++j)
            if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("bad integer literal: " + s);
        if (s[0] == '+') s.erase(0, 1);
        return BigInt(mpz_class(s, 10));
    }

    static BigInt pow(const BigInt& base, unsigned long exp) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), base.v_.get_mpz_t(), exp);
        return BigInt(std::move(r));
    }

    [[nodiscard]] int sign() const { return sgn(v_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] BigInt abs() const { return BigInt(mpz_class(::abs(v_))); }
    [[nodiscard]] std::string to_string() const { return v_.get_str(10); }
    [[nodiscard]] const mpz_class& raw() const { return v_; }

    [[nodiscard]] bool fits_int64() const { return mpz_fits_slong_p(v_.get_mpz_t()) != 0; }
    [[nodiscard]] std::int64_t to_int64() const {
        if (!fits_int64()) throw std::overflow_error("BigInt does not fit in int64: " + to_string());
        return v_.get_si();
    }

    BigInt& operator+=(const BigInt& o) { v_ += o.v_; return *this; }
    BigInt& operator-=(const BigInt& o) { v_ -= o.v_; return *this; }
    BigInt& operator*=(const BigInt& o) { v_ *= o.v_; return *this; }

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
    friend BigInt operator-(const BigInt& a) { return BigInt(mpz_class(-a.v_)); }

    // Truncating division, as in C++.
    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
        return BigInt(std::move(q));
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        mpz_class r;
        mpz_tdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
        return BigInt(std::move(r));
    }

    // Non-negative residue for positive modulus.
    [[nodiscard]] BigInt mod(const BigInt& m) const {
        if (m.sign() <= 0) throw std::domain_error("modulus must be positive");
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), v_.get_mpz_t(), m.v_.get_mpz_t());
        return BigInt(std::move(r));
    }

    [[nodiscard]] bool divides(const BigInt& n) const {
        if (is_zero()) return n.is_zero();
        return mpz_divisible_p(n.v_.get_mpz_t(), v_.get_mpz_t()) != 0;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& a) { return os << a.to_string(); }

private:
    mpz_class v_;
};

/// Non-negative gcd; gcd(0, 0) = 0.
inline BigInt gcd(const BigInt& a, const BigInt& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
    return BigInt(std::move(g));
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
    return BigInt(std::move(l));
}

inline constexpr std::int64_t kTrialDivisionLimit = 1'000'000;

// Deterministic trial division.  Inputs above kTrialDivisionLimit are
// outside the contract and rejected.
inline bool is_prime(const BigInt& n) {
    if (n > BigInt(static_cast<long>(kTrialDivisionLimit)))
        throw std::out_of_range("primality test limited to n <= 10^6, got " + n.to_string());
    std::int64_t v = n.to_int64();
    if (v < 2) return false;
    if (v < 4) return true;
    if (v % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= v; d += 2)
        if (v % d == 0) return false;
    return true;
}

/// Largest e with p^e | n.  Rejects n = 0 and non-prime p.
inline unsigned padic_valuation(const BigInt& n, const BigInt& p) {
    if (n.is_zero()) throw std::domain_error("p-adic valuation of 0 is infinite");
    if (!is_prime(p)) throw std::invalid_argument("padic_valuation: " + p.to_string() + " is not prime");
    mpz_class rest;
    return static_cast<unsigned>(
        mpz_remove(rest.get_mpz_t(), n.raw().get_mpz_t(), p.raw().get_mpz_t()));
}

struct PrimeValuation {
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimeValuation&, const PrimeValuation&) = default;
};

class BigRational {
public:
    BigRational() : num_(0), den_(1) {}
    BigRational(int v) : num_(v), den_(1) {}
    BigRational(const BigInt& v) : num_(v), den_(1) {}
    BigRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    [[nodiscard]] const BigInt& num() const { return num_; }
    [[nodiscard]] const BigInt& den() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
    [[nodiscard]] bool is_integer() const { return den_ == BigInt(1); }
    [[nodiscard]] int sign() const { return num_.sign(); }

    // "n/d", or "n" when d = 1.
    [[nodiscard]] std::string to_string() const {
        return is_integer() ? num_.to_string() : num_.to_string() + "/" + den_.to_string();
    }

    static BigRational parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return BigRational(BigInt::parse(text));
        return BigRational(BigInt::parse(text.substr(0, slash)), BigInt::parse(text.substr(slash + 1)));
    }

    // Representative in [0, 1).
    [[nodiscard]] BigRational mod_one() const { return BigRational(num_.mod(den_), den_); }

    friend BigRational operator+(const BigRational& a, const BigRational& b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend BigRational operator-(const BigRational& a, const BigRational& b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend BigRational operator*(const BigRational& a, const BigRational& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend BigRational operator/(const BigRational& a, const BigRational& b) {
        if (b.is_zero()) throw std::domain_error("rational division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend BigRational operator-(const BigRational& a) { return {-a.num_, a.den_}; }

    BigRational& operator+=(const BigRational& o) { return *this = *this + o; }
    BigRational& operator-=(const BigRational& o) { return *this = *this - o; }
    BigRational& operator*=(const BigRational& o) { return *this = *this * o; }

    // Lowest terms make componentwise equality exact.
    friend bool operator==(const BigRational&, const BigRational&) = default;
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
        return a.num_ * b.den_ <=> b.num_ * a.den_;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.to_string(); }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = gcd(num_, den_);
        if (g != BigInt(1)) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline BigRational rational_reduce(const BigInt& num, const BigInt& den) { return {num, den}; }

inline BigInt binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return BigInt(std::move(r));
}

}  // namespace stemcert
