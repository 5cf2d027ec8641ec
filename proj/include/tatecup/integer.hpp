#pragma once

// Exact integer with an int64 fast path. Values that leave the int64 range are
// held in a GMP integer and demoted again as soon as they fit.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tatecup {

static_assert(sizeof(long) == 8, "Integer assumes an LP64 platform");

class Integer {
public:
    Integer() noexcept = default;

    template <std::signed_integral T>
    Integer(T v) noexcept : small_(static_cast<std::int64_t>(v)) {}

    template <std::unsigned_integral T>
    Integer(T v) {
        if (static_cast<std::uint64_t>(v) <= static_cast<std::uint64_t>(kMax)) {
            small_ = static_cast<std::int64_t>(v);
        } else {
            big_ = std::make_unique<mpz_class>();
            mpz_set_ui(big_->get_mpz_t(), static_cast<unsigned long>(v));
        }
    }

    explicit Integer(const mpz_class& v) { assign(v); }

    Integer(const Integer& o) : small_(o.small_), big_(o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr) {}
    Integer(Integer&&) noexcept = default;

    Integer& operator=(const Integer& o) {
        if (this != &o) {
            small_ = o.small_;
            if (o.big_) {
                if (big_) *big_ = *o.big_;
                else big_ = std::make_unique<mpz_class>(*o.big_);
            } else {
                big_.reset();
            }
        }
        return *this;
    }
    Integer& operator=(Integer&&) noexcept = default;

    static Integer parse(std::string_view text) {
        std::string s(text);
        mpz_class v;
        if (s.empty() || v.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: '" + s + "'");
        return Integer(v);
    }

    bool is_small() const noexcept { return !big_; }
    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    bool is_one() const noexcept { return !big_ && small_ == 1; }
    bool is_unit() const noexcept { return !big_ && (small_ == 1 || small_ == -1); }

    int sign() const noexcept {
        if (big_) return sgn(*big_);
        return (small_ > 0) - (small_ < 0);
    }

    std::int64_t to_int64() const {
        if (big_) throw std::overflow_error("Integer does not fit in int64");
        return small_;
    }

    mpz_class to_mpz() const { return big_ ? *big_ : mpz_class(static_cast<long>(small_)); }

    std::string str() const { return big_ ? big_->get_str() : std::to_string(small_); }

    Integer& operator+=(const Integer& o) {
        if (!big_ && !o.big_) {
            std::int64_t r;
            if (!__builtin_add_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        assign(to_mpz() + o.to_mpz());
        return *this;
    }

    Integer& operator-=(const Integer& o) {
        if (!big_ && !o.big_) {
            std::int64_t r;
            if (!__builtin_sub_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        assign(to_mpz() - o.to_mpz());
        return *this;
    }

    Integer& operator*=(const Integer& o) {
        if (!big_ && !o.big_) {
            std::int64_t r;
            if (!__builtin_mul_overflow(small_, o.small_, &r)) {
                small_ = r;
                return *this;
            }
        }
        assign(to_mpz() * o.to_mpz());
        return *this;
    }

    /// *this += a * b without a temporary in the common case.
    void add_product(const Integer& a, const Integer& b) {
        if (!big_ && !a.big_ && !b.big_) {
            std::int64_t p, r;
            if (!__builtin_mul_overflow(a.small_, b.small_, &p) && !__builtin_add_overflow(small_, p, &r)) {
                small_ = r;
                return;
            }
        }
        mpz_class acc = to_mpz();
        mpz_class pa = a.to_mpz();
        mpz_class pb = b.to_mpz();
        mpz_addmul(acc.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
        assign(acc);
    }

    /// *this -= a * b.
    void sub_product(const Integer& a, const Integer& b) {
        if (!big_ && !a.big_ && !b.big_) {
            std::int64_t p, r;
            if (!__builtin_mul_overflow(a.small_, b.small_, &p) && !__builtin_sub_overflow(small_, p, &r)) {
                small_ = r;
                return;
            }
        }
        mpz_class acc = to_mpz();
        mpz_class pa = a.to_mpz();
        mpz_class pb = b.to_mpz();
        mpz_submul(acc.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
        assign(acc);
    }

    Integer operator-() const {
        if (!big_ && small_ != kMin) return Integer(-small_);
        return Integer(mpz_class(-to_mpz()));
    }

    void negate() { *this = -*this; }

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

    friend bool operator==(const Integer& a, const Integer& b) noexcept {
        if (!a.big_ && !b.big_) return a.small_ == b.small_;
        if (a.big_ && b.big_) return cmp(*a.big_, *b.big_) == 0;
        return false;  // normalized: a big value never equals a small one
    }

    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
        if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
        int c;
        if (a.big_ && b.big_) c = cmp(*a.big_, *b.big_);
        else if (a.big_) c = sgn(*a.big_);
        else c = -sgn(*b.big_);
        return c <=> 0;
    }

    friend Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }

    /// Compares absolute values.
    friend std::strong_ordering cmp_abs(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_ && a.small_ != kMin && b.small_ != kMin) {
            std::int64_t x = a.small_ < 0 ? -a.small_ : a.small_;
            std::int64_t y = b.small_ < 0 ? -b.small_ : b.small_;
            return x <=> y;
        }
        mpz_class x = a.to_mpz(), y = b.to_mpz();
        return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()) <=> 0;
    }

    friend Integer gcd(const Integer& a, const Integer& b) {
        if (!a.big_ && !b.big_ && a.small_ != kMin && b.small_ != kMin) return Integer(std::gcd(a.small_, b.small_));
        mpz_class g;
        mpz_class x = a.to_mpz(), y = b.to_mpz();
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return Integer(g);
    }

    friend Integer lcm(const Integer& a, const Integer& b) {
        if (a.is_zero() || b.is_zero()) return Integer(0);
        return abs(exact_div(a, gcd(a, b)) * b);
    }

    /// Floor division; throws on division by zero.
    friend Integer floor_div(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (!a.big_ && !b.big_ && !(a.small_ == kMin && b.small_ == -1)) {
            std::int64_t q = a.small_ / b.small_;
            std::int64_t r = a.small_ % b.small_;
            if (r != 0 && ((r < 0) != (b.small_ < 0))) --q;
            return Integer(q);
        }
        mpz_class q;
        mpz_class x = a.to_mpz(), y = b.to_mpz();
        mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return Integer(q);
    }

    /// Remainder with the sign of b (or zero).
    friend Integer floor_mod(const Integer& a, const Integer& b) {
        Integer r = a;
        r.sub_product(floor_div(a, b), b);
        return r;
    }

    /// Quotient rounded to nearest, so that |a - q*b| <= |b|/2.
    friend Integer nearest_div(const Integer& a, const Integer& b) {
        Integer q = floor_div(a, b);
        Integer r = a;
        r.sub_product(q, b);
        Integer twice = r + r;
        if (cmp_abs(twice, b) == std::strong_ordering::greater) q += Integer(1);
        return q;
    }

    friend bool divides(const Integer& d, const Integer& a) {
        if (d.is_zero()) return a.is_zero();
        if (!a.big_ && !d.big_ && d.small_ != -1) return a.small_ % d.small_ == 0;
        mpz_class x = a.to_mpz(), y = d.to_mpz();
        return mpz_divisible_p(x.get_mpz_t(), y.get_mpz_t()) != 0;
    }

    /// a / b where b is known to divide a.
    friend Integer exact_div(const Integer& a, const Integer& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        if (!a.big_ && !b.big_ && !(a.small_ == kMin && b.small_ == -1)) return Integer(a.small_ / b.small_);
        mpz_class q;
        mpz_class x = a.to_mpz(), y = b.to_mpz();
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return Integer(q);
    }

    friend std::ostream& operator<<(std::ostream& os, const Integer& a) { return os << a.str(); }

private:
    static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
    static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

    void assign(const mpz_class& v) {
        if (mpz_fits_slong_p(v.get_mpz_t())) {
            small_ = mpz_get_si(v.get_mpz_t());
            big_.reset();
        } else {
            if (big_) *big_ = v;
            else big_ = std::make_unique<mpz_class>(v);
            small_ = 0;
        }
    }

    std::int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

}  // namespace tatecup
