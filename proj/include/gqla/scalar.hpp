#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace gqla {

/// Exact rational number, always in lowest terms with positive denominator.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

/// Element of Q(i), stored as re + im*i.
class Gaussian {
public:
    Gaussian() = default;
    Gaussian(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Gaussian i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Gaussian conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }
    Gaussian inverse() const;

    Gaussian operator-() const { return {-re_, -im_}; }
    Gaussian& operator+=(const Gaussian& o);
    Gaussian& operator-=(const Gaussian& o);
    Gaussian& operator*=(const Gaussian& o);
    Gaussian& operator/=(const Gaussian& o);

    friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
    friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
    friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
    friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
    friend bool operator==(const Gaussian& a, const Gaussian& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Lexicographic order on (re, im); used only for canonical sorting.
    friend bool lex_less(const Gaussian& a, const Gaussian& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

std::string to_string(const Gaussian& z);
/// Inverse of to_string: "2", "-i", "1/2+3i", "-1/3i".
Gaussian parse_gaussian(const std::string& s);
std::ostream& operator<<(std::ostream& os, const Gaussian& z);

/// Field traits used by the generic matrix code.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static Rational one() { return Rational(1); }
    static Rational zero() { return Rational(0); }
    static Rational inv(const Rational& x) { return Rational(1) / x; }
    static Rational conj(const Rational& x) { return x; }
};

template <>
struct FieldTraits<Gaussian> {
    static bool is_zero(const Gaussian& x) { return x.is_zero(); }
    static Gaussian one() { return Gaussian(1); }
    static Gaussian zero() { return Gaussian(0); }
    static Gaussian inv(const Gaussian& x) { return x.inverse(); }
    static Gaussian conj(const Gaussian& x) { return x.conj(); }
};

template <class F>
bool is_zero(const F& x) { return FieldTraits<F>::is_zero(x); }

/// Seeded generator for every randomized choice. The integer mapping is done
/// here rather than through <random> distributions so that streams are
/// identical across standard library implementations.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }
    /// Integer in [lo, hi].
    long uniform(long lo, long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(engine_() % span);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace gqla
