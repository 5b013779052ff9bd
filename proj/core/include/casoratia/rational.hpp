#pragma once

/**
 * @file rational.hpp
 * @brief Exact Gaussian-rational arithmetic and (q-)shifted factorials.
 *
 * GaussianRational is the coefficient field for everything else in this
 * library: a + b*i with arbitrary-precision rational a, b (GMP mpq).
 * Values are always in lowest terms with positive denominators, which
 * mpq_class guarantees after canonicalize().
 */

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace casoratia {

using Rat = mpq_class;

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

/// Exact complex number a + b*i over the rationals.
class GQ {
public:
    GQ() : re_(0), im_(0) {}
    GQ(long n) : re_(n), im_(0) {}
    GQ(Rat re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }
    GQ(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }
    GQ(long num, long den) : re_(Rat(num, den)), im_(0) { re_.canonicalize(); }

    static GQ i() { return GQ(Rat(0), Rat(1)); }

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GQ conj() const { return GQ(re_, -im_); }

    /// re^2 + im^2, a nonnegative rational.
    Rat norm() const { return re_ * re_ + im_ * im_; }

    GQ operator-() const { return GQ(-re_, -im_); }

    GQ& operator+=(const GQ& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GQ& operator-=(const GQ& o) { re_ -= o.re_; im_ -= o.im_; return *this; }

    GQ& operator*=(const GQ& o) {
        Rat r = re_ * o.re_ - im_ * o.im_;
        Rat i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    GQ& operator/=(const GQ& o) {
        if (o.is_zero()) throw DivisionByZero();
        Rat n = o.norm();
        Rat r = (re_ * o.re_ + im_ * o.im_) / n;
        Rat i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GQ operator+(GQ a, const GQ& b) { return a += b; }
    friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
    friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
    friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
    friend bool operator==(const GQ& a, const GQ& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

    GQ inv() const {
        if (is_zero()) throw DivisionByZero();
        Rat n = norm();
        return GQ(re_ / n, -im_ / n);
    }

    GQ pow(long k) const {
        if (k < 0) return inv().pow(-k);
        GQ acc(1), base = *this;
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }

    /// "3/2" or "3/2+5i", "-i", ... always decimal-free fractions.
    std::string str() const;

private:
    Rat re_, im_;
};

inline std::string rat_str(const Rat& r) {
    return r.get_str();
}

inline std::string GQ::str() const {
    if (im_ == 0) return rat_str(re_);
    std::string s;
    if (re_ != 0) s = rat_str(re_);
    if (im_ > 0 && re_ != 0) s += "+";
    if (im_ == -1) s += "-";
    else if (im_ != 1) s += rat_str(im_);
    s += "i";
    return s;
}

/// Base for the q-families: q is always carried as its fourth root s,
/// so every quarter power q^{m/4} = s^m stays an exact rational.
class QBase {
public:
    explicit QBase(Rat s) : s_(std::move(s)) {
        if (s_ <= 0 || s_ == 1) throw std::domain_error("QBase: s must be positive, != 1");
    }

    const Rat& s() const { return s_; }
    Rat q() const { return qpow4(4); }
    Rat qhalf() const { return qpow4(2); }

    /// q^{m/4} = s^m for any integer m.
    Rat qpow4(long m) const {
        Rat acc = 1, base = s_;
        long k = m < 0 ? -m : m;
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        if (m < 0) acc = 1 / acc;
        return acc;
    }

    /// q^{c} for half-integer c given as 2c (so qpow_half(1) = q^{1/2}).
    Rat qpow_half(long twice_c) const { return qpow4(2 * twice_c); }

    QBase inverted() const { return QBase(1 / s_); }

private:
    Rat s_;
};

/// (a)_k = a (a+1) ... (a+k-1); empty product for k = 0.
inline GQ pochhammer(const GQ& a, long k) {
    GQ acc(1);
    for (long j = 0; j < k; ++j) acc *= a + GQ(j);
    return acc;
}

/// (a; step)_k = prod_{j=0}^{k-1} (1 - a * step^j).
/// step is the geometric ratio, e.g. q or q^{1/2}, passed as exact rational.
inline GQ q_pochhammer(const GQ& a, const Rat& step, long k) {
    GQ acc(1);
    GQ apow = a;
    for (long j = 0; j < k; ++j) {
        acc *= GQ(1) - apow;
        apow *= GQ(step);
    }
    return acc;
}

}  // namespace casoratia
