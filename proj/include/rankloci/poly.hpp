#pragma once

// Dense univariate polynomials over Q, coefficients in ascending order.

#include "rankloci/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace rankloci {

class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    UPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static UPoly constant(const Rational& a) { return UPoly(std::vector<Rational>{a}); }
    static UPoly monomial(const Rational& a, int power)
    {
        std::vector<Rational> c(power + 1, Rational(0));
        c[power] = a;
        return UPoly(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    UPoly monic() const
    {
        if (is_zero()) return *this;
        UPoly r = *this;
        const Rational lc = leading();
        for (auto& x : r.c_) x /= lc;
        return r;
    }

    UPoly derivative() const
    {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
        return UPoly(std::move(d));
    }

    Rational operator()(const Rational& x) const
    {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b)
    {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a) { return UPoly::constant(Rational(-1)) * a; }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division; throws on a zero divisor.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
    {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> rem = a.c_;
        const int db = b.degree();
        if (a.degree() < db) return {UPoly{}, a};
        std::vector<Rational> quot(a.degree() - db + 1, Rational(0));
        const Rational lc = b.leading();
        for (int k = a.degree() - db; k >= 0; --k) {
            const Rational q = rem[k + db] / lc;
            quot[k] = q;
            if (q.is_zero()) continue;
            for (int j = 0; j <= db; ++j) rem[k + j] -= q * b.c_[j];
        }
        rem.resize(db);
        return {UPoly(std::move(quot)), UPoly(std::move(rem))};
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UPoly pow(const UPoly& p, int e)
{
    UPoly acc = UPoly::constant(Rational(1));
    for (int i = 0; i < e; ++i) acc = acc * p;
    return acc;
}

} // namespace rankloci
