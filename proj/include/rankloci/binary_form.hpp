#pragma once

// Homogeneous polynomials in two variables (s, t). Coefficient i multiplies
// s^(d-i) t^i. Everything that asks about roots works over Q, which is enough
// because multiplicity structure is Galois-stable.

#include "rankloci/poly.hpp"
#include "rankloci/rational.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rankloci {

class BinaryForm {
public:
    BinaryForm() : BinaryForm(0) {}
    /// The zero form of the given degree.
    explicit BinaryForm(int degree) : degree_(degree), coeffs_(check_degree(degree) + 1, Rational(0)) {}
    BinaryForm(int degree, std::vector<Rational> coeffs) : degree_(degree), coeffs_(std::move(coeffs))
    {
        check_degree(degree);
        if (static_cast<int>(coeffs_.size()) != degree + 1)
            throw std::invalid_argument("binary form of degree " + std::to_string(degree) + " needs " +
                                        std::to_string(degree + 1) + " coefficients");
    }
    BinaryForm(std::initializer_list<Rational> coeffs)
        : BinaryForm(static_cast<int>(coeffs.size()) - 1, std::vector<Rational>(coeffs))
    {}

    static BinaryForm constant(const Rational& c) { return BinaryForm(0, {c}); }
    static BinaryForm s() { return BinaryForm{1, 0}; }
    static BinaryForm t() { return BinaryForm{0, 1}; }
    /// a*s + b*t
    static BinaryForm linear(const Rational& a, const Rational& b) { return BinaryForm{a, b}; }
    /// c * s^i t^j
    static BinaryForm monomial(const Rational& c, int i, int j)
    {
        BinaryForm f(i + j);
        f.coeffs_[j] = c;
        return f;
    }

    int degree() const { return degree_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& operator[](int i) const { return coeffs_.at(i); }
    Rational& operator[](int i) { return coeffs_.at(i); }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
    }
    /// Nonzero of degree zero.
    bool is_constant() const { return degree_ == 0 && !is_zero(); }

    /// Largest a with t^a | f (f nonzero).
    int t_power() const
    {
        for (int i = 0; i <= degree_; ++i)
            if (!coeffs_[i].is_zero()) return i;
        return degree_;
    }
    /// Largest a with s^a | f (f nonzero).
    int s_power() const
    {
        for (int i = degree_; i >= 0; --i)
            if (!coeffs_[i].is_zero()) return degree_ - i;
        return degree_;
    }

    /// Leading nonzero coefficient (lowest index) scaled to one.
    BinaryForm monic() const
    {
        if (is_zero()) return *this;
        const Rational lead = coeffs_[t_power()];
        BinaryForm r = *this;
        for (auto& c : r.coeffs_) c /= lead;
        return r;
    }

    BinaryForm d_ds() const
    {
        if (degree_ == 0) return BinaryForm(0);
        BinaryForm r(degree_ - 1);
        for (int i = 0; i < degree_; ++i) r.coeffs_[i] = coeffs_[i] * Rational(degree_ - i);
        return r;
    }
    BinaryForm d_dt() const
    {
        if (degree_ == 0) return BinaryForm(0);
        BinaryForm r(degree_ - 1);
        for (int i = 1; i <= degree_; ++i) r.coeffs_[i - 1] = coeffs_[i] * Rational(i);
        return r;
    }

    Rational evaluate(const Rational& s_val, const Rational& t_val) const
    {
        Rational acc = 0;
        for (int i = 0; i <= degree_; ++i) {
            if (coeffs_[i].is_zero()) continue;
            acc += coeffs_[i] * pow(s_val, degree_ - i) * pow(t_val, i);
        }
        return acc;
    }

    /// f(1, t) as a polynomial in t.
    UPoly dehomogenize() const { return UPoly(coeffs_); }
    /// Inverse of dehomogenize for the given total degree.
    static BinaryForm homogenize(const UPoly& p, int degree)
    {
        if (p.degree() > degree) throw std::invalid_argument("homogenize: degree too small");
        BinaryForm f(degree);
        for (int i = 0; i <= p.degree(); ++i) f.coeffs_[i] = p.coeff(i);
        return f;
    }

    friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b)
    {
        if (a.is_zero() && a.degree_ != b.degree_) return b;
        if (b.is_zero() && a.degree_ != b.degree_) return a;
        if (a.degree_ != b.degree_) throw std::invalid_argument("adding binary forms of different degree");
        BinaryForm c = a;
        for (int i = 0; i <= a.degree_; ++i) c.coeffs_[i] += b.coeffs_[i];
        return c;
    }
    friend BinaryForm operator-(const BinaryForm& a) { return Rational(-1) * a; }
    friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) { return a + (-b); }
    friend BinaryForm operator*(const Rational& k, const BinaryForm& a)
    {
        BinaryForm c = a;
        for (auto& x : c.coeffs_) x *= k;
        return c;
    }
    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b)
    {
        BinaryForm c(a.degree_ + b.degree_);
        for (int i = 0; i <= a.degree_; ++i) {
            if (a.coeffs_[i].is_zero()) continue;
            for (int j = 0; j <= b.degree_; ++j) c.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return c;
    }
    friend bool operator==(const BinaryForm& a, const BinaryForm& b)
    {
        if (a.is_zero() && b.is_zero()) return true;
        return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

    /// Human-readable, e.g. "s^2*t - 3*t^3".
    std::string str() const
    {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (int i = 0; i <= degree_; ++i) {
            Rational c = coeffs_[i];
            if (c.is_zero()) continue;
            const int es = degree_ - i, et = i;
            if (!first) out << (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0) out << "-";
            if (c.sign() < 0) c = -c;
            first = false;
            const bool has_var = es > 0 || et > 0;
            if (c != 1 || !has_var) out << c.str() << (has_var ? "*" : "");
            if (es > 0) out << "s" << (es > 1 ? "^" + std::to_string(es) : "");
            if (es > 0 && et > 0) out << "*";
            if (et > 0) out << "t" << (et > 1 ? "^" + std::to_string(et) : "");
        }
        return out.str();
    }

private:
    static int check_degree(int d)
    {
        if (d < 0) throw std::invalid_argument("negative degree");
        return d;
    }
    static Rational pow(const Rational& x, int e)
    {
        Rational acc = 1;
        for (int i = 0; i < e; ++i) acc *= x;
        return acc;
    }

    int degree_;
    std::vector<Rational> coeffs_;
};

inline BinaryForm pow(const BinaryForm& f, int e)
{
    BinaryForm acc = BinaryForm::constant(Rational(1));
    for (int i = 0; i < e; ++i) acc = acc * f;
    return acc;
}

/// f(a s + b t, c s + d t).
inline BinaryForm substitute(const BinaryForm& f, const Rational& a, const Rational& b, const Rational& c,
                             const Rational& d)
{
    const BinaryForm first = BinaryForm::linear(a, b);
    const BinaryForm second = BinaryForm::linear(c, d);
    BinaryForm out(f.degree());
    for (int i = 0; i <= f.degree(); ++i) {
        if (f[i].is_zero()) continue;
        out = out + f[i] * (pow(first, f.degree() - i) * pow(second, i));
    }
    return out;
}

namespace detail {

/// f = s^a t^b core, where the core has neither s nor t as a factor.
struct StrippedForm {
    int s_pow;
    int t_pow;
    BinaryForm core;
};

inline StrippedForm strip_monomial(const BinaryForm& f)
{
    const int b = f.t_power();
    const int a = f.s_power();
    const int core_deg = f.degree() - a - b;
    std::vector<Rational> c(f.coeffs().begin() + b, f.coeffs().begin() + b + core_deg + 1);
    return {a, b, BinaryForm(core_deg, std::move(c))};
}

} // namespace detail

/// Monic homogeneous gcd. The common s- and t-powers are tracked explicitly and
/// the remaining cores are compared through their dehomogenizations.
inline BinaryForm gcd_binary(const BinaryForm& f, const BinaryForm& g)
{
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd undefined: both forms are zero");
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    const auto sf = detail::strip_monomial(f);
    const auto sg = detail::strip_monomial(g);
    const UPoly core = gcd(sf.core.dehomogenize(), sg.core.dehomogenize());
    const BinaryForm common = BinaryForm::homogenize(core, core.degree());
    return (BinaryForm::monomial(Rational(1), std::min(sf.s_pow, sg.s_pow), std::min(sf.t_pow, sg.t_pow)) * common)
        .monic();
}

/// f / g when g divides f exactly; throws otherwise.
inline BinaryForm divide_exact(const BinaryForm& f, const BinaryForm& g)
{
    if (g.is_zero()) throw std::domain_error("division by the zero form");
    if (f.is_zero()) return BinaryForm(std::max(0, f.degree() - g.degree()));
    if (g.degree() > f.degree()) throw std::domain_error("divide_exact: divisor has larger degree");
    auto [q, r] = divmod(f.dehomogenize(), g.dehomogenize());
    const int qdeg = f.degree() - g.degree();
    if (!r.is_zero() || q.degree() > qdeg) throw std::domain_error("divide_exact: not divisible");
    BinaryForm quotient = BinaryForm::homogenize(q, qdeg);
    if (!(quotient * g == f)) throw std::domain_error("divide_exact: not divisible");
    return quotient;
}

struct SquarefreeDecomposition {
    /// (e_j, j): squarefree, pairwise coprime, monic, ascending multiplicity.
    std::vector<std::pair<BinaryForm, int>> parts;
    Rational unit = 1;

    BinaryForm reconstruct() const
    {
        BinaryForm acc = BinaryForm::constant(unit);
        for (const auto& [e, j] : parts) acc = acc * pow(e, j);
        return acc;
    }
};

/// Yun's algorithm on the dehomogenized core, with the s- and t-power factors
/// attached to their multiplicities separately.
inline SquarefreeDecomposition squarefree_decompose(const BinaryForm& f)
{
    if (f.is_zero()) throw std::invalid_argument("squarefree decomposition of the zero form");
    const auto stripped = detail::strip_monomial(f);
    std::map<int, BinaryForm> by_mult;
    auto attach = [&](const BinaryForm& e, int mult) {
        auto it = by_mult.find(mult);
        if (it == by_mult.end()) by_mult.emplace(mult, e);
        else it->second = it->second * e;
    };
    if (stripped.t_pow > 0) attach(BinaryForm::t(), stripped.t_pow);
    if (stripped.s_pow > 0) attach(BinaryForm::s(), stripped.s_pow);

    const UPoly p = stripped.core.dehomogenize();
    if (p.degree() > 0) {
        const UPoly dp = p.derivative();
        const UPoly b = gcd(p, dp);
        UPoly c = divmod(p, b).first;
        UPoly d = divmod(dp, b).first - c.derivative();
        for (int mult = 1; c.degree() > 0; ++mult) {
            const UPoly a = gcd(c, d);
            if (a.degree() > 0) attach(BinaryForm::homogenize(a, a.degree()), mult);
            c = divmod(c, a).first;
            d = divmod(d, a).first - c.derivative();
        }
    }

    SquarefreeDecomposition out;
    for (auto& [mult, e] : by_mult) out.parts.emplace_back(e.monic(), mult);
    BinaryForm product = BinaryForm::constant(Rational(1));
    for (const auto& [e, j] : out.parts) product = product * pow(e, j);
    out.unit = f[f.t_power()] / product[product.t_power()];
    return out;
}

/// True for the zero form, or when some projective root has multiplicity >= 2.
inline bool has_multiple_root(const BinaryForm& f)
{
    if (f.is_zero()) return true;
    if (f.degree() < 2) return false;
    const auto stripped = detail::strip_monomial(f);
    if (stripped.s_pow >= 2 || stripped.t_pow >= 2) return true;
    const UPoly p = stripped.core.dehomogenize();
    return gcd(p, p.derivative()).degree() > 0;
}

inline bool is_squarefree(const BinaryForm& f) { return !has_multiple_root(f); }

} // namespace rankloci
