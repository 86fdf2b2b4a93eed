#pragma once

// Homogeneous forms in n variables, stored as exponent vector -> coefficient.
// The same type represents differential operators in the dual variables.

#include "rankloci/matrix.hpp"
#include "rankloci/rational.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankloci {

using Exponent = std::vector<int>;

/// All exponent vectors of length n summing to d, x1^d first (lexicographically descending).
inline std::vector<Exponent> monomials(int n, int d)
{
    std::vector<Exponent> out;
    if (n <= 0) return out;
    Exponent e(n, 0);
    std::function<void(int, int)> fill = [&](int pos, int left) {
        if (pos == n - 1) {
            e[pos] = left;
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[pos] = k;
            fill(pos + 1, left - k);
        }
    };
    fill(0, d);
    return out;
}

class MultiForm {
public:
    MultiForm() = default;
    MultiForm(int num_vars, int degree) : n_(num_vars), d_(degree)
    {
        if (num_vars < 1) throw std::invalid_argument("a form needs at least one variable");
        if (degree < 0) throw std::invalid_argument("negative degree");
    }

    static MultiForm variable(int num_vars, int index, const Rational& coeff = Rational(1))
    {
        MultiForm f(num_vars, 1);
        Exponent e(num_vars, 0);
        e.at(index) = 1;
        f.add_term(e, coeff);
        return f;
    }
    static MultiForm linear(const std::vector<Rational>& coeffs)
    {
        MultiForm f(static_cast<int>(coeffs.size()), 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            Exponent e(coeffs.size(), 0);
            e[i] = 1;
            f.add_term(e, coeffs[i]);
        }
        return f;
    }
    static MultiForm constant(int num_vars, const Rational& c)
    {
        MultiForm f(num_vars, 0);
        f.add_term(Exponent(num_vars, 0), c);
        return f;
    }

    int num_vars() const { return n_; }
    int degree() const { return d_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c * x^e; zero sums are dropped.
    void add_term(const Exponent& e, const Rational& c)
    {
        if (static_cast<int>(e.size()) != n_) throw std::invalid_argument("exponent length differs from variable count");
        int total = 0;
        for (int k : e) {
            if (k < 0) throw std::invalid_argument("negative exponent");
            total += k;
        }
        if (total != d_) throw std::invalid_argument("exponent does not sum to the form degree");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Coefficient vector over monomials(n, d).
    std::vector<Rational> dense() const
    {
        std::vector<Rational> out;
        for (const auto& e : monomials(n_, d_)) out.push_back(coefficient(e));
        return out;
    }

    friend MultiForm operator+(const MultiForm& a, const MultiForm& b)
    {
        check_compatible(a, b);
        MultiForm c = a;
        for (const auto& [e, v] : b.terms_) c.add_term(e, v);
        return c;
    }
    friend MultiForm operator-(const MultiForm& a) { return Rational(-1) * a; }
    friend MultiForm operator-(const MultiForm& a, const MultiForm& b) { return a + (-b); }
    friend MultiForm operator*(const Rational& k, const MultiForm& a)
    {
        MultiForm c(a.n_, a.d_);
        if (k.is_zero()) return c;
        c.terms_ = a.terms_;
        for (auto& [e, v] : c.terms_) v *= k;
        return c;
    }
    friend MultiForm operator*(const MultiForm& a, const MultiForm& b)
    {
        if (a.n_ != b.n_) throw std::invalid_argument("multiplying forms in different numbers of variables");
        MultiForm c(a.n_, a.d_ + b.d_);
        Exponent e(a.n_);
        for (const auto& [ea, va] : a.terms_)
            for (const auto& [eb, vb] : b.terms_) {
                for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
                c.add_term(e, va * vb);
            }
        return c;
    }
    friend bool operator==(const MultiForm& a, const MultiForm& b)
    {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.terms_ == b.terms_;
    }

    MultiForm partial(int var) const
    {
        if (d_ == 0) return MultiForm(n_, 0);
        MultiForm out(n_, d_ - 1);
        for (const auto& [e, v] : terms_) {
            if (e[var] == 0) continue;
            Exponent f = e;
            --f[var];
            out.add_term(f, v * Rational(e[var]));
        }
        return out;
    }

    /// F(A x): variable i becomes sum_j A(i, j) x_j. A may be rectangular
    /// (n rows), giving a form in A.cols() variables.
    MultiForm substitute(const QMatrix& a) const
    {
        if (static_cast<int>(a.rows()) != n_) throw std::invalid_argument("substitution matrix needs one row per variable");
        const int m = static_cast<int>(a.cols());
        std::vector<std::vector<MultiForm>> powers(n_);
        for (int i = 0; i < n_; ++i) {
            std::vector<Rational> row(m);
            for (int j = 0; j < m; ++j) row[j] = a(i, j);
            const MultiForm lin = MultiForm::linear(row);
            powers[i].push_back(MultiForm::constant(m, Rational(1)));
            for (int k = 1; k <= d_; ++k) powers[i].push_back(powers[i].back() * lin);
        }
        MultiForm out(m, d_);
        for (const auto& [e, v] : terms_) {
            MultiForm term = MultiForm::constant(m, v);
            for (int i = 0; i < n_; ++i)
                if (e[i] > 0) term = term * powers[i][e[i]];
            out = out + term;
        }
        return out;
    }

    std::string str() const
    {
        if (is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            if (!first) out << (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0) out << "-";
            if (c.sign() < 0) c = -c;
            first = false;
            bool any_var = false;
            std::ostringstream vars;
            for (int i = 0; i < n_; ++i) {
                if (it->first[i] == 0) continue;
                vars << (any_var ? "*" : "") << "x" << (i + 1);
                if (it->first[i] > 1) vars << "^" << it->first[i];
                any_var = true;
            }
            if (c != 1 || !any_var) out << c.str() << (any_var ? "*" : "");
            out << vars.str();
        }
        return out.str();
    }

private:
    static void check_compatible(const MultiForm& a, const MultiForm& b)
    {
        if (a.n_ != b.n_ || a.d_ != b.d_)
            throw std::invalid_argument("forms differ in variable count or degree");
    }

    int n_ = 1;
    int d_ = 0;
    std::map<Exponent, Rational> terms_;
};

inline MultiForm pow(const MultiForm& f, int e)
{
    MultiForm acc = MultiForm::constant(f.num_vars(), Rational(1));
    for (int i = 0; i < e; ++i) acc = acc * f;
    return acc;
}

/// Theta _| F: alpha^a acting on x^b gives prod b_i!/(b_i-a_i)! x^(b-a), or 0.
inline MultiForm apolar_apply(const MultiForm& theta, const MultiForm& f)
{
    if (theta.num_vars() != f.num_vars()) throw std::invalid_argument("operator and form differ in variable count");
    if (theta.degree() > f.degree()) throw std::invalid_argument("operator degree exceeds form degree");
    const int n = f.num_vars();
    MultiForm out(n, f.degree() - theta.degree());
    Exponent e(n);
    for (const auto& [a, ca] : theta.terms())
        for (const auto& [b, cb] : f.terms()) {
            Rational scale = ca * cb;
            bool vanishes = false;
            for (int i = 0; i < n && !vanishes; ++i) {
                if (b[i] < a[i]) vanishes = true;
                else {
                    scale *= falling_factorial(b[i], a[i]);
                    e[i] = b[i] - a[i];
                }
            }
            if (!vanishes) out.add_term(e, scale);
        }
    return out;
}

} // namespace rankloci
