#pragma once

// Exact integer power series and polynomials. Every generating function in the
// combinatorics modules is built on these two types.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wulff/core/errors.hpp"

namespace wulff {

using BigInt = boost::multiprecision::cpp_int;

/// Power series c_0 + c_1 x + ... + c_D x^D with arbitrary-precision coefficients.
/// Products and quotients are truncated at the smaller of the operand degrees.
class TruncatedIntSeries {
public:
    explicit TruncatedIntSeries(int degree) : coeffs_(static_cast<std::size_t>(check_degree(degree)) + 1) {}

    TruncatedIntSeries(int degree, std::initializer_list<long long> prefix) : TruncatedIntSeries(degree) {
        std::size_t k = 0;
        for (long long c : prefix) {
            if (k >= coeffs_.size()) break;
            coeffs_[k++] = c;
        }
    }

    TruncatedIntSeries(int degree, const std::vector<BigInt>& prefix) : TruncatedIntSeries(degree) {
        for (std::size_t k = 0; k < prefix.size() && k < coeffs_.size(); ++k) coeffs_[k] = prefix[k];
    }

    static TruncatedIntSeries one(int degree) {
        TruncatedIntSeries s(degree);
        s.coeffs_[0] = 1;
        return s;
    }

    /// 1 / (1 - x^step)
    static TruncatedIntSeries geometric(int step, int degree) {
        if (step < 1) throw InvalidParameter("geometric series step must be >= 1");
        TruncatedIntSeries s(degree);
        for (int k = 0; k <= degree; k += step) s.coeffs_[static_cast<std::size_t>(k)] = 1;
        return s;
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    BigInt& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    TruncatedIntSeries truncated(int degree) const {
        TruncatedIntSeries s(std::min(degree, this->degree()));
        std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
        return s;
    }

    /// In-place multiplication by (1 - x^step).
    TruncatedIntSeries& mul_one_minus_x_pow(int step) {
        if (step < 1) throw InvalidParameter("step must be >= 1");
        for (int k = degree(); k >= step; --k) coeffs_[k] -= coeffs_[k - step];
        return *this;
    }

    /// In-place division by (1 - x^step), i.e. multiplication by 1/(1 - x^step).
    TruncatedIntSeries& div_one_minus_x_pow(int step) {
        if (step < 1) throw InvalidParameter("step must be >= 1");
        for (int k = step; k <= degree(); ++k) coeffs_[k] += coeffs_[k - step];
        return *this;
    }

    /// In-place multiplication by x^shift (coefficients pushed past the degree are dropped).
    TruncatedIntSeries& shift(int shift) {
        if (shift <= 0) return *this;
        for (int k = degree(); k >= 0; --k) coeffs_[k] = k >= shift ? coeffs_[k - shift] : BigInt(0);
        return *this;
    }

    TruncatedIntSeries& operator+=(const TruncatedIntSeries& o) {
        resize_to_min(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }

    TruncatedIntSeries& operator-=(const TruncatedIntSeries& o) {
        resize_to_min(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }

    friend TruncatedIntSeries operator+(TruncatedIntSeries a, const TruncatedIntSeries& b) { return a += b; }
    friend TruncatedIntSeries operator-(TruncatedIntSeries a, const TruncatedIntSeries& b) { return a -= b; }

    friend TruncatedIntSeries operator*(const TruncatedIntSeries& a, const TruncatedIntSeries& b) {
        const int d = std::min(a.degree(), b.degree());
        TruncatedIntSeries out(d);
        for (int i = 0; i <= d; ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (int j = 0; i + j <= d; ++j) {
                if (b.coeffs_[j] != 0) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return out;
    }

    bool operator==(const TruncatedIntSeries&) const = default;

private:
    static int check_degree(int degree) {
        if (degree < 0) throw InvalidParameter("series degree must be >= 0");
        return degree;
    }

    void resize_to_min(const TruncatedIntSeries& o) {
        if (o.coeffs_.size() < coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    }

    std::vector<BigInt> coeffs_;
};

/// Quotient a / b as power series. Requires b_0 = +-1 so the result stays integral.
inline TruncatedIntSeries series_div(const TruncatedIntSeries& a, const TruncatedIntSeries& b) {
    if (b[0] != 1 && b[0] != -1) throw InvalidParameter("series division needs a unit constant term");
    const int d = std::min(a.degree(), b.degree());
    TruncatedIntSeries q(d);
    for (int k = 0; k <= d; ++k) {
        BigInt acc = a[k];
        for (int j = 1; j <= k; ++j) {
            if (b[j] != 0) acc -= b[j] * q[k - j];
        }
        q[k] = b[0] == 1 ? acc : BigInt(-acc);
    }
    return q;
}

/// Dense integer polynomial, trimmed so the leading coefficient is nonzero (zero polynomial is empty).
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<long long> coeffs) {
        for (long long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }
    explicit Polynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(int power, BigInt c = 1) {
        std::vector<BigInt> v(static_cast<std::size_t>(power) + 1);
        v.back() = std::move(c);
        return Polynomial(std::move(v));
    }

    /// prod_{l in steps} (1 - x^l)
    static Polynomial product_one_minus(const std::vector<int>& steps) {
        Polynomial p{1};
        for (int l : steps) p = p * Polynomial::one_minus_x_pow(l);
        return p;
    }

    static Polynomial one_minus_x_pow(int step) {
        if (step < 1) throw InvalidParameter("step must be >= 1");
        std::vector<BigInt> v(static_cast<std::size_t>(step) + 1);
        v[0] = 1;
        v.back() = -1;
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    BigInt coeff(int k) const {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(k)] : BigInt(0);
    }

    BigInt value_at_one() const {
        BigInt s = 0;
        for (const auto& c : coeffs_) s += c;
        return s;
    }

    bool has_nonnegative_coefficients() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c >= 0; });
    }

    bool is_palindromic() const {
        for (std::size_t i = 0, j = coeffs_.size(); i < j; ++i) {
            if (coeffs_[i] != coeffs_[--j]) return false;
        }
        return true;
    }

    TruncatedIntSeries as_series(int degree) const { return TruncatedIntSeries(degree, coeffs_); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Polynomial(std::move(v));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return Polynomial(std::move(v));
    }

    bool operator==(const Polynomial&) const = default;

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const BigInt& c = coeffs_[k];
            if (c == 0) continue;
            const bool neg = c < 0;
            BigInt mag = neg ? BigInt(-c) : c;
            if (out.empty()) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            if (mag != 1 || k == 0) out += mag.str();
            if (k >= 1) out += "x";
            if (k >= 2) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

struct PolyDivision {
    Polynomial quotient;
    Polynomial remainder;

    bool exact() const { return remainder.is_zero(); }
};

/// Long division a = q*b + r with deg r < deg b. The divisor must be monic up to sign;
/// an inexact division shows up as a nonzero remainder.
inline PolyDivision poly_divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw InvalidParameter("polynomial division by zero");
    const BigInt lead = b.coeffs().back();
    if (lead != 1 && lead != -1) throw InvalidParameter("polynomial division needs a leading coefficient of +-1");
    std::vector<BigInt> rem = a.coeffs();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) return {Polynomial{}, a};
    std::vector<BigInt> quot(static_cast<std::size_t>(da - db) + 1);
    for (int k = da; k >= db; --k) {
        BigInt c = rem[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        if (lead == -1) c = -c;
        quot[static_cast<std::size_t>(k - db)] = c;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

}  // namespace wulff
