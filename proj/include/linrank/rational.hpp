#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace linrank {

/// Raised on division by zero.
class ArithmeticError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when vector/matrix operands do not conform.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact rational number, always kept in canonical form
/// (positive denominator, numerator and denominator coprime).
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(v) {}
    Rational(long num, long den);
    explicit Rational(const mpz_class& num, const mpz_class& den = 1);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p" or "p/q" (optional leading sign, no decimals).
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational abs() const;
    Rational inverse() const;

    /// "p/q", or "p" when the denominator is one.
    std::string str() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend auto operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    mpq_class q_;
};

/// Dense vector of rationals with a fixed dimension.
class QVector {
public:
    QVector() = default;
    explicit QVector(std::size_t n) : v_(n) {}
    QVector(std::initializer_list<Rational> init) : v_(init) {}
    explicit QVector(std::vector<Rational> v) : v_(std::move(v)) {}

    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }

    Rational& operator[](std::size_t i) { return v_[i]; }
    const Rational& operator[](std::size_t i) const { return v_[i]; }
    const Rational& at(std::size_t i) const { return v_.at(i); }

    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }
    auto begin() { return v_.begin(); }
    auto end() { return v_.end(); }

    std::span<const Rational> view() const { return v_; }
    const std::vector<Rational>& values() const { return v_; }

    bool is_zero() const;

    QVector& operator+=(const QVector& o);
    QVector& operator-=(const QVector& o);
    QVector& operator*=(const Rational& k);

    friend QVector operator+(QVector a, const QVector& b) { return a += b; }
    friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
    friend QVector operator*(QVector a, const Rational& k) { return a *= k; }
    friend QVector operator*(const Rational& k, QVector a) { return a *= k; }
    friend QVector operator-(QVector a) { return a *= Rational(-1); }

    friend bool operator==(const QVector&, const QVector&) = default;

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const QVector& v);

private:
    std::vector<Rational> v_;
};

Rational dot(const QVector& a, const QVector& b);
/// Concatenation ⟨a, b⟩.
QVector concat(const QVector& a, const QVector& b);
/// The `count` entries starting at `from`.
QVector slice(const QVector& v, std::size_t from, std::size_t count);

/// Row-major dense matrix of rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<Rational>> init);

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    QVector row(std::size_t r) const;
    QVector col(std::size_t c) const;

    friend bool operator==(const QMatrix&, const QMatrix&) = default;
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend std::ostream& operator<<(std::ostream& os, const QMatrix& m);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

/// M · v
QVector mat_vec(const QMatrix& m, const QVector& v);
/// vᵀ · M, i.e. a linear combination of the rows of M.
QVector vec_mat(const QVector& v, const QMatrix& m);
QMatrix transpose(const QMatrix& m);

} // namespace linrank
