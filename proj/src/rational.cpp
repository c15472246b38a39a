#include "linrank/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace linrank {

Rational::Rational(long num, long den) {
    if (den == 0)
        throw ArithmeticError("rational with zero denominator");
    q_ = mpq_class(mpz_class(num), mpz_class(den));
    q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0)
        throw ArithmeticError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (negative)
        n = -n;
    return Rational(n, d);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::inverse() const {
    if (is_zero())
        throw ArithmeticError("inverse of zero");
    return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw ArithmeticError("division by zero");
    q_ /= o.q_;
    return *this;
}

std::string Rational::str() const {
    if (is_integer())
        return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

bool QVector::is_zero() const {
    for (const auto& x : v_)
        if (!x.is_zero())
            return false;
    return true;
}

QVector& QVector::operator+=(const QVector& o) {
    if (o.size() != size())
        throw DimensionError("vector sizes differ");
    for (std::size_t i = 0; i < v_.size(); ++i)
        v_[i] += o.v_[i];
    return *this;
}

QVector& QVector::operator-=(const QVector& o) {
    if (o.size() != size())
        throw DimensionError("vector sizes differ");
    for (std::size_t i = 0; i < v_.size(); ++i)
        v_[i] -= o.v_[i];
    return *this;
}

QVector& QVector::operator*=(const Rational& k) {
    for (auto& x : v_)
        x *= k;
    return *this;
}

std::string QVector::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QVector& v) {
    os << '<';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i];
    return os << '>';
}

Rational dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size())
        throw DimensionError("dot: vector sizes differ");
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero())
            s += a[i] * b[i];
    return s;
}

QVector concat(const QVector& a, const QVector& b) {
    std::vector<Rational> v(a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    return QVector(std::move(v));
}

QVector slice(const QVector& v, std::size_t from, std::size_t count) {
    if (from + count > v.size())
        throw DimensionError("slice: range exceeds the vector");
    QVector out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = v[from + i];
    return out;
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    a_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_)
            throw DimensionError("ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DimensionError("row length differs from column count");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

QVector QMatrix::row(std::size_t r) const {
    if (r >= rows_)
        throw DimensionError("row index out of range");
    return QVector(std::vector<Rational>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_));
}

QVector QMatrix::col(std::size_t c) const {
    if (c >= cols_)
        throw DimensionError("column index out of range");
    QVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix sum: shapes differ");
    QMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.a_.size(); ++i)
        m.a_[i] = a.a_[i] + b.a_[i];
    return m;
}

std::ostream& operator<<(std::ostream& os, const QMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r)
        os << (r ? ", " : "") << m.row(r);
    return os << ']';
}

QVector mat_vec(const QMatrix& m, const QVector& v) {
    if (m.cols() != v.size())
        throw DimensionError("mat_vec: column count differs from vector size");
    QVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero() && !v[c].is_zero())
                out[r] += m(r, c) * v[c];
    return out;
}

QVector vec_mat(const QVector& v, const QMatrix& m) {
    if (m.rows() != v.size())
        throw DimensionError("vec_mat: row count differs from vector size");
    QVector out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (v[r].is_zero())
            continue;
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m(r, c).is_zero())
                out[c] += v[r] * m(r, c);
    }
    return out;
}

QMatrix transpose(const QMatrix& m) {
    QMatrix t(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            t(c, r) = m(r, c);
    return t;
}

} // namespace linrank
