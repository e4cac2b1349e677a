#include "fpt/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace fpt {

namespace {

Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

}  // namespace

bool is_squarefree(long m) {
    if (m < 2) return false;
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

Scalar::Scalar(Rat a, Rat b, long m) : a_(std::move(a)), b_(std::move(b)), m_(m) {
    if (b_ != 0 && !is_squarefree(m_))
        throw Error("bad-radicand: radicand must be squarefree and >= 2, got " + std::to_string(m_));
    normalize();
}

void Scalar::normalize() {
    if (b_ == 0) m_ = 0;
}

long Scalar::merge_radicand(const Scalar& x, const Scalar& y) {
    if (x.m_ == 0) return y.m_;
    if (y.m_ == 0 || y.m_ == x.m_) return x.m_;
    throw Error("radicand-mismatch: sqrt(" + std::to_string(x.m_) + ") vs sqrt(" +
                std::to_string(y.m_) + ")");
}

bool Scalar::is_integer() const { return b_ == 0 && rat_den(a_) == 1; }

const Rat& Scalar::as_rational() const {
    if (b_ != 0) throw Error("irrational-value: expected a rational scalar, got " + str());
    return a_;
}

Int Scalar::as_integer() const {
    if (!is_integer()) throw Error("non-integer-value: expected an integer scalar, got " + str());
    return rat_num(a_);
}

int Scalar::sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against m*b^2 exactly.
    Rat a2 = a_ * a_;
    Rat mb2 = b_ * b_ * Rat(m_);
    if (a2 == mb2) return 0;  // impossible for squarefree m, kept for totality
    return a2 > mb2 ? sa : sb;
}

double Scalar::to_double() const {
    double v = a_.convert_to<double>();
    if (b_ != 0) v += b_.convert_to<double>() * std::sqrt(static_cast<double>(m_));
    return v;
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    m_ = merge_radicand(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    m_ = merge_radicand(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    long m = merge_radicand(*this, o);
    Rat a = a_ * o.a_ + b_ * o.b_ * Rat(m);
    Rat b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    m_ = m;
    normalize();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division-by-zero");
    if (b_ == 0) {
        Scalar r;
        r.a_ = Rat(1) / a_;
        return r;
    }
    // 1/(a+b*sqrt(m)) = (a-b*sqrt(m)) / (a^2 - m b^2); denominator nonzero
    // because sqrt(m) is irrational.
    Rat den = a_ * a_ - b_ * b_ * Rat(m_);
    Scalar r;
    r.a_ = a_ / den;
    r.b_ = -b_ / den;
    r.m_ = m_;
    r.normalize();
    return r;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

int scalar_sign(const Scalar& x) { return x.sign(); }

Int scalar_ceil(const Scalar& x) {
    if (x.is_rational()) {
        Int n = rat_num(x.as_rational()), d = rat_den(x.as_rational());
        Int q = n / d;
        if (q * d < n) ++q;
        return q;
    }
    // Bracket by integers using exact comparisons.
    Int lo(-1), hi(1);
    while (Scalar(hi) < x) hi *= 2;
    while (x <= Scalar(lo)) lo *= 2;
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (x <= Scalar(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (rat_den(r) != 1) os << '/' << rat_den(r);
    return os.str();
}

// Parses [-]digits[/digits] starting at pos; advances pos.
Rat parse_rat(const std::string& s, size_t& pos) {
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
        neg = (s[pos] == '-');
        ++pos;
    }
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw Error("scalar-syntax: expected number in '" + s + "'");
    Int num(s.substr(digits, pos - digits));
    if (neg) num = -num;
    Int den(1);
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        size_t dstart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == dstart) throw Error("scalar-syntax: expected denominator in '" + s + "'");
        den = Int(s.substr(dstart, pos - dstart));
        if (den == 0) throw Error("scalar-syntax: zero denominator in '" + s + "'");
    }
    return Rat(num, den);
}

}  // namespace

std::string Scalar::str() const {
    std::string out = rat_str(a_);
    if (b_ != 0) {
        if (b_ > 0) out += '+';
        out += rat_str(b_) + "*sqrt(" + std::to_string(m_) + ")";
    }
    return out;
}

Scalar Scalar::parse(const std::string& text) {
    size_t pos = 0;
    Rat a = parse_rat(text, pos);
    if (pos == text.size()) return Scalar(a);
    if (text[pos] != '+' && text[pos] != '-')
        throw Error("scalar-syntax: unexpected character in '" + text + "'");
    Rat b = parse_rat(text, pos);
    if (text.compare(pos, 6, "*sqrt(") != 0)
        throw Error("scalar-syntax: expected '*sqrt(' in '" + text + "'");
    pos += 6;
    size_t mstart = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == mstart || pos >= text.size() || text[pos] != ')')
        throw Error("scalar-syntax: malformed radicand in '" + text + "'");
    long m = std::stol(text.substr(mstart, pos - mstart));
    ++pos;
    if (pos != text.size()) throw Error("scalar-syntax: trailing characters in '" + text + "'");
    return Scalar(a, b, m);
}

std::string to_string(const Scalar& x) { return x.str(); }

}  // namespace fpt
