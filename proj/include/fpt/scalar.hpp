#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace fpt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Base class for all library errors. The message starts with a short
/// machine-readable reason code, e.g. "radicand-mismatch: ...".
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An exact element of Q or of a fixed real quadratic field Q(sqrt(m)).
///
/// Stored as a + b*sqrt(m) with a, b reduced rationals. The radicand m is
/// squarefree and >= 2; a pure rational canonically carries m == 0 and
/// b == 0. Mixing two distinct radicands in one operation throws.
class Scalar {
  public:
    Scalar() : a_(0), b_(0), m_(0) {}
    Scalar(int v) : a_(v), b_(0), m_(0) {}
    Scalar(long v) : a_(v), b_(0), m_(0) {}
    Scalar(Int v) : a_(std::move(v)), b_(0), m_(0) {}
    Scalar(Rat a) : a_(std::move(a)), b_(0), m_(0) {}
    Scalar(Rat a, Rat b, long m);

    static Scalar sqrt_of(long m) { return Scalar(Rat(0), Rat(1), m); }

    const Rat& rational_part() const { return a_; }
    const Rat& radical_part() const { return b_; }
    long radicand() const { return m_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_integer() const;

    /// The rational value; throws if the radical part is nonzero.
    const Rat& as_rational() const;
    /// The integer value; throws unless the value is a rational integer.
    Int as_integer() const;

    /// Exact sign in {-1, 0, +1}, decided by integer arithmetic only.
    int sign() const;

    double to_double() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.m_ == y.m_;
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
    friend bool operator<(const Scalar& x, const Scalar& y) { return (x - y).sign() < 0; }
    friend bool operator>(const Scalar& x, const Scalar& y) { return y < x; }
    friend bool operator<=(const Scalar& x, const Scalar& y) { return !(y < x); }
    friend bool operator>=(const Scalar& x, const Scalar& y) { return !(x < y); }

    Scalar abs() const { return sign() < 0 ? -*this : *this; }
    Scalar inverse() const;

    /// Bit-exact textual form: `p/q` or `p/q+r/s*sqrt(m)` (denominator 1
    /// omitted, negative radical part rendered with `-`).
    std::string str() const;
    static Scalar parse(const std::string& text);

  private:
    void normalize();
    static long merge_radicand(const Scalar& x, const Scalar& y);

    Rat a_, b_;
    long m_;
};

using ScalarVec = std::vector<Scalar>;
using ScalarMat = std::vector<ScalarVec>;

int scalar_sign(const Scalar& x);

bool is_squarefree(long m);

/// Least integer >= x (exact).
Int scalar_ceil(const Scalar& x);

std::string to_string(const Scalar& x);

}  // namespace fpt
