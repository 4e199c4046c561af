#include "metricgroup/qmodz.hpp"

#include <numeric>

namespace mg {

namespace {

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw TooLarge("QmodZ arithmetic overflow");
    return r;
}

} // namespace

QmodZ::QmodZ(long long num, long long den) {
    if (den == 0) throw Error("QmodZ: zero denominator");
    if (den < 0) { den = -den; num = -num; }
    num %= den;
    if (num < 0) num += den;
    long long g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (num_ == 0) den_ = 1;
}

QmodZ QmodZ::operator+(const QmodZ& o) const {
    long long g = std::gcd(den_, o.den_);
    long long d = checked_mul(den_ / g, o.den_);
    long long n = checked_mul(num_, o.den_ / g);
    long long m = checked_mul(o.num_, den_ / g);
    if (__builtin_add_overflow(n, m, &n)) throw TooLarge("QmodZ arithmetic overflow");
    return QmodZ(n, d);
}

QmodZ QmodZ::operator-(const QmodZ& o) const { return *this + (-o); }

QmodZ QmodZ::operator-() const { return QmodZ(den_ - num_, den_); }

QmodZ QmodZ::times(long long k) const {
    long long kk = k % den_;
    return QmodZ(checked_mul(num_, kk), den_);
}

bool QmodZ::operator<(const QmodZ& o) const {
    // num_/den_ < o.num_/o.den_  <=>  num_*o.den_ < o.num_*den_
    return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

std::string QmodZ::str() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
}

QmodZ QmodZ::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return QmodZ(std::stoll(s), 1);
        long long n = std::stoll(s.substr(0, slash));
        long long d = std::stoll(s.substr(slash + 1));
        return QmodZ(n, d);
    } catch (const std::logic_error&) {
        throw Error("QmodZ: cannot parse '" + s + "'");
    }
}

long long denominator_lcm(const std::vector<QmodZ>& vals) {
    long long l = 1;
    for (const auto& v : vals) {
        long long g = std::gcd(l, v.den());
        long long q = v.den() / g;
        if (__builtin_mul_overflow(l, q, &l)) throw TooLarge("denominator lcm overflow");
    }
    return l;
}

} // namespace mg
