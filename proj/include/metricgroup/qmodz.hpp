#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "metricgroup/errors.hpp"

namespace mg {

// Exact rational in Q/Z: reduced fraction num/den with 0 <= num < den.
// All desk-scale denominators fit comfortably in 64 bits; arithmetic checks
// for overflow and throws TooLarge rather than wrapping.
class QmodZ {
public:
    QmodZ() = default;
    QmodZ(long long num, long long den);

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    // additive order in Q/Z
    long long order() const { return den_; }

    QmodZ operator+(const QmodZ& o) const;
    QmodZ operator-(const QmodZ& o) const;
    QmodZ operator-() const;
    QmodZ times(long long k) const;

    bool operator==(const QmodZ& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QmodZ& o) const { return !(*this == o); }
    bool operator<(const QmodZ& o) const; // compare as rationals in [0,1)

    double to_double() const { return double(num_) / double(den_); }
    std::string str() const; // "0" or "a/b"

    static QmodZ parse(const std::string& s);

private:
    long long num_ = 0;
    long long den_ = 1;
};

// lcm of the denominators of a list of values (1 for the empty list)
long long denominator_lcm(const std::vector<QmodZ>& vals);

} // namespace mg

template <>
struct std::hash<mg::QmodZ> {
    size_t operator()(const mg::QmodZ& q) const {
        return std::hash<long long>()(q.num()) * 1000003u ^ std::hash<long long>()(q.den());
    }
};
