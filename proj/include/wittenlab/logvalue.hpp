#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wittenlab {

// Signed magnitude carried in log form, so products like e^{-2*100/0.001}
// stay representable.  to_double() may underflow to 0; the log form is the
// authoritative value.
struct LogValue {
    double log_mag = -std::numeric_limits<double>::infinity();
    int sign = 0;  // -1, 0, +1

    LogValue() = default;
    LogValue(double lm, int s) : log_mag(lm), sign(s) {
        if (s == 0) log_mag = -std::numeric_limits<double>::infinity();
    }

    static LogValue zero() { return LogValue(); }
    static LogValue one() { return LogValue(0.0, 1); }

    static LogValue from_double(double x) {
        if (x == 0.0) return zero();
        return LogValue(std::log(std::fabs(x)), x > 0 ? 1 : -1);
    }
    static LogValue exp_of(double e) { return LogValue(e, 1); }

    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(log_mag);
    }
    bool is_zero() const { return sign == 0; }

    LogValue operator*(const LogValue& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return LogValue(log_mag + o.log_mag, sign * o.sign);
    }
    LogValue operator/(const LogValue& o) const {
        if (o.sign == 0) throw std::domain_error("LogValue: division by zero");
        if (sign == 0) return zero();
        return LogValue(log_mag - o.log_mag, sign * o.sign);
    }
    LogValue operator+(const LogValue& o) const {
        if (sign == 0) return o;
        if (o.sign == 0) return *this;
        const LogValue& big = (log_mag >= o.log_mag) ? *this : o;
        const LogValue& sml = (log_mag >= o.log_mag) ? o : *this;
        double r = std::exp(sml.log_mag - big.log_mag);  // in (0,1]
        double t = (big.sign == sml.sign) ? 1.0 + r : 1.0 - r;
        if (t == 0.0) return zero();
        return LogValue(big.log_mag + std::log(std::fabs(t)),
                        t > 0 ? big.sign : -big.sign);
    }
    LogValue operator-(const LogValue& o) const {
        return *this + LogValue(o.log_mag, -o.sign);
    }

    LogValue pow(double e) const {
        if (sign == 0) return zero();
        if (sign < 0) throw std::domain_error("LogValue: pow of negative value");
        return LogValue(log_mag * e, 1);
    }
    LogValue sqrt() const { return pow(0.5); }

    // magnitude comparison
    bool mag_less(const LogValue& o) const {
        if (sign == 0) return o.sign != 0;
        if (o.sign == 0) return false;
        return log_mag < o.log_mag;
    }
};

inline LogValue log_mul(double a, const LogValue& v) {
    return LogValue::from_double(a) * v;
}

}  // namespace wittenlab
