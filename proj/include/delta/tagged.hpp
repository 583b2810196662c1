#pragma once
// Scalar that may be undefined (no data, e.g. t_i = 0) or singular (formula
// evaluated outside its domain, e.g. X = 1 in a variance denominator).
// Reports render the two tags as "n/a" and "singular"; they are never
// silently replaced by a number.

#include <cmath>
#include <cstdio>
#include <string>

namespace delta {

enum class ValueTag { Finite, Undefined, Singular };

struct Tagged {
    double value = 0.0;
    ValueTag tag = ValueTag::Finite;

    static Tagged finite(double v) { return {v, ValueTag::Finite}; }
    static Tagged undefined() { return {std::nan(""), ValueTag::Undefined}; }
    // A singular tag may carry the raw (blown-up) value for diagnostics.
    static Tagged singular(double raw = std::nan("")) { return {raw, ValueTag::Singular}; }

    bool is_finite() const { return tag == ValueTag::Finite; }

    std::string to_string(int decimals = 3) const {
        if (tag == ValueTag::Undefined) return "n/a";
        if (tag == ValueTag::Singular) return "singular";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
        return buf;
    }
};

// Wraps a computed variance: non-finite or negative results mean the plug-in
// formula left its validity domain and are tagged singular instead of being
// reported as a (meaningless) negative variance.
inline Tagged guard_variance(double v) {
    if (!std::isfinite(v) || v < 0.0) return Tagged::singular(v);
    return Tagged::finite(v);
}

}  // namespace delta
