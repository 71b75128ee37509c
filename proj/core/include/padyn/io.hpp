#pragma once

#include <cstdint>
#include <string>

#include "padyn/disk.hpp"
#include "padyn/padic.hpp"
#include "padyn/polynomial.hpp"
#include "padyn/radius.hpp"

namespace padyn {

// Textual p-adic literals: "a/b" (rational, also plain integers) or
// "d0.d1.d2...*p^v" (little-endian base-p digits with explicit valuation).
PadicNumber parse_padic_literal(const std::string& text, int64_t prime,
                                int64_t rel_precision = kDefaultRelPrecision);

// Radius literals "p^q" with rational q ("3^-2", "3^1/2"), or "0".
Radius parse_radius_literal(const std::string& text, int64_t prime);

// "c0 + c1*z + ... + cd*z^d"; coefficients are p-adic literals.
Polynomial parse_polynomial(const std::string& text, int64_t prime,
                            int64_t rel_precision = kDefaultRelPrecision +
                                                    kGuardDigits);

// "disks:[(center, p^q), ...]" or "sphere:p^q".
Region parse_region(const std::string& text, int64_t prime,
                    int64_t rel_precision = kDefaultRelPrecision + kGuardDigits);

}  // namespace padyn
