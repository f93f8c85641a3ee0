#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zhorn {

/// Arbitrary-precision integer used for every coefficient, constant and
/// modulus in the library.
using Int = mpz_class;
using IntVector = std::vector<Int>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a caller-supplied argument violates an operation's contract.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Remainder in [0, |m|).
Int floor_mod(const Int & a, const Int & m);

/// Quotient rounding towards negative infinity.
Int floor_div(const Int & a, const Int & b);

Int gcd(const Int & a, const Int & b);
Int lcm(const Int & a, const Int & b);

struct ExtendedGcd {
    Int g;  // non-negative
    Int s;
    Int t;  // s*a + t*b == g
};
ExtendedGcd extended_gcd(const Int & a, const Int & b);

/// Inverse of a modulo m (m >= 1), or nullopt when gcd(a, m) != 1.
/// Modulo 1 the inverse is 0.
std::optional<Int> mod_inverse(const Int & a, const Int & m);

bool divides(const Int & d, const Int & n);

/// a^e for a small non-negative exponent.
Int power(const Int & a, unsigned long e);

std::string to_string(const Int & v);

/// Parses an optionally signed decimal literal; throws InvalidArgument.
Int parse_int(std::string_view text);

/// Returns the value as int64 when it fits.
std::optional<std::int64_t> to_int64(const Int & v);

} // namespace zhorn
