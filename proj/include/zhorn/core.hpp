#pragma once

#include <zhorn/language.hpp>
#include <zhorn/presburger.hpp>

#include <string>
#include <vector>

namespace zhorn {

/// psi / lambda: satisfied by a exactly when lambda * a satisfies psi.
/// Linear atoms keep their coefficients and divide the constant (false when
/// lambda does not divide it). A modular atom sum = c mod d with
/// l = gcd(lambda, d) becomes sum = e*c/l mod d/l, e the inverse of lambda/l
/// modulo d/l (false when l does not divide c).
Formula divide_formula(const Formula & psi, const Int & lambda);

/// x -> lambda*x preserves every relation of the language (plus included).
/// For lambda = 0 this asks whether every nonempty relation contains the
/// zero tuple.
bool is_endomorphism(const ConstraintLanguage & language, const Int & lambda, const SatOptions & options = {});

/// x -> lambda*x preserves every relation and its complement.
bool is_self_embedding(const ConstraintLanguage & language, const Int & lambda, const SatOptions & options = {});

struct EndomorphismSample {
    Int bound;
    std::vector<Int> members;  // ascending
    /// Closed form matched by the sample: "Z", "Z\{0}", "{1}", "1+dZ" with d
    /// written out (e.g. "1+2Z"), one of those followed by " and 0" when 0 is
    /// an extra member, or "irregular".
    std::string pattern;
    Int pattern_modulus;  // d for "1+dZ"
};

EndomorphismSample endomorphism_sample(const ConstraintLanguage & language, const Int & bound,
                                       const SatOptions & options = {});

struct CoreResult {
    enum class Kind { OneElement, Core };

    Kind kind = Kind::Core;
    ConstraintLanguage language;  // the reduced language (unchanged for OneElement)
    std::vector<Int> steps;       // the lambdas divided out, in order
    Int scale = 1;                // product of steps
    Int bound;                    // search bound used
    /// Core verdict holds only relative to the search bound.
    bool bound_limited = true;
};

/// Divides out endomorphisms that are not self-embeddings (|lambda| <= bound,
/// tried in the order 2, -2, 3, -3, ...) until none is left, reducing each
/// new definition. Returns OneElement as soon as 0 is an endomorphism.
CoreResult core_reduce(const ConstraintLanguage & language, const Int & bound = 64, const SatOptions & options = {});

} // namespace zhorn
