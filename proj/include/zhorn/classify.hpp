#pragma once

#include <zhorn/core.hpp>
#include <zhorn/language.hpp>
#include <zhorn/periodic_set.hpp>
#include <zhorn/presburger.hpp>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace zhorn {

/// Relations of the language read modulo d: a residue tuple belongs to the
/// quotient relation when (q*d + a_1, ..., q*d + a_k) is in the relation for
/// some integer q.
struct QuotientStructure {
    Int modulus;
    std::map<std::string, std::vector<IntVector>> relations;  // tuples sorted lexicographically
};

std::vector<IntVector> quotient_relation(const Formula & definition, const Int & d, const SatOptions & options = {});
std::vector<IntVector> quotient_relation_parallel(const Formula & definition, const Int & d,
                                                  const SatOptions & options = {});

/// Quotient of every relation, plus included.
QuotientStructure quotient(const ConstraintLanguage & language, const Int & d, const SatOptions & options = {},
                           bool parallel = true);

struct MaltsevResult {
    bool pass = true;
    std::array<IntVector, 3> witness;  // a, b, c with a - b + c outside the relation
    IntVector image;
};

/// Closure of a relation over Z/dZ under (a, b, c) -> a - b + c. Passes
/// exactly when a nonempty relation is a coset of a subgroup of (Z/dZ)^k;
/// the empty relation passes vacuously.
MaltsevResult maltsev_coset_test(const std::vector<IntVector> & relation, const Int & d);
MaltsevResult maltsev_coset_test_parallel(const std::vector<IntVector> & relation, const Int & d);
/// Throws InvalidArgument when the relation is unknown or empty.
MaltsevResult maltsev_coset_test(const QuotientStructure & q, const std::string & relation);

enum class NonHornReason { None, FiniteNonSingleton, MultiCoset };

std::string to_string(NonHornReason reason);

struct UnaryHornResult {
    bool horn = false;
    Formula formula;  // Horn definition over `variable` when horn
    NonHornReason reason = NonHornReason::None;
};

/// A unary set is Horn-definable iff it is empty, a singleton, or one coset
/// of dZ minus finitely many points (d = 1 gives the cofinite sets).
UnaryHornResult unary_horn_test(const EventuallyPeriodicSet & set, const std::string & variable = "x1");

struct HornSearchBounds {
    int max_coefficient = 10;
    int max_modulus = 12;
    int max_clauses = 4;
    int max_literals = 3;
    /// Half-width of the constant window used for slice certificates.
    int slice_window = 2;
    /// Largest quotient (d^k tuples) the fully modular test will build.
    unsigned long max_quotient_tuples = 1UL << 16;
};

struct HornSearchResult {
    enum class Kind { Horn, NonHornCertified, Unknown };

    Kind kind = Kind::Unknown;
    Formula horn_formula;      // when Horn
    std::string method;        // which test decided
    std::string certificate;   // human-readable evidence
};

std::string to_string(HornSearchResult::Kind kind);

/// Horn-definability of the relation defined by phi, decided by (in order):
/// syntactic test on the reduced form, exact unary test, Maltsev test on the
/// quotient of a fully modular relation, unary slices with the other
/// coordinates fixed, and a Horn envelope over atoms derived from phi within
/// the bounds.
HornSearchResult horn_search(const Formula & phi, const HornSearchBounds & bounds = {},
                             const SatOptions & options = {});

enum class VerdictKind { TrivialP, HornP, NpComplete, Unknown };

std::string to_string(VerdictKind kind);

struct RelationOutcome {
    std::string name;
    Formula core_definition;
    HornSearchResult result;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    CoreResult core;
    std::vector<RelationOutcome> relations;  // sorted by name
    std::string justification;
};

struct ClassifyOptions {
    Int endomorphism_bound = 64;
    HornSearchBounds horn;
    SatOptions sat;
    int jobs = 0;  // 0: OpenMP default
};

Verdict classify(const ConstraintLanguage & language, const ClassifyOptions & options = {});

/// Multi-line `key: value` report.
std::string format_report(const Verdict & verdict);

} // namespace zhorn
