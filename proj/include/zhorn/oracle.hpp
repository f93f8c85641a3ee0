#pragma once

#include <zhorn/formula.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace zhorn {

/// Brute-force ground truth over the box [-bound, bound]^n.
struct Box {
    Int bound = 10;
    /// Hard limit on visited search nodes (box_sat) or points (box_equiv).
    std::uint64_t cap = 10'000'000;
};

class OracleCapExceeded : public Error {
public:
    using Error::Error;
};

/// Lexicographically first box point satisfying phi (variables in formula
/// order, values ascending), or nullopt when the box holds none. The search
/// assigns variables in order and checks each clause as soon as its
/// variables are assigned.
std::optional<IntVector> box_sat(const Formula & phi, const Box & box);

/// Same answer as box_sat, with the first variable's values searched in
/// parallel.
std::optional<IntVector> box_sat_parallel(const Formula & phi, const Box & box);

/// Number of box points satisfying phi.
std::uint64_t box_count(const Formula & phi, const Box & box);

/// phi and psi agree on every box point (variables matched by name).
bool box_equiv(const Formula & phi, const Formula & psi, const Box & box);
bool box_equiv_parallel(const Formula & phi, const Formula & psi, const Box & box);

/// All of (Z/dZ)^k in lexicographic order.
std::vector<IntVector> enumerate_modular(std::size_t k, const Int & d, std::uint64_t cap = 10'000'000);

} // namespace zhorn
