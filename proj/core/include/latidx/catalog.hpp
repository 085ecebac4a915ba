#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latidx/lattice.hpp"

namespace latidx {

enum class RootFamily { A, D, E };

// Cartan matrix of A_n (n >= 1), D_n (n >= 4) or E_n (n = 6, 7, 8).
GramMatrix root_lattice(RootFamily family, std::size_t n);

struct GlueSpec {
  GramMatrix base;
  std::vector<std::vector<Rational>> glue_vectors;  // coordinates on the base basis
};

struct GlueResult {
  GramMatrix gram;  // Gram of the glued lattice in the basis below
  Integer index;    // [Lambda : Lambda']
  RatMatrix basis;  // rows: new basis vectors, coordinates on the base basis
};

// Lambda = Lambda' + sum Z v_j. The basis is the HNF of L * (I ; v_1 ; ...)
// divided by L, L the common denominator, so the output is deterministic.
// Integral glue vectors are allowed and give index 1.
GlueResult glue(const GlueSpec& spec);

// Unit-diagonal base Gram with constant products inside and between blocks,
// glued with e = (sum_i c_i e_i) / d where c_i is the 1-based block number
// of e_i (0 outside the blocks).
struct FamilySpec {
  struct Override {
    std::size_t i;  // 0-based
    std::size_t j;
    Rational value;
  };
  std::size_t n = 0;
  std::uint64_t d = 2;
  std::vector<std::size_t> blocks;  // m_1, m_2, ...
  std::vector<Rational> x;          // per block, missing entries are 0
  std::vector<Rational> y;          // per block pair (1,2), (1,3), ..., (2,3), ...
  std::vector<Override> overrides;  // applied last, symmetrically
};

GramMatrix family_base(const FamilySpec& spec);
std::vector<Rational> family_glue_vector(const FamilySpec& spec);
GlueResult build_family(const FamilySpec& spec);

// Verbatim matrices plus generated ones: A<n>, D<n>, E6, E7, E8, Z<n>.
GramMatrix named_matrix(const std::string& name);
std::optional<GramMatrix> find_named_matrix(const std::string& name);
// The fixed (verbatim) names only.
std::vector<std::string> catalog_names();

}  // namespace latidx
