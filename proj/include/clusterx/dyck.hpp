#pragma once

// Maximal Dyck paths and edge collections. For each arrow i -> j of Q_B~ the
// path D^{[a_i]_+ x [a_j]_+} carries subsets S1 (horizontal edges) and S2
// (vertical edges); compatible collections index the same sums as the
// sequence formulation in elements.hpp.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clusterx/elements.hpp"
#include "clusterx/exchange.hpp"
#include "clusterx/laurent.hpp"

namespace clusterx {

enum class StepKind : std::uint8_t { Horizontal, Vertical };

struct DyckStep {
  StepKind kind;
  std::size_t label;   // corner-first index, 1-based (u_label or v_label)
  std::size_t x, y;    // lattice point where the step starts
  bool in_corner;      // part of a horizontal-then-vertical pair
};

struct DyckPath {
  std::size_t width = 0;   // a1, number of horizontal edges
  std::size_t height = 0;  // a2, number of vertical edges
  std::size_t corners = 0;
  std::vector<DyckStep> steps;  // in path order from (0,0)
};

// Lattice path hugging the diagonal from below: after x horizontal steps it
// sits at height floor(x * a2 / a1).
DyckPath build_dyck(std::size_t a1, std::size_t a2);

// Masks use bit (label - 1). True iff no horizontal edge of S1 is immediately
// followed on the path by a vertical edge of S2.
bool is_locally_compatible(std::uint64_t s1, std::uint64_t s2, const DyckPath& path);

// Word form, e.g. "[u1] v1 v2": steps in path order, selected edges in brackets.
std::string render_dyck(const DyckPath& path, std::uint64_t s1 = 0, std::uint64_t s2 = 0);

struct EdgeSelection {
  std::size_t tail, head;   // arrow tail -> head of Q_B~
  std::uint64_t horizontal; // S1, bits over u_1..u_{[a_tail]_+}
  std::uint64_t vertical;   // S2, bits over v_1..v_{[a_head]_+}

  bool operator==(const EdgeSelection&) const = default;
};

// One selection per arrow of Q_B~, in the digraph's sorted edge order.
using EdgeCollection = std::vector<EdgeSelection>;

enum class CompatibilityMode { Global, Quasi };

std::vector<EdgeCollection> enumerate_collections(const AVector& a,
                                                  const ExtendedMatrix& matrix,
                                                  CompatibilityMode mode,
                                                  const EnumerationLimits& limits = {});

// The correspondence used to identify collections with sequence tuples:
// v_r of an incoming arrow selected iff s_{j,r} = 0, u_r of an outgoing arrow
// selected iff s_{j,r} = 1. Empty when some vertex with [a_j]_+ > 0 has no
// incident arrow (its sequence is then unconstrained by the collection).
std::optional<GccTuple> collection_to_tuple(const EdgeCollection& collection,
                                            const AVector& a,
                                            const ExtendedMatrix& matrix);

struct DyckSum {
  LaurentPoly value;
  // Set when a mutable vertex with a_l > 0 is isolated in Q_B~; the sum then
  // differs from the sequence formulation by the missing free sequences.
  bool isolated_vertex_warning = false;
};

DyckSum xtilde_via_dyck(const AVector& a, const ExtendedMatrix& matrix,
                        const EnumerationLimits& limits = {});
DyckSum z_via_dyck(const AVector& a, const ExtendedMatrix& matrix,
                   const EnumerationLimits& limits = {});

}  // namespace clusterx
