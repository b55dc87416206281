#pragma once

#include <vector>

#include "percolab/field.hpp"
#include "percolab/graph.hpp"

namespace percolab {
namespace oracle {

// Branching recursion for rooted b-ary trees:
//   q_0 = 1,  q_{l+1} = 1 - (1 - p q_l)^b,  theta_l = p q_l,
// where theta_L is the exact probability that the origin's open cluster in
// rooted_tree(b, L) reaches the depth-L boundary.
struct TreeRecursion {
  int b = 2;
  double p = 0.0;
  std::vector<double> q_by_depth;      // q_0..q_L
  std::vector<double> theta_by_depth;  // theta_0..theta_L
};

TreeRecursion tree_recursion(int b, double p, int L);

double tree_theta_depth(int b, double p, int L);

// Depth limit of theta_L within tol; exactly 0 when p <= 1/b.
double tree_theta_limit(int b, double p, double tol);

// Critical probability 1/b (branching criterion); b >= 2.
double tree_pc(int b);

enum class PhiQuery { OriginInInfiniteProxy, NAtLeastOne, FullDistributionOfN };

struct PhiExact {
  double value = 0.0;                  // query probability (scalar queries)
  std::vector<double> distribution;    // P[N(phi) = k], FullDistributionOfN only
};

inline constexpr std::uint32_t kDefaultEnumerationLimit = 14;

// Exact law of the self-destructive configuration phi = (omega \ destroyed)
// u reinforcement by exhaustive summation: outer sum over omega, inner sum
// over reinforcement patterns restricted to the complement of the surviving
// set (survivors are open with probability 1, so only closed-or-destroyed
// vertices carry a delta factor).
PhiExact enumerate_phi_exact(const FiniteGraph& g, double p, double delta, PhiQuery query,
                             std::uint32_t vertex_limit = kDefaultEnumerationLimit);

// Exact P[origin's cluster touches the boundary] under Bernoulli(p), by the
// same exhaustive sum; small graphs only.
double enumerate_theta_exact(const FiniteGraph& g, double p,
                             std::uint32_t vertex_limit = kDefaultEnumerationLimit);

}  // namespace oracle
}  // namespace percolab
