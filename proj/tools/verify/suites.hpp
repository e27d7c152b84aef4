#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tpl/census.hpp"
#include "tpl/holonomy.hpp"
#include "tpl/residue.hpp"

namespace tpl::verify {

/// Sample and failure counts of one property suite, with the first failure described.
struct Tally {
  long long samples = 0;
  long long failures = 0;
  std::string firstFailure;

  void record(bool ok, const std::string& what);
  bool ok() const noexcept { return samples > 0 && failures == 0; }
};

/// Witness by the constructive recipe from a random point and three of its lines.
BStarWitness random_witness(const ProjectivePlane& plane, std::mt19937_64& rng);

/// Theta_4 of rank-1 blocks equals -3 prod(alpha) prod(beta); nonzero exactly off characteristic 3.
Tally theta4_rank1(const Field& f, int samples, std::uint64_t seed);

/// Identity-pattern jet blocks over a prime field: t^0 and t^1 of an integer Leibniz expansion
/// against theta4 and psi4.
Tally jet_identity_blocks(const Field& prime, int samples, std::uint64_t seed);
/// Random lifts of (0,2) and (0,3) patterns: the raised flag against the expanded determinant.
Tally initial_form_lifts(const Field& prime, int samples, std::uint64_t seed);
/// Random unit quadruples, many of them near ties.
Tally tie_depth(const Field& f, int samples, std::uint64_t seed);

/// Product labels factor back to their potentials up to a global scalar.
Tally factorization_round_trip(const PlanePtr& plane, const Field& f, int trials, std::uint64_t seed);
/// One rescaled edge yields a reported cycle whose holonomy is not 1 and which uses that edge.
Tally factorization_perturbation(const PlanePtr& plane, const Field& f, int trials, std::uint64_t seed);
/// Sampled (0,2) minors of generic lifts: positive determinant valuation iff signed holonomy 1.
Tally signed_holonomy_jets(const PlanePtr& plane, const Field& f, int samples, std::uint64_t seed);
/// Labels over GF(8) drawn from the solution space of all (0,2) holonomy constraints factor.
Tally characteristic_two_gauge(const PlanePtr& plane, int samples, std::uint64_t seed);

/// Three-chart cycles around random witnesses: containment and nonempty overlaps.
Tally three_chart_cycles(const PlanePtr& plane, int samples, std::uint64_t seed);
/// Bridge cycle identities on the given witnesses of a rank-3 model.
Tally bridge_identities(const ResidueModel& model, const std::vector<BStarWitness>& witnesses);

/// Initial-form relation, rho + sigma = 1 and (odd characteristic) rho != 1 for every witness.
struct WitnessRelationTally {
  Tally relation, rhoPlusSigma, rhoNotOne;
};
WitnessRelationTally witness_relations(const ResidueModel& model, const std::vector<BStarWitness>& witnesses);

/// Square families of every degenerate diamond: profile (0,4), swap pair, size q^3(q-1).
Tally degenerate_families(const ProjectivePlane& plane);

/// rank q+1 diagonal block for every choice pattern tried on line 0.
Tally monomial_blocks(const ProjectivePlane& plane, const Field& f);
/// rank(A1 B0 + A0 B1) <= 2r on random factors of inner dimension r.
Tally tangent_rank(int r, int trials, std::uint64_t seed);
/// Random rank-<=6 supports with nonzero diagonal at size n.
Tally turan_random(int n, int trials, std::uint64_t seed);
/// Exact independence numbers for sizes 7..14.
Tally turan_exhaustive(int perSize, std::uint64_t seed);

}  // namespace tpl::verify
