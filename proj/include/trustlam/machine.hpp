#pragma once

#include "trustlam/ast.hpp"
#include "trustlam/diagnostics.hpp"
#include "trustlam/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace trustlam {

/// Deterministic 64-bit generator (splitmix64). Same seed, same stream.
class RngState {
  public:
    explicit RngState(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64();
    /// Uniform integer in [0, bound), bound >= 1. Rejection sampling on the
    /// bit width of bound-1, so there is no modulo bias.
    BigInt uniform_below(const BigInt& bound);

  private:
    std::uint64_t state_;
};

/// Picks index i with probability weights[i]. Exact: draws a uniform integer
/// below the least common denominator and locates its cumulative bucket.
std::size_t sample_choice(const std::vector<Rat>& weights, RngState& rng);

/// Total variation distance between two distribution annotations. Returns 1
/// when neither support (types with positive summed mass, up to the sum-dedup
/// normal form) contains the other; otherwise the sup of absolute differences
/// of per-type summed masses.
Rat tv_distance(const Dist& p, const Dist& q, const SubtypeEnv& env);

/// The empirical distribution a tuple of closed values encodes against the
/// target's entry types: each value is counted under the first entry type its
/// inferred type is a subtype of (declaration order). nullopt when some value
/// matches no entry (which forces distance 1 downstream).
std::optional<Dist> empirical_dist(const std::vector<TermPtr>& values, const Dist& target,
                                   const ProgramEnv& env);

/// The Trust? verdict on a tuple of closed values: True iff the TV distance
/// between the annotation and the encoded frequency is at most epsilon.
TermPtr trust_check(const std::vector<TermPtr>& values, const Dist& annotation,
                    const ProgramEnv& env);

enum class RuleTag { Beta, Choice, Exp, Proj, TrustTrue, TrustFalse, Context };

const char* rule_tag_name(RuleTag tag);

struct StepOutcome {
    TermPtr reduct;
    Rat probability;  // 1 for every non-choice rule
    RuleTag tag;
};

/// All probabilistic alternatives of the single redex position the
/// call-by-name strategy selects: one outcome for deterministic rules, k
/// outcomes for a k-ary choice. Empty when t is a value. Throws EvalError on
/// a stuck non-value (unreachable for well-typed closed terms).
std::vector<StepOutcome> step_alternatives(const TermPtr& t, const ProgramEnv& env);

/// Performs exactly one CBN step, consuming rng only for choice redexes.
StepOutcome step(const TermPtr& t, RngState& rng, const ProgramEnv& env);

struct Trace {
    std::uint64_t seed;
    std::vector<std::pair<TermPtr, StepOutcome>> steps;
    TermPtr final;
};

inline constexpr std::uint64_t kDefaultFuel = 1000000;

/// Iterates step until a value; deterministic in the seed. Fuel exhaustion is
/// an internal-invariant violation, reported as EvalError.
Trace eval(const TermPtr& t, std::uint64_t seed, const ProgramEnv& env,
           std::uint64_t fuel = kDefaultFuel);

}  // namespace trustlam
