#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "cvxo/geometry.hpp"
#include "cvxo/rng.hpp"

namespace cvxo {

enum class OracleKind { Mem, Sep, Opt, Viol, Val };
enum class BoundaryPolicy { Adversarial, Random };

enum class MemVerdict { InExpanded, NotInShrunk };
enum class ValVerdict { AllBelow, SomeAbove };

struct SepAnswer {
  MemVerdict verdict;
  std::optional<Hyperplane> separator;  // set iff verdict == NotInShrunk
};

struct OptAnswer {
  std::optional<Vec> maximizer;  // nullopt: B(K,-eps) asserted empty
};

struct ViolAnswer {
  std::optional<Vec> witness;  // nullopt: <c,x> <= gamma+eps on B(K,-eps)
};

struct QueryLedger {
  std::array<std::uint64_t, 5> counts{};
  std::uint64_t& at(OracleKind k) { return counts[static_cast<int>(k)]; }
  std::uint64_t at(OracleKind k) const { return counts[static_cast<int>(k)]; }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
};

// Minimal odd repetition count T with Pr[Bin(T,rho) > T/2] <= target,
// computed by exact binomial summation.
int majority_repetitions(double rho, double target);

// A weak oracle over an analytic body. Error parameters follow the usual
// (eps, rho) convention: the answer is allowed to be wrong with probability
// rho, and all set comparisons go through B(K,eps) / B(K,-eps). Queries in
// the ambiguous shell are resolved by the boundary policy; the adversarial
// policy answers InExpanded iff a hash of (seed, y) is even, so results are
// reproducible but not benign.
//
// Handles mutate their ledger and rng; clone per thread or serialize.
class OracleHandle {
 public:
  OracleHandle(ConvexBody body, OracleKind kind, double eps, double rho, std::uint64_t seed,
               BoundaryPolicy policy = BoundaryPolicy::Adversarial);

  MemVerdict query_mem(const Vec& y);
  SepAnswer query_sep(const Vec& y);
  OptAnswer query_opt(const Vec& c);                 // c unit
  ViolAnswer query_viol(const Vec& c, double gamma); // c unit
  ValVerdict query_val(const Vec& c, double gamma);  // c unit

  const QueryLedger& ledger() const { return ledger_; }
  const ConvexBody& body() const { return body_; }
  OracleKind kind() const { return kind_; }
  double eps() const { return eps_; }
  double rho() const { return rho_; }
  BoundaryPolicy policy() const { return policy_; }
  int repetitions() const { return reps_; }
  std::uint64_t seed() const { return seed_; }

  // Majority-vote wrapper over a MEM handle; empirical error <= target_rho.
  // The wrapper borrows `base`, which must outlive it; base ledger counts
  // the underlying repetitions, the wrapper's ledger the logical queries.
  static OracleHandle amplified(OracleHandle& base, double target_rho);

 private:
  MemVerdict mem_once(const Vec& y);
  bool adversarial_choice(const Vec& y) const;
  bool shell_pick_first(const Vec& y);

  ConvexBody body_;
  OracleKind kind_;
  double eps_;
  double rho_;
  std::uint64_t seed_;
  BoundaryPolicy policy_;
  Rng rng_;
  QueryLedger ledger_;

  OracleHandle* base_ = nullptr;  // amplified wrapper
  int reps_ = 1;
};

inline OracleHandle amplify(OracleHandle& h, double target_rho) {
  return OracleHandle::amplified(h, target_rho);
}

}  // namespace cvxo
