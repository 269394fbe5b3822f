#pragma once

// Born-rule behaviors of chain networks, plus the output relabelings and the
// P14 -> P22 coarse-graining.

#include <span>

#include "netlocal/behavior.hpp"
#include "netlocal/network.hpp"

namespace netlocal {

/// Largest n accepted by evaluate_naive (global dimension 2^{2n} <= 4096).
inline constexpr int kNaiveMaxSources = 6;

/// Serial reference: P(a|x) = tr[(rho_1 (x) ... (x) rho_n) (M_1 (x) ... (x) M_{n+1})]
/// on the full 2^{2n}-dimensional space. Throws ErrorKind::Size for n > 6.
Behavior evaluate_naive(const NetworkScenario& s);

/// Same contract as evaluate_naive, computed by left-to-right transfer
/// contraction with one 2x2 boundary operator per source. Cost per table entry
/// is linear in n; prefixes are shared and split across OpenMP threads.
Behavior evaluate_chain(const NetworkScenario& s, bool parallel = true);

/// P'(..., perm[a_i], ...|x) = P(..., a_i, ...|x).
Behavior relabel_outputs(const Behavior& b, int party, std::span<const int> perm);

/// Flip A_1's output bit.
Behavior flip_first_output(const Behavior& b);

/// Map a simulated behavior (outcome a <-> eigenvalue (-1)^a) to the sign
/// convention of the published closed forms: flips A_1's output when n is
/// even, identity when n is odd. Each interior singlet contributes a factor
/// -1 to the n+1-partite correlator, so the simulated I = J = (-1)^n / 2.
Behavior to_published_convention(const Behavior& b);
bool published_convention_flips(int n);

/// Coarse-grain a P14 behavior: intermediate input x_i selects bit a_i^{x_i}
/// of the two-bit outcome label, the other bit is marginalized.
Behavior reduce_p14_to_p22(const Behavior& b);

}  // namespace netlocal
