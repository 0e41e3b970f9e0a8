"""
Permutation lift and its per-helper bandwidth
=============================================

The permutation lift uses one copy of the padded base per ordering of the
n + 1 nodes. For the (3, 2, 2) base that is 24 copies, each node stores 18
symbols and the lifted file is 48 symbols.
"""

from fractions import Fraction

from exactrepair.harness import bandwidth_audit, run_construction_suite, scenario_instance

result = run_construction_suite("toy-perm-433")
print(result.summary())

# stored size per unit of node storage grows by (n + 1) / n
print("B / alpha =", result.normalized, "=", Fraction(4, 3), "x", 2)

# every helper sends the same amount: gamma / (d + 1) = 36 / 3
audit = bandwidth_audit(scenario_instance("toy-perm-433"), failed=1)
print("per-helper:", audit.profiles)
print("n * n! * beta =", audit.claimed_beta2, " measured =", audit.measured_beta2)

# with d < n - 1 one helper idles in some copies; the idling rotates so
# helpers still end up with equal totals
audit = bandwidth_audit(scenario_instance("msr-perm-633"), failed=1)
print("(6,3,3) balanced over all", len(audit.profiles), "helper sets:", audit.balanced)
