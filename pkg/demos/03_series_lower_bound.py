"""The truncated-logarithm estimator: a ladder of certified lower bounds.

With the expansion scale at the density maximum, each added order can only
raise the estimate, and the estimate never exceeds the true entropy.  The
scale choice trades convergence speed for the guarantee.
"""

import gmixent as gx

mix = gx.load_preset("table1_row2")
mode = gx.find_mode(mix)
table = gx.build_table(mix, 12)
reference = gx.grid_entropy(mix)
print(f"reference entropy (grid quadrature): {reference.value:.6f} nats\n")

print("order-by-order lower bounds at m = f_max (beta = 1):")
previous = None
for order in range(1, 13):
    est = gx.taylor_entropy(mix, table, gx.params_from_beta(mode, order, 1.0))
    step = "" if previous is None else f"  (+{est.value - previous:.6f})"
    print(f"  C = {order:2d}: {est.value:.6f}{step}")
    previous = est.value

print("\nscale policies at C = 10:")
for label, params in [
    ("beta = 0.5 (fastest, no bound)", gx.params_from_beta(mode, 10, 0.5)),
    ("beta = 1.0 (certified bound) ", gx.params_from_beta(mode, 10, 1.0)),
    ("sum of component peaks       ", gx.params_sum_of_peaks(mix, mode, 10)),
]:
    est = gx.taylor_entropy(mix, table, params)
    tag = "lower bound" if est.certified_lower_bound else "plain estimate"
    print(f"  {label}: {est.value:.6f}  [{tag}]")

print(f"\nevery certified value sits below the reference {reference.value:.6f};")
print("the gap at C = 10 is still a few percent: this estimator buys a")
print("guarantee, not accuracy (compare demo 04).")
