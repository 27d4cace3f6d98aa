"""Which bodies have only disks as complex-line sections?

Ellipsoids pass; the l4 ball is circle-invariant yet fails; a slightly
thickened ellipsoid fails too.

Run: python demos/bombon_gallery.py
"""
from complex_ellipsoids import (
    bombon_check,
    ellipsoid_oracle,
    gen_perturbed_ellipsoid,
    gen_random_ellipsoid,
    lp_ball_oracle,
    symmetry_center,
)

bodies = {
    "random ellipsoid": ellipsoid_oracle(gen_random_ellipsoid(1, 2)),
    "l4 ball": lp_ball_oracle(4, 2),
    "perturbed eps=0.05": gen_perturbed_ellipsoid(1, 2, 0.05),
}
print("%-20s %-10s %-10s %s" % ("body", "symmetric", "bombon", "worst deviation"))
for name, K in bodies.items():
    centre, _ = symmetry_center(K, seed=0)
    rep = bombon_check(K, num_lines=1000, seed=0)
    print("%-20s %-10s %-10s %.2e" % (name, centre is not None, rep.verdict, rep.worst_deviation))
