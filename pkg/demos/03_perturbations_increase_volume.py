# # Strict inequality away from the minimisers
#
# Adding a smooth compactly supported bump to theta keeps the indexes but
# must increase the volume above pi L(eps_k). Because Spin(k) is a critical
# point, the excess grows quadratically in the bump amplitude.
import numpy as np

from spherefields import BumpSpec, SphericalPoint, Spin, bound_report, perturb, random_bump

center = SphericalPoint(0.2, 1.0)
print(" amplitude   margin            margin / amplitude^2")
for amp in (0.4, 0.2, 0.1, 0.05, 0.025):
    rep = bound_report(perturb(Spin(4), BumpSpec(amp, center, 0.5)))
    print(f"{amp:9.3f}   {rep.margin:.6e}    {rep.margin / amp**2:.5f}   satisfied={rep.satisfied}")

# Random bumps across several index classes.
rng = np.random.default_rng(0)
worst = min(
    bound_report(perturb(Spin(k), random_bump(rng))).margin for k in (3, 4, 5) for _ in range(5)
)
print(f"\nsmallest margin over 15 random bumps: {worst:.3e}")
