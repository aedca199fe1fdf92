"""Reproduce the Hausdorff-dimension / distance-exponent table.

For each fractal-cube family FC(p, q) the closed forms are
D_H = ln(p^3 - q^3)/ln(p) and the X-distance exponent ln(p^2 - q^2)/ln(p);
for the small members we also measure d_Z and d_X exactly at levels 1 and 2
and fit the scaling exponent, which lands on the closed form to machine
precision because the min-cut values are exact powers.
"""

from fractalcss import (
    FractalSpec,
    css_from_complex,
    dx_min_cut,
    dz_shortest_path,
    fit_scaling,
    fractal_complex,
)
from fractalcss.cli import TABLE1_ROWS, hausdorff_exponent

print(f"{'family':>18}  {'D_H':>7}  {'dx exponent':>11}")
for p, q in TABLE1_ROWS:
    name = f"FC({p},{q})" if p < 10**5 else f"FC(1e{len(str(p)) - 1},...)"
    print(f"{name:>18}  {hausdorff_exponent(p, q, 3):7.4f}  "
          f"{hausdorff_exponent(p, q, 2):11.4f}")

print("\nmeasured distances for FC(3,1):")
points = []
for level in (1, 2):
    spec = FractalSpec(3, 3, 1, level, holes="m")
    code = css_from_complex(fractal_complex(spec, style="code"), 1)
    dz = dz_shortest_path(code).value
    dx = dx_min_cut(code).value
    points.append((spec.side, dx))
    print(f"  level {level}: L = {spec.side:2d}   d_Z = {dz:2d}   d_X = {dx}")
fit = fit_scaling(points)
print(f"  fitted d_X exponent: {fit.exponent:.4f}   "
      f"closed form ln(8)/ln(3) = {hausdorff_exponent(3, 1, 2):.4f}")
