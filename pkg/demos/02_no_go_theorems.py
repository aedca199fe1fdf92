"""The no-go results at desk scale.

In 2D, any fractal of m-holes leaves a short X-string connecting nearby
smooth boundaries, so the X-distance stays O(1) while the system grows.
In 3D with e-holes, short Z-strings connect nearby rough boundaries the
same way; with m-holes both distances keep growing and the code remains
topological.
"""

from fractalcss import (
    FractalSpec,
    code_params,
    css_from_complex,
    dx_min_cut,
    dz_shortest_path,
    exhaustive_low_weight,
    fractal_complex,
)

print("2D Sierpinski carpet with m-holes: d_X pinned at O(1)")
for level in (1, 2, 3):
    spec = FractalSpec(2, 3, 1, level, holes="m")
    code = css_from_complex(fractal_complex(spec, style="code"), 1)
    res = exhaustive_low_weight(code, "X", 2)
    print(f"  level {level}: L = {spec.side:2d}  n = {code.n_qubits:4d}  "
          f"d_X = {res.value} ({res.kind})")

print("\n3D fractal cube with e-holes: short Z-strings between holes")
spec = FractalSpec(3, 3, 1, 2, holes="e")
code = css_from_complex(fractal_complex(spec, style="code"), 1)
res = exhaustive_low_weight(code, "Z", 2)
n_holes = len(code.source.holes)
print(f"  level 2: k = {code_params(code).k} = N_h + 1 with N_h = {n_holes}; "
      f"d_Z = {res.value} ({res.kind})")

print("\n3D fractal cube with m-holes: both distances keep growing")
for level in (1, 2):
    spec = FractalSpec(3, 3, 1, level, holes="m")
    code = css_from_complex(fractal_complex(spec, style="code"), 1)
    print(f"  level {level}: L = {spec.side}  d_Z = {dz_shortest_path(code).value}  "
          f"d_X = {dx_min_cut(code).value}")
