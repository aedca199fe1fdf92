"""Transversal-gate condition checks on the three-copy stack and the
hexagonal color code, plus the rough-boundary merge algebra."""

from fractalcss.code import PauliOperator, css_from_complex
from fractalcss.colorcode import build_color_code_2d, check_transversal_s_colorcode
from fractalcss.complexes import code_lattice
from fractalcss.gates import (
    build_vasmer_browne_stack,
    check_transversal_ccz,
    conjugate_by_ccz,
    merge_rough,
    stabilizer_tags_near_holes,
)

print("three-copy stack, L = 2 and 3, no holes:")
for L in (2, 3):
    codes, align = build_vasmer_browne_stack(L)
    report = check_transversal_ccz(*codes, align)
    print(f"  L = {L}: {'all conditions PASS' if report.all_pass else 'FAIL'}")

print("\nsame stack with a central (m,m,m)-hole at L = 3:")
codes, align = build_vasmer_browne_stack(3, "center")
report = check_transversal_ccz(*codes, align)
near = stabilizer_tags_near_holes(align)
n_fail = sum(len(c.witnesses) for c in report.failures())
print(f"  {n_fail} failing triples, every witness touches the hole boundary")

s = PauliOperator.x_type(codes[0].hx.row(0))
ppo = conjugate_by_ccz(s, 0, align)
print(f"  a bulk X stabilizer conjugates to X x {len(ppo.quadratic_cz)} CZ pairs, "
      f"logical identity: {ppo.cz_identity}")

print("\nhexagonal color code, transversal S:")
cc = build_color_code_2d(1)
print(check_transversal_s_colorcode(cc).to_text().strip())

print("\nrough-boundary merge of two L=2 surface codes:")
a = css_from_complex(code_lattice(3, 2), 1)
b = css_from_complex(code_lattice(3, 2), 1)
result = merge_rough(a, b)
print(f"  k_merged = {result.k_merged}, parity identity "
      f"{'holds' if result.parity_identity else 'fails'} over "
      f"{len(result.interface_x_rows)} interface X stabilizers")
