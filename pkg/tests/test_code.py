"""Code construction: qubit counts, logical counts, logical bases."""

import pytest

from fractalcss.code import (
    CssCode,
    code_from_text,
    code_params,
    code_to_text,
    css_from_complex,
    homology_k,
    is_x_logical,
    is_z_logical,
    logical_basis,
)
from fractalcss.complexes import (
    FractalSpec,
    build_lattice,
    code_lattice,
    fractal_complex,
)


def test_toric_code_2d():
    code = css_from_complex(build_lattice(2, 3, "torus"), 1)
    assert code.n_qubits == 18
    assert code_params(code).k == 2


def test_surface_code_2d_k1():
    for cx in (build_lattice(2, 3, "open"), code_lattice(2, 3)):
        code = css_from_complex(cx, 1)
        assert code_params(code).k == 1


def test_surface_code_standard_counts():
    code = css_from_complex(code_lattice(2, 3), 1)
    assert code.n_qubits == 13
    assert code_params(code).k == 1


def test_surface_code_3d_k1():
    code = css_from_complex(build_lattice(3, 2, "open"), 1)
    assert code_params(code).k == 1
    code2 = css_from_complex(code_lattice(3, 2), 1)
    assert code_params(code2).k == 1


def test_boundary_stabilizer_weights_2d():
    # rough boundary: 3-body Z checks; smooth boundary: 3-body X checks
    code = css_from_complex(code_lattice(2, 3), 1)
    z_weights = sorted(code.hz.row_weight(r) for r in range(code.hz.rows))
    x_weights = sorted(code.hx.row_weight(r) for r in range(code.hx.rows))
    assert set(z_weights) == {3, 4}
    assert set(x_weights) == {3, 4}


def test_fractal_surface_code_k1():
    for level in (1, 2):
        code = css_from_complex(fractal_complex(FractalSpec(3, 3, 1, level), "code"), 1)
        assert code_params(code).k == 1


def test_punctured_torus_k3():
    code = css_from_complex(
        fractal_complex(FractalSpec(3, 3, 1, 1, background="torus"), "code"), 1
    )
    assert code_params(code).k == 3


def test_punctured_sphere_k0():
    code = css_from_complex(
        fractal_complex(FractalSpec(3, 3, 1, 1, background="sphere")), 1
    )
    assert code_params(code).k == 0
    assert logical_basis(code) == ([], [])


def test_e_holes_add_one_qubit_each():
    spec = FractalSpec(3, 3, 1, 2, holes="e")
    code = css_from_complex(fractal_complex(spec, "code"), 1)
    n_holes = len(code.source.holes)
    assert n_holes == 27
    assert code_params(code).k == n_holes + 1


def test_grading_out_of_range():
    with pytest.raises(ValueError):
        css_from_complex(build_lattice(2, 2, "open"), 2)


def test_commutation_for_all_shipped_geometries():
    geoms = [
        css_from_complex(build_lattice(2, 3, "torus"), 1),
        css_from_complex(code_lattice(3, 2), 1),
        css_from_complex(fractal_complex(FractalSpec(3, 3, 1, 1), "code"), 1),
        css_from_complex(fractal_complex(FractalSpec(3, 3, 1, 1, holes="e"), "code"), 1),
        css_from_complex(build_lattice(4, 2, "torus"), 2),
    ]
    for code in geoms:
        assert code.hx.matmul_t(code.hz).is_zero()  # also checked in __post_init__


def test_4d_torus_22_code():
    code = css_from_complex(build_lattice(4, 2, "torus"), 2)
    assert code.n_qubits == 96
    assert code_params(code).k == 6


def test_logical_basis_surface_code():
    code = css_from_complex(code_lattice(2, 3), 1)
    zs, xs = logical_basis(code)
    assert len(zs) == len(xs) == 1
    z, x = zs[0], xs[0]
    assert is_z_logical(code, z.z_support)
    assert is_x_logical(code, x.x_support)
    assert z.z_support.dot(x.x_support) == 1
    # the Z string spans rough-to-rough: one edge per row of the rough axis
    assert z.z_support.weight() >= 3


def test_logical_basis_torus_pairing():
    code = css_from_complex(build_lattice(2, 2, "torus"), 1)
    zs, xs = logical_basis(code)
    assert len(zs) == 2
    for a, z in enumerate(zs):
        for b, x in enumerate(xs):
            assert z.z_support.dot(x.x_support) == (1 if a == b else 0)


def test_logicals_commute_with_stabilizers():
    code = css_from_complex(fractal_complex(FractalSpec(3, 3, 1, 1), "code"), 1)
    zs, xs = logical_basis(code)
    for z in zs:
        assert code.hx.mul_vec(z.z_support).is_zero()
    for x in xs:
        assert code.hz.mul_vec(x.x_support).is_zero()


def test_homology_cross_check_catches_nothing_spurious():
    code = css_from_complex(fractal_complex(FractalSpec(2, 3, 1, 1), "code"), 1)
    assert homology_k(code) == code_params(code, cross_check=True).k


def test_code_text_roundtrip():
    code = css_from_complex(code_lattice(2, 3), 1)
    again = code_from_text(code_to_text(code))
    assert again.n_qubits == code.n_qubits
    assert again.hx == code.hx and again.hz == code.hz
    assert again.qubit_cells == code.qubit_cells
