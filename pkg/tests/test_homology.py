"""Betti numbers of the lattice families and the duality identities."""

import numpy as np
import pytest

from fractalcss.complexes import (
    FractalSpec,
    build_lattice,
    fractal_complex,
    punch_fractal,
)
from fractalcss.homology import (
    HomologyRequest,
    betti,
    cobetti,
    compute,
    default_label_split,
    verify_lefschetz,
)


def _e_labels(cx):
    return {lb for lb in cx.labels_present() if lb.startswith("oE")}


def test_torus_2d_h1():
    cx = build_lattice(2, 3, "torus")
    assert betti(cx, 1) == 2
    assert cobetti(cx, 1) == 2


def test_torus_3d_h1_is_three():
    cx = build_lattice(3, 2, "torus")
    assert betti(cx, 1) == 3
    assert betti(cx, 2) == 3
    assert betti(cx, 0) == 1 and betti(cx, 3) == 1


def test_ball_is_contractible():
    cx = build_lattice(3, 2, "open")
    assert betti(cx, 1) == 0
    assert cobetti(cx, 1) == 0


def test_surface_code_relative_h1():
    # collapsing both rough sides of the square leaves one relative 1-cycle
    cx = build_lattice(2, 2, "open")
    assert betti(cx, 1, _e_labels(cx)) == 1


def test_punctured_sphere_h1_vanishes():
    spec = FractalSpec(3, 3, 1, 1, background="sphere", holes="m")
    cx = fractal_complex(spec)
    assert betti(cx, 1) == 0


def test_punctured_3torus_h1():
    spec = FractalSpec(3, 3, 1, 1, background="torus", holes="m")
    cx = fractal_complex(spec)
    assert betti(cx, 1) == 3


def test_fractal_surface_code_relative_h1():
    spec = FractalSpec(3, 3, 1, 1, background="open", holes="m")
    cx = fractal_complex(spec)
    assert betti(cx, 1, _e_labels(cx)) == 1


def test_fsf_level_independence():
    # connected-sum decomposition: the relative Betti number matches the
    # level-0 value at every level
    base = betti(build_lattice(3, 3, "open"), 1, _e_labels(build_lattice(3, 3, "open")))
    for level in (1, 2):
        cx = fractal_complex(FractalSpec(3, 3, 1, level, holes="m"))
        assert betti(cx, 1, _e_labels(cx)) == base == 1


def test_betti_equals_cobetti_on_random_sublattices():
    rng = np.random.default_rng(42)
    checked = 0
    for _ in range(60):
        n = int(rng.integers(2, 4))
        L = int(rng.integers(2, 4 if n == 3 else 6))
        cx = build_lattice(n, L, "torus")
        # delete a random upward-closed set: drop some top cells
        doomed = [set() for _ in range(n + 1)]
        n_top = cx.n_cells(n)
        doomed[n] = set(
            int(i) for i in rng.choice(n_top, size=int(rng.integers(0, n_top // 2 + 1)), replace=False)
        )
        sub = cx.delete(doomed)
        for grade in range(n + 1):
            assert betti(sub, grade) == cobetti(sub, grade)
            checked += 1
    assert checked >= 200


def test_alexander_duality_consequence_sphere_backgrounds():
    # uniform m-holes on a sphere background leave no 1-cycles
    for n, p, q, level in [(3, 3, 1, 1), (3, 3, 1, 2), (4, 3, 1, 1)]:
        cx = fractal_complex(FractalSpec(n, p, q, level, background="sphere", holes="m"))
        assert betti(cx, 1) == 0


@pytest.mark.slow
def test_alexander_duality_consequence_4d_level2():
    cx = fractal_complex(FractalSpec(4, 3, 1, 2, background="sphere", holes="m"))
    assert betti(cx, 1) == 0


def test_reduced_caveat_flag_at_grade0():
    cx = build_lattice(2, 2, "open")
    res = compute(HomologyRequest(cx, 0, frozenset(_e_labels(cx))))
    assert res.reduced_caveat


def test_lefschetz_no_hole_square():
    cx = build_lattice(2, 2, "open")
    e, m = default_label_split(cx)
    rep = verify_lefschetz(cx, 1, e, m)
    assert rep.equal and rep.dim_relative_e == 1


def test_lefschetz_fractal_surface_code():
    cx = fractal_complex(FractalSpec(3, 3, 1, 1, holes="m"))
    e, m = default_label_split(cx)
    rep = verify_lefschetz(cx, 1, e, m)
    assert rep.equal and rep.dim_relative_e == 1


def test_lefschetz_punctured_torus():
    cx = fractal_complex(FractalSpec(3, 3, 1, 1, background="torus", holes="m"))
    e, m = default_label_split(cx)
    assert e == set()
    rep = verify_lefschetz(cx, 1, e, m)
    assert rep.equal and rep.dim_relative_e == 3


def test_lefschetz_overlap_rejected():
    cx = build_lattice(2, 2, "open")
    e, m = default_label_split(cx)
    with pytest.raises(ValueError):
        verify_lefschetz(cx, 1, e | {next(iter(m))}, m)
