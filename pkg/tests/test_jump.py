import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bqscat import contour, jump
from bqscat.algebra import OMEGA
from bqscat.spectral import Scattering
from bqscat.vtable import VTILDE

args = st.sampled_from(sorted(jump.ARGUMENTS.values()))


def test_table_covers_all_pieces():
    assert set(VTILDE) == {p.id for p in contour.ALL_PIECES}
    assert all(len(rows) == 3 and all(len(r) == 3 for r in rows) for rows in VTILDE.values())


@given(args, args, st.complex_numbers(min_magnitude=0.2, max_magnitude=5))
def test_compose_matches_substitution(a, b, k):
    inner = jump.apply_argument(a, k)
    assert np.isclose(jump.apply_argument(jump.compose(a, b), k), jump.apply_argument(b, inner))


@pytest.mark.parametrize("expr, want", [("1", set()), ("r1(k)*r2(1/k)", {("r1", (0, 1)), ("r2", (0, -1))}),
                                        ("h(w*k)", {("R1", (0, 1)), ("r2", (2, -1))})])
def test_requirements(expr, want):
    assert jump.requirements(expr) == want


def test_evaluate_arithmetic():
    vals = {("r1", (0, 1)): np.array([2.0]), ("r2", (0, -1)): np.array([3.0])}
    assert jump.evaluate("1 - r1(k)*r2(1/k) / 2", vals)[0] == pytest.approx(-2.0)


def test_unknown_function():
    with pytest.raises(ValueError):
        jump.requirements("q(k)")


def test_domain_audit_is_clean():
    assert jump.domain_audit([p.id for p in contour.ALL_PIECES], n_per_piece=2) == []


def test_zero_data_jumps_are_identity(zero_source):
    J = jump.JumpEvaluator(Scattering(zero_source))
    for p in contour.ALL_PIECES:
        v = J.vtilde(p.id, contour.sample_piece(p, 2, ray_cutoff=3.0))
        assert np.allclose(v, np.eye(3))


@pytest.fixture(scope="module")
def evaluator(short_wave):
    return jump.JumpEvaluator(Scattering(short_wave))


@pytest.mark.parametrize("pid", ["1", "4", "2'", "9'", "1''", "13''"])
def test_unit_determinant_and_symmetry(evaluator, pid):
    k = np.array(contour.sample_piece(contour.piece(pid), 3, ray_cutoff=3.0))
    assert np.max(jump.det_residual(evaluator.vtilde(pid, k))) < 1e-10
    ra, rb = evaluator.check_vsymm(0.8, 0.3, pid, k)
    assert max(ra.max(), rb.max()) < 1e-9


@pytest.mark.parametrize("name", ["f1", "f2"])
def test_helper_forms_agree(evaluator, name):
    k = np.array(contour.sample_piece(contour.piece("3"), 3))
    forms = evaluator.helper_forms(name, k)
    assert np.max(np.abs(forms - forms[0])) < 1e-9


@pytest.mark.parametrize("n", [1, 5, 10, 18])
def test_junction_product_tends_to_identity(evaluator, n):
    raw = np.max(np.abs(jump.junction_product(evaluator, n, 1e-3) - np.eye(3)))
    assert jump.junction_residual(evaluator, n, 0.8, 0.3) < 1e-5
    assert jump.junction_residual(evaluator, n) < raw / 10


def test_junction_product_zero_data(zero_source):
    J = jump.JumpEvaluator(Scattering(zero_source))
    assert np.allclose(jump.junction_product(J, 3, 1e-3), np.eye(3), atol=1e-14)


def test_t_matrix_quotient(short_wave):
    scat = Scattering(short_wave)
    T = jump.TMatrices(scat)
    k = np.array(contour.sample_piece(contour.piece("1''"), 4, ray_cutoff=1.35))
    v = np.linalg.inv(T.in_region("D18", k)) @ T.in_region("D1", k)
    assert np.max(np.abs(v - jump.JumpEvaluator(scat).vtilde("1''", k))) < 1e-8


def test_csv_shape(evaluator):
    text = jump.jump_csv(evaluator, {"2": np.array(contour.sample_piece(contour.piece("2"), 3))})
    rows = text.strip().splitlines()
    assert len(rows) == 4 and len(rows[0].split(",")) == 21
