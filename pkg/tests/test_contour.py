import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bqscat import contour
from bqscat.algebra import OMEGA
from bqscat.errors import EmptyPiece, OnBoundary
from bqscat.jump import inverted_piece, rotated_piece


def test_piece_count():
    assert len(contour.ALL_PIECES) == 54
    assert len({p.id for p in contour.ALL_PIECES}) == 54


@pytest.mark.parametrize("pid", ["1", "7'", "18''"])
def test_piece_roundtrip(pid):
    assert contour.piece(pid).id == pid


@pytest.mark.parametrize("bad", ["0", "19", "3'''", "x"])
def test_piece_rejects(bad):
    with pytest.raises(ValueError):
        contour.piece(bad)


@pytest.mark.parametrize("p", contour.ALL_PIECES, ids=lambda p: p.id)
def test_samples_locate_on_their_piece(p):
    for k in contour.sample_piece(p, 3, ray_cutoff=3.0):
        assert contour.locate(k).id == p.id


@pytest.mark.parametrize("p", contour.ALL_PIECES, ids=lambda p: p.id)
def test_symmetry_maps_pieces(p):
    k = contour.sample_piece(p, 1, ray_cutoff=3.0)[0]
    assert contour.locate(OMEGA * k).id == rotated_piece(p).id
    assert contour.locate(1 / k).id == inverted_piece(p).id


@given(st.floats(0.1, 4.0), st.floats(0, 360))
@settings(max_examples=200)
def test_classify_is_consistent_with_locate(r, deg):
    k = r * np.exp(1j * np.deg2rad(deg))
    try:
        reg = contour.classify(k)
    except OnBoundary:
        # only points on the contour (or the real axis images) are boundary points
        assert contour.locate(k, tol=1e-6) is not None or abs(abs(k) - 1) < 1e-6
        return
    a0, span = contour.region_angles(reg)
    assert (deg - a0) % 360 <= span + 1e-9


def test_on_contour_raises():
    with pytest.raises(OnBoundary):
        contour.classify(2 * np.exp(1j * np.deg2rad(contour.RAY_DEG[0])))


def test_normal_offsets_cross_the_piece():
    p = contour.piece("4''")
    k = contour.sample_piece(p, 1)[0]
    kp, km = contour.normal_offsets(k, 1e-3, p)
    assert contour.classify(kp) != contour.classify(km)


def test_empty_piece():
    with pytest.raises(EmptyPiece):
        contour.sample_piece(contour.piece("1"), 2, radius=1.0)


def test_geometry_json():
    obj = json.loads(contour.geometry_json())
    assert len(obj["pieces"]) == 54
