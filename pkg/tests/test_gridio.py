from __future__ import annotations

import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from emforms.gridio import MAGIC, dumps, loads, read_grid_state, write_grid_state
from emforms.photon_flow import Boundary, Grid, PhotonGridState


def make_state(shape=(4, 3), bc=("periodic", "outflow"), t=0.5):
    grid = Grid(shape, tuple(0.1 * (k + 1) for k in range(len(shape))), boundary=bc, axes=tuple(range(len(shape)))[::-1])
    rng = np.random.default_rng(1)
    jump = tuple(1.5 if b == "periodic" else 0.0 for b in bc)
    return PhotonGridState(grid, rng.random(shape), rng.standard_normal(shape), jump, t)


def test_header_layout():
    s = make_state()
    data = dumps(s)
    assert data[:8] == MAGIC
    assert struct.unpack_from("<IId", data, 8) == (1, 2, 0.5)
    assert struct.unpack_from("<qq", data, 24) == (4, 3)
    # n starts after shape, spacing, origin, jump (8 bytes each per axis) and two u8 arrays
    off = 24 + 2 * 8 * 4 + 2 * 2
    np.testing.assert_array_equal(np.frombuffer(data, "<f8", 12, off).reshape(4, 3), s.n)
    assert len(data) == off + 2 * 12 * 8


def test_round_trip_file(tmp_path):
    s = make_state()
    p = tmp_path / "g.emfgrid"
    write_grid_state(s, p)
    r = read_grid_state(p)
    np.testing.assert_array_equal(r.n, s.n)
    np.testing.assert_array_equal(r.phi, s.phi)
    assert r.grid == s.grid
    assert r.phase_jump == s.phase_jump and r.t == s.t
    assert r.grid.boundary == (Boundary.PERIODIC, Boundary.OUTFLOW)


@settings(max_examples=30)
@given(st.lists(st.integers(3, 6), min_size=1, max_size=3), st.floats(-10, 10), st.booleans())
def test_round_trip_property(shape, t, periodic):
    bc = tuple("periodic" if periodic else "outflow" for _ in shape)
    s = make_state(tuple(shape), bc, t)
    r = loads(dumps(s))
    assert dumps(r) == dumps(s)


def test_rejects_corrupt_data():
    data = dumps(make_state())
    with pytest.raises(ValueError, match="magic"):
        loads(b"XXXXXXXX" + data[8:])
    with pytest.raises(ValueError, match="trailing"):
        loads(data + b"\0")
    with pytest.raises(ValueError, match="version"):
        loads(data[:8] + struct.pack("<I", 9) + data[12:])
