"""Flat binary layout for :class:`~emforms.photon_flow.PhotonGridState`.

All fields little-endian, no padding (see docs/formats.md):

    offset  type            content
    0       8 bytes         magic b"EMFGRID\\0"
    8       uint32          format version (= 1)
    12      uint32          ndim (1..3)
    16      float64         time t
    24      int64[ndim]     shape
    ..      float64[ndim]   spacing
    ..      float64[ndim]   origin
    ..      float64[ndim]   phase jump per axis
    ..      uint8[ndim]     boundary flag (0 periodic, 1 outflow)
    ..      uint8[ndim]     spatial axis index (0..2)
    ..      float64[N]      n, row-major (C order), N = prod(shape)
    ..      float64[N]      phi, row-major
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .photon_flow import Boundary, Grid, PhotonGridState

MAGIC = b"EMFGRID\x00"
VERSION = 1
_BC_CODE = {Boundary.PERIODIC: 0, Boundary.OUTFLOW: 1}
_BC_FROM = {v: k for k, v in _BC_CODE.items()}


def dumps(state: PhotonGridState) -> bytes:
    g = state.grid
    nd = g.ndim
    parts = [
        MAGIC,
        struct.pack("<IId", VERSION, nd, float(state.t)),
        np.asarray(g.shape, dtype="<i8").tobytes(),
        np.asarray(g.spacing, dtype="<f8").tobytes(),
        np.asarray(g.origin, dtype="<f8").tobytes(),
        np.asarray(state.phase_jump, dtype="<f8").tobytes(),
        np.asarray([_BC_CODE[b] for b in g.boundary], dtype="u1").tobytes(),
        np.asarray(g.axes, dtype="u1").tobytes(),
        np.ascontiguousarray(state.n, dtype="<f8").tobytes(),
        np.ascontiguousarray(state.phi, dtype="<f8").tobytes(),
    ]
    return b"".join(parts)


def loads(data: bytes) -> PhotonGridState:
    if data[:8] != MAGIC:
        raise ValueError("not an emforms grid file (bad magic)")
    version, nd, t = struct.unpack_from("<IId", data, 8)
    if version != VERSION:
        raise ValueError(f"unsupported grid format version {version}")
    if not 1 <= nd <= 3:
        raise ValueError(f"invalid ndim {nd}")
    off = 24

    def take(dtype, count):
        nonlocal off
        arr = np.frombuffer(data, dtype=dtype, count=count, offset=off)
        off += arr.nbytes
        return arr

    shape = tuple(int(v) for v in take("<i8", nd))
    spacing = tuple(take("<f8", nd))
    origin = tuple(take("<f8", nd))
    jump = tuple(take("<f8", nd))
    bc = tuple(_BC_FROM[int(v)] for v in take("u1", nd))
    axes = tuple(int(v) for v in take("u1", nd))
    size = int(np.prod(shape))
    n = take("<f8", size).reshape(shape).astype(float)
    phi = take("<f8", size).reshape(shape).astype(float)
    if off != len(data):
        raise ValueError(f"trailing bytes in grid file ({len(data) - off})")
    grid = Grid(shape, spacing, origin, bc, axes)
    return PhotonGridState(grid, n, phi, jump, float(t))


def write_grid_state(state: PhotonGridState, path: str | Path) -> None:
    Path(path).write_bytes(dumps(state))


def read_grid_state(path: str | Path) -> PhotonGridState:
    return loads(Path(path).read_bytes())
