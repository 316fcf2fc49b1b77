"""
AXRG checkpoint codec.

Layout (little-endian):
    magic      4 bytes  b"AXRG"
    version    u32
    n_r, n_z   u32, u32
    r_max      f64
    z_half     f64
    t          f64
    u_r, u_theta, u_z, pressure   n_r*n_z f64 each, row-major (r index slowest)
"""

import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from domains.core.errors import CheckpointFormatError
from .schemas import CylGrid

logger = logging.getLogger(__name__)

MAGIC = b"AXRG"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sIIIddd")
_COMPONENTS = ("u_r", "u_theta", "u_z", "pressure")


@dataclass(frozen=True)
class CheckpointData:
    """Primitive variables read back from a checkpoint."""
    grid: CylGrid
    t: float
    u_r: np.ndarray
    u_theta: np.ndarray
    u_z: np.ndarray
    pressure: np.ndarray


def encode_checkpoint(grid: CylGrid, t: float, u_r, u_theta, u_z, pressure) -> bytes:
    header = _HEADER.pack(MAGIC, FORMAT_VERSION, grid.n_r, grid.n_z, grid.r_max, grid.z_half, t)
    body = b"".join(
        np.ascontiguousarray(a, dtype="<f8").reshape(grid.shape).tobytes(order="C")
        for a in (u_r, u_theta, u_z, pressure)
    )
    return header + body


def decode_checkpoint(blob: bytes) -> CheckpointData:
    if len(blob) < _HEADER.size:
        raise CheckpointFormatError(f"checkpoint too short: {len(blob)} bytes")
    magic, version, n_r, n_z, r_max, z_half, t = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise CheckpointFormatError(f"bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise CheckpointFormatError(f"unsupported checkpoint version {version}")
    grid = CylGrid(r_max=r_max, z_half=z_half, n_r=n_r, n_z=n_z)
    count = n_r * n_z
    expected = _HEADER.size + 4 * count * 8
    if len(blob) != expected:
        raise CheckpointFormatError(f"checkpoint has {len(blob)} bytes, expected {expected}")
    arrays = {}
    for k, name in enumerate(_COMPONENTS):
        arrays[name] = np.frombuffer(
            blob, dtype="<f8", count=count, offset=_HEADER.size + k * count * 8
        ).reshape(grid.shape).astype(np.float64)
    return CheckpointData(grid=grid, t=t, **arrays)


def write_checkpoint(path: Union[str, Path], grid: CylGrid, t: float, u_r, u_theta, u_z, pressure) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_checkpoint(grid, t, u_r, u_theta, u_z, pressure))
    logger.debug(f"Wrote checkpoint {path} at t={t}")
    return path


def read_checkpoint(path: Union[str, Path]) -> CheckpointData:
    return decode_checkpoint(Path(path).read_bytes())
