"""Deterministic compensated reductions.

Terms are combined in a fixed binary tree; every addition is an error-free
two-sum whose rounding error is carried alongside, so the result depends only on
the term order and never on how evaluation points were batched.
"""
import numpy as np


def two_sum(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Error-free transformation: u + v = s + t exactly."""
    s = u + v
    up = s - v
    vpp = s - up
    up = up - u
    vpp = vpp - v
    return s, -(up + vpp)


def pairwise_reduce(
    values: np.ndarray, comp: np.ndarray | None = None, *, axis: int = -1
) -> tuple[np.ndarray, np.ndarray]:
    """Reduce ``values`` along ``axis`` pairwise; returns (sum, carried error)."""
    s = np.moveaxis(np.asarray(values, dtype=float), axis, -1)
    c = np.zeros_like(s) if comp is None else np.moveaxis(np.asarray(comp, dtype=float), axis, -1)
    if s.shape[-1] == 0:
        return np.zeros(s.shape[:-1]), np.zeros(s.shape[:-1])
    while s.shape[-1] > 1:
        if s.shape[-1] % 2:
            pad = [(0, 0)] * (s.ndim - 1) + [(0, 1)]
            s = np.pad(s, pad)
            c = np.pad(c, pad)
        s, t = two_sum(s[..., 0::2], s[..., 1::2])
        c = c[..., 0::2] + c[..., 1::2] + t
    return s[..., 0], c[..., 0]


def pairwise_sum(values: np.ndarray, *, axis: int = -1) -> np.ndarray:
    s, c = pairwise_reduce(values, axis=axis)
    return s + c
