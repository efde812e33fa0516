"""Min-sum subset convolution.

The default is the direct loop over all ``(Y, Z subset Y)`` pairs, run by the
selected kernel backend. :func:`subset_convolution_fast` is the optional ranked
zeta/Moebius variant: values become monomials ``x**f(Z)``, the subset
convolution is taken over the integer polynomial ring and the answer is the
lowest degree with a nonzero coefficient. Polynomials are packed into Python
integers (Kronecker substitution), so the arithmetic is exact.
"""

from __future__ import annotations

import numpy as np

from .. import kernels


def _as_rows(f, u: int) -> np.ndarray:
    arr = np.asarray(f, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.shape[1] != 1 << u:
        raise ValueError(f"expected {1 << u} subset values, got {arr.shape[1]}")
    return np.ascontiguousarray(arr)


def subset_convolution_minsum(f, g, u: int, cap: int, backend: str | None = None) -> np.ndarray:
    """``(f*g)(Y) = min(cap, min_{Z subset Y} f(Z) + g(Y \\ Z))`` for every ``Y``.

    ``f`` and ``g`` are arrays of length ``2**u`` (or batches of rows of that
    length). Values must be nonnegative and small enough that pairwise sums
    fit in int64.
    """
    single = np.asarray(f).ndim == 1
    F, G = _as_rows(f, u), _as_rows(g, u)
    if F.shape != G.shape:
        raise ValueError("f and g must have the same shape")
    out = kernels.get_backend(backend).subset_convolve_batch(F, G, u, int(cap))
    out = np.asarray(out)
    return out[0] if single else out


def _popcounts(u: int) -> np.ndarray:
    pc = np.zeros(1 << u, dtype=np.int64)
    for bit in range(u):
        pc[1 << bit: 1 << (bit + 1)] = pc[: 1 << bit] + 1
    return pc


def _ranked_zeta(vals: np.ndarray, u: int, cap: int, shift: int, pc: np.ndarray) -> np.ndarray:
    size = 1 << u
    ranked = np.zeros((u + 1, size), dtype=object)
    ranked[:] = 0
    # a value at the cap can only produce sums at the cap: leave it out
    mono = np.array([1 << (shift * int(x)) if x < cap else 0 for x in vals], dtype=object)
    ranked[pc, np.arange(size)] = mono
    for bit in range(u):
        view = ranked.reshape(u + 1, -1, 2, 1 << bit)
        view[:, :, 1, :] += view[:, :, 0, :]
    return ranked


def _one_fast(f: np.ndarray, g: np.ndarray, u: int, cap: int) -> np.ndarray:
    size = 1 << u
    # every coefficient counts disjoint pairs, at most 3**u of them
    shift = max(1, (3 ** u).bit_length() + 1)
    pc = _popcounts(u)
    fz = _ranked_zeta(f, u, cap, shift, pc)
    gz = _ranked_zeta(g, u, cap, shift, pc)
    # only degrees below cap matter; reducing mod 2**(shift*cap) is a ring map,
    # so the truncation survives the signed Moebius step
    low = (1 << (shift * cap)) - 1
    h = np.zeros((u + 1, size), dtype=object)
    h[:] = 0
    for r in range(u + 1):
        for j in range(r + 1):
            h[r] += fz[j] * gz[r - j]
        h[r] &= low
    for bit in range(u):
        view = h.reshape(u + 1, -1, 2, 1 << bit)
        view[:, :, 1, :] -= view[:, :, 0, :]
    out = np.empty(size, dtype=np.int64)
    for y in range(size):
        poly = int(h[pc[y], y]) & low
        out[y] = ((poly & -poly).bit_length() - 1) // shift if poly else cap
    return out


def subset_convolution_fast(f, g, u: int, cap: int) -> np.ndarray:
    """Ranked-transform evaluation; agrees exactly with the direct loop.

    Inputs are clamped to ``cap`` first, which cannot change a result that is
    itself clamped to ``cap``.
    """
    single = np.asarray(f).ndim == 1
    F, G = _as_rows(f, u), _as_rows(g, u)
    if F.shape != G.shape:
        raise ValueError("f and g must have the same shape")
    out = np.stack([_one_fast(F[r], G[r], u, int(cap)) for r in range(F.shape[0])])
    return out[0] if single else out
