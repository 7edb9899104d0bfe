"""Pure-Python (numpy) implementation of the scan kernels.

Used when the compiled ``_kernels`` extension is unavailable or disabled with
``FIXLOCUS_PURE_PYTHON=1``.  Both implementations share one contract:

* permutations are rows of a C-contiguous ``intc`` array, 0-based images;
* the product ``p*q`` applies ``p`` first, i.e. ``(p*q)[x] == q[p[x]]``;
* ``w^-1 g w`` is therefore the row ``x -> w[g[w_inv[x]]]``.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _void_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype=np.intc)
    return rows.view(np.dtype((np.void, rows.shape[1] * rows.itemsize))).ravel()


def closure(gens: np.ndarray, cap: int) -> np.ndarray | None:
    """Rows of the group generated by ``gens``; ``None`` once more than ``cap`` are found."""
    gens = np.ascontiguousarray(gens, dtype=np.intc)
    d = gens.shape[1]
    identity = np.arange(d, dtype=np.intc)
    seen = {identity.tobytes()}
    rows = [identity]
    if cap < 1:
        return None
    frontier = identity[None, :]
    while len(frontier):
        products = gens[:, frontier].reshape(-1, d)
        fresh = []
        for row in products:
            key = row.tobytes()
            if key not in seen:
                if len(rows) >= cap:
                    return None
                seen.add(key)
                rows.append(row)
                fresh.append(row)
        frontier = np.array(fresh, dtype=np.intc).reshape(-1, d)
    return np.array(rows, dtype=np.intc).reshape(-1, d)


def conjugates(table: np.ndarray, inv_table: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Row ``w`` of the result is ``w^-1 g w`` for row ``w`` of ``table``."""
    return np.take_along_axis(table, g[inv_table], axis=1)


def conjugator_mask(table: np.ndarray, inv_table: np.ndarray, g: np.ndarray,
                    targets: np.ndarray) -> np.ndarray:
    """Boolean mask of the ``w`` with ``w^-1 g w`` among the rows of ``targets``."""
    if len(targets) == 0:
        return np.zeros(len(table), dtype=bool)
    conj = conjugates(table, inv_table, g)
    return np.isin(_void_rows(conj), _void_rows(targets))


def first_conjugator(table: np.ndarray, inv_table: np.ndarray, g: np.ndarray,
                     targets: np.ndarray) -> int:
    """Index of the first ``w`` with ``w^-1 g w`` in ``targets``, or -1."""
    mask = conjugator_mask(table, inv_table, g, targets)
    hits = np.flatnonzero(mask)
    return int(hits[0]) if len(hits) else -1
