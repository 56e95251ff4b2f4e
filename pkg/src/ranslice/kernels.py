"""Kernel backend selection.

The Cython module ``_ckernels`` is used when it imports; otherwise, or when
``RANSLICE_BACKEND=python`` is set, the pure-Python ``_pykernels`` runs.
Both produce identical results; ``BACKENDS`` exposes each for comparison.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels
from .flat import EmbeddingState, FlatInstance

SIZE_KEY = _pykernels.SIZE_KEY
CUMULATIVE_KEY = _pykernels.CUMULATIVE_KEY

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None


class Backend:
    """Uniform entry points over one kernel module."""

    def __init__(self, name: str, module, use_lists: bool):
        self.name = name
        self._m = module
        self._lists = use_lists

    def __repr__(self) -> str:
        return f"Backend({self.name!r})"

    def _call(self, fn, head, flat, state, tail=()):
        if not self._lists:
            return fn(*head, *flat.problem_arrays(), *state.arrays(), *tail)
        arrays = state.arrays()
        lists = [a.tolist() for a in arrays]
        tail_lists = [a.tolist() for a in tail]
        out = fn(*head, *flat.problem_lists, *lists, *tail_lists)
        for arr, lst in zip(arrays, lists):
            arr[:] = lst
        for arr, lst in zip(tail, tail_lists):
            arr[:] = lst
        return out

    def embed_vnf(self, flat: FlatInstance, u: int, state: EmbeddingState) -> int:
        return self._call(self._m.embed_vnf, (u,), flat, state)

    def embed_group(self, flat: FlatInstance, u: int, state: EmbeddingState,
                    most_negative: bool = False) -> int:
        return self._call(self._m.embed_group, (u, most_negative), flat, state)

    def run_vnf_order(self, flat: FlatInstance, order: np.ndarray, state: EmbeddingState) -> int:
        order = np.ascontiguousarray(order, dtype=np.int64)
        head = (order.tolist() if self._lists else order,)
        return self._call(self._m.run_vnf_order, head, flat, state)

    def run_group_order(self, flat: FlatInstance, visit: np.ndarray, state: EmbeddingState,
                        most_negative: bool = False) -> int:
        visit = np.ascontiguousarray(visit, dtype=np.int64)
        head = (visit.tolist() if self._lists else visit, most_negative)
        return self._call(self._m.run_group_order, head, flat, state)

    def select_by_difference(self, flat: FlatInstance, cands, target: int,
                             node_res: np.ndarray, most_negative: bool = False) -> int:
        cands = sorted(int(c) for c in cands)
        if self._lists:
            return self._m.select_by_difference(cands, int(target), most_negative,
                                                flat.problem_lists[0], flat.problem_lists[1],
                                                node_res.tolist())
        return self._m.select_by_difference(np.array(cands, dtype=np.int64), int(target),
                                            most_negative, flat.sub_ptr, flat.sub_adj, node_res)

    def build_clusters(self, flat: FlatInstance, mode: int):
        n = flat.n_vnfs
        visit = np.zeros(n, dtype=np.int64)
        ptr = np.zeros(n + 1, dtype=np.int64)
        keys = np.zeros(max(n, 1), dtype=np.int64)
        if self._lists:
            v, p, k = [0] * n, [0] * (n + 1), [0] * max(n, 1)
            c = self._m.build_clusters(mode, flat.problem_lists[5], flat.problem_lists[6],
                                       flat.problem_lists[4], v, p, k)
            visit[:], ptr[:], keys[:] = v, p, k
        else:
            c = self._m.build_clusters(mode, flat.vnf_ptr, flat.vnf_adj, flat.vnf_cum,
                                       visit, ptr, keys)
        return visit, ptr[:c + 1].copy(), keys[:c].copy()

    def exact_search(self, flat: FlatInstance, state: EmbeddingState, best_host: np.ndarray,
                     max_expansions: int):
        return self._call(self._m.exact_search, (int(max_expansions),), flat, state,
                          (best_host,))


BACKENDS: dict[str, Backend] = {"python": Backend("python", _pykernels, use_lists=True)}
if _ckernels is not None:
    BACKENDS["compiled"] = Backend("compiled", _ckernels, use_lists=False)


def _select() -> Backend:
    wanted = os.environ.get("RANSLICE_BACKEND", "").strip().lower()
    if wanted:
        if wanted not in BACKENDS:
            raise ImportError(f"RANSLICE_BACKEND={wanted!r} is not available; "
                              f"have {sorted(BACKENDS)}")
        return BACKENDS[wanted]
    return BACKENDS.get("compiled", BACKENDS["python"])


backend: Backend = _select()
