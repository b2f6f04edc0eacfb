"""Isomorphism testing for small table groups and human-readable type labels."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .core import Group, center, pick_generators
from .errors import BudgetError

LABEL_ORDER_LIMIT = 16

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    order_histogram: tuple[tuple[int, int], ...]
    center_order: int
    derived_length: int  # -1 when not solvable
    exponent: int

    def describe(self) -> str:
        hist = ",".join(f"{o}:{c}" for o, c in self.order_histogram)
        dl = "ns" if self.derived_length < 0 else str(self.derived_length)
        return f"order{self.order}[{'ab' if self.abelian else 'nab'};Z{self.center_order};dl{dl};exp{self.exponent};{hist}]"


def fingerprint(G: Group) -> GroupFingerprint:
    from .lattice import derived_series

    vals, counts = np.unique(G.element_orders, return_counts=True)
    ds = derived_series(G)
    return GroupFingerprint(
        order=G.order,
        abelian=G.is_abelian,
        order_histogram=tuple(zip(vals.tolist(), counts.tolist())),
        center_order=center(G).order,
        derived_length=ds.length if ds.solvable else -1,
        exponent=G.exponent,
    )


def _centralizer_sizes(G: Group) -> np.ndarray:
    T = G.table
    return (T == T.T).sum(axis=1)


def _extend(G: Group, H: Group, gens: list[int], imgs: list[int]) -> np.ndarray | None:
    """Map ``<gens>`` into H by walking the Cayley graph; None on inconsistency
    or non-injectivity."""
    m = np.full(G.order, -1, dtype=np.int64)
    m[G.identity] = H.identity
    used = np.zeros(H.order, dtype=bool)
    used[H.identity] = True
    queue = deque([G.identity])
    TG, TH = G.table, H.table
    while queue:
        x = queue.popleft()
        mx = m[x]
        for g, y in zip(gens, imgs):
            z = TG[x, g]
            val = TH[mx, y]
            if m[z] < 0:
                if used[val]:
                    return None
                m[z] = val
                used[val] = True
                queue.append(z)
            elif m[z] != val:
                return None
    return m


def find_isomorphism(G: Group, H: Group, *, limits: Limits = DEFAULT_LIMITS) -> np.ndarray | None:
    """An isomorphism ``G -> H`` as an index array, or None.

    Backtracks over images of a greedy generating set of G, restricted to
    elements of H with matching element order and centralizer size; every
    partial assignment must extend to an injective homomorphism on the
    subgroup generated so far.
    """
    cap = limits.max_iso
    if max(G.order, H.order) > cap:
        raise BudgetError("isomorphism test order", max(G.order, H.order), cap)
    if G.order != H.order:
        return None
    if G.order == 1:
        return np.array([H.identity])
    if fingerprint(G) != fingerprint(H):
        return None
    gens = pick_generators(G, np.ones(G.order, dtype=bool))
    cg, ch = _centralizer_sizes(G), _centralizer_sizes(H)
    og, oh = G.element_orders, H.element_orders
    cands = [np.flatnonzero((oh == og[g]) & (ch == cg[g])).tolist() for g in gens]

    def search(k: int, imgs: list[int]) -> np.ndarray | None:
        if k == len(gens):
            m = _extend(G, H, gens, imgs)
            return m if m is not None and (m >= 0).all() else None
        for y in cands[k]:
            trial = imgs + [y]
            if _extend(G, H, gens[: k + 1], trial) is None:
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    return search(0, [])


def are_isomorphic(G: Group, H: Group, *, limits: Limits = DEFAULT_LIMITS) -> bool:
    return find_isomorphism(G, H, limits=limits) is not None


def _abelian_invariants(n: int, smallest: int = 2) -> list[list[int]]:
    """Invariant-factor lists ``d1 | d2 | ...`` with product n."""
    if n == 1:
        return [[]]
    out = []
    for d in range(smallest, n + 1):
        if n % d:
            continue
        for rest in _abelian_invariants(n // d, d):
            if not rest or rest[0] % d == 0:
                out.append([d] + rest)
    return out


def _abelian_label(factors: list[int]) -> str:
    if factors == [2, 2]:
        return "V4"
    parts = []
    for d in sorted(set(factors), reverse=True):
        k = factors.count(d)
        parts.append(f"C{d}" + (str(k).translate(_SUPERSCRIPTS) if k > 1 else ""))
    return "×".join(parts)


@lru_cache(maxsize=None)
def label_catalog() -> tuple[tuple[str, Group, GroupFingerprint], ...]:
    """Named reference groups of order <= 16, generated programmatically."""
    from .catalog import alternating, cyclic, dicyclic, dihedral, quaternion8, semidirect_cyclic
    from .products import CentralProductSpec, direct_product, external_central_product

    out: list[tuple[str, Group]] = [("1", cyclic(1))]
    for n in range(2, LABEL_ORDER_LIMIT + 1):
        for factors in _abelian_invariants(n):
            G = cyclic(factors[0])
            for d in factors[1:]:
                G = direct_product(G, cyclic(d)).group
            out.append((_abelian_label(factors), G))
    for n in range(6, LABEL_ORDER_LIMIT + 1, 2):
        out.append(("S3" if n == 6 else f"D{n}", dihedral(n)))
    q8 = quaternion8()
    d8 = dihedral(8)
    c2, c4 = cyclic(2), cyclic(4)
    out.append(("Q8", q8))
    out.append(("Dic3", dicyclic(3)))
    out.append(("Q16", dicyclic(4)))
    out.append(("A4", alternating(4)))
    out.append(("C2×D8", direct_product(c2, d8).group))
    out.append(("C2×Q8", direct_product(c2, q8).group))
    c8 = cyclic(8)
    out.append(("SD16", semidirect_cyclic(c8, 2, (3 * np.arange(8)) % 8)))
    out.append(("M16", semidirect_cyclic(c8, 2, (5 * np.arange(8)) % 8)))
    out.append(("C4⋊C4", semidirect_cyclic(c4, 4, (-np.arange(4)) % 4)))
    v4 = direct_product(c2, c2)
    swap = np.array([v4.pair(b, a) for a in range(2) for b in range(2)])
    out.append(("C2²⋊C4", semidirect_cyclic(v4.group, 4, swap)))
    r2 = d8.parse_word("r^2")
    out.append(("D8∘C4", external_central_product(CentralProductSpec(d8, c4, [(r2, 2)]), verify=False).G))
    return tuple((label, G, fingerprint(G)) for label, G in out)


def identify(G: Group, *, limits: Limits = DEFAULT_LIMITS) -> str:
    """Isomorphism-type label, or a fingerprint string when no catalog entry matches."""
    fp = fingerprint(G)
    if G.order <= LABEL_ORDER_LIMIT:
        for label, ref, ref_fp in label_catalog():
            if ref_fp == fp and are_isomorphic(G, ref, limits=limits):
                return label
    return fp.describe()
