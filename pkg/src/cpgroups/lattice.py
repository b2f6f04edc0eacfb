"""Subgroup-lattice operations: generation, joins, commutators, derived series,
and exhaustive subgroup enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .core import Element, Group, Subgroup, _irredundant, _same_parent, closure, conjugate_subgroup
from .errors import BudgetError, ValidationError


def generated_subgroup(G: Group, S: Iterable[int | Element]) -> Subgroup:
    """Smallest subgroup containing ``S``."""
    return G.subgroup(S)


def join(A: Subgroup, B: Subgroup) -> Subgroup:
    _same_parent(A, B)
    if B <= A:
        return A
    if A <= B:
        return B
    G = A.parent
    gens = _irredundant(G, list(A.generators) + list(B.generators))
    return Subgroup(G, closure(G, gens), gens)


def intersect(A: Subgroup, B: Subgroup) -> Subgroup:
    _same_parent(A, B)
    return Subgroup(A.parent, A.members & B.members)


def normal_closure(H: Subgroup, K: Subgroup) -> Subgroup:
    """``<H^K>``, the smallest subgroup containing H and normalised by K."""
    _same_parent(H, K)
    return _close_under_conjugation(H.parent, list(H.generators), K.generators)


def _close_under_conjugation(G: Group, seeds: Sequence[int], conjugators: Sequence[int]) -> Subgroup:
    T, inv = G.table, G.inverse
    gens = _irredundant(G, seeds)
    members = closure(G, gens)
    work = list(gens)
    while work:
        x = work.pop()
        for c in conjugators:
            y = int(T[T[inv[c], x], c])
            if not members[y]:
                gens.append(y)
                work.append(y)
                members = closure(G, gens)
    return Subgroup(G, members, gens)


def commutator_subgroup(A: Subgroup, B: Subgroup) -> Subgroup:
    """``[A, B]``, generated by all ``[a, b]`` with ``a`` in A, ``b`` in B.

    Seeds with commutators of generator pairs and closes under conjugation by
    ``<A, B>``; the result is the normal closure in ``<A, B>`` of those seeds,
    which equals ``[A, B]``.
    """
    _same_parent(A, B)
    G = A.parent
    seeds = [G.comm(a, b) for a in A.generators for b in B.generators]
    seeds = [x for x in dict.fromkeys(seeds) if x != G.identity]
    if not seeds:
        return G.trivial
    return _close_under_conjugation(G, seeds, A.generators + B.generators)


def commutator_subgroup_bruteforce(A: Subgroup, B: Subgroup) -> Subgroup:
    """All-pairs version of :func:`commutator_subgroup`, used as a cross-check."""
    _same_parent(A, B)
    G = A.parent
    T, inv = G.table, G.inverse
    a = A.elements[:, None]
    b = B.elements[None, :]
    comms = np.unique(T[T[inv[a], inv[b]], T[a, b]])
    return G.subgroup(comms.tolist())


def iterated_commutator(U: Subgroup, H: Subgroup, r: int) -> Subgroup:
    """Left-nested ``[U, H, ..., H]`` with ``r`` copies of H; ``r = 0`` gives U."""
    if r < 0:
        raise ValidationError("iterated commutator length must be non-negative")
    _same_parent(U, H)
    X = U
    for _ in range(r):
        if X.is_trivial:
            break
        X = commutator_subgroup(X, H)
    return X


@dataclass(frozen=True)
class DerivedSeries:
    terms: tuple[Subgroup, ...]
    stabilized: bool
    solvable: bool

    @property
    def length(self) -> int:
        """Derived length for solvable groups (number of strict steps to 1)."""
        return len(self.terms) - 1


def derived_series(G: Group | Subgroup) -> DerivedSeries:
    X = G.whole if isinstance(G, Group) else G
    terms = [X]
    while True:
        Y = commutator_subgroup(X, X)
        if Y == X:
            break
        terms.append(Y)
        X = Y
        if Y.is_trivial:
            break
    return DerivedSeries(tuple(terms), True, terms[-1].is_trivial)


def is_solvable(G: Group | Subgroup) -> bool:
    return derived_series(G).solvable


def cyclic_subgroups(G: Group) -> list[Subgroup]:
    seen: dict[bytes, Subgroup] = {}
    for g in range(G.order):
        m = closure(G, [g])
        H = Subgroup(G, m, [g] if g != G.identity else [])
        if H.key not in seen:
            seen[H.key] = H
    return sorted(seen.values(), key=Subgroup.sort_key)


def all_subgroups(G: Group, *, max_enum: int | None = None, limits: Limits = DEFAULT_LIMITS) -> list[Subgroup]:
    """Every subgroup of G, without duplicates, ordered by (order, elements).

    Starts from the cyclic subgroups and joins until nothing new appears.  Every
    subgroup is a join of cyclic ones, so joining each found subgroup with each
    cyclic subgroup reaches the same fixed point as joining all pairs.
    """
    cap = limits.max_enum if max_enum is None else max_enum
    if G.order > cap:
        raise BudgetError("subgroup enumeration group order", G.order, cap)
    cyclics = cyclic_subgroups(G)
    found: dict[bytes, Subgroup] = {H.key: H for H in cyclics}
    frontier = list(cyclics)
    while frontier:
        new: list[Subgroup] = []
        for H in frontier:
            for C in cyclics:
                if C <= H:
                    continue
                J = join(H, C)
                if J.key not in found:
                    found[J.key] = J
                    new.append(J)
        frontier = new
    return sorted(found.values(), key=Subgroup.sort_key)


def maximal_subgroups(lattice: Sequence[Subgroup]) -> list[Subgroup]:
    """Proper subgroups of the top element not contained in another proper one."""
    top = max(lattice, key=lambda H: H.order)
    proper = [H for H in lattice if H.order < top.order]
    return [H for H in proper if not any(H < K for K in proper)]


def conjugates(H: Subgroup) -> list[Subgroup]:
    G = H.parent
    seen: dict[bytes, Subgroup] = {}
    for g in range(G.order):
        K = conjugate_subgroup(H, g)
        seen.setdefault(K.key, K)
    return list(seen.values())
