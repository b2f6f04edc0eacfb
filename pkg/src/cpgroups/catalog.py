"""Named small groups: C(n), D(n), Q8, Dic(n), S(n), A(n), Triv.

``D(n)`` has order ``n`` with generators ``r, s`` satisfying
``r^(n/2) = s^2 = 1, rsr = s``.  ``Dic(n)`` has order ``4n`` with ``a`` of
order ``2n``, ``b^2 = a^n`` and ``b^-1 a b = a^-1``.  Permutations compose
left to right: ``(p*q)(i) = q(p(i))``.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .core import Group
from .errors import BudgetError, ValidationError

_NAME_RE = re.compile(r"^\s*(C|D|S|A|Dic)\s*\(\s*(\d+)\s*\)\s*$|^\s*(Q8|Triv)\s*$")

MAX_PERMUTATION_DEGREE = 6


def catalog_group(name: str, *, limits: Limits = DEFAULT_LIMITS) -> Group:
    """Build a catalog group from an identifier such as ``"D(8)"`` or ``"Q8"``."""
    m = _NAME_RE.match(name)
    if not m:
        raise ValidationError(f"unknown catalog group {name!r}")
    if m.group(3):
        return quaternion8() if m.group(3) == "Q8" else cyclic(1)
    kind, n = m.group(1), int(m.group(2))
    builders = {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating, "Dic": dicyclic}
    return builders[kind](n, limits=limits)


def _guard(kind: str, order: int, limits: Limits) -> None:
    if order > limits.max_order:
        raise BudgetError(f"{kind} order", order, limits.max_order)


def cyclic(n: int, *, limits: Limits = DEFAULT_LIMITS) -> Group:
    if n < 1:
        raise ValidationError("C(n) needs n >= 1")
    _guard("C(n)", n, limits)
    ar = np.arange(n)
    table = (ar[:, None] + ar[None, :]) % n
    gens = [("x", 1)] if n > 1 else []
    labels = ["1"] + [("x" if k == 1 else f"x^{k}") for k in range(1, n)]
    return Group(table, gens, labels=labels, name=f"C({n})" if n > 1 else "Triv", limits=limits)


def dihedral(n: int, *, limits: Limits = DEFAULT_LIMITS) -> Group:
    if n < 4 or n % 2:
        raise ValidationError("D(n) needs even n >= 4 (n is the group order)")
    _guard("D(n)", n, limits)
    m = n // 2
    # index i + m*j  <->  r^i s^j
    i = np.arange(n) % m
    j = np.arange(n) // m
    sign = np.where(j == 1, -1, 1)
    ri = (i[:, None] + sign[:, None] * i[None, :]) % m
    rj = (j[:, None] + j[None, :]) % 2
    table = ri + m * rj
    labels = [_rs_label(a, b, "r", "s") for b in range(2) for a in range(m)]
    return Group(table, [("r", 1), ("s", m)], labels=labels, name=f"D({n})", limits=limits)


def dicyclic(n: int, *, limits: Limits = DEFAULT_LIMITS, names: tuple[str, str] = ("a", "b")) -> Group:
    if n < 1:
        raise ValidationError("Dic(n) needs n >= 1")
    _guard("Dic(n)", 4 * n, limits)
    m = 2 * n
    size = 2 * m
    # index i + m*j  <->  a^i b^j ; b a = a^-1 b ; b^2 = a^n
    i = np.arange(size) % m
    j = np.arange(size) // m
    sign = np.where(j == 1, -1, 1)
    ri = i[:, None] + sign[:, None] * i[None, :]
    both = (j[:, None] == 1) & (j[None, :] == 1)
    ri = (ri + np.where(both, n, 0)) % m
    rj = (j[:, None] + j[None, :]) % 2
    table = ri + m * rj
    labels = [_rs_label(a, b, *names) for b in range(2) for a in range(m)]
    gens = [(names[0], 1), (names[1], m)]
    name = "Q8" if n == 2 and names == ("i", "j") else f"Dic({n})"
    return Group(table, gens, labels=labels, name=name, limits=limits)


def quaternion8(*, limits: Limits = DEFAULT_LIMITS) -> Group:
    return dicyclic(2, limits=limits, names=("i", "j"))


def semidirect_cyclic(N: Group, n: int, phi, *, name: str = "", limits: Limits = DEFAULT_LIMITS) -> Group:
    """``N ⋊ C(n)`` where the generator ``t`` acts by ``t b t^-1 = phi(b)``.

    ``phi`` is an automorphism of N given as an index array with
    ``phi^n = id``; element ``a + |N|*j`` stands for ``a t^j``.
    """
    phi = np.asarray(phi, dtype=np.int64)
    m = N.order
    _guard("semidirect product", m * n, limits)
    powers = [np.arange(m)]
    for _ in range(n):
        powers.append(phi[powers[-1]])
    if not np.array_equal(powers[n], powers[0]):
        raise ValidationError("phi^n must be the identity")
    P = np.stack(powers[:n])  # P[j] = phi^j
    a, j = np.arange(m * n) % m, np.arange(m * n) // m
    # (a t^j)(b t^k) = a phi^j(b) t^(j+k)
    first = N.table[a[:, None], P[j[:, None], a[None, :]]]
    table = first + m * ((j[:, None] + j[None, :]) % n)
    gens = [(nm, g) for nm, g in N.generators] + [("t", N.identity + m)]
    return Group(table, gens, name=name or f"{N.name}:C({n})", limits=limits)


def _rs_label(a: int, b: int, r: str, s: str) -> str:
    parts = []
    if a:
        parts.append(r if a == 1 else f"{r}^{a}")
    if b:
        parts.append(s)
    return "".join(parts) or "1"


def _permutation_group(perms: list[tuple[int, ...]], gens: list[tuple[str, tuple[int, ...]]], name: str, limits: Limits) -> Group:
    P = np.array(perms, dtype=np.int64)
    m, deg = P.shape
    _guard(name, m, limits)
    base = deg ** np.arange(deg)[::-1]
    codes = P @ base
    order = np.argsort(codes)
    sorted_codes = codes[order]
    # (p*q)(x) = q(p(x))
    comp = P[np.arange(m)[None, :, None], P[:, None, :]]
    idx = order[np.searchsorted(sorted_codes, comp @ base)]
    lookup = {p: k for k, p in enumerate(perms)}
    labels = [_cycle_label(p) for p in perms]
    return Group(idx, [(nm, lookup[p]) for nm, p in gens], labels=labels, name=name, limits=limits)


def _cycle_label(p: tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        cyc = []
        x = s
        while x not in seen:
            seen.add(x)
            cyc.append(x + 1)
            x = p[x]
        cycles.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def _parity(p: tuple[int, ...]) -> int:
    inv = sum(1 for a, b in itertools.combinations(range(len(p)), 2) if p[a] > p[b])
    return inv % 2


def symmetric(n: int, *, limits: Limits = DEFAULT_LIMITS) -> Group:
    if not 1 <= n <= MAX_PERMUTATION_DEGREE:
        raise BudgetError("S(n) degree", n, MAX_PERMUTATION_DEGREE) if n > 0 else ValidationError("S(n) needs n >= 1")
    perms = list(itertools.permutations(range(n)))
    gens = []
    for k in range(n - 1):
        t = list(range(n))
        t[k], t[k + 1] = t[k + 1], t[k]
        gens.append((f"s{k + 1}", tuple(t)))
    return _permutation_group(perms, gens, f"S({n})", limits)


def alternating(n: int, *, limits: Limits = DEFAULT_LIMITS) -> Group:
    if not 1 <= n <= MAX_PERMUTATION_DEGREE:
        raise BudgetError("A(n) degree", n, MAX_PERMUTATION_DEGREE) if n > 0 else ValidationError("A(n) needs n >= 1")
    perms = [p for p in itertools.permutations(range(n)) if _parity(p) == 0]
    gens = []
    if n >= 3:
        # a = (1 2 3); b = (1 2 ... n) for odd n, (2 3 ... n) for even n
        a = (1, 2, 0) + tuple(range(3, n))
        gens.append(("a", a))
        if n >= 4:
            start = 0 if n % 2 else 1
            b = list(range(n))
            cyc = list(range(start, n))
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                b[x] = y
            gens.append(("b", tuple(b)))
    return _permutation_group(perms, gens, f"A({n})", limits)
