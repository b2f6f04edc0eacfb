"""Concrete finite groups given by a multiplication table.

Elements are the integers ``0..n-1``.  ``table[a, b]`` is the index of ``a*b``.
Conjugation follows the right-action convention ``h^g = g^-1 h g`` and the
commutator is ``[a, b] = a^-1 b^-1 a b``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import BudgetError, MixedParentError, ValidationError

# exponent-vector normal forms are searched only when the grid is this small
_NORMAL_FORM_BUDGET = 20_000
_SPOT_CHECK_TRIPLES = 20_000

_POWER_RE = re.compile(r"\^\s*(-?\d+)")


class Group:
    """Immutable finite group over element indices ``0..order-1``.

    ``generators`` is a sequence of ``(name, index)`` pairs and must generate
    the whole group.  All structural invariants (Latin square, identity,
    inverses, associativity) are checked at construction; associativity is
    exhaustive up to ``limits.verify_order`` and spot-checked above it.
    """

    def __init__(
        self,
        table,
        generators: Sequence[tuple[str, int]] = (),
        *,
        labels: Sequence[str] | None = None,
        name: str = "",
        limits: Limits = DEFAULT_LIMITS,
        verify: bool = True,
    ):
        T = np.array(table, dtype=np.int32)
        if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
            raise ValidationError("multiplication table must be a non-empty square array")
        n = T.shape[0]
        if n > limits.max_order:
            raise BudgetError("group order", n, limits.max_order)
        if T.min() < 0 or T.max() >= n:
            raise ValidationError("table entries out of range")
        _check_latin(T)

        ar = np.arange(n)
        ids = np.flatnonzero((T == ar).all(axis=1))
        if ids.size != 1 or not np.array_equal(T[:, ids[0]], ar):
            raise ValidationError("no two-sided identity")
        e = int(ids[0])
        inv = np.argmax(T == e, axis=1).astype(np.int32)
        if not np.all(T[inv, ar] == e):
            raise ValidationError("left and right inverses differ")
        if verify:
            _check_associative(T, limits.verify_order)

        T.setflags(write=False)
        inv.setflags(write=False)
        self.table = T
        self.order = n
        self.identity = e
        self.inverse = inv
        self.name = name
        self.limits = limits
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValidationError("labels must have one entry per element")

        gens = tuple((str(nm), int(g)) for nm, g in generators)
        names = [nm for nm, _ in gens]
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate generator names: {names}")
        for nm, g in gens:
            if not 0 <= g < n:
                raise ValidationError(f"generator {nm} out of range")
        self.generators = gens
        if int(closure(self, [g for _, g in gens]).sum()) != n:
            raise ValidationError("generators do not generate the group")

    def __repr__(self) -> str:
        return f"<Group {self.name or '?'} of order {self.order}>"

    # element arithmetic on indices

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, h: int, g: int) -> int:
        """``h^g = g^-1 h g``."""
        return int(self.table[self.table[self.inverse[g], h], g])

    def comm(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        T, inv = self.table, self.inverse
        return int(T[T[inv[a], inv[b]], T[a, b]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = self.identity
        for _ in range(k):
            r = int(self.table[r, a])
        return r

    def element(self, index: int) -> "Element":
        if not 0 <= index < self.order:
            raise ValidationError(f"element index {index} out of range")
        return Element(self, int(index))

    def elements(self) -> Iterator["Element"]:
        return (Element(self, i) for i in range(self.order))

    @property
    def gen_indices(self) -> list[int]:
        return [g for _, g in self.generators]

    @property
    def gen_names(self) -> list[str]:
        return [nm for nm, _ in self.generators]

    def generator(self, name: str) -> int:
        for nm, g in self.generators:
            if nm == name:
                return g
        raise ValidationError(f"unknown generator {name!r}")

    def renamed(self, names: Sequence[str]) -> "Group":
        """Same table, generators relabelled positionally."""
        if len(names) != len(self.generators):
            raise ValidationError("name count does not match generator count")
        return Group(
            self.table,
            list(zip(names, self.gen_indices)),
            labels=None,
            name=self.name,
            limits=self.limits,
            verify=False,
        )

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        ar = np.arange(n)
        cur = ar.copy()
        k = 1
        while (orders == 0).any():
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, ar]
            k += 1
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    # subgroups

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, np.ones(self.order, dtype=bool), self.gen_indices)

    @cached_property
    def trivial(self) -> "Subgroup":
        m = np.zeros(self.order, dtype=bool)
        m[self.identity] = True
        return Subgroup(self, m, [])

    def subgroup(self, elements: Iterable[int | "Element"]) -> "Subgroup":
        """Subgroup generated by ``elements``."""
        idx = [self._index_of(x) for x in elements]
        gens = _irredundant(self, idx)
        return Subgroup(self, closure(self, gens), gens)

    def _index_of(self, x) -> int:
        if isinstance(x, Element):
            if x.group is not self:
                raise MixedParentError("element belongs to a different group")
            return x.index
        x = int(x)
        if not 0 <= x < self.order:
            raise ValidationError(f"element index {x} out of range")
        return x

    # words

    @cached_property
    def _word_tokens(self) -> list[tuple[tuple[int, int], ...]]:
        return _element_words(self)

    def word(self, index: int) -> str:
        """Display word of an element in the generator names."""
        return render_word(
            [(self.generators[i][0], p) for i, p in self._word_tokens[index]],
            self.gen_names,
        )

    def parse_word(self, text: str) -> int:
        tokens = tokenize_word(text, self.gen_names)
        r = self.identity
        for nm, p in tokens:
            if nm == "1":
                continue
            r = self.mul(r, self.power(self.generator(nm), p))
        return r

    def label(self, index: int) -> str:
        if self.labels is not None:
            return self.labels[index]
        return self.word(index)


@dataclass(frozen=True)
class Element:
    group: Group
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise ValidationError("element index out of range")

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.group is not self.group:
            raise MixedParentError("elements belong to different groups")

    def __mul__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.group, self.group.mul(self.index, other.index))

    def __pow__(self, k: int) -> "Element":
        return Element(self.group, self.group.power(self.index, k))

    def inverse(self) -> "Element":
        return Element(self.group, self.group.inv(self.index))

    def __repr__(self) -> str:
        return f"Element({self.group.label(self.index)})"

    def __str__(self) -> str:
        return self.group.label(self.index)


def multiply(g: Element, h: Element) -> Element:
    return g * h


def inverse(g: Element) -> Element:
    return g.inverse()


def conjugate(h: Element, g: Element) -> Element:
    """``h^g = g^-1 h g``."""
    h._same(g)
    return Element(h.group, h.group.conj(h.index, g.index))


class Subgroup:
    """A subgroup of ``parent`` stored as a membership mask plus generators.

    Equality and hashing use the membership mask only, so two subgroups with
    different generator lists compare equal when they have the same elements.
    """

    __slots__ = ("parent", "members", "generators", "__dict__")

    def __init__(self, parent: Group, members, generators: Sequence[int] | None = None, *, check: bool = False):
        m = np.array(members, dtype=bool)
        if m.shape != (parent.order,):
            raise ValidationError("membership mask has the wrong length")
        m.setflags(write=False)
        self.parent = parent
        self.members = m
        if generators is None:
            generators = pick_generators(parent, m)
        self.generators = tuple(int(g) for g in generators)
        if check:
            self.validate()

    @cached_property
    def order(self) -> int:
        return int(self.members.sum())

    @cached_property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.members)

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.members).tobytes()

    def sort_key(self) -> tuple:
        return (self.order, tuple(self.elements.tolist()))

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements.tolist())

    def __contains__(self, x) -> bool:
        if isinstance(x, Element):
            if x.group is not self.parent:
                return False
            x = x.index
        return bool(self.members[int(x)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __le__(self, other: "Subgroup") -> bool:
        _same_parent(self, other)
        return not bool((self.members & ~other.members).any())

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def generator_words(self) -> list[str]:
        return [self.parent.word(g) for g in self.generators]

    def __repr__(self) -> str:
        gens = ", ".join(self.generator_words()) or "1"
        return f"<Subgroup <{gens}> of order {self.order} in {self.parent.name or 'group'}>"

    def validate(self) -> None:
        G = self.parent
        el = self.elements
        if not self.members[G.identity]:
            raise ValidationError("subgroup misses the identity")
        if not self.members[G.table[np.ix_(el, el)]].all():
            raise ValidationError("subgroup not closed under multiplication")
        if not self.members[G.inverse[el]].all():
            raise ValidationError("subgroup not closed under inverses")
        if not all(self.members[g] for g in self.generators):
            raise ValidationError("generator outside the subgroup")
        if not np.array_equal(closure(G, list(self.generators)), self.members):
            raise ValidationError("generators do not generate the subgroup")
        if G.order % self.order:
            raise ValidationError("subgroup order does not divide group order")


def _same_parent(a: Subgroup, b: Subgroup) -> None:
    if a.parent is not b.parent:
        raise MixedParentError("subgroups belong to different groups")


def closure(G: Group, gens: Sequence[int]) -> np.ndarray:
    """Membership mask of the subgroup generated by ``gens`` (worklist closure)."""
    members = np.zeros(G.order, dtype=bool)
    members[G.identity] = True
    g = np.unique(np.asarray(list(gens), dtype=np.int64))
    if g.size == 0:
        return members
    T = G.table
    frontier = np.array([G.identity])
    while frontier.size:
        cand = T[frontier[:, None], g[None, :]].ravel()
        cand = cand[~members[cand]]
        if cand.size == 0:
            break
        cand = np.unique(cand)
        members[cand] = True
        frontier = cand
    return members


def _irredundant(G: Group, gens: Sequence[int]) -> list[int]:
    """Drop generators already in the span of the earlier ones."""
    kept: list[int] = []
    cur = closure(G, [])
    for g in gens:
        if not cur[g]:
            kept.append(int(g))
            cur = closure(G, kept)
    return kept


def pick_generators(G: Group, members: np.ndarray) -> list[int]:
    """Greedy small generating set: highest-order elements first, ties by index."""
    el = np.flatnonzero(members)
    total = el.size
    if total <= 1:
        return []
    orders = G.element_orders[el]
    el = el[np.lexsort((el, -orders))]
    gens: list[int] = []
    cur = closure(G, [])
    for x in el:
        if not cur[x]:
            gens.append(int(x))
            cur = closure(G, gens)
            if int(cur.sum()) == total:
                break
    return gens


# structural checks

def _check_latin(T: np.ndarray) -> None:
    n = T.shape[0]
    offs = np.arange(n, dtype=np.int64)[:, None] * n
    rows = np.bincount((T + offs).ravel(), minlength=n * n)
    cols = np.bincount((T.T + offs).ravel(), minlength=n * n)
    if not (rows == 1).all() or not (cols == 1).all():
        raise ValidationError("multiplication table is not a Latin square")


def _check_associative(T: np.ndarray, cap: int, seed: int = 0) -> None:
    n = T.shape[0]
    if n <= cap:
        for a in range(n):
            # (a*b)*c vs a*(b*c) for all b, c
            if not np.array_equal(T[T[a]], T[a][T]):
                raise ValidationError(f"multiplication is not associative (first factor {a})")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, _SPOT_CHECK_TRIPLES))
    if not np.array_equal(T[T[a, b], c], T[a, T[b, c]]):
        raise ValidationError("multiplication is not associative (spot check)")


# centers, normalizers, conjugation

def center(G: Group) -> Subgroup:
    """``Z(G) = {g : gx = xg for all x}``."""
    T = G.table
    return Subgroup(G, (T == T.T).all(axis=1))


def centralizer(G: Group, H: Subgroup) -> Subgroup:
    _check_parent(G, H)
    T = G.table
    h = H.elements
    return Subgroup(G, (T[:, h] == T[h, :].T).all(axis=1))


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    """``N_G(H) = {g : H^g = H}``."""
    _check_parent(G, H)
    T, inv = G.table, G.inverse
    h = H.elements
    ar = np.arange(G.order)
    conj = T[T[inv[:, None], h[None, :]], ar[:, None]]
    return Subgroup(G, H.members[conj].all(axis=1))


def conjugate_subgroup(H: Subgroup, g: int | Element) -> Subgroup:
    """``H^g = {g^-1 h g : h in H}``."""
    G = H.parent
    g = G._index_of(g)
    T, inv = G.table, G.inverse
    img = T[T[inv[g], H.elements], g]
    m = np.zeros(G.order, dtype=bool)
    m[img] = True
    return Subgroup(G, m, [G.conj(x, g) for x in H.generators])


def normality_witness(G: Group, H: Subgroup) -> tuple[int, int] | None:
    """First ``(g, h)`` with ``g`` a generator of G and ``h^g`` outside H, or None.

    Conjugation by a product is a composition, so generators suffice.
    """
    _check_parent(G, H)
    T, inv = G.table, G.inverse
    h = H.elements
    for g in G.gen_indices:
        img = T[T[inv[g], h], g]
        bad = np.flatnonzero(~H.members[img])
        if bad.size:
            return g, int(h[bad[0]])
    return None


def _check_parent(G: Group, H: Subgroup) -> None:
    if H.parent is not G:
        raise MixedParentError("subgroup does not belong to this group")


# words

def tokenize_word(text: str, names: Sequence[str], offset: int = 0) -> list[tuple[str, int]]:
    """Split a word such as ``"r^2s"`` or ``"r^-1*s1*s2"`` into (name, power) pairs.

    Names are matched longest-first so juxtaposition works whenever the split
    is unambiguous.  ``1`` denotes the identity.  Column numbers in errors are
    1-based and shifted by ``offset``.
    """
    by_len = sorted(names, key=len, reverse=True)
    out: list[tuple[str, int]] = []
    i = 0
    text_len = len(text)
    while i < text_len:
        c = text[i]
        if c.isspace() or c in "*·":
            i += 1
            continue
        match = next((nm for nm in by_len if text.startswith(nm, i)), None)
        if match is None and c == "1":
            match = "1"
        if match is None:
            m = re.match(r"[A-Za-z][A-Za-z0-9_']*", text[i:])
            bad = m.group(0) if m else c
            raise ValidationError(
                f"column {offset + i + 1}: unknown generator {bad!r} (known: {', '.join(names) or 'none'})"
            )
        i += len(match)
        power = 1
        m = _POWER_RE.match(text, i)
        if m:
            power = int(m.group(1))
            i = m.end()
        out.append((match, power))
    return out


def render_word(tokens: Sequence[tuple[str, int]], names: Sequence[str]) -> str:
    merged: list[tuple[str, int]] = []
    for nm, p in tokens:
        if merged and merged[-1][0] == nm:
            merged[-1] = (nm, merged[-1][1] + p)
        else:
            merged.append((nm, p))
    merged = [(nm, p) for nm, p in merged if p != 0]
    if not merged:
        return "1"
    sep = "" if all(len(nm) == 1 for nm in names) else "*"
    return sep.join(nm if p == 1 else f"{nm}^{p}" for nm, p in merged)


def _element_words(G: Group) -> list[tuple[tuple[int, int], ...]]:
    """Display words: an ordered normal form ``g1^e1 g2^e2 ...`` with the smallest
    exponent sum (ties prefer earlier generators), falling back to BFS words."""
    n = G.order
    gens = G.gen_indices
    words: list[tuple[tuple[int, int], ...] | None] = [None] * n
    words[G.identity] = ()
    orders = [int(G.element_orders[g]) for g in gens]
    grid = 1
    for o in orders:
        grid *= o
    if gens and grid <= _NORMAL_FORM_BUDGET:
        best: dict[int, tuple] = {}
        pows = [[G.power(g, k) for k in range(o)] for g, o in zip(gens, orders)]
        for exps in itertools.product(*(range(o) for o in orders)):
            x = G.identity
            for gi, k in enumerate(exps):
                if k:
                    x = int(G.table[x, pows[gi][k]])
            rank = (sum(exps), tuple(-k for k in exps))
            if x not in best or rank < best[x][0]:
                best[x] = (rank, exps)
        for x, (_, exps) in best.items():
            words[x] = tuple((gi, k) for gi, k in enumerate(exps) if k)
    if any(w is None for w in words):
        queue = deque([G.identity])
        seen = {G.identity: ()}
        while queue:
            x = queue.popleft()
            for gi, g in enumerate(gens):
                y = int(G.table[x, g])
                if y not in seen:
                    seen[y] = seen[x] + ((gi, 1),)
                    queue.append(y)
        for x in range(n):
            if words[x] is None:
                words[x] = seen[x]
    return words  # type: ignore[return-value]
