"""Homomorphisms between table groups, quotients, and correspondence checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from .core import Group, Subgroup, normality_witness
from .errors import HomomorphismError, NotNormalError, ValidationError

_SPOT_CHECK_PAIRS = 50_000


class Homomorphism:
    """A total map ``domain -> codomain`` stored element by element."""

    def __init__(self, domain: Group, codomain: Group, mapping, *, check: bool = True):
        m = np.array(mapping, dtype=np.int64)
        if m.shape != (domain.order,):
            raise HomomorphismError("map must have one entry per domain element")
        if m.min(initial=0) < 0 or m.max(initial=0) >= codomain.order:
            raise HomomorphismError("map values out of range")
        m.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.map = m
        if check:
            self._verify()

    def _verify(self) -> None:
        D, C, m = self.domain, self.codomain, self.map
        if D.order <= D.limits.verify_order:
            bad = m[D.table] != C.table[m[:, None], m[None, :]]
            if bad.any():
                a, b = map(int, np.argwhere(bad)[0])
                raise HomomorphismError(f"f({a}*{b}) != f({a})*f({b})", (a, b))
            return
        rng = np.random.default_rng(0)
        a, b = rng.integers(0, D.order, size=(2, _SPOT_CHECK_PAIRS))
        bad = m[D.table[a, b]] != C.table[m[a], m[b]]
        # the generator edges pin the map down completely
        x = np.arange(D.order)
        for g in D.gen_indices:
            if (m[D.table[x, g]] != C.table[m[x], m[g]]).any():
                raise HomomorphismError(f"map is not compatible with generator {g}")
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            raise HomomorphismError("map is not a homomorphism", (int(a[k]), int(b[k])))

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def __repr__(self) -> str:
        return f"<Homomorphism {self.domain!r} -> {self.codomain!r}>"

    @cached_property
    def kernel(self) -> Subgroup:
        return Subgroup(self.domain, self.map == self.codomain.identity)

    @cached_property
    def image(self) -> Subgroup:
        return self.image_of(self.domain.whole)

    @property
    def injective(self) -> bool:
        return self.kernel.is_trivial

    @property
    def surjective(self) -> bool:
        return self.image.order == self.codomain.order

    def image_of(self, H: Subgroup) -> Subgroup:
        if H.parent is not self.domain:
            raise ValidationError("subgroup is not in the domain")
        mask = np.zeros(self.codomain.order, dtype=bool)
        mask[self.map[H.elements]] = True
        e = self.codomain.identity
        gens = [y for y in dict.fromkeys(int(self.map[g]) for g in H.generators) if y != e]
        return Subgroup(self.codomain, mask, gens)

    def preimage_of(self, W: Subgroup) -> Subgroup:
        return preimage_subgroup(self, W)

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``other ∘ self``."""
        if other.domain is not self.codomain:
            raise ValidationError("maps do not compose")
        return Homomorphism(self.domain, other.codomain, other.map[self.map], check=False)


def make_homomorphism(domain: Group, codomain: Group, generator_images: Mapping[str, int] | Sequence[int]) -> Homomorphism:
    """Extend an assignment on the domain's generators to a homomorphism.

    Extension walks the Cayley graph of the domain; a second path reaching an
    element with a different value means a defining relation is violated, and
    the offending (element, generator) pair is reported.
    """
    if isinstance(generator_images, Mapping):
        missing = [nm for nm in domain.gen_names if nm not in generator_images]
        if missing:
            raise HomomorphismError(f"no image given for generators {missing}")
        imgs = [int(generator_images[nm]) for nm in domain.gen_names]
    else:
        imgs = [int(x) for x in generator_images]
        if len(imgs) != len(domain.generators):
            raise HomomorphismError("one image per domain generator required")
    for y in imgs:
        if not 0 <= y < codomain.order:
            raise HomomorphismError(f"generator image {y} out of range")
    gens = domain.gen_indices
    m = np.full(domain.order, -1, dtype=np.int64)
    m[domain.identity] = codomain.identity
    queue = deque([domain.identity])
    while queue:
        x = queue.popleft()
        for g, y in zip(gens, imgs):
            z = domain.mul(x, g)
            val = codomain.mul(int(m[x]), y)
            if m[z] < 0:
                m[z] = val
                queue.append(z)
            elif m[z] != val:
                raise HomomorphismError(
                    f"inconsistent images: {domain.word(x)}*{domain.word(g)} has two values", (x, g)
                )
    return Homomorphism(domain, codomain, m)


def identity_map(G: Group) -> Homomorphism:
    return Homomorphism(G, G, np.arange(G.order), check=False)


def preimage_subgroup(f: Homomorphism, W: Subgroup) -> Subgroup:
    """``f^-1(W) = {a : f(a) in W}``; always contains ``ker f``."""
    if W.parent is not f.codomain:
        raise ValidationError("subgroup is not in the codomain")
    return Subgroup(f.domain, W.members[f.map])


def quotient(G: Group, N: Subgroup, *, name: str = "") -> tuple[Group, Homomorphism]:
    """Coset group ``G/N`` and its projection.

    Cosets are represented by their least element index and labelled ``wN``.
    """
    if N.parent is not G:
        raise ValidationError("N is not a subgroup of G")
    bad = normality_witness(G, N)
    if bad is not None:
        g, h = bad
        raise NotNormalError(
            f"N is not normal: conjugating {G.label(h)} by {G.label(g)} leaves N", g, h
        )
    reps_of = G.table[:, N.elements].min(axis=1)
    reps = np.unique(reps_of)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[reps] = np.arange(reps.size)
    proj = pos[reps_of]
    table = proj[G.table[reps[:, None], reps[None, :]]]
    if N.is_trivial:
        labels = list(G.labels) if G.labels is not None else None
    else:
        labels = [f"{G.label(int(r))}N" for r in reps]
    gens = [(nm, int(proj[g])) for nm, g in G.generators]
    Q = Group(table, gens, labels=labels, name=name or f"{G.name}/N", limits=G.limits, verify=False)
    return Q, Homomorphism(G, Q, proj, check=False)


def subgroup_as_group(H: Subgroup) -> tuple[Group, Homomorphism]:
    """Re-index a subgroup as a standalone group plus its inclusion map."""
    G = H.parent
    el = H.elements
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[el] = np.arange(el.size)
    table = pos[G.table[el[:, None], el[None, :]]]
    names = []
    for g in H.generators:
        w = G.word(g)
        names.append(w if w not in names else f"{w}_{len(names)}")
    labels = [G.label(int(x)) for x in el]
    K = Group(table, list(zip(names, (int(pos[g]) for g in H.generators))),
              labels=labels, name=f"<{', '.join(names) or '1'}>", limits=G.limits, verify=False)
    return K, Homomorphism(K, G, el, check=False)


@dataclass
class CorrespondenceReport:
    property: str
    bijective: bool
    domain_count: int
    codomain_count: int
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bijective and not self.counterexamples


def correspondence_check(f: Homomorphism, property: str) -> CorrespondenceReport:
    """Check ``K -> f(K)`` on subgroups containing ``ker f`` against the whole
    codomain lattice, and that ``property`` holds for K iff it holds for f(K).

    For ``subnormal`` the defects must also match.
    """
    from .embedding import is_abnormal_definition, is_normal_definition, subnormal_defect_oracle
    from .lattice import all_subgroups

    if not f.surjective:
        raise ValidationError("correspondence needs a surjective homomorphism")
    deciders = {
        "normal": lambda G, H: is_normal_definition(G, H).holds,
        "subnormal": lambda G, H: subnormal_defect_oracle(G, H).defect,
        "abnormal": lambda G, H: is_abnormal_definition(G, H).holds,
    }
    if property not in deciders:
        raise ValidationError(f"unknown property {property!r}")
    decide = deciders[property]
    D, C = f.domain, f.codomain
    ker = f.kernel
    upstairs = [K for K in all_subgroups(D) if ker <= K]
    downstairs = all_subgroups(C)
    images = [f.image_of(K) for K in upstairs]
    bijective = len({W.key for W in images}) == len(upstairs) and {W.key for W in images} == {W.key for W in downstairs}
    report = CorrespondenceReport(property, bijective, len(upstairs), len(downstairs))
    for K, W in zip(upstairs, images):
        a, b = decide(D, K), decide(C, W)
        if a != b:
            report.counterexamples.append((K, W, a, b))
    return report
