"""Normality, subnormality (with defect) and abnormality of subgroups.

Each property has a definition-level oracle that works in any group, plus
commutator- and preimage-based deciders for subgroups of a central product
``G = U1 U2``.  :func:`classify_subgroups` runs all of them on every subgroup
and refuses to report if two methods disagree.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .catalog import cyclic
from .config import DEFAULT_LIMITS, Limits
from .core import Group, Subgroup, closure, normality_witness, normalizer
from .errors import MethodDisagreement, ValidationError
from .lattice import all_subgroups, commutator_subgroup, derived_series, intersect, normal_closure
from .morphisms import preimage_subgroup, subgroup_as_group
from .products import CentralProduct, CentralProductSpec, external_central_product

NORMAL = "normal"
SUBNORMAL = "subnormal"
ABNORMAL = "abnormal"

DEFINITION = "definition"
CHARACTERIZATION = "characterization"
PREIMAGE = "preimage"


@dataclass(frozen=True)
class EmbeddingVerdict:
    """Outcome of one decision procedure.

    ``holds`` is ``None`` when the procedure's hypothesis is not met (the
    solvability requirement of the central-product abnormality test); such a
    verdict refuses to be used as a boolean.
    """

    property: str
    holds: bool | None
    method: str
    defect: int | None = None
    witness: tuple[int, ...] | None = None
    note: str = ""

    def __bool__(self) -> bool:
        if self.holds is None:
            raise ValueError(f"{self.method} verdict for {self.property}: hypothesis not met")
        return self.holds

    @property
    def hypothesis_met(self) -> bool:
        return self.holds is not None


def _check(G: Group, H: Subgroup) -> None:
    if H.parent is not G:
        raise ValidationError("subgroup does not belong to the group")


def _first_outside(X: Subgroup, M: Subgroup) -> int:
    return int(np.flatnonzero(X.members & ~M.members)[0])


def _commutator_witness(U: Subgroup, H: Subgroup, allowed: Subgroup) -> tuple[int, int, int]:
    """``(u, h, [u, h])`` with the commutator outside ``allowed``."""
    G = U.parent
    for u in U.generators:
        for h in H.generators:
            c = G.comm(u, h)
            if c not in allowed:
                return u, h, c
    T, inv = G.table, G.inverse
    a = U.elements[:, None]
    b = H.elements[None, :]
    comms = T[T[inv[a], inv[b]], T[a, b]]
    i, j = np.argwhere(~allowed.members[comms])[0]
    return int(U.elements[i]), int(H.elements[j]), int(comms[i, j])


# normality

def is_normal_definition(G: Group, H: Subgroup) -> EmbeddingVerdict:
    """``H^g = H`` for every generator ``g`` of G; witness ``(g, h)``."""
    _check(G, H)
    bad = normality_witness(G, H)
    if bad is None:
        return EmbeddingVerdict(NORMAL, True, DEFINITION)
    return EmbeddingVerdict(NORMAL, False, DEFINITION, witness=bad)


def is_normal_characterization(cp: CentralProduct, H: Subgroup) -> EmbeddingVerdict:
    """``[U_i, H] <= U_i ∩ H`` for both factors; witness ``(u, h, [u, h])``."""
    _check(cp.G, H)
    for i, U in ((1, cp.U1), (2, cp.U2)):
        allowed = intersect(U, H)
        if not commutator_subgroup(U, H) <= allowed:
            return EmbeddingVerdict(
                NORMAL, False, CHARACTERIZATION,
                witness=_commutator_witness(U, H, allowed), note=f"fails for factor {i}",
            )
    return EmbeddingVerdict(NORMAL, True, CHARACTERIZATION)


def is_normal_preimage(cp: CentralProduct, H: Subgroup) -> EmbeddingVerdict:
    """Normality of ``K = eps^-1(H)`` in ``D = V1 x V2`` via
    ``[K, Vbar_i] <= K ∩ Vbar_i``; the witness lives in D."""
    _check(cp.G, H)
    K = preimage_subgroup(cp.epsilon, H)
    for i, Vbar in ((1, cp.Vbar1), (2, cp.Vbar2)):
        allowed = intersect(K, Vbar)
        if not commutator_subgroup(K, Vbar) <= allowed:
            return EmbeddingVerdict(
                NORMAL, False, PREIMAGE,
                witness=_commutator_witness(Vbar, K, allowed), note=f"fails for factor {i} in D",
            )
    return EmbeddingVerdict(NORMAL, True, PREIMAGE)


# subnormality

def normal_closure_series(G: Group, H: Subgroup) -> list[Subgroup]:
    """``G = H_0 >= H_1 >= ...`` with ``H_{k+1} = <H^{H_k}>``, up to the first repeat."""
    _check(G, H)
    series = [G.whole]
    while True:
        nxt = normal_closure(H, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def subnormal_defect_oracle(G: Group, H: Subgroup) -> EmbeddingVerdict:
    """Subnormal iff the normal-closure series reaches H; its number of strict
    steps is the defect."""
    series = normal_closure_series(G, H)
    stable = series[-1]
    if stable == H:
        return EmbeddingVerdict(SUBNORMAL, True, DEFINITION, defect=len(series) - 1)
    return EmbeddingVerdict(
        SUBNORMAL, False, DEFINITION,
        witness=(_first_outside(stable, H),),
        note=f"series stabilises at a subgroup of order {stable.order}",
    )


def is_subnormal_preimage(cp: CentralProduct, H: Subgroup) -> EmbeddingVerdict:
    """Subnormality (and defect) of ``eps^-1(H)`` in ``D``."""
    _check(cp.G, H)
    v = subnormal_defect_oracle(cp.D.group, preimage_subgroup(cp.epsilon, H))
    return EmbeddingVerdict(SUBNORMAL, v.holds, PREIMAGE, defect=v.defect, witness=v.witness, note=v.note)


def defect_search_bound(G: Group) -> int:
    return int(math.log2(G.order)) + 1 if G.order > 1 else 1


def _iterated_chain(U: Subgroup, H: Subgroup, r: int) -> list[Subgroup]:
    chain = [U]
    for _ in range(r):
        X = chain[-1]
        chain.append(X if X.is_trivial else commutator_subgroup(X, H))
    return chain


def is_subnormal_characterization(cp: CentralProduct, H: Subgroup, r: int) -> EmbeddingVerdict:
    """``[U_i, H, ..r.., H] <= U_i ∩ H`` for both factors, i.e. defect <= r.

    ``r = 0`` is accepted and means ``U_i <= H``.  When the condition holds the
    verdict carries the smallest ``r' <= r`` for which it already holds.
    """
    _check(cp.G, H)
    if r < 0:
        raise ValidationError("r must be non-negative")
    chains = []
    allowed = []
    for U in (cp.U1, cp.U2):
        chains.append(_iterated_chain(U, H, r))
        allowed.append(intersect(U, H))
    for k in range(r + 1):
        if all(chains[i][k] <= allowed[i] for i in (0, 1)):
            return EmbeddingVerdict(SUBNORMAL, True, CHARACTERIZATION, defect=k)
    i = 0 if not chains[0][r] <= allowed[0] else 1
    return EmbeddingVerdict(
        SUBNORMAL, False, CHARACTERIZATION,
        witness=(_first_outside(chains[i][r], allowed[i]),),
        note=f"fails for factor {i + 1} at r = {r}",
    )


def minimal_subnormal_r(cp: CentralProduct, H: Subgroup, max_r: int | None = None) -> int | None:
    """Smallest r with the iterated-commutator condition, or None within the bound."""
    bound = defect_search_bound(cp.G) if max_r is None else max_r
    v = is_subnormal_characterization(cp, H, bound)
    return v.defect if v.holds else None


# abnormality

def is_abnormal_definition(G: Group, H: Subgroup, *, by_cosets: bool = True) -> EmbeddingVerdict:
    """``g in <H, H^g>`` for every ``g`` in G; witness is the first failing g.

    Replacing g by hg (h in H) leaves ``<H, H^g>`` unchanged, so by default one
    element per right coset ``Hg`` is tested.
    """
    _check(G, H)
    N = normalizer(G, H)
    if N != H:
        g = _first_outside(N, H)
        return EmbeddingVerdict(ABNORMAL, False, DEFINITION, witness=(g,), note="normalizer is larger than H")
    T, inv = G.table, G.inverse
    hg = np.asarray(H.generators, dtype=np.int64)
    done = H.members.copy()
    for g in range(G.order):
        if done[g]:
            continue
        if by_cosets:
            done[T[H.elements, g]] = True
        conj = T[T[inv[g], hg], g]
        J = closure(G, list(H.generators) + conj.tolist())
        if not J[g]:
            return EmbeddingVerdict(ABNORMAL, False, DEFINITION, witness=(g,))
    return EmbeddingVerdict(ABNORMAL, True, DEFINITION)


def is_abnormal_preimage(cp: CentralProduct, H: Subgroup) -> EmbeddingVerdict:
    """Abnormality of ``eps^-1(H)`` in ``D`` by the definition."""
    _check(cp.G, H)
    v = is_abnormal_definition(cp.D.group, preimage_subgroup(cp.epsilon, H))
    return EmbeddingVerdict(ABNORMAL, v.holds, PREIMAGE, witness=v.witness, note=v.note)


@lru_cache(maxsize=256)
def _solvable(G: Group) -> bool:
    return derived_series(G).solvable


def is_abnormal_central(cp: CentralProduct, H: Subgroup) -> EmbeddingVerdict:
    """Abnormality through the direct product when a factor is solvable.

    ``H`` is abnormal iff ``K = eps^-1(H)`` equals ``pi_1(K) x pi_2(K)`` setwise
    and each ``pi_i(K)`` is abnormal in its factor.  With two non-solvable
    factors the verdict has ``holds = None``.
    """
    _check(cp.G, H)
    if not (_solvable(cp.V1) or _solvable(cp.V2)):
        return EmbeddingVerdict(ABNORMAL, None, CHARACTERIZATION, note="hypothesis not met: neither factor is solvable")
    D = cp.D
    K = preimage_subgroup(cp.epsilon, H)
    P1 = D.proj1.image_of(K)
    P2 = D.proj2.image_of(K)
    box = D.box(P1, P2)
    if box != K:
        return EmbeddingVerdict(
            ABNORMAL, False, CHARACTERIZATION,
            witness=(_first_outside(box, K),), note="preimage is not the product of its projections",
        )
    for i, V, P in ((1, cp.V1, P1), (2, cp.V2, P2)):
        v = is_abnormal_definition(V, P)
        if not v.holds:
            return EmbeddingVerdict(
                ABNORMAL, False, CHARACTERIZATION, witness=v.witness,
                note=f"projection to factor {i} is not abnormal (witness in V{i})",
            )
    return EmbeddingVerdict(ABNORMAL, True, CHARACTERIZATION)


# classification

@dataclass
class ClassificationRow:
    index: int
    order: int
    generators: list[str]
    isomorphism: str
    normal: bool
    defect: int | None
    abnormal: bool
    methods_agree: bool
    abnormal_fast_path: bool = True
    subgroup: Subgroup | None = field(default=None, repr=False, compare=False)

    @property
    def subnormal(self) -> bool:
        return self.defect is not None


@dataclass
class ClassificationReport:
    group_name: str
    order: int
    rows: list[ClassificationRow]
    totals: dict[str, dict[str, int]]

    @property
    def normal_count(self) -> int:
        return sum(r.normal for r in self.rows)

    def label_counts(self) -> dict[str, int]:
        return {k: v["count"] for k, v in self.totals.items()}


def as_central_product(G: Group | CentralProduct) -> CentralProduct:
    """View a plain group as the central product ``G ∘ 1``."""
    if isinstance(G, CentralProduct):
        return G
    return external_central_product(CentralProductSpec(G, cyclic(1)), limits=G.limits)


def classify_subgroups(
    cp: CentralProduct | Group,
    *,
    max_enum: int | None = None,
    limits: Limits = DEFAULT_LIMITS,
    strict: bool = True,
) -> ClassificationReport:
    """Enumerate every subgroup and decide each property by every method.

    With ``strict`` a disagreement raises :class:`MethodDisagreement`;
    otherwise the row is flagged with ``methods_agree = False``.
    """
    from .isoid import identify

    cp = as_central_product(cp)
    G = cp.G
    subs = all_subgroups(G, max_enum=max_enum, limits=limits)
    rows = []
    for idx, H in enumerate(subs, start=1):
        normals = [is_normal_definition(G, H), is_normal_characterization(cp, H), is_normal_preimage(cp, H)]
        oracle = subnormal_defect_oracle(G, H)
        sn_pre = is_subnormal_preimage(cp, H)
        min_r = minimal_subnormal_r(cp, H)
        abn_def = is_abnormal_definition(G, H)
        abn_pre = is_abnormal_preimage(cp, H)
        abn_fast = is_abnormal_central(cp, H)

        problems = []
        if len({v.holds for v in normals}) != 1:
            problems.append(("normal", normals))
        if not oracle.defect == sn_pre.defect == min_r:
            problems.append(("subnormal defect", (oracle, sn_pre, min_r)))
        if abn_pre.holds != abn_def.holds:
            problems.append(("abnormal", (abn_def, abn_pre)))
        if abn_fast.hypothesis_met and abn_fast.holds != abn_def.holds:
            problems.append(("abnormal", (abn_def, abn_fast)))
        if problems and strict:
            what, verdicts = problems[0]
            raise MethodDisagreement(
                f"methods disagree on {what} for subgroup <{', '.join(H.generator_words())}>", tuple(verdicts)
            )
        rows.append(
            ClassificationRow(
                index=idx,
                order=H.order,
                generators=H.generator_words() or ["1"],
                isomorphism=identify(subgroup_as_group(H)[0], limits=limits),
                normal=bool(normals[0].holds),
                defect=oracle.defect,
                abnormal=bool(abn_def.holds),
                methods_agree=not problems,
                abnormal_fast_path=abn_fast.hypothesis_met,
                subgroup=H,
            )
        )
    return ClassificationReport(G.name, G.order, rows, summarize(rows))


def summarize(rows: Sequence[ClassificationRow]) -> dict[str, dict[str, int]]:
    totals: dict[str, Counter] = {}
    for r in rows:
        c = totals.setdefault(r.isomorphism, Counter())
        c["count"] += 1
        c["normal"] += r.normal
        c["subnormal"] += r.defect is not None
        c["abnormal"] += r.abnormal
    return {k: {f: int(v[f]) for f in ("count", "normal", "subnormal", "abnormal")} for k, v in totals.items()}
