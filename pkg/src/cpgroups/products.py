"""Direct products, external central products and internal central-product
recognition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .core import Group, Subgroup, center, normality_witness
from .errors import BudgetError, ValidationError
from .lattice import intersect
from .morphisms import Homomorphism, quotient, subgroup_as_group


def merge_names(left: Sequence[str], right: Sequence[str]) -> list[str]:
    """Right-hand names, primed until they no longer clash with the left ones."""
    taken = set(left)
    out = []
    for nm in right:
        while nm in taken:
            nm += "'"
        taken.add(nm)
        out.append(nm)
    return out


@dataclass(frozen=True)
class DirectProduct:
    group: Group
    V1: Group
    V2: Group
    proj1: Homomorphism
    proj2: Homomorphism
    embed1: Homomorphism
    embed2: Homomorphism

    @property
    def Vbar1(self) -> Subgroup:
        return self.embed1.image

    @property
    def Vbar2(self) -> Subgroup:
        return self.embed2.image

    def pair(self, a: int, b: int) -> int:
        return a * self.V2.order + b

    def split(self, x: int) -> tuple[int, int]:
        return divmod(x, self.V2.order)

    def box(self, A: Subgroup, B: Subgroup) -> Subgroup:
        """The setwise product ``A x B`` as a subgroup of the direct product."""
        m = (A.members[:, None] & B.members[None, :]).ravel()
        gens = [self.pair(a, self.V2.identity) for a in A.generators]
        gens += [self.pair(self.V1.identity, b) for b in B.generators]
        return Subgroup(self.group, m, gens)


def direct_product(V1: Group, V2: Group, *, limits: Limits = DEFAULT_LIMITS) -> DirectProduct:
    n1, n2 = V1.order, V2.order
    n = n1 * n2
    if n > limits.max_order:
        raise BudgetError("direct product order", n, limits.max_order)
    T1 = V1.table.astype(np.int32)
    T2 = V2.table.astype(np.int32)
    table = (T1[:, None, :, None] * n2 + T2[None, :, None, :]).reshape(n, n)
    e1, e2 = V1.identity, V2.identity
    names2 = merge_names(V1.gen_names, V2.gen_names)
    gens = [(nm, g * n2 + e2) for nm, g in V1.generators]
    gens += [(nm, e1 * n2 + h) for nm, (_, h) in zip(names2, V2.generators)]
    labels = [f"({V1.label(i)},{V2.label(j)})" for i in range(n1) for j in range(n2)]
    name = f"{V1.name}x{V2.name}"
    D = Group(table, gens, labels=labels, name=name, limits=limits)
    idx = np.arange(n)
    return DirectProduct(
        group=D,
        V1=V1,
        V2=V2,
        proj1=Homomorphism(D, V1, idx // n2),
        proj2=Homomorphism(D, V2, idx % n2),
        embed1=Homomorphism(V1, D, np.arange(n1) * n2 + e2),
        embed2=Homomorphism(V2, D, e1 * n2 + np.arange(n2)),
    )


@dataclass(frozen=True)
class CentralProductSpec:
    """Two factors and the amalgamation, given as pairs ``(mu1(a), mu2(a))``
    over a generating set of the abstract group A."""

    V1: Group
    V2: Group
    A_generators: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "A_generators", tuple((int(a), int(b)) for a, b in self.A_generators))


@dataclass(frozen=True)
class CentralProduct:
    spec: CentralProductSpec
    D: DirectProduct
    N: Subgroup
    G: Group
    epsilon: Homomorphism
    U1: Subgroup
    U2: Subgroup
    A: Subgroup  # mu1(A) inside V1
    mu: np.ndarray  # mu2 ∘ mu1^-1 on A, indexed by V1 elements (-1 off A)

    @property
    def V1(self) -> Group:
        return self.D.V1

    @property
    def V2(self) -> Group:
        return self.D.V2

    @property
    def Vbar1(self) -> Subgroup:
        return self.D.Vbar1

    @property
    def Vbar2(self) -> Subgroup:
        return self.D.Vbar2

    def factor_map(self, i: int) -> Homomorphism:
        """``V_i -> G``, ``v -> epsilon(vbar)``."""
        emb = self.D.embed1 if i == 1 else self.D.embed2
        return emb.compose(self.epsilon)

    def factor(self, i: int) -> Subgroup:
        return self.U1 if i == 1 else self.U2


def _amalgam_map(spec: CentralProductSpec) -> tuple[Subgroup, np.ndarray]:
    V1, V2 = spec.V1, spec.V2
    Z1, Z2 = center(V1), center(V2)
    for a, b in spec.A_generators:
        if not 0 <= a < V1.order or not 0 <= b < V2.order:
            raise ValidationError(f"amalgam pair ({a}, {b}) out of range")
        if a not in Z1:
            raise ValidationError(f"amalgam pair ({V1.label(a)}, {V2.label(b)}): {V1.label(a)} is not central in the first factor")
        if b not in Z2:
            raise ValidationError(f"amalgam pair ({V1.label(a)}, {V2.label(b)}): {V2.label(b)} is not central in the second factor")
    mu = np.full(V1.order, -1, dtype=np.int64)
    mu[V1.identity] = V2.identity
    queue = deque([V1.identity])
    while queue:
        x = queue.popleft()
        for a, b in spec.A_generators:
            z = V1.mul(x, a)
            val = V2.mul(int(mu[x]), b)
            if mu[z] < 0:
                mu[z] = val
                queue.append(z)
            elif mu[z] != val:
                raise ValidationError(
                    f"amalgam pair ({V1.label(a)}, {V2.label(b)}) is incompatible: the coordinate maps do not define a homomorphism"
                )
    A = V1.subgroup([a for a, _ in spec.A_generators])
    on_A = mu[A.elements]
    if np.unique(on_A).size != on_A.size:
        bad = next(((a, b) for a, b in spec.A_generators), None)
        raise ValidationError(f"amalgam pairs {bad} do not give an injective identification")
    return A, mu


def external_central_product(spec: CentralProductSpec, *, limits: Limits = DEFAULT_LIMITS, verify: bool = True) -> CentralProduct:
    """``(V1 x V2)/N`` with ``N = {(mu1(a), mu2(a)^-1)}``."""
    A, mu = _amalgam_map(spec)
    D = direct_product(spec.V1, spec.V2, limits=limits)
    V2 = spec.V2
    n_elems = [D.pair(int(a), V2.inv(int(mu[a]))) for a in A.elements]
    N = D.group.subgroup(n_elems)
    G, eps = quotient(D.group, N, name=f"{spec.V1.name}o{spec.V2.name}" if spec.A_generators else D.group.name)
    cp = CentralProduct(
        spec=spec,
        D=D,
        N=N,
        G=G,
        epsilon=eps,
        U1=eps.image_of(D.Vbar1),
        U2=eps.image_of(D.Vbar2),
        A=A,
        mu=mu,
    )
    if verify:
        failures = central_product_invariants(cp, limits=limits)
        if failures:
            raise ValidationError("central product invariants failed: " + "; ".join(failures))
    return cp


def central_product_invariants(cp: CentralProduct, *, limits: Limits = DEFAULT_LIMITS) -> list[str]:
    """Names of violated construction invariants (empty when all hold)."""
    from .isoid import are_isomorphic

    out = []
    D = cp.D
    if normality_witness(D.group, cp.N) is not None:
        out.append("N not normal in D")
    for i, Vbar in ((1, D.Vbar1), (2, D.Vbar2)):
        if not intersect(Vbar, cp.N).is_trivial:
            out.append(f"Vbar{i} meets N")
    for i, V in ((1, cp.V1), (2, cp.V2)):
        f = cp.factor_map(i)
        if not f.injective or f.image != cp.factor(i):
            out.append(f"V{i} -> U{i} is not an isomorphism")
        elif V.order <= limits.max_iso and not are_isomorphic(subgroup_as_group(cp.factor(i))[0], V):
            out.append(f"U{i} not isomorphic to V{i}")
    meet = intersect(cp.U1, cp.U2)
    f1 = cp.factor_map(1)
    a_img = f1.image_of(cp.A)
    if a_img != meet or a_img.order != cp.A.order:
        out.append("U1 ∩ U2 is not the image of A")
    elif cp.A.order <= limits.max_iso and not are_isomorphic(subgroup_as_group(meet)[0], subgroup_as_group(cp.A)[0]):
        out.append("U1 ∩ U2 not isomorphic to A")
    if cp.G.order * cp.A.order != cp.V1.order * cp.V2.order:
        out.append("|G| != |V1||V2|/|A|")
    check = is_internal_central_product(cp.G, cp.U1, cp.U2)
    if not check.holds:
        out.append(f"not an internal central product ({check.reason})")
    return out


class InternalCheck(NamedTuple):
    holds: bool
    reason: str = ""
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def is_internal_central_product(G: Group, U1: Subgroup, U2: Subgroup) -> InternalCheck:
    """``G = U1 U2`` setwise and ``[U1, U2] = 1``; a witness explains failures."""
    if U1.parent is not G or U2.parent is not G:
        raise ValidationError("U1 and U2 must be subgroups of G")
    T = G.table
    a, b = U1.elements, U2.elements
    ab = T[a[:, None], b[None, :]]
    ba = T[b[None, :], a[:, None]]
    diff = np.argwhere(ab != ba)
    if diff.size:
        i, j = diff[0]
        return InternalCheck(False, "factors do not commute", (int(a[i]), int(b[j])))
    covered = np.zeros(G.order, dtype=bool)
    covered[ab.ravel()] = True
    if not covered.all():
        return InternalCheck(False, "U1 U2 does not cover G", (int(np.flatnonzero(~covered)[0]),))
    return InternalCheck(True)


def canonical_epimorphism(G: Group, U1: Subgroup, U2: Subgroup, *, with_factors: bool = False):
    """``U1 x U2 -> G``, ``(u1, u2) -> u1 u2``.

    With ``with_factors=True`` the direct product (with its embeddings) is
    returned alongside the map.
    """
    check = is_internal_central_product(G, U1, U2)
    if not check.holds:
        raise ValidationError(f"not an internal central product: {check.reason}")
    H1, inc1 = subgroup_as_group(U1)
    H2, inc2 = subgroup_as_group(U2)
    DP = direct_product(H1, H2, limits=G.limits)
    vals = G.table[inc1.map[:, None], inc2.map[None, :]].ravel()
    eps = Homomorphism(DP.group, G, vals)
    return (eps, DP) if with_factors else eps


def internal_external_iso_check(cp: CentralProduct) -> bool:
    """Check that ``(a, b)N -> a b`` is a well-defined isomorphism from the
    external product ``D/N`` onto the internal product ``U1 U2``."""
    eps_int, DP = canonical_epimorphism(cp.G, cp.U1, cp.U2, with_factors=True)
    if eps_int.kernel.order != cp.A.order:
        return False
    D = cp.D
    G = cp.G
    n2 = D.V2.order
    idx = np.arange(D.group.order)
    a = cp.factor_map(1).map[idx // n2]
    b = cp.factor_map(2).map[idx % n2]
    value = G.table[a, b]
    phi = np.full(G.order, -1, dtype=np.int64)
    cosets = cp.epsilon.map
    phi[cosets] = value
    # well defined: every member of a coset gives the same product
    if not np.array_equal(phi[cosets], value):
        return False
    if np.unique(phi).size != G.order or not (phi >= 0).all():
        return False
    if not np.isin(phi, np.flatnonzero(eps_int.image.members)).all():
        return False
    try:
        Homomorphism(G, G, phi)
    except ValidationError:
        return False
    return True
