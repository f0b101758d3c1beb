"""Root data of the classical Hermitian pairs (G, K) and their subgroups.

Weights are plain integer tuples in the epsilon-basis of t*.  The invariant
form is the identity matrix in these coordinates for every family; it is only
ever used through orderings and sign tests, which do not see the scale.

Conventions per family (rank r, coordinates e_1..e_r):

=========  ==============  ==========================  =====================
family     K               noncompact positive roots   z
=========  ==============  ==========================  =====================
SpR(n)     U(n)            e_i + e_j (i < j), 2 e_i    (1/2, ..., 1/2)
SOstar(n)  U(n)            e_i + e_j (i < j)           (1/2, ..., 1/2)
Upq(p, q)  U(p) x U(q)     e_i - e_{p+j}               (q/(p+q) 1_p, -p/(p+q) 1_q)
SO2n(n)    SO(2) x SO(n)   e_0 +- e_j (and e_0, n odd) (1, 0, ..., 0)
Torus(r)   T^r             none                        chosen by the embedding
=========  ==============  ==========================  =====================

``SO2n(n)`` is SO_o(2, n); its coordinate 0 is the SO(2) factor.
"""
from __future__ import annotations

import dataclasses
import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .rational import as_int_vec, frac_vec, primitive, solve, transpose

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class Family(str, enum.Enum):
    SpR = "SpR"
    SOstar = "SOstar"
    Upq = "Upq"
    SO2n = "SO2n"
    Product = "Product"
    Torus = "Torus"


def _unit(rank: int, i: int, c: int = 1) -> list[int]:
    v = [0] * rank
    v[i] = c
    return v


def _root(rank: int, *terms: tuple[int, int]) -> Weight:
    v = [0] * rank
    for i, c in terms:
        v[i] += c
    return tuple(v)


def _inner(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _simple_roots(pos_roots: Sequence[Weight]) -> list[Weight]:
    """Positive roots that are not a sum of two positive roots."""
    pos = set(pos_roots)
    simple = []
    for a in pos_roots:
        decomposable = any(
            tuple(x - y for x, y in zip(a, b)) in pos for b in pos_roots if b != a
        )
        if not decomposable:
            simple.append(a)
    return sorted(simple, reverse=True)


def _reflection_matrix(alpha: Weight) -> Matrix:
    n = len(alpha)
    aa = _inner(alpha, alpha)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            val = Fraction(2 * alpha[i] * alpha[j], aa)
            entry = (1 if i == j else 0) - val
            if entry.denominator != 1:
                raise ValueError(f"reflection in {alpha} is not integral")
            row.append(int(entry))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True, eq=False)
class HermitianPair:
    """Root datum of (g, k, t) together with the central element z.

    Equality and hashing go through :attr:`key`, so two pairs built from the
    same family and parameters with the same z compare equal.
    """

    family: Family
    params: tuple
    rank: int
    compact_pos_roots: tuple[Weight, ...]
    noncompact_pos_roots: tuple[Weight, ...]
    z: tuple[Fraction, ...]
    z_primitive: tuple[int, ...]
    gram: Matrix
    rho_c: tuple[Fraction, ...]
    two_rho_n: Weight
    simple_reflections: tuple[Matrix, ...]
    se_nonempty: bool
    factors: tuple["HermitianPair", ...] = ()

    @cached_property
    def key(self) -> tuple:
        return (self.family.value, self.params, self.z, self.z_primitive)

    @cached_property
    def _hash(self) -> int:
        return hash(self.key)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, HermitianPair):
            return NotImplemented
        return self.key == other.key

    def __repr__(self) -> str:
        return f"HermitianPair({self.name})"

    @cached_property
    def slug(self) -> str:
        f, p = self.family, self.params
        if f is Family.SpR:
            return f"sp{2 * p[0]}R"
        if f is Family.SOstar:
            return f"sostar{2 * p[0]}"
        if f is Family.Upq:
            return f"u{p[0]},{p[1]}"
        if f is Family.SO2n:
            return f"so2,{p[0]}"
        if f is Family.Torus:
            return f"T{p[0]}"
        return "x".join(fac.slug for fac in self.factors)

    @cached_property
    def name(self) -> str:
        f, p = self.family, self.params
        if f is Family.SpR:
            return f"Sp({p[0]},R)"
        if f is Family.SOstar:
            return f"SO*({2 * p[0]})"
        if f is Family.Upq:
            return f"U({p[0]},{p[1]})"
        if f is Family.SO2n:
            return f"SO_o(2,{p[0]})"
        if f is Family.Torus:
            return f"T^{p[0]}"
        return " x ".join(fac.name for fac in self.factors)

    @cached_property
    def k_name(self) -> str:
        f, p = self.family, self.params
        if f in (Family.SpR, Family.SOstar):
            return f"U({p[0]})"
        if f is Family.Upq:
            return f"U({p[0]}) x U({p[1]})"
        if f is Family.SO2n:
            return f"SO(2) x SO({p[0]})"
        if f is Family.Torus:
            return f"T^{p[0]}"
        return " x ".join(fac.k_name for fac in self.factors)

    @cached_property
    def p_name(self) -> str:
        f, p = self.family, self.params
        if f is Family.SpR:
            return f"S^2(C^{p[0]})"
        if f is Family.SOstar:
            return f"Lambda^2(C^{p[0]})"
        if f is Family.Upq:
            return f"M_{{{p[0]},{p[1]}}}(C)"
        if f is Family.SO2n:
            return f"C^{p[0]}"
        if f is Family.Torus:
            return "0"
        return " + ".join(fac.p_name for fac in self.factors)

    def inner(self, u: Sequence, v: Sequence):
        return sum(u[i] * g * v[j] for i, row in enumerate(self.gram) for j, g in enumerate(row) if g)

    @cached_property
    def compact_simple_roots(self) -> tuple[Weight, ...]:
        return tuple(_simple_roots(self.compact_pos_roots))

    @cached_property
    def two_rho_c(self) -> Weight:
        return as_int_vec(2 * x for x in self.rho_c)

    @cached_property
    def z_step(self) -> int | None:
        """Common z_o-pairing c of the noncompact positive roots (None without any)."""
        if not self.noncompact_pos_roots:
            return None
        return self.z_degree(self.noncompact_pos_roots[0])

    def z_degree(self, w: Sequence[int]) -> int:
        return _inner(w, self.z_primitive)

    def check_rank(self, w: Sequence) -> None:
        if len(w) != self.rank:
            raise ValueError(f"weight {tuple(w)} has length {len(w)}, {self.name} has rank {self.rank}")

    def coroot_pairing(self, w: Sequence, alpha: Weight) -> Fraction:
        return Fraction(2 * self.inner(w, alpha), self.inner(alpha, alpha))

    def is_dominant(self, w: Sequence) -> bool:
        return all(self.inner(w, a) >= 0 for a in self.compact_simple_roots)

    def validate(self) -> None:
        """Raise ValueError unless every structural invariant holds."""
        if len(self.z) != self.rank or len(self.z_primitive) != self.rank:
            raise ValueError("z has the wrong length")
        for beta in self.noncompact_pos_roots:
            if _inner(beta, self.z) != 1:
                raise ValueError(f"<{beta}, z> != 1")
        steps = {self.z_degree(b) for b in self.noncompact_pos_roots}
        if len(steps) > 1 or any(s <= 0 for s in steps):
            raise ValueError(f"noncompact roots have z_o-pairings {sorted(steps)}")
        rn = set(self.noncompact_pos_roots)
        for s in self.simple_reflections:
            for beta in self.noncompact_pos_roots:
                if tuple(_inner(row, beta) for row in s) not in rn:
                    raise ValueError(f"W_K does not preserve R_n(z) at {beta}")
            # s^T G s == G
            st = transpose(s)
            gs = [[_inner(self.gram[i], [s[k][j] for k in range(self.rank)]) for j in range(self.rank)]
                  for i in range(self.rank)]
            sgs = [[_inner(st[i], [gs[k][j] for k in range(self.rank)]) for j in range(self.rank)]
                   for i in range(self.rank)]
            if tuple(map(tuple, sgs)) != self.gram:
                raise ValueError("gram form is not W_K-invariant")
        for a in self.compact_pos_roots:
            if next((x for x in a if x), 0) <= 0:
                raise ValueError(f"compact positive root {a} is not lexicographically positive")

    def with_z(self, z: Sequence, z_primitive: Sequence[int]) -> "HermitianPair":
        """Same root datum graded by another central element (used for subgroups)."""
        out = dataclasses.replace(self, z=frac_vec(z), z_primitive=tuple(int(x) for x in z_primitive))
        out.validate()
        return out


def _assemble(family: Family, params: tuple, rank: int, compact, noncompact, z,
              factors: tuple = (), se_nonempty: bool = True) -> HermitianPair:
    compact = tuple(sorted(set(compact), reverse=True))
    noncompact = tuple(sorted(set(noncompact), reverse=True))
    z = frac_vec(z)
    rho_c = tuple(Fraction(sum(a[i] for a in compact), 2) for i in range(rank))
    two_rho_n = tuple(sum(b[i] for b in noncompact) for i in range(rank))
    simple = _simple_roots(compact)
    pair = HermitianPair(
        family=family,
        params=params,
        rank=rank,
        compact_pos_roots=compact,
        noncompact_pos_roots=noncompact,
        z=z,
        z_primitive=primitive(z),
        gram=tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)),
        rho_c=rho_c,
        two_rho_n=two_rho_n,
        simple_reflections=tuple(_reflection_matrix(a) for a in simple),
        se_nonempty=se_nonempty,
        factors=factors,
    )
    pair.validate()
    return pair


def _type_a_roots(rank: int, lo: int, hi: int) -> list[Weight]:
    return [_root(rank, (i, 1), (j, -1)) for i in range(lo, hi) for j in range(i + 1, hi)]


def build_pair(family, params: Sequence = ()) -> HermitianPair:
    """Root datum of a classical Hermitian pair.

    ``family`` is a :class:`Family` (or its string value).  For ``Product`` the
    params are the factor pairs themselves; for ``Torus`` a single rank.
    """
    try:
        family = Family(family)
    except ValueError:
        raise ValueError(f"unknown family {family!r}") from None
    if family is Family.Product:
        factors = tuple(params)
        if not factors or not all(isinstance(f, HermitianPair) for f in factors):
            raise ValueError("Product needs a non-empty list of HermitianPair factors")
        return product_pair(factors)
    params = tuple(int(p) for p in params)

    if family is Family.SpR:
        if len(params) != 1 or params[0] < 1:
            raise ValueError(f"SpR needs n >= 1, got {params}")
        n = params[0]
        nc = [_root(n, (i, 1), (j, 1)) for i in range(n) for j in range(i + 1, n)]
        nc += [_root(n, (i, 2)) for i in range(n)]
        return _assemble(family, params, n, _type_a_roots(n, 0, n), nc, [Fraction(1, 2)] * n)

    if family is Family.SOstar:
        if len(params) != 1 or params[0] < 2:
            raise ValueError(f"SOstar needs n >= 2, got {params}")
        n = params[0]
        nc = [_root(n, (i, 1), (j, 1)) for i in range(n) for j in range(i + 1, n)]
        return _assemble(family, params, n, _type_a_roots(n, 0, n), nc, [Fraction(1, 2)] * n)

    if family is Family.Upq:
        if len(params) != 2 or params[0] < 1 or params[1] < 1:
            raise ValueError(f"Upq needs p, q >= 1, got {params}")
        p, q = params
        r = p + q
        comp = _type_a_roots(r, 0, p) + _type_a_roots(r, p, r)
        nc = [_root(r, (i, 1), (p + j, -1)) for i in range(p) for j in range(q)]
        z = [Fraction(q, r)] * p + [Fraction(-p, r)] * q
        return _assemble(family, params, r, comp, nc, z)

    if family is Family.SO2n:
        if len(params) != 1 or params[0] < 1:
            raise ValueError(f"SO2n needs n >= 1, got {params}")
        n = params[0]
        m = n // 2
        r = 1 + m
        comp = []
        for i in range(1, r):
            for j in range(i + 1, r):
                comp += [_root(r, (i, 1), (j, -1)), _root(r, (i, 1), (j, 1))]
            if n % 2:
                comp.append(_root(r, (i, 1)))
        nc = []
        for j in range(1, r):
            nc += [_root(r, (0, 1), (j, 1)), _root(r, (0, 1), (j, -1))]
        if n % 2:
            nc.append(_root(r, (0, 1)))
        return _assemble(family, params, r, comp, nc, [1] + [0] * m)

    if family is Family.Torus:
        if len(params) != 1 or params[0] < 0:
            raise ValueError(f"Torus needs a rank >= 0, got {params}")
        r = params[0]
        return _assemble(family, params, r, [], [], [0] * r)

    raise ValueError(f"unknown family {family!r}")


def product_pair(factors: Sequence[HermitianPair]) -> HermitianPair:
    factors = tuple(factors)
    rank = sum(f.rank for f in factors)
    comp, nc, z = [], [], []
    off = 0
    for f in factors:
        def shift(w, off=off, f=f):
            return tuple([0] * off + list(w) + [0] * (rank - off - f.rank))
        comp += [shift(a) for a in f.compact_pos_roots]
        nc += [shift(b) for b in f.noncompact_pos_roots]
        z += list(f.z)
        off += f.rank
    params = tuple((f.family.value, f.params) for f in factors)
    return _assemble(Family.Product, params, rank, comp, nc, z, factors=factors,
                     se_nonempty=all(f.se_nonempty for f in factors))


# Strongly elliptic set non-empty? (G, condition) rows of the classical table.
STRONGLY_ELLIPTIC_TABLE = (
    ("GL(n,C)", "no"),
    ("O(n,C)", "no"),
    ("SL(n,R)", "n=2"),
    ("SO_o(p,q)", "pq even"),
    ("Sp(n,R)", "yes"),
    ("SO*(2n)", "yes"),
    ("U(p,q)", "yes"),
    ("Sp(p,q)", "yes"),
)


def strongly_elliptic_nonempty(group: str, *params: int) -> bool:
    """Whether g*_se is non-empty, i.e. t is a Cartan subalgebra of g."""
    if group in ("GL(n,C)", "O(n,C)"):
        return False
    if group == "SL(n,R)":
        return params[0] == 2
    if group == "SO_o(p,q)":
        return params[0] * params[1] % 2 == 0
    if group in ("Sp(n,R)", "SO*(2n)", "U(p,q)", "Sp(p,q)"):
        return True
    raise ValueError(f"group {group!r} not in the table")


@dataclass(frozen=True)
class WeightClass:
    dominant: bool
    z_degree: int
    in_chol: bool
    in_Ghat_hol: bool


def classify_weight(pair: HermitianPair, w: Sequence[int]) -> WeightClass:
    pair.check_rank(w)
    w = tuple(w)
    dominant = pair.is_dominant(w)
    in_chol = all(pair.inner(b, w) >= 0 for b in pair.noncompact_pos_roots)
    shifted = tuple(x - y for x, y in zip(w, pair.two_rho_n))
    in_ghat = dominant and all(pair.inner(b, shifted) >= 0 for b in pair.noncompact_pos_roots)
    return WeightClass(dominant, pair.z_degree(w), in_chol, in_ghat)


def in_ghat_hol(pair: HermitianPair, w: Sequence[int]) -> bool:
    return classify_weight(pair, w).in_Ghat_hol


def on_ghat_boundary(pair: HermitianPair, w: Sequence[int]) -> bool:
    """True when w - 2 rho_n(z) lies on a wall of C_hol(z)."""
    shifted = tuple(x - y for x, y in zip(w, pair.two_rho_n))
    return any(pair.inner(b, shifted) == 0 for b in pair.noncompact_pos_roots)


def blattner_of_hc(pair: HermitianPair, mu: Sequence) -> Weight:
    """Lowest K-type mu - rho_c + rho_n(mu) of the discrete series with HC parameter mu."""
    pair.check_rank(mu)
    mu = frac_vec(mu)
    for a in pair.compact_pos_roots + pair.noncompact_pos_roots:
        if pair.inner(a, mu) == 0:
            raise ValueError(f"HC parameter {tuple(map(str, mu))} is singular on root {a}")
    if not all(pair.inner(a, mu) > 0 for a in pair.compact_pos_roots):
        raise ValueError("HC parameter is not K-dominant")
    rho_n = [Fraction(0)] * pair.rank
    for b in pair.noncompact_pos_roots:
        sign = 1 if pair.inner(b, mu) > 0 else -1
        for i in range(pair.rank):
            rho_n[i] += Fraction(sign * b[i], 2)
    out = tuple(m - rc + rn for m, rc, rn in zip(mu, pair.rho_c, rho_n))
    return as_int_vec(out)


# -- embeddings ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Embedding:
    """A reductive subgroup G' of G sharing (when ``contains_z``) the element z.

    ``proj`` maps ambient weight coordinates to sub coordinates.  The weights
    of p/p' are kept as the multiset difference proj(R_n(z)) - R'_n(z) in
    ``quotient_weights``; ``shared_noncompact`` lists the ambient roots whose
    projection is a noncompact root of the subgroup.
    """

    id: str
    kind: str
    ambient: HermitianPair
    sub: HermitianPair
    proj: Matrix
    shared_noncompact: tuple[Weight, ...]
    quotient_weights: tuple[Weight, ...] | None
    contains_z: bool
    label: str = ""

    def project(self, w: Sequence[int]) -> Weight:
        self.ambient.check_rank(w)
        return tuple(_inner(row, w) for row in self.proj)

    @cached_property
    def _hash(self) -> int:
        return hash((self.id, self.ambient, self.sub, self.proj))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, Embedding):
            return NotImplemented
        return (self.id, self.ambient, self.sub, self.proj) == (other.id, other.ambient, other.sub, other.proj)

    def __repr__(self) -> str:
        return f"Embedding({self.id})"


def make_embedding(ambient: HermitianPair, sub: HermitianPair, proj: Sequence[Sequence[int]],
                   id: str | None = None, kind: str = "custom", label: str = "") -> Embedding:
    """Assemble an Embedding and check its invariants.

    When z lies in t' (proj^T z' = z solvable), the subgroup is regraded by the
    ambient z, so z-degrees agree on both sides of ``proj``.
    """
    proj = tuple(tuple(int(x) for x in row) for row in proj)
    if len(proj) != sub.rank or any(len(row) != ambient.rank for row in proj):
        raise ValueError(f"proj must be {sub.rank}x{ambient.rank}")
    pt = transpose(proj) if proj else [[] for _ in range(ambient.rank)]
    if sub.rank and _matrix_rank(proj) != sub.rank:
        raise ValueError("proj must have full row rank (t' must embed in t)")
    z_sub = solve(pt, ambient.z) if sub.rank else (() if not any(ambient.z) else None)
    contains_z = z_sub is not None and any(ambient.z)
    if contains_z:
        zo_sub = solve(pt, ambient.z_primitive) if sub.rank else ()
        sub = sub.with_z(z_sub, as_int_vec(zo_sub))

    proj_roots = [tuple(_inner(row, b) for row in proj) for b in ambient.noncompact_pos_roots]
    sub_nc = set(sub.noncompact_pos_roots)
    shared = tuple(b for b, pb in zip(ambient.noncompact_pos_roots, proj_roots) if pb in sub_nc)
    remaining = Counter(proj_roots)
    remaining.subtract(Counter(sub.noncompact_pos_roots))
    if any(v < 0 for v in remaining.values()):
        if contains_z:
            raise ValueError("noncompact roots of the subgroup are not restrictions of ambient roots")
        quotient = None
    else:
        quotient = tuple(sorted(remaining.elements(), reverse=True))
    if id is None:
        id = f"{ambient.slug}:{sub.slug}"
    return Embedding(id=id, kind=kind, ambient=ambient, sub=sub, proj=proj,
                     shared_noncompact=shared, quotient_weights=quotient,
                     contains_z=contains_z, label=label)


def _matrix_rank(m) -> int:
    from .rational import rref
    _, piv = rref(m)
    return len(piv)


def _identity(n: int) -> list[list[int]]:
    return [_unit(n, i) for i in range(n)]


def _signed_identity(signs: Sequence[int]) -> list[list[int]]:
    return [_unit(len(signs), i, s) for i, s in enumerate(signs)]


def _permutation(order: Sequence[int], n: int) -> list[list[int]]:
    """Row k selects ambient coordinate order[k]."""
    return [_unit(n, i) for i in order]


def torus_embedding(pair: HermitianPair) -> Embedding:
    return make_embedding(pair, build_pair(Family.Torus, [pair.rank]), _identity(pair.rank),
                          id=f"{pair.slug}-torus", kind="torus",
                          label=f"maximal torus of {pair.name}")


def subtorus_embedding(pair: HermitianPair, coords: Sequence[int]) -> Embedding:
    """Coordinate subtorus; an empty ``coords`` gives the trivial subgroup."""
    coords = tuple(coords)
    if len(set(coords)) != len(coords) or any(not 0 <= c < pair.rank for c in coords):
        raise ValueError(f"bad subtorus coordinates {coords}")
    tag = "".join(str(c) for c in coords) or "trivial"
    return make_embedding(pair, build_pair(Family.Torus, [len(coords)]),
                          _permutation(coords, pair.rank),
                          id=f"{pair.slug}-subtorus{tag}", kind="subtorus",
                          label=f"coordinate subtorus {coords} of {pair.name}")


def diagonal_embedding(factor: HermitianPair, copies: int = 2) -> Embedding:
    ambient = product_pair([factor] * copies)
    proj = [[1 if j % factor.rank == i else 0 for j in range(ambient.rank)] for i in range(factor.rank)]
    return make_embedding(ambient, factor, proj, id=f"{ambient.slug}-diag", kind="diagonal",
                          label=f"diagonal {factor.name} in {copies} copies")


def _small_factor(family: Family, p: int, q: int | None = None) -> HermitianPair | None:
    """Factor of a Table-2 subgroup, or None when it is a compact non-abelian group."""
    if family is Family.SpR:
        return build_pair(family, [p])
    if family is Family.SOstar:
        if p >= 2:
            return build_pair(family, [p])
        return build_pair(Family.Torus, [1])  # SO*(2) = U(1)
    if family is Family.Upq:
        if p >= 1 and q >= 1:
            return build_pair(family, [p, q])
        if p + q == 1:
            return build_pair(Family.Torus, [1])  # U(1,0) = U(0,1) = U(1)
        return None
    raise ValueError(family)


def _prod_or_single(factors: Sequence[HermitianPair]) -> HermitianPair:
    return factors[0] if len(factors) == 1 else product_pair(factors)


def involution_embeddings(ambient: HermitianPair) -> list[Embedding]:
    """Identity components of G^sigma for involutions fixing z (classical rows).

    Rows whose subgroup has a compact non-abelian factor (SO(k), k >= 3, or
    U(k) with k >= 2 as a factor) have no representation here and are skipped.
    """
    f, prm = ambient.family, ambient.params
    out: list[Embedding] = []
    r = ambient.rank

    def add(sub, proj, label, tag):
        out.append(make_embedding(ambient, sub, proj, id=f"{ambient.slug}:{tag}", kind="involution",
                                  label=label))

    if f is Family.SpR:
        n = prm[0]
        for p in range(1, n // 2 + 1):
            sub = product_pair([build_pair(f, [p]), build_pair(f, [n - p])])
            add(sub, _identity(r), f"Sp(n,R) > Sp(p,R) x Sp(n-p,R), p={p}", sub.slug)
        for p in range(1, n):
            sub = build_pair(Family.Upq, [p, n - p])
            add(sub, _signed_identity([1] * p + [-1] * (n - p)), f"Sp(n,R) > U(p,n-p), p={p}", sub.slug)
    elif f is Family.SOstar:
        n = prm[0]
        for p in range(1, n):
            sub = build_pair(Family.Upq, [p, n - p])
            add(sub, _signed_identity([1] * p + [-1] * (n - p)), f"SO*(2n) > U(p,n-p), p={p}", sub.slug)
        for p in range(1, n // 2 + 1):
            sub = product_pair([_small_factor(f, p), _small_factor(f, n - p)])
            add(sub, _identity(r), f"SO*(2n) > SO*(2p) x SO*(2n-2p), p={p}", sub.slug)
    elif f is Family.Upq:
        p, q = prm
        if p == q:
            n = p
            proj = [[1 if j == i else (-1 if j == n + i else 0) for j in range(r)] for i in range(n)]
            add(build_pair(Family.SpR, [n]), proj, "U(n,n) > Sp(n,R)", f"sp{2 * n}R")
            so = build_pair(Family.SOstar, [n]) if n >= 2 else build_pair(Family.Torus, [1])
            add(so, proj, "U(n,n) > SO*(2n)", f"sostar{2 * n}")
        seen = set()
        for i in range(p + 1):
            for j in range(q + 1):
                a, b = (i, j), (p - i, q - j)
                if a == (0, 0) or b == (0, 0) or (b, a) in seen:
                    continue
                seen.add((a, b))
                fa, fb = _small_factor(Family.Upq, *a), _small_factor(Family.Upq, *b)
                if fa is None or fb is None:
                    continue
                order = list(range(i)) + list(range(p, p + j)) + list(range(i, p)) + list(range(p + j, r))
                sub = product_pair([fa, fb])
                add(sub, _permutation(order, r), f"U(p,q) > U(i,j) x U(p-i,q-j), (i,j)={a}",
                    f"{sub.slug}@{i}{j}")
    elif f is Family.SO2n:
        n = prm[0]
        if n % 2 == 0:
            sub = build_pair(Family.Upq, [1, n // 2])
            add(sub, _identity(r), "SO(2,2n) > U(1,n)", sub.slug)
        if n >= 3:
            # SO(2,n) > SO(2,n-2) x SO(2)
            sub = product_pair([build_pair(Family.SO2n, [n - 2]), build_pair(Family.Torus, [1])])
            add(sub, _identity(r), "SO(2,n) > SO(2,n-2) x SO(2)", sub.slug)
    return out


def chain_embeddings(ambient: HermitianPair) -> list[Embedding]:
    """SO_o(2,p) inside SO_o(2,n), 0 <= p < n; SO_o(2,0) is the circle SO(2)."""
    if ambient.family is not Family.SO2n:
        return []
    n = ambient.params[0]
    out = []
    for p in range(0, n):
        sub = build_pair(Family.SO2n, [p]) if p else build_pair(Family.Torus, [1])
        out.append(make_embedding(ambient, sub, _permutation(range(sub.rank), ambient.rank),
                                  id=f"{ambient.slug}:{sub.slug}", kind="chain",
                                  label=f"SO_o(2,{p}) in SO_o(2,{n})"))
    return out


def candidate_embeddings(ambient: HermitianPair) -> list[Embedding]:
    out = involution_embeddings(ambient) + chain_embeddings(ambient)
    if ambient.family is Family.Product and len(set(ambient.factors)) == 1:
        out.append(diagonal_embedding(ambient.factors[0], len(ambient.factors)))
    out.append(torus_embedding(ambient))
    return out


def resolve_pair(spec) -> HermitianPair:
    """HermitianPair from a pair, a slug, or a (family, params) tuple."""
    if isinstance(spec, HermitianPair):
        return spec
    if isinstance(spec, tuple) and len(spec) == 2:
        return build_pair(*spec)
    if isinstance(spec, str):
        return pair_from_slug(spec)
    raise ValueError(f"cannot resolve pair {spec!r}")


def pair_from_slug(slug: str) -> HermitianPair:
    import re
    parts = slug.split("x")
    pairs = []
    for part in parts:
        s = part.lower()
        if m := re.fullmatch(r"sp(\d+)r", s):
            n = int(m.group(1))
            if n % 2:
                raise ValueError(f"bad slug {slug!r}")
            pairs.append(build_pair(Family.SpR, [n // 2]))
        elif m := re.fullmatch(r"sostar(\d+)", s):
            pairs.append(build_pair(Family.SOstar, [int(m.group(1)) // 2]))
        elif m := re.fullmatch(r"u(\d+),(\d+)", s):
            pairs.append(build_pair(Family.Upq, [int(m.group(1)), int(m.group(2))]))
        elif m := re.fullmatch(r"so2,(\d+)", s):
            pairs.append(build_pair(Family.SO2n, [int(m.group(1))]))
        elif m := re.fullmatch(r"t(\d+)", s):
            pairs.append(build_pair(Family.Torus, [int(m.group(1))]))
        else:
            raise ValueError(f"unknown pair slug {slug!r}")
    return _prod_or_single(pairs)


def build_embedding(ambient_spec, sub_spec) -> Embedding:
    """Catalog embedding of ``sub_spec`` into ``ambient_spec``.

    ``sub_spec`` may be a pair/slug, or the strings "T"/"torus" and "diag".
    Raises ValueError when the pair is not a catalog pair.
    """
    ambient = resolve_pair(ambient_spec)
    cands = candidate_embeddings(ambient)
    if isinstance(sub_spec, str) and sub_spec.lower() in ("t", "torus"):
        return next(e for e in cands if e.kind == "torus")
    if isinstance(sub_spec, str) and sub_spec.lower() == "diag":
        for e in cands:
            if e.kind == "diagonal":
                return e
        raise ValueError(f"{ambient.name} has no diagonal subgroup in the catalog")
    sub = resolve_pair(sub_spec)
    for e in cands:
        if (e.sub.family, e.sub.params) == (sub.family, sub.params):
            return e
    raise ValueError(f"({ambient.name}, {sub.name}) is not a catalog pair")


def iter_box(rank: int, lo: int, hi: int) -> Iterable[Weight]:
    return itertools.product(range(lo, hi + 1), repeat=rank)
