"""Exact rational polyhedral cones.

ConeV is a cone given by generators, ConeH a polyhedron {x : <n_i, x> >= b_i}.
Membership and emptiness are decided exactly, through Gaussian elimination
followed by Fourier-Motzkin (see :mod:`holbranch.rational`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .kchar import IrrDecomp
from .lie import Embedding, HermitianPair
from .rational import fm_feasible, frac_vec, nonneg_solution_exists, primitive

Vec = tuple[Fraction, ...]


def _int_row(coeffs: Sequence, rhs) -> tuple[list[int], int]:
    """Scale a halfspace row to a primitive integer row (same halfspace)."""
    ints = primitive(list(coeffs) + [rhs])
    if not any(ints[:-1]) and not ints[-1]:
        return [0] * len(coeffs), 0
    return list(ints[:-1]), ints[-1]


@dataclass(frozen=True)
class ConeV:
    """Nonnegative rational span of ``generators``."""

    dim: int
    generators: tuple[Vec, ...]

    def __post_init__(self):
        gens = tuple(frac_vec(g) for g in self.generators)
        for g in gens:
            if len(g) != self.dim:
                raise ValueError(f"generator {g} does not have dimension {self.dim}")
            if not any(g):
                raise ValueError("cone generators must be nonzero")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, generators, dim: int | None = None) -> "ConeV":
        generators = [g for g in generators]
        if dim is None:
            if not generators:
                raise ValueError("dimension needed for an empty generator list")
            dim = len(generators[0])
        return cls(dim, tuple(generators))

    def contains(self, v) -> bool:
        return cone_contains(self, v)

    @property
    def rays(self) -> frozenset[tuple[int, ...]]:
        return frozenset(primitive(g) for g in self.generators)

    def to_dict(self) -> dict:
        return {"type": "V", "dim": self.dim, "generators": [list(primitive(g)) for g in self.generators]}


@dataclass(frozen=True)
class ConeH:
    """Polyhedron {x : <normals[i], x> >= offsets[i]}; a cone when offsets vanish."""

    dim: int
    normals: tuple[Vec, ...]
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        normals = tuple(frac_vec(n) for n in self.normals)
        offsets = frac_vec(self.offsets)
        if len(normals) != len(offsets):
            raise ValueError("normals and offsets differ in length")
        for n in normals:
            if len(n) != self.dim:
                raise ValueError(f"normal {n} does not have dimension {self.dim}")
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)

    @classmethod
    def of(cls, normals, offsets=None, dim: int | None = None) -> "ConeH":
        normals = list(normals)
        if dim is None:
            if not normals:
                raise ValueError("dimension needed without normals")
            dim = len(normals[0])
        if offsets is None:
            offsets = [0] * len(normals)
        return cls(dim, tuple(normals), tuple(offsets))

    @property
    def is_cone(self) -> bool:
        return not any(self.offsets)

    def contains(self, v) -> bool:
        return cone_contains(self, v)

    def is_empty(self) -> bool:
        rows = [([-a for a in n], -b) for n, b in zip(self.normals, self.offsets)]
        return not fm_feasible(rows, self.dim)

    def intersect(self, other: "ConeH") -> "ConeH":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return ConeH(self.dim, self.normals + other.normals, self.offsets + other.offsets)

    def halfspaces(self) -> frozenset[tuple[tuple[int, ...], int]]:
        """Normalized (normal, offset) rows, with trivially true rows dropped."""
        out = set()
        for n, b in zip(self.normals, self.offsets):
            row, rhs = _int_row(n, b)
            if any(row) or rhs > 0:
                out.add((tuple(row), rhs))
        return frozenset(out)

    def to_dict(self) -> dict:
        rows = [_int_row(n, b) for n, b in zip(self.normals, self.offsets)]
        return {"type": "H", "dim": self.dim, "normals": [r for r, _ in rows], "offsets": [b for _, b in rows]}


def cone_from_dict(data) -> ConeV | ConeH:
    if data["type"] == "V":
        return ConeV(data["dim"], tuple(tuple(g) for g in data["generators"]))
    if data["type"] == "H":
        return ConeH(data["dim"], tuple(tuple(n) for n in data["normals"]), tuple(data["offsets"]))
    raise ValueError(f"unknown cone type {data['type']!r}")


def cone_contains(cone: ConeV | ConeH, v) -> bool:
    v = frac_vec(v)
    if len(v) != cone.dim:
        raise ValueError(f"vector of dimension {len(v)} tested against a cone of dimension {cone.dim}")
    if isinstance(cone, ConeH):
        return all(sum(a * x for a, x in zip(n, v)) >= b for n, b in zip(cone.normals, cone.offsets))
    if not cone.generators:
        return not any(v)
    cols = cone.generators
    m = [[g[i] for g in cols] for i in range(cone.dim)]
    return nonneg_solution_exists(m, v)


def hull_plus_cone_contains(points: Sequence, rays: Sequence, v) -> bool:
    """Is v in conv(points) + cone(rays)?  Exact."""
    v = frac_vec(v)
    if not points:
        return False
    dim = len(v)
    cols = [list(frac_vec(p)) + [1] for p in points] + [list(frac_vec(r)) + [0] for r in rays]
    m = [[c[i] for c in cols] for i in range(dim + 1)]
    return nonneg_solution_exists(m, list(v) + [1])


@dataclass(frozen=True)
class HolCones:
    c_cone: ConeV
    chol_cone: ConeH
    z_halfspace: ConeH


def holomorphic_cones(pair: HermitianPair) -> HolCones:
    """C(z), C_hol(z) and the halfspace {<xi, z> >= 0}."""
    r = pair.rank
    gens = pair.noncompact_pos_roots
    normals = tuple(tuple(sum(g * b for g, b in zip(row, beta)) for row in pair.gram) for beta in gens)
    return HolCones(
        c_cone=ConeV(r, gens),
        chol_cone=ConeH(r, normals, (0,) * len(normals)),
        z_halfspace=ConeH(r, (pair.z,), (0,)),
    )


def asymptotic_cone(p: ConeH) -> ConeH:
    """Recession cone of a non-empty polyhedron: the same normals with zero offsets."""
    if p.is_empty():
        raise ValueError("the asymptotic cone of an empty polyhedron is not defined here")
    return ConeH(p.dim, p.normals, (0,) * len(p.normals))


def admissible_torus_test(emb: Embedding) -> bool:
    """0 outside conv{proj(beta) : beta in R_n(z)}, i.e. S.(p) is T'-admissible.

    When z lies in g' the answer is yes without any computation.  The full
    criterion involves K.(k')^perp and is not polyhedral; only this torus test
    is implemented.
    """
    if emb.contains_z:
        return True
    weights = [emb.project(b) for b in emb.ambient.noncompact_pos_roots]
    if not weights:
        return True
    return not hull_plus_cone_contains(weights, [], (0,) * emb.sub.rank)


def _reduce_generators(gens: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    keep = sorted(set(gens), reverse=True)
    i = 0
    while i < len(keep):
        others = keep[:i] + keep[i + 1:]
        if others and cone_contains(ConeV(dim, tuple(others)), keep[i]):
            keep.pop(i)
        else:
            i += 1
    return keep


def empirical_kirwan_cone(pair: HermitianPair, n: int) -> ConeV:
    """Cone spanned by the highest weights of S^k(p), k = 1..n."""
    from .graded import sym_power

    if n < 1:
        raise ValueError("n must be at least 1")
    rays = []
    for k in range(1, n + 1):
        dec: IrrDecomp = sym_power(pair, pair.noncompact_pos_roots, k)
        rays += [primitive(w) for w in dec if any(w)]
    return ConeV(pair.rank, tuple(_reduce_generators(rays, pair.rank)))
