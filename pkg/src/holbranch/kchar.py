"""Finite virtual characters of K.

A character is stored either as a weight diagram (``dict`` weight -> mult) or
as an :class:`IrrDecomp` (dominant highest weight -> virtual multiplicity).
All algorithms are textbook ones run over exact integers and Fractions:
Weyl's dimension formula, Freudenthal's recursion, Brauer-Klimyk for tensor
products, and highest-weight peeling for decompositions.
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Mapping
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .lie import Embedding, HermitianPair, Weight

WeightMultMap = dict  # Weight -> int


class IrrDecomp(Mapping):
    """Element of R(K): dominant weight -> nonzero integer multiplicity."""

    __slots__ = ("pair", "_terms", "_hash")

    def __init__(self, pair: HermitianPair, terms=None, *, check: bool = True):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        clean: dict[Weight, int] = {}
        for w, m in items:
            w = tuple(int(x) for x in w)
            clean[w] = clean.get(w, 0) + int(m)
        clean = {w: m for w, m in clean.items() if m}
        if check:
            for w in clean:
                pair.check_rank(w)
                if not pair.is_dominant(w):
                    raise ValueError(f"{w} is not dominant for the compact roots of {pair.name}")
        self.pair = pair
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    def __getitem__(self, w) -> int:
        return self._terms[tuple(w)]

    def __iter__(self) -> Iterator[Weight]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, IrrDecomp):
            return self.pair == other.pair and self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == {tuple(k): v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.pair, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {m}" for w, m in self._terms.items())
        return f"IrrDecomp({self.pair.slug}, {{{body}}})"

    def mult(self, w) -> int:
        return self._terms.get(tuple(w), 0)

    def _combine(self, other: "IrrDecomp", sign: int) -> "IrrDecomp":
        if self.pair != other.pair:
            raise ValueError(f"pair mismatch: {self.pair.name} vs {other.pair.name}")
        out = dict(self._terms)
        for w, m in other._terms.items():
            out[w] = out.get(w, 0) + sign * m
        return IrrDecomp(self.pair, out, check=False)

    def __add__(self, other: "IrrDecomp") -> "IrrDecomp":
        return self._combine(other, 1)

    def __sub__(self, other: "IrrDecomp") -> "IrrDecomp":
        return self._combine(other, -1)

    def __neg__(self) -> "IrrDecomp":
        return self.scale(-1)

    def scale(self, k: int) -> "IrrDecomp":
        return IrrDecomp(self.pair, {w: k * m for w, m in self._terms.items()}, check=False)

    __rmul__ = scale

    def dim(self) -> int:
        return sum(m * weyl_dim(self.pair, w) for w, m in self._terms.items())

    def is_nonnegative(self) -> bool:
        return all(m > 0 for m in self._terms.values())

    def terms_list(self) -> list[dict]:
        return [{"weight": list(w), "mult": m} for w, m in self._terms.items()]


def zero(pair: HermitianPair) -> IrrDecomp:
    return IrrDecomp(pair, {}, check=False)


def trivial(pair: HermitianPair) -> IrrDecomp:
    return IrrDecomp(pair, {(0,) * pair.rank: 1}, check=False)


def irreducible(pair: HermitianPair, lam) -> IrrDecomp:
    return IrrDecomp(pair, {tuple(lam): 1})


def _require_dominant(pair: HermitianPair, lam) -> Weight:
    lam = tuple(int(x) for x in lam)
    pair.check_rank(lam)
    if not pair.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant for the compact roots of {pair.name}")
    return lam


def _apply(mat, w) -> Weight:
    return tuple(sum(a * b for a, b in zip(row, w)) for row in mat)


def dominant_rep(pair: HermitianPair, w) -> tuple[Weight, int]:
    """(dominant W_K-conjugate of w, sign of a Weyl element carrying w there)."""
    w = tuple(w)
    sign = 1
    simple = pair.compact_simple_roots
    refl = pair.simple_reflections
    while True:
        for a, s in zip(simple, refl):
            if pair.inner(w, a) < 0:
                w = _apply(s, w)
                sign = -sign
                break
        else:
            return w, sign


@lru_cache(maxsize=None)
def weyl_orbit(pair: HermitianPair, w: Weight) -> frozenset[Weight]:
    seen = {tuple(w)}
    frontier = [tuple(w)]
    while frontier:
        nxt = []
        for v in frontier:
            for s in pair.simple_reflections:
                u = _apply(s, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return frozenset(seen)


def weyl_dim(pair: HermitianPair, lam) -> int:
    lam = _require_dominant(pair, lam)
    return _weyl_dim(pair, lam)


@lru_cache(maxsize=None)
def _weyl_dim(pair: HermitianPair, lam: Weight) -> int:
    num = Fraction(1)
    shifted = tuple(x + r for x, r in zip(lam, pair.rho_c))
    for a in pair.compact_pos_roots:
        num *= Fraction(pair.inner(shifted, a)) / pair.inner(pair.rho_c, a)
    assert num.denominator == 1
    return int(num)


@lru_cache(maxsize=None)
def _dominant_weights(pair: HermitianPair, lam: Weight) -> tuple[Weight, ...]:
    """Dominant weights of V_lam: dominant mu with lam - mu a sum of positive roots.

    Adjacent dominant weights in the dominance order differ by a positive root,
    so a search that only ever steps through dominant weights reaches them all.
    """
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in pair.compact_pos_roots:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in seen and pair.is_dominant(nu):
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    two_rho = pair.two_rho_c
    return tuple(sorted(seen, key=lambda mu: (sum((x - y) * r for x, y, r in zip(lam, mu, two_rho)), mu)))


@lru_cache(maxsize=None)
def _dominant_mults(pair: HermitianPair, lam: Weight) -> dict[Weight, int]:
    """Freudenthal's recursion on the dominant weights of V_lam."""
    order = _dominant_weights(pair, lam)
    rho = pair.rho_c
    mult: dict[Weight, int] = {lam: 1}

    def norm_shift(v):
        s = [x + r for x, r in zip(v, rho)]
        return pair.inner(s, s)

    top = norm_shift(lam)
    for mu in order[1:]:
        acc = Fraction(0)
        for a in pair.compact_pos_roots:
            k = 1
            while True:
                v = tuple(x + k * y for x, y in zip(mu, a))
                m = mult.get(dominant_rep(pair, v)[0], 0)
                if not m:
                    break
                acc += m * pair.inner(v, a)
                k += 1
        val = 2 * acc / (top - norm_shift(mu))
        if val.denominator != 1 or val < 0:
            raise ArithmeticError(f"Freudenthal produced {val} at {mu}")
        if val:
            mult[mu] = int(val)
    return mult


def weight_multiplicities(pair: HermitianPair, lam) -> WeightMultMap:
    """Full weight diagram of V^K_lam."""
    lam = _require_dominant(pair, lam)
    return dict(_weight_diagram(pair, lam))


@lru_cache(maxsize=None)
def _weight_diagram(pair: HermitianPair, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    out = {}
    for mu, m in _dominant_mults(pair, lam).items():
        for w in weyl_orbit(pair, mu):
            out[w] = m
    return tuple(sorted(out.items()))


def _order_key(pair: HermitianPair):
    return lambda w: (pair.z_degree(w), w)


def decompose_weight_map(pair: HermitianPair, wm: Mapping) -> IrrDecomp:
    """Peel highest weights off a W_K-invariant weight map.

    The largest remaining weight in (z-degree, lexicographic) order is always
    dominant: compact positive roots have z-degree 0 and are lexicographically
    positive in these coordinates.
    """
    work = {tuple(w): int(m) for w, m in wm.items() if m}
    for w in work:
        pair.check_rank(w)
    for w, m in work.items():
        for s in pair.simple_reflections:
            sw = _apply(s, w)
            if work.get(sw, 0) != m:
                raise ValueError(f"weight map is not W_K-invariant: mult{w} = {m}, mult{sw} = {work.get(sw, 0)}")
    key = _order_key(pair)
    result: dict[Weight, int] = {}
    while work:
        top = max(work, key=key)
        c = work[top]
        if not pair.is_dominant(top):
            raise ValueError(f"weight map is not W_K-invariant: top weight {top} is not dominant")
        result[top] = c
        for w, m in _weight_diagram(pair, top):
            left = work.get(w, 0) - c * m
            if left:
                work[w] = left
            else:
                work.pop(w, None)
    return IrrDecomp(pair, result, check=False)


def character(dec: IrrDecomp) -> WeightMultMap:
    """Weight diagram of a virtual character."""
    out: dict[Weight, int] = defaultdict(int)
    for lam, c in dec.items():
        for w, m in _weight_diagram(dec.pair, lam):
            out[w] += c * m
    return {w: m for w, m in out.items() if m}


def tensor_decompose(pair: HermitianPair, lam, mu) -> IrrDecomp:
    lam = _require_dominant(pair, lam)
    mu = _require_dominant(pair, mu)
    return IrrDecomp(pair, _tensor(pair, lam, mu), check=False)


@lru_cache(maxsize=None)
def _tensor(pair: HermitianPair, lam: Weight, mu: Weight) -> tuple[tuple[Weight, int], ...]:
    # Brauer-Klimyk, iterating over the weights of the smaller factor.  Work
    # with 2(lam + nu + rho_c) to stay integral; wall weights drop out.
    if _weyl_dim(pair, lam) < _weyl_dim(pair, mu):
        lam, mu = mu, lam
    two_rho = pair.two_rho_c
    simple = pair.compact_simple_roots
    out: dict[Weight, int] = defaultdict(int)
    for nu, m in _weight_diagram(pair, mu):
        v = tuple(2 * (a + b) + r for a, b, r in zip(lam, nu, two_rho))
        v, sign = dominant_rep(pair, v)
        if any(pair.inner(v, a) == 0 for a in simple):
            continue
        hw = tuple((x - r) // 2 for x, r in zip(v, two_rho))
        out[hw] += sign * m
    return tuple(sorted((w, m) for w, m in out.items() if m))


def tensor_product(a: IrrDecomp, b: IrrDecomp) -> IrrDecomp:
    if a.pair != b.pair:
        raise ValueError(f"pair mismatch: {a.pair.name} vs {b.pair.name}")
    out: dict[Weight, int] = defaultdict(int)
    for lam, x in a.items():
        for mu, y in b.items():
            for nu, m in _tensor(a.pair, lam, mu):
                out[nu] += x * y * m
    return IrrDecomp(a.pair, out, check=False)


def branch(emb: Embedding, lam) -> IrrDecomp:
    """Restriction of V^K_lam to K' through ``emb.proj``."""
    lam = _require_dominant(emb.ambient, lam)
    return IrrDecomp(emb.sub, _branch(emb, lam), check=False)


@lru_cache(maxsize=None)
def _branch(emb: Embedding, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    pushed: dict[Weight, int] = defaultdict(int)
    for w, m in _weight_diagram(emb.ambient, lam):
        pushed[emb.project(w)] += m
    return tuple(decompose_weight_map(emb.sub, pushed).items())


def branch_decomp(emb: Embedding, dec: IrrDecomp) -> IrrDecomp:
    out: dict[Weight, int] = defaultdict(int)
    for lam, c in dec.items():
        for mu, m in _branch(emb, lam):
            out[mu] += c * m
    return IrrDecomp(emb.sub, out, check=False)


def dominant_weights_in_box(pair: HermitianPair, bound: int, lo: int | None = None) -> Iterable[Weight]:
    """Dominant weights with every coordinate in [lo, bound] (lo defaults to -bound)."""
    import itertools
    lo = -bound if lo is None else lo
    for w in itertools.product(range(lo, bound + 1), repeat=pair.rank):
        if pair.is_dominant(w):
            yield w
