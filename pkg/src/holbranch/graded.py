"""Truncated z-graded characters: R^{-oo}(K, z) and R^{-oo}(G, z).

A :class:`GradedChar` is exact in every z-degree up to ``cutoff`` and says
nothing above it; ``cutoff=None`` marks an exact finite element.  A
:class:`GSeries` is a formal sum of holomorphic discrete series, indexed by
their lowest K-types.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .kchar import IrrDecomp, branch_decomp, decompose_weight_map, tensor_product, trivial, zero
from .lie import Embedding, HermitianPair, Weight, in_ghat_hol


def _min_cut(*cuts):
    finite = [c for c in cuts if c is not None]
    return min(finite) if finite else None


def _add_cut(a, b):
    return None if a is None or b is None else a + b


class GradedChar:
    """Map z-degree -> IrrDecomp, exact through ``cutoff``."""

    __slots__ = ("pair", "pieces", "cutoff")

    def __init__(self, pair: HermitianPair, pieces: Mapping[int, IrrDecomp] | None = None,
                 cutoff: int | None = None, *, check: bool = True):
        clean: dict[int, IrrDecomp] = {}
        for d, dec in (pieces or {}).items():
            d = int(d)
            if not isinstance(dec, IrrDecomp):
                dec = IrrDecomp(pair, dec)
            if cutoff is not None and d > cutoff:
                continue
            if not dec:
                continue
            if check:
                if dec.pair != pair:
                    raise ValueError(f"piece at degree {d} lives on {dec.pair.name}, not {pair.name}")
                for w in dec:
                    if pair.z_degree(w) != d:
                        raise ValueError(f"weight {w} has z-degree {pair.z_degree(w)}, filed under {d}")
            clean[d] = dec
        self.pair = pair
        self.pieces = dict(sorted(clean.items()))
        self.cutoff = cutoff

    def degree(self, d: int) -> IrrDecomp:
        return self.pieces.get(d) or zero(self.pair)

    def min_degree(self) -> int | None:
        return next(iter(self.pieces), None)

    def is_zero(self) -> bool:
        return not self.pieces

    def truncate(self, cutoff: int | None) -> "GradedChar":
        cut = _min_cut(self.cutoff, cutoff)
        return GradedChar(self.pair, self.pieces, cut, check=False)

    def _combine(self, other: "GradedChar", sign: int) -> "GradedChar":
        if self.pair != other.pair:
            raise ValueError(f"pair mismatch: {self.pair.name} vs {other.pair.name}")
        cut = _min_cut(self.cutoff, other.cutoff)
        out = dict(self.pieces)
        for d, dec in other.pieces.items():
            out[d] = out[d] + dec.scale(sign) if d in out else dec.scale(sign)
        return GradedChar(self.pair, out, cut, check=False)

    def __add__(self, other: "GradedChar") -> "GradedChar":
        return self._combine(other, 1)

    def __sub__(self, other: "GradedChar") -> "GradedChar":
        return self._combine(other, -1)

    def scale(self, k: int) -> "GradedChar":
        return GradedChar(self.pair, {d: p.scale(k) for d, p in self.pieces.items()}, self.cutoff,
                          check=False)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedChar):
            return NotImplemented
        return (self.pair == other.pair and self.cutoff == other.cutoff
                and self.pieces == other.pieces)

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(f"{d}: {dict(p)}" for d, p in self.pieces.items())
        return f"GradedChar({self.pair.slug}, cutoff={self.cutoff}, {{{body}}})"

    def first_difference(self, other: "GradedChar", cutoff: int | None = None):
        """(degree, weight, mult in self, mult in other) at the first disagreement, or None."""
        cut = _min_cut(self.cutoff, other.cutoff, cutoff)
        for d in sorted(set(self.pieces) | set(other.pieces)):
            if cut is not None and d > cut:
                break
            a, b = self.degree(d), other.degree(d)
            if a != b:
                for w in sorted(set(a) | set(b)):
                    if a.mult(w) != b.mult(w):
                        return d, w, a.mult(w), b.mult(w)
        return None

    def to_dict(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "pieces": [{"degree": d, "terms": p.terms_list()} for d, p in self.pieces.items()],
        }

    @classmethod
    def from_dict(cls, pair: HermitianPair, data: Mapping) -> "GradedChar":
        pieces = {}
        for piece in data["pieces"]:
            pieces[int(piece["degree"])] = IrrDecomp(
                pair, [(tuple(t["weight"]), t["mult"]) for t in piece["terms"]])
        return cls(pair, pieces, data["cutoff"])


class GSeries:
    """Formal sum of holomorphic discrete series: lowest K-type -> integer."""

    __slots__ = ("pair", "terms", "cutoff")

    def __init__(self, pair: HermitianPair, terms: Mapping | Iterable = (), cutoff: int | None = None,
                 *, check: bool = True):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Weight, int] = {}
        for w, m in items:
            w = tuple(int(x) for x in w)
            clean[w] = clean.get(w, 0) + int(m)
        clean = {w: m for w, m in clean.items() if m}
        if check:
            for w in clean:
                pair.check_rank(w)
                if not in_ghat_hol(pair, w):
                    raise ValueError(f"{w} is not a holomorphic discrete series parameter of {pair.name}")
                if cutoff is not None and pair.z_degree(w) > cutoff:
                    raise ValueError(f"{w} has z-degree {pair.z_degree(w)} above the cutoff {cutoff}")
        self.pair = pair
        self.terms = dict(sorted(clean.items(), key=lambda kv: (pair.z_degree(kv[0]), kv[0])))
        self.cutoff = cutoff

    def __eq__(self, other) -> bool:
        if not isinstance(other, GSeries):
            return NotImplemented
        return self.pair == other.pair and self.cutoff == other.cutoff and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"GSeries({self.pair.slug}, cutoff={self.cutoff}, {self.terms})"

    def __len__(self) -> int:
        return len(self.terms)

    def mult(self, w) -> int:
        return self.terms.get(tuple(w), 0)

    def items(self):
        return self.terms.items()

    def truncate(self, cutoff: int | None) -> "GSeries":
        cut = _min_cut(self.cutoff, cutoff)
        return GSeries(self.pair, {w: m for w, m in self.terms.items()
                                   if cut is None or self.pair.z_degree(w) <= cut}, cut, check=False)

    def __add__(self, other: "GSeries") -> "GSeries":
        if self.pair != other.pair:
            raise ValueError("pair mismatch")
        out = dict(self.terms)
        for w, m in other.terms.items():
            out[w] = out.get(w, 0) + m
        return GSeries(self.pair, out, _min_cut(self.cutoff, other.cutoff), check=False).truncate(None)

    def scale(self, k: int) -> "GSeries":
        return GSeries(self.pair, {w: k * m for w, m in self.terms.items()}, self.cutoff, check=False)

    def with_term(self, w, m: int) -> "GSeries":
        """Copy with the coefficient of w replaced (no validation; used for mutation tests)."""
        out = dict(self.terms)
        out[tuple(w)] = m
        return GSeries(self.pair, out, self.cutoff, check=False)

    def by_degree(self) -> dict[int, dict[Weight, int]]:
        out: dict[int, dict[Weight, int]] = defaultdict(dict)
        for w, m in self.terms.items():
            out[self.pair.z_degree(w)][w] = m
        return dict(sorted(out.items()))

    def to_dict(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "pieces": [{"degree": d, "terms": [{"weight": list(w), "mult": m} for w, m in sorted(ts.items())]}
                       for d, ts in self.by_degree().items()],
        }

    @classmethod
    def from_dict(cls, pair: HermitianPair, data: Mapping) -> "GSeries":
        terms = [(tuple(t["weight"]), t["mult"]) for piece in data["pieces"] for t in piece["terms"]]
        return cls(pair, terms, data["cutoff"])


# -- symmetric algebras -------------------------------------------------------

def _check_roots(pair: HermitianPair, roots: Sequence[Weight]) -> tuple[Weight, ...]:
    roots = tuple(sorted((tuple(int(x) for x in r) for r in roots), reverse=True))
    for r in roots:
        pair.check_rank(r)
    degs = {pair.z_degree(r) for r in roots}
    if len(degs) > 1 or any(d <= 0 for d in degs):
        raise ValueError(f"module weights must share one positive z-degree, got {sorted(degs)}")
    return roots


@lru_cache(maxsize=None)
def _sym_weight_maps(roots: tuple[Weight, ...], rank: int, kmax: int) -> tuple[dict, ...]:
    # monomial count by weight, unbounded-knapsack style over the module weights
    dp: list[dict[Weight, int]] = [{(0,) * rank: 1}] + [dict() for _ in range(kmax)]
    for r in roots:
        for j in range(1, kmax + 1):
            prev = dp[j - 1]
            cur = dp[j]
            for w, m in prev.items():
                v = tuple(a + b for a, b in zip(w, r))
                cur[v] = cur.get(v, 0) + m
    return tuple(dp)


@lru_cache(maxsize=None)
def _sym_power(pair: HermitianPair, roots: tuple[Weight, ...], k: int) -> IrrDecomp:
    wm = _sym_weight_maps(roots, pair.rank, k)[k]
    return decompose_weight_map(pair, wm)


def sym_power(pair: HermitianPair, roots: Iterable[Weight], k: int) -> IrrDecomp:
    """K-decomposition of S^k of the module whose T-weights are ``roots`` (a multiset)."""
    if k < 0:
        raise ValueError(f"negative symmetric power {k}")
    roots = _check_roots(pair, list(roots))
    if k == 0:
        return trivial(pair)
    return _sym_power(pair, roots, k)


def sym_algebra(pair: HermitianPair, roots: Iterable[Weight], cutoff: int) -> GradedChar:
    """S^.(module) truncated at z-degree ``cutoff``."""
    roots = _check_roots(pair, list(roots))
    pieces = {0: trivial(pair)}
    if roots:
        c = pair.z_degree(roots[0])
        for k in range(1, cutoff // c + 1):
            pieces[k * c] = _sym_power(pair, roots, k)
    return GradedChar(pair, pieces, cutoff if roots else None, check=False)


def graded_product(a: GradedChar, b: GradedChar, cutoff: int | None = None) -> GradedChar:
    """Product in R^{-oo}(K, z).

    The result is exact through min(cutoff, a.cutoff + low(b), b.cutoff + low(a)),
    where low(x) is the lowest degree x can occupy; above that an unknown part
    of one factor could contribute.
    """
    if a.pair != b.pair:
        raise ValueError(f"pair mismatch: {a.pair.name} vs {b.pair.name}")

    def low(x: GradedChar):
        m = x.min_degree()
        if m is not None:
            return m
        return None if x.cutoff is None else x.cutoff + 1

    cut = _min_cut(cutoff, _add_cut(a.cutoff, low(b)), _add_cut(b.cutoff, low(a)))
    out: dict[int, IrrDecomp] = {}
    for d1, p1 in a.pieces.items():
        for d2, p2 in b.pieces.items():
            d = d1 + d2
            if cut is not None and d > cut:
                continue
            prod = tensor_product(p1, p2)
            out[d] = out[d] + prod if d in out else prod
    return GradedChar(a.pair, out, cut, check=False)


# -- holomorphic discrete series ----------------------------------------------

def _require_hol(pair: HermitianPair, lam) -> Weight:
    lam = tuple(int(x) for x in lam)
    pair.check_rank(lam)
    if not in_ghat_hol(pair, lam):
        raise ValueError(f"{lam} is not in the holomorphic parameter set of {pair.name}")
    return lam


def expand_hds(pair: HermitianPair, lam, cutoff: int) -> GradedChar:
    """K-types of V^G_lam, i.e. V^K_lam (x) S^.(p), through z-degree ``cutoff``."""
    lam = _require_hol(pair, lam)
    d0 = pair.z_degree(lam)
    if cutoff < d0:
        raise ValueError(f"cutoff {cutoff} is below the z-degree {d0} of {lam}")
    return GradedChar(pair, _expand(pair, lam, cutoff), cutoff, check=False)


@lru_cache(maxsize=None)
def _expand(pair: HermitianPair, lam: Weight, cutoff: int) -> dict[int, IrrDecomp]:
    d0 = pair.z_degree(lam)
    base = IrrDecomp(pair, {lam: 1}, check=False)
    pieces = {d0: base}
    roots = pair.noncompact_pos_roots
    if roots:
        c = pair.z_step
        for k in range(1, (cutoff - d0) // c + 1):
            pieces[d0 + k * c] = tensor_product(base, _sym_power(pair, roots, k))
    return pieces


def restrict_series(pair: HermitianPair, m: GSeries, cutoff: int | None = None) -> GradedChar:
    """r_{K,G}: the K-character of a formal sum of holomorphic discrete series."""
    if m.pair != pair:
        raise ValueError(f"series lives on {m.pair.name}, not {pair.name}")
    if cutoff is None:
        cutoff = m.cutoff
        if cutoff is None:
            raise ValueError("an exact series needs an explicit cutoff")
    elif m.cutoff is not None and cutoff > m.cutoff:
        raise ValueError(f"cutoff {cutoff} exceeds the series cutoff {m.cutoff}")
    acc: dict[int, dict[Weight, int]] = defaultdict(lambda: defaultdict(int))
    for lam, c in m.terms.items():
        if pair.z_degree(lam) > cutoff:
            continue
        for d, dec in _expand(pair, lam, cutoff).items():
            slot = acc[d]
            for w, x in dec.items():
                slot[w] += c * x
    pieces = {d: IrrDecomp(pair, ws, check=False) for d, ws in acc.items()}
    return GradedChar(pair, pieces, cutoff, check=False)


def peel(pair: HermitianPair, n: GradedChar) -> GSeries:
    """Inverse of r_{K,G} on its image.

    Degrees are processed in increasing order.  Each lambda' only contributes
    in degrees >= d(lambda'), because C(z) minus the origin pairs strictly
    positively with z_o; so once the pieces below d are cleared, whatever
    remains in degree d consists of lowest K-types and must be read off as is.
    This matches the minimal-norm choice in the usual injectivity argument.
    """
    if n.pair != pair:
        raise ValueError(f"character lives on {n.pair.name}, not {pair.name}")
    if n.cutoff is None:
        raise ValueError("peel needs a truncated character (finite cutoff)")
    cutoff = n.cutoff
    residual: dict[int, dict[Weight, int]] = {d: dict(p.items()) for d, p in n.pieces.items()}
    found: dict[Weight, int] = {}
    start = min(residual, default=cutoff + 1)
    for d in range(start, cutoff + 1):
        layer = residual.get(d, {})
        for lam, c in sorted(layer.items()):
            if not c:
                continue
            if not in_ghat_hol(pair, lam):
                raise ValueError(f"not in the image of r_{{K,G}}: coefficient {c} at {lam} (degree {d})")
            found[lam] = c
            for dd, dec in _expand(pair, lam, cutoff).items():
                slot = residual.setdefault(dd, {})
                for w, x in dec.items():
                    slot[w] = slot.get(w, 0) - c * x
    return GSeries(pair, found, cutoff, check=False)


def branch_graded(emb: Embedding, a: GradedChar, cutoff: int | None = None) -> GradedChar:
    """Restrict a graded K-character to K'; degrees are preserved because z lies in g'."""
    if not emb.contains_z:
        raise ValueError(f"{emb.id}: z is not in the subgroup, so z-degrees are not preserved")
    if a.pair != emb.ambient:
        raise ValueError(f"character lives on {a.pair.name}, embedding starts at {emb.ambient.name}")
    cut = _min_cut(a.cutoff, cutoff)
    pieces = {d: branch_decomp(emb, p) for d, p in a.pieces.items() if cut is None or d <= cut}
    return GradedChar(emb.sub, pieces, cut, check=False)
