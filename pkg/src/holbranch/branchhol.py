"""Branching of holomorphic discrete series and the truncated identities behind it.

For an embedding G' -> G with z in g', the multiplicity of V^{G'}_mu in
V^G_lam|_{G'} is the multiplicity of V^{K'}_mu in S.(p/p') (x) V^K_lam|_{K'}
(Jakobsen-Vergne).  The quantization of the reduced spaces (G.lam)_{mu,G'}
is never computed on its own: those numbers coincide with the above, so this
module uses them as the definition of r_{G',G} and checks that the identities
relating the K-, K'- and G'-levels hold degree by degree.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from . import cones
from .graded import (GradedChar, GSeries, branch_graded, expand_hds, graded_product,
                     restrict_series, sym_algebra)
from .kchar import branch, weyl_orbit
from .lie import Embedding, HermitianPair, Weight, in_ghat_hol, on_ghat_boundary


@dataclass(frozen=True)
class CheckRecord:
    name: str
    source: str
    passed: bool
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "source": self.source, "passed": self.passed, "witness": self.witness}


QR_SOURCE = "quantization commutes with reduction: r_{K',G'}(V_lam|G') = branch of V_lam|K"
SQUARE_SOURCE = "commuting restrictions: r_{K',K} r_{K,G} = r_{K',G'} r_{G',G}"
SUPPORT_SOURCE = "support of the branching: mu in Ghat'_hol(z), mu in proj(conv(W_K lam) + C(z))"


def _require(emb: Embedding, lam) -> Weight:
    if not emb.contains_z:
        raise ValueError(f"{emb.id}: z is not in the subgroup; the branching is not handled")
    lam = tuple(int(x) for x in lam)
    emb.ambient.check_rank(lam)
    if not in_ghat_hol(emb.ambient, lam):
        raise ValueError(f"{lam} is not in the holomorphic parameter set of {emb.ambient.name}")
    return lam


def step(pair: HermitianPair) -> int:
    """The z-step c, taken as 1 for groups without noncompact roots."""
    return pair.z_step or 1


def default_cutoff(emb: Embedding, lam) -> int:
    return emb.ambient.z_degree(lam) + 2 * step(emb.ambient)


def jv_multiplicities(emb: Embedding, lam, cutoff: int | None = None) -> GSeries:
    """m_lam(mu) for every mu of z-degree <= cutoff."""
    lam = _require(emb, lam)
    if cutoff is None:
        cutoff = default_cutoff(emb, lam)
    d0 = emb.ambient.z_degree(lam)
    if cutoff < d0:
        raise ValueError(f"cutoff {cutoff} is below the z-degree {d0} of {lam}")
    sub = emb.sub
    lowest = GradedChar(sub, {d0: branch(emb, lam)}, None, check=False)
    quotient = sym_algebra(sub, emb.quotient_weights, cutoff)
    prod = graded_product(lowest, quotient, cutoff)
    terms: dict[Weight, int] = {}
    for piece in prod.pieces.values():
        for mu, m in piece.items():
            if m < 0:
                raise ArithmeticError(f"negative multiplicity {m} at {mu}")
            terms[mu] = m
    return GSeries(sub, terms, cutoff, check=False)


def _witness(diff) -> dict | None:
    if diff is None:
        return None
    d, w, got, expected = diff
    return {"degree": d, "weight": list(w), "expected": expected, "got": got}


def verify_qr(emb: Embedding, lam, cutoff: int | None = None,
              multiplicities: GSeries | None = None) -> CheckRecord:
    """Compare the K'-types of sum_mu m(mu) V^{G'}_mu with those of V^G_lam restricted to K'."""
    lam = _require(emb, lam)
    if cutoff is None:
        cutoff = default_cutoff(emb, lam)
    m = multiplicities if multiplicities is not None else jv_multiplicities(emb, lam, cutoff)
    got = restrict_series(emb.sub, m, cutoff)
    expected = branch_graded(emb, expand_hds(emb.ambient, lam, cutoff), cutoff)
    diff = got.first_difference(expected)
    return CheckRecord("qr", QR_SOURCE, diff is None, _witness(diff))


def restrict_to_subgroup(emb: Embedding, m: GSeries, cutoff: int) -> GSeries:
    """r_{G',G}(m), realized term by term through jv_multiplicities."""
    total = GSeries(emb.sub, {}, cutoff, check=False)
    for lam, c in m.items():
        if emb.ambient.z_degree(lam) > cutoff:
            continue
        total = total + jv_multiplicities(emb, lam, cutoff).scale(c)
    return total


def verify_square(emb: Embedding, m: GSeries, cutoff: int | None = None,
                  restricted: GSeries | None = None) -> CheckRecord:
    """Both ways around the square G -> K -> K' and G -> G' -> K' agree through ``cutoff``."""
    if not emb.contains_z:
        raise ValueError(f"{emb.id}: z is not in the subgroup; the branching is not handled")
    if m.pair != emb.ambient:
        raise ValueError(f"series lives on {m.pair.name}, embedding starts at {emb.ambient.name}")
    if cutoff is None:
        cutoff = m.cutoff
    if cutoff is None:
        raise ValueError("an exact series needs an explicit cutoff")
    for lam in m.terms:
        _require(emb, lam)
    expected = branch_graded(emb, restrict_series(emb.ambient, m, cutoff), cutoff)
    mid = restricted if restricted is not None else restrict_to_subgroup(emb, m, cutoff)
    got = restrict_series(emb.sub, mid, cutoff)
    diff = got.first_difference(expected)
    return CheckRecord("square", SQUARE_SOURCE, diff is None, _witness(diff))


def support_region(emb: Embedding, lam) -> tuple[list[Weight], list[Weight]]:
    """Points and rays with proj(conv(W_K lam) + C(z)) = conv(points) + cone(rays)."""
    points = sorted({emb.project(w) for w in weyl_orbit(emb.ambient, tuple(lam))})
    rays = sorted({emb.project(b) for b in emb.ambient.noncompact_pos_roots if any(emb.project(b))})
    return points, rays


def support_check(emb: Embedding, result: GSeries, lam=None) -> CheckRecord:
    """Every term is a positive multiplicity at a holomorphic parameter of G'.

    With ``lam`` given, each mu must also lie in proj(conv(W_K lam) + C(z)),
    the projection of the region that holds every weight of V^G_lam.
    """
    sub = emb.sub
    region = support_region(emb, lam) if lam is not None else None
    for mu, m in sorted(result.items(), key=lambda kv: (sub.z_degree(kv[0]), kv[0])):
        reason = None
        if m < 0:
            reason = "negative multiplicity"
        elif not in_ghat_hol(sub, mu):
            reason = "not a holomorphic parameter of the subgroup"
        elif region is not None and not cones.hull_plus_cone_contains(region[0], region[1], mu):
            reason = "outside proj(conv(W_K lam) + C(z))"
        if reason:
            witness = {"degree": sub.z_degree(mu), "weight": list(mu), "mult": m, "reason": reason}
            return CheckRecord("support", SUPPORT_SOURCE, False, witness)
    return CheckRecord("support", SUPPORT_SOURCE, True, None)


@dataclass
class BranchReport:
    embedding: str
    lam: Weight
    cutoff: int
    multiplicities: GSeries
    checks: list[CheckRecord] = field(default_factory=list)
    boundary: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "embedding": self.embedding,
            "lambda": list(self.lam),
            "cutoff": self.cutoff,
            "boundary": self.boundary,
            "multiplicities": self.multiplicities.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
        }

    def csv_rows(self) -> list[tuple[str, int, int]]:
        pair = self.multiplicities.pair
        return [(" ".join(str(x) for x in mu), pair.z_degree(mu), m)
                for mu, m in self.multiplicities.items()]


def branch_report(emb: Embedding, lam, cutoff: int | None = None, verify: bool = True) -> BranchReport:
    lam = _require(emb, lam)
    if cutoff is None:
        cutoff = default_cutoff(emb, lam)
    jv = jv_multiplicities(emb, lam, cutoff)
    checks = []
    if verify:
        checks = [verify_qr(emb, lam, cutoff, multiplicities=jv), support_check(emb, jv, lam)]
    return BranchReport(emb.id, lam, cutoff, jv, checks, on_ghat_boundary(emb.ambient, lam))


# -- grids --------------------------------------------------------------------

def holomorphic_weights(pair: HermitianPair, bound: int) -> list[Weight]:
    """All lam in Ghat_hol(z) with |coordinate| <= bound, sorted by (degree, lam)."""
    out = [w for w in itertools.product(range(-bound, bound + 1), repeat=pair.rank)
           if in_ghat_hol(pair, w)]
    return sorted(out, key=lambda w: (pair.z_degree(w), w))


@dataclass(frozen=True)
class GridResult:
    lam: Weight
    cutoff: int
    boundary: bool
    record: CheckRecord

    def to_dict(self) -> dict:
        return {"lambda": list(self.lam), "cutoff": self.cutoff, "boundary": self.boundary,
                **self.record.to_dict()}


def _grid_task(args) -> GridResult:
    emb, lam, cutoff = args
    return GridResult(lam, cutoff, on_ghat_boundary(emb.ambient, lam), verify_qr(emb, lam, cutoff))


def verify_grid(emb: Embedding, bound: int, extra_steps: int = 3, jobs: int = 1,
                lams: Iterable[Weight] | None = None) -> list[GridResult]:
    """verify_qr over every lam of the box, at cutoff d(lam) + extra_steps * c."""
    c = step(emb.ambient)
    lams = list(lams) if lams is not None else holomorphic_weights(emb.ambient, bound)
    tasks = [(emb, lam, emb.ambient.z_degree(lam) + extra_steps * c) for lam in lams]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_grid_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_grid_task(t) for t in tasks]
    return sorted(results, key=lambda r: (emb.ambient.z_degree(r.lam), r.lam))
