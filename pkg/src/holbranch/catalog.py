"""The catalog of Hermitian pairs and subgroups, and its JSON form.

Ids are slugs: ``sp4R``, ``sostar6``, ``u2,1``, ``so2,5``, ``T2`` for pairs,
``x`` joining product factors (``sp2Rxsp2R``).  Embeddings are
``<ambient>:<sub>`` for involution and chain subgroups, ``<ambient>-diag``
for diagonals and ``<ambient>-torus`` for the maximal torus.  Lookup is
case-insensitive.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .lie import (STRONGLY_ELLIPTIC_TABLE, Embedding, Family, HermitianPair, build_pair,
                  candidate_embeddings, make_embedding, product_pair)
from .rational import fmt_frac

CATALOG_VERSION = 1
ENV_VAR = "HOLBRANCH_CATALOG"

INVOLUTION_ROWS = (
    ("Sp(n,R)", "Sp(p,R) x Sp(n-p,R)"),
    ("Sp(n,R)", "U(p,n-p)"),
    ("SO(2,2n)", "U(1,n)"),
    ("SO(2,n)", "SO(2,p) x SO(n-p)"),
    ("SO*(2n)", "U(p,n-p)"),
    ("SO*(2n)", "SO*(2p) x SO*(2n-2p)"),
    ("U(n,n)", "Sp(n,R)"),
    ("U(n,n)", "SO*(2n)"),
    ("U(p,q)", "U(i,j) x U(p-i,q-j)"),
)


def _default_pairs() -> list[HermitianPair]:
    sp = [build_pair(Family.SpR, [n]) for n in (1, 2, 3)]
    so_star = [build_pair(Family.SOstar, [n]) for n in (2, 3, 4)]
    u = [build_pair(Family.Upq, pq) for pq in ([1, 1], [2, 1], [1, 2], [2, 2], [3, 1])]
    so = [build_pair(Family.SO2n, [n]) for n in range(1, 7)]
    sp2, sp4, u11 = sp[0], sp[1], u[0]
    prods = [product_pair([sp2, sp2]), product_pair([sp2, sp2, sp2]),
             product_pair([sp4, sp4]), product_pair([u11, u11])]
    return sp + so_star + u + so + prods


def _unsupported(pair: HermitianPair) -> list[dict]:
    """Rows of the involution table whose subgroup has a compact non-abelian factor."""
    out = []
    f, prm = pair.family, pair.params
    if f is Family.SO2n:
        n = prm[0]
        for p in range(0, n - 2):
            out.append({"ambient": pair.slug, "subgroup": f"SO_o(2,{p}) x SO({n - p})",
                        "reason": f"compact factor SO({n - p}) is not a Hermitian pair"})
    if f is Family.Upq:
        p, q = prm
        seen = set()
        for i in range(p + 1):
            for j in range(q + 1):
                a, b = (i, j), (p - i, q - j)
                if a == (0, 0) or b == (0, 0) or (b, a) in seen:
                    continue
                seen.add((a, b))
                compact = [max(x) for x in (a, b) if min(x) == 0 and max(x) >= 2]
                if compact:
                    out.append({"ambient": pair.slug, "subgroup": f"U({i},{j}) x U({p - i},{q - j})",
                                "reason": f"compact factor U({compact[0]}) is not a Hermitian pair"})
    return out


def _pair_params(pair: HermitianPair):
    if pair.family is Family.Product:
        return [{"family": f.family.value, "params": _pair_params(f)} for f in pair.factors]
    return list(pair.params)


def _pair_from_params(family: str, params) -> HermitianPair:
    if Family(family) is Family.Product:
        return product_pair([_pair_from_params(p["family"], p["params"]) for p in params])
    return build_pair(family, params)


def pair_to_dict(pair: HermitianPair) -> dict:
    return {
        "id": pair.slug,
        "name": pair.name,
        "family": pair.family.value,
        "params": _pair_params(pair),
        "K": pair.k_name,
        "p": pair.p_name,
        "rank": pair.rank,
        "compact_pos_roots": [list(a) for a in pair.compact_pos_roots],
        "noncompact_pos_roots": [list(b) for b in pair.noncompact_pos_roots],
        "z": [fmt_frac(x) for x in pair.z],
        "z_primitive": list(pair.z_primitive),
        "two_rho_n": list(pair.two_rho_n),
        "se_nonempty": pair.se_nonempty,
    }


def embedding_to_dict(emb: Embedding) -> dict:
    return {
        "id": emb.id,
        "kind": emb.kind,
        "label": emb.label,
        "ambient": emb.ambient.slug,
        "sub": {"id": emb.sub.slug, "family": emb.sub.family.value, "params": _pair_params(emb.sub),
                "z": [fmt_frac(x) for x in emb.sub.z]},
        "proj": [list(r) for r in emb.proj],
        "contains_z": emb.contains_z,
        "shared_noncompact": [list(b) for b in emb.shared_noncompact],
        "quotient_weights": None if emb.quotient_weights is None else [list(w) for w in emb.quotient_weights],
    }


@dataclass
class Catalog:
    pairs: dict[str, HermitianPair] = field(default_factory=dict)
    embeddings: dict[str, Embedding] = field(default_factory=dict)
    unsupported: list[dict] = field(default_factory=list)

    def add_pair(self, pair: HermitianPair) -> None:
        self.pairs[pair.slug] = pair

    def add_embedding(self, emb: Embedding) -> None:
        self.embeddings[emb.id] = emb

    def pair(self, selector: str) -> HermitianPair:
        key = selector.lower()
        for pid, p in self.pairs.items():
            if pid.lower() == key:
                return p
        raise KeyError(f"unknown pair id {selector!r}")

    def embedding(self, selector: str, sub: str | None = None) -> Embedding:
        """Embedding by id, or by (ambient id, sub selector).

        The sub selector is a sub slug, "T" for the maximal torus or "diag".
        """
        if sub is None:
            ids = [selector]
        else:
            s = sub.lower()
            if s in ("t", "torus"):
                ids = [f"{selector}-torus"]
            elif s == "diag":
                ids = [f"{selector}-diag"]
            else:
                ids = [f"{selector}:{sub}"]
        wanted = {i.lower() for i in ids}
        for eid, e in self.embeddings.items():
            if eid.lower() in wanted:
                return e
        if sub is not None:
            amb = self.pair(selector)
            for e in self.embeddings.values():
                if e.ambient == amb and e.sub.slug.lower() == sub.lower():
                    return e
        raise KeyError(f"unknown embedding {selector!r}" + (f" with subgroup {sub!r}" if sub else ""))

    def to_dict(self) -> dict:
        return {
            "version": CATALOG_VERSION,
            "pairs": [pair_to_dict(p) for p in self.pairs.values()],
            "embeddings": [embedding_to_dict(e) for e in self.embeddings.values()],
            "unsupported_rows": self.unsupported,
            "involution_rows": [{"G": g, "G_sigma": s} for g, s in INVOLUTION_ROWS],
            "strongly_elliptic": [{"G": g, "nonempty": c} for g, c in STRONGLY_ELLIPTIC_TABLE],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=False) + "\n"


def default_catalog() -> Catalog:
    cat = Catalog()
    for pair in _default_pairs():
        cat.add_pair(pair)
        for emb in candidate_embeddings(pair):
            cat.add_embedding(emb)
        cat.unsupported += _unsupported(pair)
    return cat


class CatalogError(ValueError):
    pass


def _check_equal(what: str, stored, derived) -> None:
    if stored is not None and stored != derived:
        raise CatalogError(f"{what}: stored {stored!r} disagrees with the derived {derived!r}")


def catalog_from_dict(data: dict) -> Catalog:
    """Rebuild a catalog, checking every stored field against the root data it implies."""
    if not isinstance(data, dict):
        raise CatalogError("catalog must be a JSON object")
    if data.get("version") != CATALOG_VERSION:
        raise CatalogError(f"unsupported catalog version {data.get('version')!r}")
    cat = Catalog()
    try:
        for entry in data["pairs"]:
            pair = _pair_from_params(entry["family"], entry["params"])
            _check_equal(f"pair {entry.get('id')} id", entry.get("id"), pair.slug)
            d = pair_to_dict(pair)
            for key in ("compact_pos_roots", "noncompact_pos_roots", "two_rho_n", "z_primitive"):
                if key in entry:
                    _check_equal(f"pair {pair.slug} {key}", [list(x) if isinstance(x, list) else x
                                                             for x in entry[key]], d[key])
            if "z" in entry:
                _check_equal(f"pair {pair.slug} z", [Fraction(x) for x in entry["z"]], list(pair.z))
            cat.add_pair(pair)
        for entry in data.get("embeddings", []):
            amb = cat.pair(entry["ambient"])
            sub_spec = entry["sub"]
            sub = _pair_from_params(sub_spec["family"], sub_spec["params"])
            emb = make_embedding(amb, sub, entry["proj"], id=entry["id"], kind=entry.get("kind", "custom"),
                                 label=entry.get("label", ""))
            d = embedding_to_dict(emb)
            for key in ("contains_z", "shared_noncompact", "quotient_weights"):
                if key in entry:
                    _check_equal(f"embedding {emb.id} {key}", entry[key], d[key])
            if "z" in sub_spec:
                _check_equal(f"embedding {emb.id} sub z", [Fraction(x) for x in sub_spec["z"]], list(emb.sub.z))
            cat.add_embedding(emb)
    except CatalogError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"invalid catalog entry: {exc}") from exc
    cat.unsupported = list(data.get("unsupported_rows", []))
    return cat


def load_catalog(path: str | os.PathLike | None = None) -> Catalog:
    """Load a catalog: ``path``, else $HOLBRANCH_CATALOG, else the bundled one."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path is None:
        text = resources.files("holbranch").joinpath("data/catalog.json").read_text()
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
    return catalog_from_dict(data)
