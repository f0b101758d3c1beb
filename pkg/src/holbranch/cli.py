"""Command-line interface: ``holbranch {catalog,branch,expand,verify,cone}``.

Exit status: 0 on success, 1 when a verification fails (the witness is in the
payload), 2 on usage or catalog errors.  Payloads go to stdout, diagnostics
to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import branchhol, cones
from .catalog import CatalogError, load_catalog
from .graded import GSeries, expand_hds
from .lie import classify_weight, on_ghat_boundary

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

EPILOG = """\
ids: pairs are slugs such as sp4R, sostar6, u2,1, so2,5, sp2Rxsp2R (products);
embeddings are <pair>:<sub>, <pair>-diag or <pair>-torus, e.g. sp4R:sp2Rxsp2R.
An embedding can also be given as --pair <ambient> --sub <sub>, with --sub T
for the maximal torus.  Lookup ignores case.  The catalog comes from --catalog,
else $HOLBRANCH_CATALOG, else the bundled file.
"""


class UsageError(Exception):
    pass


def _weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed weight {text!r}; expected comma-separated integers")


def _series_terms(text: str) -> list[tuple[tuple[int, ...], int]]:
    """'3,3:1;4,4:2' -> [((3,3),1), ((4,4),2)]"""
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        try:
            w, m = chunk.split(":")
            out.append((_weight(w), int(m)))
        except (ValueError, argparse.ArgumentTypeError):
            raise argparse.ArgumentTypeError(f"malformed series term {chunk!r}; expected 'a,b,...:mult'")
    return out


# -- rendering ----------------------------------------------------------------

def _fmt_weight(w) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _table(rows, header) -> str:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _render(fmt: str, payload, rows=None, header=None, summary: str = "") -> str:
    if fmt == "json" or rows is None:
        return _json(payload)
    if fmt == "csv":
        return _csv(rows, header)
    out = summary + ("\n" if summary else "")
    return out + _table(rows, header)


MULT_HEADER = ["mu_coords", "z_degree", "multiplicity"]


def _series_rows(series: GSeries):
    return [(" ".join(str(x) for x in mu), series.pair.z_degree(mu), m) for mu, m in series.items()]


# -- selectors ----------------------------------------------------------------

def _catalog(args):
    try:
        return load_catalog(args.catalog)
    except CatalogError as exc:
        raise UsageError(str(exc))


def _embedding(cat, args):
    try:
        return cat.embedding(args.pair, args.sub)
    except KeyError as exc:
        raise UsageError(exc.args[0])


def _pair(cat, args):
    try:
        return cat.pair(args.pair)
    except KeyError as exc:
        raise UsageError(exc.args[0])


def _check_lambda(pair, lam):
    if len(lam) != pair.rank:
        raise UsageError(f"lambda {_fmt_weight(lam)} has length {len(lam)}; {pair.name} has rank {pair.rank}")
    cls = classify_weight(pair, lam)
    if not cls.in_Ghat_hol:
        why = "not dominant for K" if not cls.dominant else "lambda - 2 rho_n(z) is outside C_hol(z)"
        raise UsageError(f"lambda {_fmt_weight(lam)} is not a holomorphic parameter of {pair.name}: {why}")


def _cutoff(args, emb_or_pair, lam):
    if args.cutoff is None:
        return None
    if args.cutoff < 0:
        raise UsageError("cutoff must be >= 0")
    d = emb_or_pair.z_degree(lam)
    if args.cutoff < d:
        raise UsageError(f"cutoff {args.cutoff} is below the z-degree {d} of lambda")
    return args.cutoff


# -- commands -----------------------------------------------------------------

def cmd_catalog(args) -> tuple[int, str]:
    cat = _catalog(args)
    if args.action == "export":
        return EXIT_OK, cat.to_json()
    if args.action == "show":
        if args.id is None:
            raise UsageError("catalog show needs an id")
        from .catalog import embedding_to_dict, pair_to_dict
        try:
            payload = {"pair": pair_to_dict(cat.pair(args.id))}
        except KeyError:
            try:
                emb = cat.embedding(args.id)
            except KeyError as exc:
                raise UsageError(exc.args[0])
            payload = {"embedding": embedding_to_dict(emb),
                       "admissible_torus_test": cones.admissible_torus_test(emb)}
        return EXIT_OK, _json(payload)
    pairs = [{"id": p.slug, "name": p.name, "K": p.k_name, "p": p.p_name, "rank": p.rank,
              "se_nonempty": p.se_nonempty} for p in cat.pairs.values()]
    embs = [{"id": e.id, "ambient": e.ambient.slug, "sub": e.sub.name, "kind": e.kind,
             "contains_z": e.contains_z, "label": e.label} for e in cat.embeddings.values()]
    payload = {"pairs": pairs, "embeddings": embs, "unsupported_rows": cat.unsupported}
    if args.format == "json":
        return EXIT_OK, _json(payload)
    header = ["id", "ambient", "subgroup", "kind", "contains_z"]
    rows = [(e["id"], e["ambient"], e["sub"], e["kind"], str(e["contains_z"]).lower()) for e in embs]
    if args.format == "csv":
        return EXIT_OK, _csv(rows, header)
    text = _table([(p["id"], p["name"], p["K"], p["p"], p["rank"]) for p in pairs],
                  ["id", "G", "K", "p", "rank"])
    text += "\n" + _table(rows, header)
    if cat.unsupported:
        text += "\nnot representable (compact non-abelian factor):\n"
        text += _table([(u["ambient"], u["subgroup"]) for u in cat.unsupported], ["ambient", "subgroup"])
    return EXIT_OK, text


def cmd_branch(args) -> tuple[int, str]:
    cat = _catalog(args)
    emb = _embedding(cat, args)
    if not emb.contains_z:
        raise UsageError(f"{emb.id}: z is not in the subgroup; branching is only handled when it is")
    _check_lambda(emb.ambient, args.lam)
    report = branchhol.branch_report(emb, args.lam, _cutoff(args, emb.ambient, args.lam),
                                     verify=not args.no_verify)
    summary = (f"{emb.ambient.name} > {emb.sub.name}  lambda={_fmt_weight(report.lam)}  "
               f"cutoff={report.cutoff}" + ("  (boundary lambda)" if report.boundary else ""))
    for c in report.checks:
        summary += f"\ncheck {c.name}: {'pass' if c.passed else 'FAIL'}"
    text = _render(args.format, report.to_dict(), _series_rows(report.multiplicities), MULT_HEADER, summary)
    return (EXIT_OK if report.passed else EXIT_FAIL), text


def cmd_expand(args) -> tuple[int, str]:
    cat = _catalog(args)
    pair = _pair(cat, args)
    _check_lambda(pair, args.lam)
    cutoff = _cutoff(args, pair, args.lam)
    if cutoff is None:
        cutoff = pair.z_degree(args.lam) + 2 * branchhol.step(pair)
    g = expand_hds(pair, args.lam, cutoff)
    payload = {"pair": pair.slug, "lambda": list(args.lam), **g.to_dict()}
    rows = [(" ".join(str(x) for x in w), d, m) for d, p in g.pieces.items() for w, m in p.items()]
    return EXIT_OK, _render(args.format, payload, rows, MULT_HEADER,
                            f"K-types of V_{_fmt_weight(args.lam)} of {pair.name} through degree {cutoff}")


def _record_payload(emb, rec, **extra) -> dict:
    return {"embedding": emb.id, **extra, **rec.to_dict()}


def cmd_verify(args) -> tuple[int, str]:
    cat = _catalog(args)
    emb = _embedding(cat, args)
    if not emb.contains_z:
        raise UsageError(f"{emb.id}: z is not in the subgroup; the identities are only checked when it is")
    kind = args.check
    if kind in ("qr", "support"):
        if args.lam is None:
            raise UsageError(f"verify {kind} needs --lambda")
        _check_lambda(emb.ambient, args.lam)
        cutoff = _cutoff(args, emb.ambient, args.lam) or branchhol.default_cutoff(emb, args.lam)
        if kind == "qr":
            rec = branchhol.verify_qr(emb, args.lam, cutoff)
        else:
            rec = branchhol.support_check(emb, branchhol.jv_multiplicities(emb, args.lam, cutoff), args.lam)
        payload = _record_payload(emb, rec, **{"lambda": list(args.lam), "cutoff": cutoff,
                                               "boundary": on_ghat_boundary(emb.ambient, args.lam)})
        rows = [(rec.name, "pass" if rec.passed else "fail", json.dumps(rec.witness, sort_keys=True))]
    elif kind == "square":
        if args.series is None or args.cutoff is None:
            raise UsageError("verify square needs --series and --cutoff")
        try:
            m = GSeries(emb.ambient, args.series, args.cutoff)
        except ValueError as exc:
            raise UsageError(str(exc))
        rec = branchhol.verify_square(emb, m, args.cutoff)
        payload = _record_payload(emb, rec, series=m.to_dict(), cutoff=args.cutoff)
        rows = [(rec.name, "pass" if rec.passed else "fail", json.dumps(rec.witness, sort_keys=True))]
    else:
        results = branchhol.verify_grid(emb, args.bound, args.steps, jobs=args.jobs)
        rec_ok = all(r.record.passed for r in results)
        payload = {"embedding": emb.id, "bound": args.bound, "steps": args.steps, "passed": rec_ok,
                   "count": len(results), "results": [r.to_dict() for r in results]}
        rows = [(_fmt_weight(r.lam), r.cutoff, "pass" if r.record.passed else "fail",
                 "yes" if r.boundary else "", json.dumps(r.record.witness, sort_keys=True) if r.record.witness else "")
                for r in results]
        text = _render(args.format, payload, rows, ["lambda", "cutoff", "qr", "boundary", "witness"],
                       f"{emb.id}: {len(results)} parameters, {'all pass' if rec_ok else 'FAILURES'}")
        return (EXIT_OK if rec_ok else EXIT_FAIL), text
    text = _render(args.format, payload, rows, ["check", "result", "witness"], f"{emb.id}")
    return (EXIT_OK if rec.passed else EXIT_FAIL), text


def cmd_cone(args) -> tuple[int, str]:
    cat = _catalog(args)
    if args.kind == "admissible":
        emb = _embedding(cat, args)
        ok = cones.admissible_torus_test(emb)
        payload = {"embedding": emb.id, "contains_z": emb.contains_z, "torus_admissible": ok,
                   "note": "torus-level test only"}
        return EXIT_OK, _render(args.format, payload, [(emb.id, str(ok).lower())], ["embedding", "torus_admissible"])
    pair = _pair(cat, args)
    hc = cones.holomorphic_cones(pair)
    if args.kind == "kirwan":
        payload = {"pair": pair.slug, "n": args.n, "cone": cones.empirical_kirwan_cone(pair, args.n).to_dict()}
    elif args.kind == "contains":
        if args.vector is None:
            raise UsageError("cone contains needs --vector")
        if len(args.vector) != pair.rank:
            raise UsageError(f"vector has length {len(args.vector)}; {pair.name} has rank {pair.rank}")
        payload = {"pair": pair.slug, "vector": list(args.vector),
                   "in_C": hc.c_cone.contains(args.vector), "in_C_hol": hc.chol_cone.contains(args.vector)}
    else:
        payload = {"pair": pair.slug, "C": hc.c_cone.to_dict(), "C_hol": hc.chol_cone.to_dict(),
                   "z_halfspace": hc.z_halfspace.to_dict()}
    return EXIT_OK, _json(payload)


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", help="catalog JSON file (default: $HOLBRANCH_CATALOG or bundled)")
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")

    sel = argparse.ArgumentParser(add_help=False)
    sel.add_argument("--pair", required=True, help="pair id, or embedding id when --sub is absent")
    sel.add_argument("--sub", help="subgroup slug, T (maximal torus) or diag")

    parser = argparse.ArgumentParser(prog="holbranch", description="Branching of holomorphic discrete series.",
                                     epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("catalog", parents=[common], help="list, show or export the catalog")
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("id", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = subs.add_parser("branch", parents=[common, sel], help="branching multiplicities m_lambda(mu)")
    p.add_argument("--lambda", dest="lam", type=_weight, required=True)
    p.add_argument("--cutoff", type=int)
    p.add_argument("--no-verify", action="store_true", help="skip the checks in the report")
    p.set_defaults(func=cmd_branch)

    p = subs.add_parser("expand", parents=[common], help="K-types of a holomorphic discrete series")
    p.add_argument("--pair", required=True)
    p.add_argument("--lambda", dest="lam", type=_weight, required=True)
    p.add_argument("--cutoff", type=int)
    p.set_defaults(func=cmd_expand)

    p = subs.add_parser("verify", parents=[common, sel], help="check the truncated identities")
    p.add_argument("check", choices=("qr", "square", "support", "grid"))
    p.add_argument("--lambda", dest="lam", type=_weight)
    p.add_argument("--cutoff", type=int)
    p.add_argument("--series", type=_series_terms, help="for square: 'a,b:m;c,d:n'")
    p.add_argument("--bound", type=int, default=5, help="for grid: max |coordinate|")
    p.add_argument("--steps", type=int, default=3, help="for grid: cutoff = d(lambda) + steps * c")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("cone", parents=[common], help="cone queries")
    p.add_argument("kind", choices=("show", "contains", "kirwan", "admissible"))
    p.add_argument("--pair", required=True)
    p.add_argument("--sub")
    p.add_argument("--vector", type=_weight)
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(func=cmd_cone)
    return parser


def run(argv=None) -> tuple[int, str, str]:
    """(exit status, stdout payload, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    try:
        code, out = args.func(args)
    except (UsageError, ValueError) as exc:
        return EXIT_USAGE, "", f"holbranch: error: {exc}\n"
    return code, out, ""


def main(argv=None) -> int:
    code, out, err = run(argv)
    if err:
        sys.stderr.write(err)
    if out:
        sys.stdout.write(out)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
