"""Command-line front end: ``diamondcheck <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from importlib import resources
from pathlib import Path

from . import catalog, certificate, congruence as cg, repmod
from .interval import find_transitive_subgroups, verify_counterexample
from .numtheory import is_proven_prime, repunit
from .permgroup import (GroupSpec, alternating_generators, format_cycles, is_transitive,
                        schreier_sims)

log = logging.getLogger("diamondcheck")

# target -> (data file, display name, group order, subgroup order)
TARGETS = {"m12": ("m12.gens", "M12", 95040, 60)}


class UsageError(Exception):
    pass


def _data_file(data_dir: str | None, name: str) -> Path:
    if data_dir is not None:
        path = Path(data_dir) / name
        if not path.exists():
            raise UsageError(f"missing data file {path}")
        return path
    local = Path("data") / name
    if local.exists():
        return local
    return Path(str(resources.files("diamondcheck") / "data" / name))


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.target not in TARGETS:
        raise UsageError(f"unknown target {args.target!r}; choose from {', '.join(TARGETS)}")
    fname, gname, order, sub_order = TARGETS[args.target]
    gspec = GroupSpec.from_file(_data_file(args.data, fname), name=gname, expected_order=order)
    t0 = time.perf_counter()
    G = gspec.chain()
    if not is_transitive(gspec.generators, gspec.degree):
        print(f"{gname} generators are not transitive", file=sys.stderr)
        return 1
    found = find_transitive_subgroups(G, sub_order)
    log.info("found %d class(es) of transitive subgroups of order %d", len(found), sub_order)
    if not found:
        print(f"no transitive subgroup of order {sub_order} in {gname}", file=sys.stderr)
        return 1
    out = Path(args.out)
    ok = True
    summaries = []
    for k, f in enumerate(found):
        H = f.node.generators
        report = verify_counterexample(G, H)
        extra = {"target_order": str(sub_order), "classes_found": len(found),
                 "class_index": k, "class_size": f.class_size}
        cert = certificate.build_certificate(args.target, gspec, H, report, extra)
        path = out if k == 0 else out.with_name(f"{out.stem}.{k + 1}{out.suffix}")
        path.write_text(certificate.dumps(cert))
        passed = report.verdict and all(c["passed"] for c in cert["checks"])
        ok &= passed
        summaries.append({
            "certificate": str(path),
            "subgroup": [format_cycles(h) for h in H],
            "class_size": f.class_size,
            "node_orders": [str(o) for o in report.lattice.orders],
            "shape": report.shape,
            "h_maximal_in_tops": report.h_maximal_in_tops,
            "conjugator": None if report.conjugator is None else format_cycles(report.conjugator),
            "checks": cert["checks"],
            "verdict": passed,
        })
    elapsed = time.perf_counter() - t0
    lines = [f"{gname}: order {G.order()}, {len(found)} class(es) of transitive subgroups "
             f"of order {sub_order}"]
    for s in summaries:
        lines += [f"  H = <{', '.join(s['subgroup'])}>  ({s['class_size']} conjugates)",
                  f"  interval orders: {', '.join(s['node_orders'])}",
                  f"  shape: {s['shape']}; H maximal in tops: {s['h_maximal_in_tops']}",
                  f"  conjugator between tops: {s['conjugator']}"]
        lines += [f"    [{'pass' if c['passed'] else 'FAIL'}] {c['name']}" for c in s["checks"]]
        lines.append(f"  certificate: {s['certificate']}")
    lines.append(f"verdict: {'counterexample confirmed' if ok else 'NOT confirmed'} "
                 f"({elapsed:.1f}s)")
    _emit(args, {"target": args.target, "results": summaries, "verdict": ok}, "\n".join(lines))
    return 0 if ok else 1


def cmd_cert_check(args) -> int:
    text = Path(args.file).read_text()
    try:
        cert = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"FAIL schema: not valid JSON ({exc})", file=sys.stderr)
        return 2
    try:
        ok, results = certificate.audit(cert)
    except certificate.CertificateError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return 2
    payload = {"file": args.file, "ok": ok,
               "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results]}
    text = "\n".join(f"[{'pass' if p else 'FAIL'}] {n}" + (f"  ({d})" if d and not p else "")
                     for n, p, d in results)
    _emit(args, payload, text + f"\n{'certificate OK' if ok else 'certificate REJECTED'}")
    return 0 if ok else 1


def cmd_primes(args) -> int:
    fam = catalog.get_family(args.family)
    if fam.family is None:
        raise UsageError(f"family {args.family!r} has no congruence family")
    primes = cg.enumerate_primes(fam.family, args.limit)
    _emit(args, {"family": args.family, "residues": fam.family.to_json(), "limit": args.limit,
                 "primes": primes},
          f"{args.family}: p = {fam.family}\n" + (", ".join(map(str, primes)) or "(none)"))
    return 0


def cmd_derive(args) -> int:
    check = catalog.cross_check(args.family)
    verdict = "matches published residues" if check.matches else f"MISMATCH (stored {check.stored})"
    conds = "; ".join(c.label or str(c) for c in catalog.get_family(args.family).conditions)
    _emit(args, check.to_json(), f"{args.family}: {conds}\n{check.derived}: {verdict}")
    return 0 if check.matches else 1


def cmd_repunit_search(args) -> int:
    hits = cg.search_repunit_primes(args.q, args.n_max, args.special)
    rows = [{"n": n, "digits": digits,
             "status": "prime" if is_proven_prime(repunit(args.q, n)) else "probable prime"}
            for n, digits in hits]
    text = "\n".join(f"n = {r['n']:>5}  d has {r['digits']} digits  ({r['status']})" for r in rows)
    _emit(args, {"q": args.q, "n_max": args.n_max, "special": args.special, "hits": rows},
          text or "(none)")
    return 0


def _parse_residue(text: str | None):
    if text is None:
        return None
    try:
        m, rs = text.split(":")
        return int(m), [int(r) for r in rs.split(",")]
    except ValueError:
        raise UsageError(f"--residue expects M:R1,R2,..., got {text!r}") from None


def cmd_fixed_n_search(args) -> int:
    residue = _parse_residue(args.residue)
    qs = cg.search_q_for_fixed_n(args.n, args.q_max, residue, special=not args.no_special)
    _emit(args, {"n": args.n, "q_max": args.q_max, "residue": args.residue,
                 "special": not args.no_special, "q": qs},
          f"n = {args.n}: q = " + (", ".join(map(str, qs)) or "(none)"))
    return 0


def cmd_lemma_check(args) -> int:
    checked, pairs = cg.lemma_sweep(args.q_max, args.n_max)
    bad = len(pairs)
    _emit(args, {"q_max": args.q_max, "n_max": args.n_max, "checked": checked,
                 "mismatches": [list(p) for p in pairs]},
          f"{checked} pairs (q, n) checked, {bad} mismatches")
    return 0 if bad == 0 else 1


def cmd_catalog(args) -> int:
    md = args.format == "markdown"
    if args.action == "list":
        if args.json:
            print(catalog.dumps())
        else:
            print(catalog.render_table(md))
    elif args.action == "show":
        if not args.id:
            raise UsageError("catalog show needs an ID")
        fam = catalog.get_family(args.id)
        _emit(args, fam.to_json(), catalog.render_family(fam, md))
    else:
        _emit(args, {"non_examples": [n.to_json() for n in catalog.non_examples()]},
              catalog.render_non_examples(md))
    return 0


REPMOD_CASES = {
    "l3_2_mod7": ("L3(2) on the 7 Fano points", lambda: repmod.fano_actions()[0], 7),
    "l3_2_lines_mod7": ("L3(2) on the 7 Fano lines", lambda: repmod.fano_actions()[1], 7),
    "a7_mod7": ("A7 on 7 points", lambda: alternating_generators(7), 7),
    "l3_2_mod3": ("L3(2) on the 7 Fano points", lambda: repmod.fano_actions()[0], 3),
}


def cmd_repmod(args) -> int:
    if args.case not in REPMOD_CASES:
        raise UsageError(f"unknown case {args.case!r}; choose from {', '.join(REPMOD_CASES)}")
    title, gens_fn, p = REPMOD_CASES[args.case]
    gens = gens_fn()
    order = schreier_sims(gens).order()
    module = repmod.deleted_module(gens, p)
    gram = repmod.invariant_gram(module)
    irreducible = repmod.is_irreducible(module)
    ok = gram is not None and irreducible
    summary = (f"dim {module.dim}, {'irreducible' if irreducible else 'REDUCIBLE'}, "
               + ("invariant nondegenerate symmetric form" if gram is not None
                  else "no invariant nondegenerate form"))
    lines = [f"{title} (group order {order}) over GF({p})", summary]
    if gram is not None:
        lines.append("gram matrix:")
        lines += ["  " + " ".join(str(int(x)) for x in row) for row in gram]
    _emit(args, {"case": args.case, "p": p, "group_order": order, "dim": module.dim,
                 "irreducible": irreducible,
                 "gram": None if gram is None else gram.tolist(),
                 "lines_checked": repmod.line_count(module.dim, p)}, "\n".join(lines))
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diamondcheck", description=__doc__)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--data", metavar="DIR", default=None,
                        help="group data directory (default ./data, else the bundled copy)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a counterexample and write a certificate")
    p.add_argument("target")
    p.add_argument("--out", default="certificate.json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cert-check", help="independently re-check a certificate")
    p.add_argument("file")
    p.set_defaults(func=cmd_cert_check)

    p = sub.add_parser("primes", help="primes in a catalog family")
    p.add_argument("--family", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(func=cmd_primes)

    p = sub.add_parser("derive", help="rederive a family's residues by CRT")
    p.add_argument("--family", required=True)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("repunit-search", help="n with (q^n-1)/(q-1) prime")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--special", action="store_true", help="also require d = 7 (mod 8)")
    p.set_defaults(func=cmd_repunit_search)

    p = sub.add_parser("fixed-n-search", help="q with (q^n-1)/(q-1) prime, n fixed")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--residue", metavar="M:R1,R2", help="keep q with q mod M in {R1, R2, ...}")
    p.add_argument("--no-special", action="store_true", help="drop the d = 7 (mod 8) filter")
    p.set_defaults(func=cmd_fixed_n_search)

    p = sub.add_parser("lemma-check", help="sweep the (q, n) mod 8 criterion")
    p.add_argument("--q-max", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("catalog", help="registry of examples and non-examples")
    p.add_argument("action", choices=["list", "show", "non-examples"])
    p.add_argument("id", nargs="?")
    p.add_argument("--format", choices=["text", "markdown"], default="text")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("repmod", help="deleted permutation module checks")
    p.add_argument("case", help=", ".join(REPMOD_CASES))
    p.set_defaults(func=cmd_repmod)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, catalog.CatalogError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
        print(f"{parser.prog}: error: {msg}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
