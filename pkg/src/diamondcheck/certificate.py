"""Re-checkable certificates for "Boolean rank-2 interval with conjugate tops".

The checker uses nothing but stabilizer-chain order and membership.  The
interval is shown complete with one witness per nontrivial double coset
S g S of every node S below the top: the witnesses lie in distinct double
cosets, their sizes |S|^2 / |S ∩ S^g| add up to |G| - |S|, and each
``<S, g>`` is a listed node.  Every overgroup of H is then reachable by
one-element extensions through listed nodes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .interval import BOOLEAN_RANK2, CounterexampleReport, maximal_overgroups
from .permgroup import GroupSpec, Permutation, StabilizerChain, conjugate, inverse, schreier_sims

SCHEMA_VERSION = 1

CHECK_NAMES = (
    "group_order",
    "subgroup_is_bottom",
    "top_is_group",
    "node_orders",
    "nodes_sorted_distinct",
    "subgroup_in_every_node",
    "hasse_edges",
    "interval_complete",
    "shape",
    "h_maximal_in_tops",
    "tops_conjugate",
)


class CertificateError(ValueError):
    """The certificate is malformed; ``check`` names what failed."""

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


def _images(p: Permutation) -> list[int]:
    return list(p.images)


def build_certificate(claim: str, group: GroupSpec, H: list[Permutation],
                      report: CounterexampleReport, extra: dict | None = None) -> dict:
    lattice = report.lattice
    cert: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "claim": claim,
        "group": {
            "name": group.name,
            "degree": group.degree,
            "generators": [_images(g) for g in group.generators],
            "expected_order": None if group.expected_order is None else str(group.expected_order),
        },
        "subgroup_generators": [_images(h) for h in H],
        "interval_nodes": [{"generators": [_images(g) for g in n.generators],
                            "order": str(n.order)} for n in lattice.nodes],
        "hasse_edges": [list(e) for e in sorted(lattice.edges)],
        "extension_witnesses": [
            {"node": i, "reps": [{"element": _images(g), "generates": j} for g, j in reps]}
            for i, reps in sorted(lattice.extensions.items())
        ],
        "shape": lattice.shape,
        "conjugator": None if report.conjugator is None else _images(report.conjugator),
    }
    if extra:
        cert["search"] = extra
    cert["checks"] = []
    cert["checks"] = [{"name": n, "passed": ok} for n, ok, _ in check_certificate(cert)]
    return cert


def dumps(cert: dict) -> str:
    text = json.dumps(cert, indent=2)
    # keep each permutation on one line
    text = re.sub(r"\[\s*((?:-?\d+,\s*)*-?\d+)\s*\]",
                  lambda m: "[" + ", ".join(re.split(r",\s*", m.group(1))) + "]", text)
    return text + "\n"


# ---------------------------------------------------------------------------
# checking


@dataclass
class _Parsed:
    degree: int
    group_gens: list[Permutation]
    expected_order: int | None
    H: list[Permutation]
    nodes: list[tuple[list[Permutation], int]]
    edges: set[tuple[int, int]]
    witnesses: dict[int, list[tuple[Permutation, int]]]
    shape: str
    conjugator: Permutation | None
    stated_checks: dict[str, bool]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CertificateError("schema", message)


def _perm(obj: Any, degree: int, where: str) -> Permutation:
    _require(isinstance(obj, list) and all(isinstance(x, int) and not isinstance(x, bool)
                                           for x in obj), f"{where}: expected a list of integers")
    if len(obj) != degree:
        raise CertificateError("permutation_valid", f"{where}: length {len(obj)} != degree {degree}")
    try:
        return Permutation(obj)
    except ValueError as exc:
        raise CertificateError("permutation_valid", f"{where}: {exc}") from None


def _decimal(obj: Any, where: str) -> int:
    _require(isinstance(obj, str) and re.fullmatch(r"[0-9]+", obj) is not None,
             f"{where}: expected a decimal string")
    return int(obj)


def parse_certificate(cert: Any) -> _Parsed:
    _require(isinstance(cert, dict), "top level must be an object")
    for key in ("schema_version", "claim", "group", "subgroup_generators", "interval_nodes",
                "hasse_edges", "extension_witnesses", "shape", "conjugator", "checks"):
        _require(key in cert, f"missing field {key!r}")
    _require(cert["schema_version"] == SCHEMA_VERSION, "unsupported schema_version")
    group = cert["group"]
    _require(isinstance(group, dict) and isinstance(group.get("degree"), int)
             and group["degree"] > 0, "group.degree must be a positive integer")
    degree = group["degree"]
    _require(isinstance(group.get("generators"), list) and group["generators"],
             "group.generators must be a nonempty list")
    gens = [_perm(g, degree, f"group.generators[{i}]") for i, g in enumerate(group["generators"])]
    expected = group.get("expected_order")
    expected = None if expected is None else _decimal(expected, "group.expected_order")

    _require(isinstance(cert["subgroup_generators"], list), "subgroup_generators must be a list")
    H = [_perm(h, degree, f"subgroup_generators[{i}]")
         for i, h in enumerate(cert["subgroup_generators"])]

    _require(isinstance(cert["interval_nodes"], list) and cert["interval_nodes"],
             "interval_nodes must be a nonempty list")
    nodes = []
    for i, node in enumerate(cert["interval_nodes"]):
        _require(isinstance(node, dict) and isinstance(node.get("generators"), list),
                 f"interval_nodes[{i}] malformed")
        ngens = [_perm(g, degree, f"interval_nodes[{i}].generators[{k}]")
                 for k, g in enumerate(node["generators"])]
        nodes.append((ngens, _decimal(node.get("order"), f"interval_nodes[{i}].order")))
    n = len(nodes)

    def index(x: Any, where: str) -> int:
        _require(isinstance(x, int) and not isinstance(x, bool) and 0 <= x < n,
                 f"{where}: bad node index")
        return x

    edges = set()
    _require(isinstance(cert["hasse_edges"], list), "hasse_edges must be a list")
    for k, e in enumerate(cert["hasse_edges"]):
        _require(isinstance(e, list) and len(e) == 2, f"hasse_edges[{k}] must be a pair")
        edges.add((index(e[0], f"hasse_edges[{k}]"), index(e[1], f"hasse_edges[{k}]")))

    witnesses: dict[int, list[tuple[Permutation, int]]] = {}
    _require(isinstance(cert["extension_witnesses"], list), "extension_witnesses must be a list")
    for k, w in enumerate(cert["extension_witnesses"]):
        _require(isinstance(w, dict) and isinstance(w.get("reps"), list),
                 f"extension_witnesses[{k}] malformed")
        i = index(w.get("node"), f"extension_witnesses[{k}].node")
        _require(i not in witnesses, f"extension_witnesses: node {i} listed twice")
        reps = []
        for r, rep in enumerate(w["reps"]):
            where = f"extension_witnesses[{k}].reps[{r}]"
            _require(isinstance(rep, dict), f"{where} malformed")
            reps.append((_perm(rep.get("element"), degree, where),
                         index(rep.get("generates"), where)))
        witnesses[i] = reps

    _require(isinstance(cert["shape"], str), "shape must be a string")
    conj = cert["conjugator"]
    conj = None if conj is None else _perm(conj, degree, "conjugator")
    _require(isinstance(cert["checks"], list), "checks must be a list")
    stated = {}
    for c in cert["checks"]:
        _require(isinstance(c, dict) and isinstance(c.get("name"), str)
                 and isinstance(c.get("passed"), bool), "checks entries need name and passed")
        stated[c["name"]] = c["passed"]
    return _Parsed(degree, gens, expected, H, nodes, edges, witnesses, cert["shape"], conj, stated)


def _elements(chain: StabilizerChain) -> list[Permutation]:
    return list(chain.elements())


def check_certificate(cert: Any) -> list[tuple[str, bool, str]]:
    """Recompute every check; returns ``(name, passed, detail)`` triples.

    Raises :class:`CertificateError` for malformed input.
    """
    c = parse_certificate(cert)
    results: dict[str, tuple[bool, str]] = {}
    G = schreier_sims(c.group_gens, c.degree)
    chains = [schreier_sims(gens, c.degree) for gens, _ in c.nodes]
    n = len(c.nodes)
    top = n - 1

    def contains_all(chain: StabilizerChain, gens: list[Permutation]) -> bool:
        return all(chain.contains(g) for g in gens)

    def same(a: StabilizerChain, ga: list[Permutation], b: StabilizerChain, gb) -> bool:
        return a.order() == b.order() and contains_all(a, gb) and contains_all(b, ga)

    results["group_order"] = (
        c.expected_order is None or G.order() == c.expected_order,
        f"order {G.order()}, expected {c.expected_order}")
    H_chain = schreier_sims(c.H, c.degree)
    results["subgroup_is_bottom"] = (same(H_chain, c.H, chains[0], c.nodes[0][0]),
                                     "node 0 must equal <H>")
    results["top_is_group"] = (same(G, c.group_gens, chains[top], c.nodes[top][0]),
                               "last node must equal G")
    bad = [i for i in range(n) if chains[i].order() != c.nodes[i][1]]
    results["node_orders"] = (not bad, f"order mismatch at nodes {bad}" if bad else "")

    keys = [(ch.order(), sorted(g.images for g in gens)) for ch, (gens, _) in zip(chains, c.nodes)]
    distinct = all(not same(chains[i], c.nodes[i][0], chains[j], c.nodes[j][0])
                   for i in range(n) for j in range(i + 1, n))
    results["nodes_sorted_distinct"] = (keys == sorted(keys) and distinct, "")

    inside = all(contains_all(ch, c.H) and contains_all(G, gens)
                 for ch, (gens, _) in zip(chains, c.nodes))
    results["subgroup_in_every_node"] = (inside, "H <= node <= G for every node")

    below = {(i, j) for i in range(n) for j in range(n)
             if chains[i].order() < chains[j].order()
             and chains[j].order() % chains[i].order() == 0
             and contains_all(chains[j], c.nodes[i][0])}
    cover = {(i, j) for (i, j) in below
             if not any((i, k) in below and (k, j) in below for k in range(n))}
    results["hasse_edges"] = (cover == c.edges, "covering relation differs" if cover != c.edges else "")

    results["interval_complete"] = _check_complete(c, G, chains)

    if n == 4 and c.edges == {(0, 1), (0, 2), (1, 3), (2, 3)}:
        shape = BOOLEAN_RANK2
    elif all((i, j) in below or (j, i) in below for i in range(n) for j in range(i + 1, n)):
        shape = "Chain"
    else:
        shape = f"Other({n})"
    results["shape"] = (shape == c.shape == BOOLEAN_RANK2, f"recomputed {shape}, stated {c.shape}")

    tops = [i for i in range(top) if (i, top) in c.edges]
    results["h_maximal_in_tops"] = (
        results["interval_complete"][0] and bool(tops) and all((0, i) in c.edges for i in tops),
        f"tops {tops}")

    ok, detail = False, "need exactly two tops and a conjugator"
    if len(tops) == 2 and c.conjugator is not None:
        m1, m2 = tops
        g = c.conjugator
        ok = (G.contains(g) and chains[m1].order() == chains[m2].order()
              and contains_all(chains[m2], [conjugate(x, g) for x in c.nodes[m1][0]]))
        detail = f"conjugator maps node {m1} onto node {m2}"
    results["tops_conjugate"] = (ok, detail)
    return [(name, *results[name]) for name in CHECK_NAMES]


def _check_complete(c: _Parsed, G: StabilizerChain,
                    chains: list[StabilizerChain]) -> tuple[bool, str]:
    top = len(c.nodes) - 1
    for i in range(top):
        if i not in c.witnesses:
            return False, f"node {i} has no extension witnesses"
        S = chains[i]
        s_elems = _elements(S)
        total = 0
        reps = c.witnesses[i]
        for g, j in reps:
            if not G.contains(g) or S.contains(g):
                return False, f"node {i}: witness outside G or inside the node"
            K = schreier_sims(c.nodes[i][0] + [g], c.degree)
            if K.order() != chains[j].order() or not all(K.contains(x) for x in c.nodes[j][0]):
                return False, f"node {i}: witness does not generate node {j}"
            g_inv = inverse(g)
            meet = sum(1 for x in s_elems if S.contains(conjugate(x, g_inv)))
            total += S.order() ** 2 // meet
        for a in range(len(reps)):
            ga_inv = inverse(reps[a][0])
            for b in range(a + 1, len(reps)):
                gb = reps[b][0]
                if any(S.contains(ga_inv * s * gb) for s in s_elems):
                    return False, f"node {i}: witnesses {a} and {b} share a double coset"
        if total != G.order() - S.order():
            return False, f"node {i}: double cosets cover {total} of {G.order() - S.order()}"
    if any(i >= top for i in c.witnesses):
        return False, "the top node should have no witnesses"
    return True, ""


def audit(cert: Any) -> tuple[bool, list[tuple[str, bool, str]]]:
    """Full audit: recomputed checks must all pass and agree with the stated ones."""
    results = check_certificate(cert)
    stated = parse_certificate(cert).stated_checks
    ok = all(passed for _, passed, _ in results)
    if set(stated) != {name for name, _, _ in results}:
        results.append(("stated_checks", False, "check list differs from the recomputed one"))
        ok = False
    elif any(stated[name] != passed for name, passed, _ in results):
        results.append(("stated_checks", False, "stated verdicts differ from recomputation"))
        ok = False
    return ok, results
