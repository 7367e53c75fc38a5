"""Registry of known Boolean rank-2 configurations and of rejected candidates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import congruence as cg
from .congruence import CongruenceFamily

SCHEMA_VERSION = 1

FULLY_VERIFIED = "fully-verified"
INGREDIENTS_VERIFIED = "ingredients-verified"
CATALOG_ONLY = "catalog-only"

_DISCREPANCY = ("The mod-31 condition here is 'p is a power of 2 mod 31' (5 classes), while "
                "the general-n statement asks for 'p is a square mod d' (15 classes mod 31). "
                "Both predicates are implemented; this registry does not decide between them.")


class CatalogError(KeyError):
    pass


@dataclass(frozen=True)
class ExampleFamily:
    id: str
    H_name: str
    M_name: str
    G_name: str
    family: CongruenceFamily | None
    verification_level: str
    source: str
    notes: str = ""
    verify_command: str | None = None
    conditions: tuple[CongruenceFamily, ...] = field(default=())

    @property
    def is_fixed_instance(self) -> bool:
        return self.family is None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "H": self.H_name,
            "M": self.M_name,
            "G": self.G_name,
            "family": self.family.to_json() if self.family else None,
            "verification_level": self.verification_level,
            "source": self.source,
            "notes": self.notes,
            "verify_command": self.verify_command,
            "conditions": [c.to_json() for c in self.conditions],
        }


@dataclass(frozen=True)
class NonExample:
    id: str
    chain: str
    reason: str
    source: str

    def to_json(self) -> dict:
        return {"id": self.id, "chain": self.chain, "reason": self.reason, "source": self.source}


F = CongruenceFamily.of
_POW2_MOD31 = cg.powers_mod(2, 31)

_FAMILIES = (
    ExampleFamily("m12", "A5 (transitive on 12 points)", "L2(11)", "M12", None, FULLY_VERIFIED,
                  "M12 result",
                  "Interval [H, M12] computed exhaustively; see the emitted certificate.",
                  verify_command="diamondcheck verify m12"),
    ExampleFamily("he", "(A5 x A5).2.2", "S4(4):2", "He", None, CATALOG_ONLY, "Held group result",
                  "Too large for closure-based interval computation."),
    ExampleFamily("omega10", "M12", "A12", "Omega10-(2)", None, CATALOG_ONLY, "Omega10-(2) result",
                  "Relies on the corrected list of maximal subgroups of Omega10-(2)."),
    ExampleFamily("omega5_7", "L3(2)", "A7", "Omega5(7)", None, INGREDIENTS_VERIFIED, "Omega5(7) result",
                  "Checked: both 2-transitive actions of L3(2) and A7 give irreducible 5-dim "
                  "modules mod 7 with invariant nondegenerate symmetric forms. Class counts in "
                  "Omega5(7) are taken from the published classification.",
                  verify_command="diamondcheck repmod l3_2_mod7"),
    ExampleFamily("psl4", "L3(2)", "A7", "PSL4(p) = Omega6+(p)", F(56, [15, 23, 39], "psl4"),
                  INGREDIENTS_VERIFIED, "PSL4(p) result",
                  "Residues rederived by CRT from: p = 3 mod 4, p = ±1 mod 8, p a square mod 7.",
                  conditions=(F(4, [3], "p = 3 (mod 4)"),
                              CongruenceFamily.plus_minus(8, [1], "p = ±1 (mod 8)"),
                              F(7, cg.quadratic_residues(7), "p a square mod 7"))),
    ExampleFamily("psu4", "L3(2)", "A7", "PSU4(p) = Omega6-(p)", F(56, [17, 33, 41], "psu4"),
                  INGREDIENTS_VERIFIED, "PSU4(p) result",
                  "Residues rederived by CRT from: p = 1 mod 8, p a non-square mod 7.",
                  conditions=(F(8, [1], "p = 1 (mod 8)"),
                              F(7, [3, 5, 6], "p a non-square mod 7"))),
    ExampleFamily("repunit_special", "PGammaL_n(q)", "A_d", "Omega_{d-2}(d)", None,
                  INGREDIENTS_VERIFIED, "Repunit-prime result (d = (q^n-1)/(q-1) prime, d = 7 mod 8)",
                  "Parametric in (q, n). Checked: the (q, n) mod 8 criterion for d = 7 mod 8, "
                  "the reality predicates for d-cycles and regular unipotents, and the prime "
                  "tables (see repunit-search and fixed-n-search). The q = 5 exponents "
                  + ", ".join(map(str, cg.CITED_Q5_EXPONENTS))
                  + " are cited from the literature and not verified here."),
    ExampleFamily("omega14_plus", "A8", "A15", "Omega14+(p)", F(60, [19, 23, 31, 47], "omega14_plus"),
                  CATALOG_ONLY, "Omega14+(p) result",
                  "No elementary derivation of the mod-60 classes is stated; stored as given."),
    ExampleFamily("omega14_minus", "A8", "A15", "Omega14-(p)", F(60, [13, 29, 37, 41], "omega14_minus"),
                  CATALOG_ONLY, "Omega14-(p) counterpart of the plus-type result",
                  "No elementary derivation of the mod-60 classes is stated; stored as given."),
    ExampleFamily("l5_2_plus", "L5(2)", "A31", "Omega30+(p)",
                  F(248, [39, 47, 63, 95, 159], "l5_2_plus"), INGREDIENTS_VERIFIED,
                  "Unbounded-rank series, n = 5, plus type",
                  "Residues rederived by CRT from: p = 3 mod 4, p = ±1 mod 8, p a power of 2 "
                  "mod 31. " + _DISCREPANCY,
                  conditions=(F(4, [3], "p = 3 (mod 4)"),
                              CongruenceFamily.plus_minus(8, [1], "p = ±1 (mod 8)"),
                              F(31, _POW2_MOD31, "p a power of 2 mod 31"))),
    ExampleFamily("l5_2_minus", "L5(2)", "A31", "Omega30-(p)",
                  F(248, [1, 33, 97, 225, 233], "l5_2_minus"), INGREDIENTS_VERIFIED,
                  "Unbounded-rank series, n = 5, minus type",
                  "Residues rederived by CRT from: p = 1 mod 4, p = ±1 mod 8, p a power of 2 "
                  "mod 31. " + _DISCREPANCY,
                  conditions=(F(4, [1], "p = 1 (mod 4)"),
                              CongruenceFamily.plus_minus(8, [1], "p = ±1 (mod 8)"),
                              F(31, _POW2_MOD31, "p a power of 2 mod 31"))),
    ExampleFamily("unbounded_rank", "L_n(2)", "A_d", "Omega_{d-1}^eps(p)", None, CATALOG_ONLY,
                  "Unbounded-rank result",
                  "Parametric: d = 2^n - 1, eps*p = 3 mod 4, p a square mod d, and p = ±1 mod 8 "
                  "for odd n; see congruence.unbounded_rank_family. " + _DISCREPANCY),
    ExampleFamily("s14_j2", "J2", "S6(p)", "S14(p)", CongruenceFamily.plus_minus(40, [11, 19], "s14_j2"),
                  CATALOG_ONLY, "S14(p) result via J2", "Stored as given (±11, ±19 mod 40)."),
    ExampleFamily("s14_l213", "L2(13)", "S6(p)", "S14(p)",
                  CongruenceFamily.plus_minus(104, [3, 27, 29, 35, 43, 51], "s14_l213"),
                  CATALOG_ONLY, "S14(p) result via L2(13)", "Stored as given (±3, ±27, ±29, ±35, ±43, ±51 mod 104)."),
)

_NON_EXAMPLES = (
    NonExample("l2_11_a11", "L2(11) < A11 < Omega10(p)",
               "L2(11) is not maximal in A11, so the interval is not a diamond.",
               "Infinite-series discussion"),
    NonExample("l3_3_omega11", "L3(3) < A13 < Omega11(13)",
               "Omega11(13) has two classes of L3(3):2, so L3(3) embeds in both A13 and "
               "L3(3):2; also 13 = 5 mod 8 fails the d = 7 mod 8 test.",
               "Special-case discussion"),
    NonExample("l4_2_omega13_3", "L4(2) = A8 < A15 < Omega13(3)",
               "One class of A8 and two classes of S15 in Omega13(3): A8 is not second maximal.",
               "Doubly-deleted representations"),
    NonExample("l4_2_omega13_5", "L4(2) = A8 < A15 < Omega13(5)",
               "One class of A15 and two classes of S8 in Omega13(5): A8 is contained in "
               "three maximal subgroups.",
               "Doubly-deleted representations"),
    NonExample("a5_s6p", "A5 < L2(p) < S6(p), p = ±11, ±19 mod 40",
               "2.A5 in Sp6(p) also embeds via the tensor product Sp2(p) o GO3(p), so A5 lies "
               "in more than two maximal subgroups.",
               "Other classical groups"),
)

_INDEX = {f.id: f for f in _FAMILIES}


def list_families() -> list[ExampleFamily]:
    return list(_FAMILIES)


def non_examples() -> list[NonExample]:
    return list(_NON_EXAMPLES)


def get_family(id: str) -> ExampleFamily:
    try:
        return _INDEX[id]
    except KeyError:
        raise CatalogError(f"unknown family {id!r}; known: {', '.join(_INDEX)}") from None


@dataclass
class CrossCheck:
    id: str
    stored: CongruenceFamily
    derived: CongruenceFamily

    @property
    def matches(self) -> bool:
        return (self.stored.modulus, self.stored.residues) == \
            (self.derived.modulus, self.derived.residues)

    def to_json(self) -> dict:
        return {"id": self.id, "stored": self.stored.to_json(), "derived": self.derived.to_json(),
                "matches": self.matches}


def cross_check(id: str) -> CrossCheck:
    fam = get_family(id)
    if not fam.conditions:
        raise ValueError(f"family {id!r} has no recorded elementary conditions")
    return CrossCheck(id, fam.family, cg.crt_intersect(fam.conditions, label=id))


def first_primes(id: str, k: int) -> list[int]:
    fam = get_family(id)
    if fam.family is None:
        raise ValueError(f"family {id!r} is a fixed instance or parametric, not a congruence family")
    return cg.first_primes(fam.family, k)


def to_json() -> dict:
    return {"schema_version": SCHEMA_VERSION,
            "families": [f.to_json() for f in _FAMILIES],
            "non_examples": [n.to_json() for n in _NON_EXAMPLES]}


def dumps() -> str:
    return json.dumps(to_json(), indent=2, ensure_ascii=False)


def render_family(fam: ExampleFamily, markdown: bool = False) -> str:
    fam_text = str(fam.family) if fam.family else "fixed instance / parametric"
    rows = [("id", fam.id), ("H < M < G", f"{fam.H_name} < {fam.M_name} < {fam.G_name}"),
            ("primes p", fam_text), ("level", fam.verification_level), ("source", fam.source)]
    if fam.verify_command:
        rows.append(("verify", fam.verify_command))
    if fam.notes:
        rows.append(("notes", fam.notes))
    if markdown:
        return "\n".join([f"### {fam.id}", ""] + [f"- **{k}**: {v}" for k, v in rows])
    return "\n".join(f"{k:>10}: {v}" for k, v in rows)


def render_table(markdown: bool = False) -> str:
    if markdown:
        lines = ["| id | H | M | G | primes p | level |", "|---|---|---|---|---|---|"]
        for f in _FAMILIES:
            fam = str(f.family) if f.family else "-"
            lines.append(f"| {f.id} | {f.H_name} | {f.M_name} | {f.G_name} | {fam} | "
                         f"{f.verification_level} |")
        return "\n".join(lines)
    return "\n".join(f"{f.id:<16} {f.G_name:<22} {str(f.family) if f.family else '-':<40} "
                     f"{f.verification_level}" for f in _FAMILIES)


def render_non_examples(markdown: bool = False) -> str:
    if markdown:
        return "\n".join(f"- **{n.id}** ({n.chain}): {n.reason}" for n in _NON_EXAMPLES)
    return "\n".join(f"{n.id:<16} {n.chain}\n{'':<16} {n.reason}" for n in _NON_EXAMPLES)
