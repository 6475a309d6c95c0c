"""Bundled property suites: matcher/oracle equivalence and coarsening checks."""

from __future__ import annotations

from dataclasses import dataclass

from .aboutness import brute_force_is_about, is_about
from .chemgraph import DEFAULT_TABLE, ValenceTable
from .coarsening import check_coarsening_properties, registered_coarsenings
from .diaglang import builtin_language
from .generators import oracle_cases, positive_cases


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def oracle_equivalence(n: int = 200, seed: int = 0, table: ValenceTable = DEFAULT_TABLE) -> SuiteResult:
    cases = oracle_cases(n, seed, table)
    disagreements = []
    positives = 0
    for k, case in enumerate(cases):
        lang = builtin_language(case.diagram.language, table)
        fast = is_about(case.diagram, lang, case.molecule) is not None
        slow = brute_force_is_about(case.diagram, lang, case.molecule) is not None
        positives += fast
        if fast != slow:
            disagreements.append(f"case {k} ({case.origin}, {case.diagram.language}): matcher={fast} oracle={slow}")
    detail = f"{len(cases) - len(disagreements)}/{len(cases)} agree ({positives} about, {len(cases) - positives} not)"
    if disagreements:
        detail += "; first: " + disagreements[0]
    return SuiteResult("is_about vs brute-force oracle", not disagreements, detail)


def coarsening_preservation(n: int = 50, seed: int = 0, table: ValenceTable = DEFAULT_TABLE) -> list[SuiteResult]:
    out = []
    for m in registered_coarsenings():
        sample = positive_cases(m.source_lang, n, seed, table=table)
        rep = check_coarsening_properties(m, sample, table)
        ok = rep.ok and rep.clause2_checked == n
        detail = (
            f"aboutness preserved {rep.clause2_passed}/{rep.clause2_checked}, "
            f"lifted preimages {rep.clause3_checked - len(rep.clause3_failures)}/{rep.clause3_checked}"
        )
        out.append(SuiteResult(f"coarsening {m.id} {m.source_lang}->{m.target_lang}", ok, detail))
    return out


def run_selftest(pairs: int = 200, samples: int = 50, seed: int = 0, table: ValenceTable = DEFAULT_TABLE):
    return [oracle_equivalence(pairs, seed, table), *coarsening_preservation(samples, seed, table)]
