"""The end-to-end verification run behind ``simplebraces verify`` and ``report``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import analysis
from .asymmetric import check_biadditive_reduction, check_cocycle, check_compatibility_general
from .brace import (
    DEFAULT_SEED,
    FAIL,
    PASS,
    TABLE_LIMIT,
    CheckReport,
    FiniteBrace,
    direct_product,
    ideal_closure,
    is_ideal,
    is_left_ideal,
    is_simple,
    lemma_ideal_check,
    check_lambda_action,
    trivial_cyclic,
    verify_brace_axioms,
)
from .family import Family, FamilyParams, ParamsError, additive_signature, block_identities, build_family, verify_semidirect
from .ybe import check_involutive, check_nondegenerate, check_ybe, solution_from_brace

LEVELS = {
    # triples, simplicity generators (None = all), ybe samples
    "quick": dict(triples=100_000, simplicity=200, ybe=100_000),
    "full": dict(triples=1_000_000, simplicity=None, ybe=1_000_000),
}


@dataclass
class RunReport:
    subject: dict
    order: int
    level: str
    seed: int
    checks: list[CheckReport] = field(default_factory=list)
    facts: dict = field(default_factory=dict)
    closure_traces: dict[int, list[int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "order": self.order,
            "mode": {"level": self.level, "seed": self.seed},
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.checks],
            "facts": self.facts,
        }


def _timed(fn, *args, **kwargs) -> CheckReport:
    start = time.perf_counter()
    report = fn(*args, **kwargs)
    report.seconds = time.perf_counter() - start
    return report


def parse_control(control: str, params: FamilyParams | None = None, max_order: int | None = None) -> FiniteBrace:
    """``trivial:K``, ``family`` or ``product:A*B`` with ``A``, ``B`` themselves controls."""
    control = control.strip()
    if control.startswith("product:"):
        left, sep, right = control[len("product:"):].partition("*")
        if not sep:
            raise ParamsError("product control needs two factors separated by '*'")
        return direct_product(parse_control(left, params, max_order), parse_control(right, params, max_order))
    if control.startswith("trivial:"):
        try:
            k = int(control[len("trivial:"):])
        except ValueError:
            raise ParamsError(f"bad control {control!r}") from None
        if k < 1:
            raise ParamsError("trivial control order must be positive")
        return trivial_cyclic(k)
    if control == "family":
        return build_family(params or FamilyParams.minimal(), max_order).brace
    raise ParamsError(f"unknown control {control!r}")


def _family_checks(family: Family, cfg: dict, seed: int) -> list[CheckReport]:
    B = family.brace
    checks = [_timed(block_identities, blk) for blk in family.blocks]
    samples = cfg["triples"]
    checks.append(_timed(check_cocycle, family.cocycle, samples, seed))
    checks.append(_timed(check_compatibility_general, family.T, family.S, family.cocycle, family.action, samples, seed))
    checks.append(_timed(check_biadditive_reduction, family.T, family.S, family.cocycle, family.action, samples, seed))
    checks.append(_timed(verify_semidirect, family, 500, seed))
    for i, p in enumerate(family.params.primes):
        def sylow(i=i, p=p):
            block = family.sylow_block(i)
            same = np.array_equal(block, analysis.additive_sylow(B, p))
            left = is_left_ideal(B, block)
            status = PASS if same and left else FAIL
            return CheckReport(f"sylow block {i + 1}", status, int(block.sum()),
                               detail=f"matches additive Sylow {p}: {same}; left ideal: {left}")
        checks.append(_timed(sylow))
        checks.append(_timed(family.phi_sylow(i).verify, seed=seed))
    signature = additive_signature(family.params)

    def signature_check():
        inv = analysis.abelian_invariants(analysis.additive_orders(B))
        expected = {p: [n] * r for p, n, r in signature}
        return CheckReport("additive signature", PASS if inv == expected else FAIL, B.size,
                           detail=f"invariants {inv}")
    checks.append(_timed(signature_check))
    return checks


def run_verification(brace: FiniteBrace, *, family: Family | None = None, level: str = "full",
                     seed: int = DEFAULT_SEED, threads: int = 1, subject: dict | None = None,
                     trace_generators: int = 0) -> RunReport:
    cfg = LEVELS[level]
    B = brace
    run = RunReport(subject or {"brace": B.name}, B.size, level, seed)
    add = run.checks.append
    add(_timed(verify_brace_axioms, B, cfg["triples"], seed))
    add(_timed(check_lambda_action, B, cfg["triples"], seed))
    if family is not None:
        run.checks.extend(_family_checks(family, cfg, seed))

    start = time.perf_counter()
    facts = analysis.group_facts(B)
    elapsed = time.perf_counter() - start
    run.facts = facts.as_dict()
    add(CheckReport("additive group abelian", PASS if facts.additive_abelian else FAIL, B.size, seconds=elapsed))
    if family is not None:
        add(CheckReport("metabelian (derived length 2)", PASS if facts.derived_length == 2 else FAIL, B.size,
                        detail=f"derived series {facts.derived_series}"))
        add(CheckReport("A-group", PASS if facts.a_group else FAIL, B.size,
                        detail=f"Sylow abelian {facts.sylow_abelian}"))

    if B.size >= 2:
        result = is_simple(B, cfg["simplicity"], seed, threads)
        add(result.report())
        if result.certificate is not None:
            cert = result.certificate
            run.facts["ideal_certificate"] = {
                "generator": result.generator,
                "size": int(cert.sum()),
                "elements": [int(v) for v in np.flatnonzero(cert)[:64]],
            }
            add(_timed(lambda: CheckReport("certificate is ideal", PASS if is_ideal(B, cert) else FAIL, int(cert.sum()))))
            add(_timed(lemma_ideal_check, B, cert, cfg["triples"], seed))
    for g in range(1, min(trace_generators, B.size - 1) + 1):
        trace: list[int] = []
        ideal_closure(B, [g], trace=trace)
        run.closure_traces[g] = trace

    r = solution_from_brace(B, limit=TABLE_LIMIT, lazy=True)
    add(_timed(check_involutive, r, cfg["ybe"], seed))
    add(_timed(check_nondegenerate, r, seed=seed))
    add(_timed(check_ybe, r, cfg["ybe"], seed))
    return run
