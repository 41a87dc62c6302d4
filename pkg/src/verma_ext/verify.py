"""Whole-group verification suites and report files.

``run_verify`` builds one group, fills the R-polynomial and subspace tables,
and runs six suites:

    T  dim V(x, y) against both first-order coefficient routes, all pairs
    G  reflection representation sanity: involutions, braid orders, pairings
    B  recursive Bruhat order against the exponential subword oracle
    R  R-polynomial degree/term invariants and route agreement
    S  quotient dimensions for the configured singular subsets
    M  membership of v_s in V(x, y) against the order prediction, on the
       rows where the prediction is asserted to be exact

Each suite reports how many atomic checks ran and how many failed, plus a
witness for the first failure.  ``write_report_files`` dumps the dimension
table, the R-polynomial cache, and a summary; everything written is
deterministic except an explicit generated_at comment line.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .coxeter import (
    DEFAULT_BUDGET,
    ORACLE_BUDGET,
    CoxeterSystem,
    GroupElement,
    braid_order,
    bruhat_leq,
    bruhat_leq_oracle,
    build_system,
    enumerate_elements,
    fingerprint,
    format_word,
    identity,
    longest_element,
    multiply,
    reduced_word,
    simple_reflection,
)
from .errors import IoError
from .reflection import apply_element, basis_vector, coroot_pairing, reflect
from .rpoly import RTable, ZERO, gj_coefficient, r_coeff_direct
from .vtable import SingularSpec, VTable, compute_all, membership_report, singular_v

PRESETS = ("A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "A1xA1", "A1xA2")


@dataclass
class RunConfig:
    """All knobs for one verification or report run."""

    type_text: str
    budget: int = DEFAULT_BUDGET
    policy: str = "smallest"
    jobs: int = 1
    singular: tuple[SingularSpec, ...] = ()
    cache_dir: Path | None = None
    oracle_cap: int = 12
    oracle_budget: int = ORACLE_BUDGET
    vs_scale: int = 1


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failed: int = 0
    witnesses: list = field(default_factory=list)

    def note_failure(self, witness: dict) -> None:
        """Count a failure, keeping only the first witness."""
        self.failed += 1
        if not self.witnesses:
            self.witnesses.append(witness)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "failed": self.failed,
            "witnesses": self.witnesses,
        }


@dataclass
class VerifyReport:
    system: str
    suites: list[SuiteResult]
    elapsed_ms: int

    @property
    def passed(self) -> bool:
        return all(s.failed == 0 for s in self.suites)

    def to_json_dict(self) -> dict:
        return {
            "system": self.system,
            "suites": [s.to_json_dict() for s in self.suites],
            "elapsed_ms": self.elapsed_ms,
        }


def comparable_pairs(sys: CoxeterSystem) -> list[tuple[GroupElement, GroupElement]]:
    """All pairs (x, y) with y <= x, ordered by (length, matrix) on x then y."""
    elements = enumerate_elements(sys)
    return [
        (x, y)
        for x in elements
        for y in elements
        if y.length <= x.length and bruhat_leq(sys, y, x)
    ]


def _word(sys: CoxeterSystem, g: GroupElement) -> str:
    return format_word(reduced_word(sys, g))


# ---------------------------------------------------------------------------
# suites


def _suite_t(sys, rtable: RTable, vtable: VTable, config: RunConfig) -> SuiteResult:
    """dim V(x, y) == signed q-coefficient == direct recursion, on every pair."""
    out = SuiteResult("T")
    for x, y in comparable_pairs(sys):
        d = vtable.v(x, y).dim
        g = gj_coefficient(sys, x, y, rtable)
        direct = r_coeff_direct(sys, x, y, policy=config.policy)
        out.checked += 1
        if not (d == g == direct):
            out.note_failure(
                {
                    "x": _word(sys, x),
                    "y": _word(sys, y),
                    "dim": d,
                    "gj": g,
                    "direct": direct,
                    "basis": vtable.v(x, y).to_json_dict()["basis"],
                }
            )
    return out


def _suite_g(sys, rtable, vtable, config) -> SuiteResult:
    """Reflection representation properties, checked from the Cartan data up."""
    out = SuiteResult("G")
    e = identity(sys)
    for i in range(sys.rank):
        s = simple_reflection(sys, i)
        out.checked += 1
        if multiply(sys, s, s) != e:
            out.note_failure({"check": "involution", "i": i})
        v = basis_vector(sys, i)
        out.checked += 1
        if coroot_pairing(sys, i, v) != 2:
            out.note_failure({"check": "pairing", "i": i})
        out.checked += 1
        if reflect(sys, i, v) != tuple(-c for c in v):
            out.note_failure({"check": "negates-own-root", "i": i})
        # reflect() must agree with the matrix action on every basis vector
        for j in range(sys.rank):
            out.checked += 1
            w = basis_vector(sys, j)
            if reflect(sys, i, w) != apply_element(sys, s, w):
                out.note_failure({"check": "matrix-agreement", "i": i, "j": j})
    for i in range(sys.rank):
        for j in range(i + 1, sys.rank):
            m = braid_order(sys, i, j)
            t = multiply(sys, simple_reflection(sys, i), simple_reflection(sys, j))
            power = t
            order = 1
            while power != e and order <= m:
                power = multiply(sys, power, t)
                order += 1
            out.checked += 1
            if order != m:
                out.note_failure({"check": "braid-order", "i": i, "j": j, "got": order, "want": m})
    # faithfulness: only the identity element acts as the identity matrix
    out.checked += 1
    fixed = sum(1 for g in enumerate_elements(sys) if g.matrix == e.matrix)
    if fixed != 1:
        out.note_failure({"check": "faithful", "identity_count": fixed})
    return out


def _suite_b(sys, rtable, vtable, config: RunConfig) -> SuiteResult:
    """Recursive Bruhat order vs the subword oracle on every pair within budget."""
    out = SuiteResult("B")
    cap = min(config.oracle_cap, max(config.oracle_budget, 1).bit_length() - 1)
    elements = enumerate_elements(sys)
    for y in elements:
        if y.length > cap:
            continue
        for x in elements:
            rec = bruhat_leq(sys, x, y)
            oracle = bruhat_leq_oracle(sys, x, y, budget=config.oracle_budget)
            out.checked += 1
            if rec != oracle:
                out.note_failure(
                    {
                        "x": _word(sys, x),
                        "y": _word(sys, y),
                        "recursive": rec,
                        "oracle": oracle,
                    }
                )
    return out


def _suite_r(sys, rtable: RTable, vtable, config: RunConfig) -> SuiteResult:
    """Degree, leading and constant term, vanishing at 1, and route agreement."""
    out = SuiteResult("R")
    elements = enumerate_elements(sys)
    for upper in elements:
        for lower in elements:
            poly = rtable.r(lower, upper)
            out.checked += 1
            if bruhat_leq(sys, lower, upper):
                gap = upper.length - lower.length
                ok = (
                    poly.degree == gap
                    and poly.coeff(gap) == 1
                    and poly.coeff(0) == (-1) ** gap
                    and (gap == 0 or poly.eval_at(1) == 0)
                )
                if ok:
                    gj = gj_coefficient(sys, upper, lower, rtable)
                    direct = r_coeff_direct(sys, upper, lower, policy=config.policy)
                    ok = gj == direct
                if not ok:
                    out.note_failure(
                        {
                            "x": _word(sys, upper),
                            "y": _word(sys, lower),
                            "coeffs": list(poly.coeffs),
                        }
                    )
            elif poly != ZERO:
                out.note_failure(
                    {
                        "x": _word(sys, upper),
                        "y": _word(sys, lower),
                        "coeffs": list(poly.coeffs),
                        "reason": "nonzero for incomparable pair",
                    }
                )
    return out


def _suite_s(sys, rtable, vtable: VTable, config: RunConfig) -> SuiteResult:
    """Quotient dimension of V(longest, identity) for each singular subset."""
    out = SuiteResult("S")
    if config.singular:
        subsets = list(config.singular)
    else:
        indices = range(sys.rank)
        subsets = [
            SingularSpec(frozenset(i for i in indices if mask >> i & 1))
            for mask in range(1 << sys.rank)
        ]
        subsets.sort(key=lambda s: (len(s.indices), sorted(s.indices)))
    w0 = longest_element(sys)
    e = identity(sys)
    for spec in subsets:
        spec.validate(sys)
        space = singular_v(sys, vtable, spec, w0, e)
        expected = sys.rank - len(spec.indices)
        out.checked += 1
        if space.dim != expected:
            out.note_failure(
                {"subset": str(spec), "dim": space.dim, "expected": expected}
            )
    return out


def _suite_m(sys, rtable, vtable: VTable, config) -> SuiteResult:
    """On flagged report rows, membership of v_s must equal the prediction x >= ys."""
    out = SuiteResult("M")
    for row in membership_report(sys, vtable):
        if not row.flagged:
            continue
        out.checked += 1
        if row.in_v != row.x_ge_ys:
            out.note_failure(
                {
                    "x": _word(sys, row.x),
                    "y": _word(sys, row.y),
                    "s": row.s,
                    "in_v": row.in_v,
                    "x_ge_ys": row.x_ge_ys,
                }
            )
    return out


_SUITES = (_suite_t, _suite_g, _suite_b, _suite_r, _suite_s, _suite_m)


def _rpoly_cache_path(config: RunConfig, sys: CoxeterSystem) -> Path | None:
    if config.cache_dir is None:
        return None
    return Path(config.cache_dir) / f"rpoly_{fingerprint(sys)}.csv"


def build_tables(config: RunConfig) -> tuple[CoxeterSystem, RTable, VTable]:
    """System plus R-polynomial and subspace tables, warm-loading the R cache."""
    sys = build_system(config.type_text, budget=config.budget)
    rtable = RTable(sys, policy=config.policy)
    cache = _rpoly_cache_path(config, sys)
    if cache is not None and cache.exists():
        rtable.load_csv(cache)
    vtable = compute_all(
        sys, policy=config.policy, jobs=config.jobs, vs_scale=config.vs_scale
    )
    return sys, rtable, vtable


def _save_rpoly_cache(config: RunConfig, sys: CoxeterSystem, rtable: RTable) -> None:
    cache = _rpoly_cache_path(config, sys)
    if cache is None:
        return
    try:
        cache.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create cache dir {cache.parent}: {exc}") from exc
    rtable.save_csv(cache)


def run_verify(config: RunConfig) -> VerifyReport:
    """Run every suite on one group and persist the R-polynomial cache."""
    started = time.perf_counter()
    sys, rtable, vtable = build_tables(config)
    suites = [suite(sys, rtable, vtable, config) for suite in _SUITES]
    _save_rpoly_cache(config, sys, rtable)
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    return VerifyReport(fingerprint(sys), suites, elapsed_ms)


# ---------------------------------------------------------------------------
# report files


@dataclass
class ReportResult:
    system: str
    type_text: str
    group_order: int
    longest_length: int
    comparable_pairs: int
    max_dim_v: int
    gj_histogram: dict[int, int]
    paths: dict[str, str]
    rtable_computed: int
    vtable_computed: int

    def summary_json_dict(self) -> dict:
        return {
            "system": self.system,
            "type": self.type_text,
            "group_order": self.group_order,
            "longest_length": self.longest_length,
            "comparable_pairs": self.comparable_pairs,
            "max_dim_v": self.max_dim_v,
            "gj_histogram": {str(k): v for k, v in sorted(self.gj_histogram.items())},
        }


def dimension_rows(
    sys: CoxeterSystem, rtable: RTable, vtable: VTable
) -> list[tuple[str, str, int, int, int]]:
    """(x_word, y_word, dim, coefficient, match) for every comparable pair."""
    rows = []
    for x, y in comparable_pairs(sys):
        d = vtable.v(x, y).dim
        g = gj_coefficient(sys, x, y, rtable)
        rows.append((_word(sys, x), _word(sys, y), d, g, 1 if d == g else 0))
    return rows


def run_report(config: RunConfig) -> ReportResult:
    """Compute both tables for one group and write cache, dimension, summary files."""
    sys, rtable, vtable = build_tables(config)
    rows = dimension_rows(sys, rtable, vtable)
    histogram: dict[int, int] = {}
    for _, _, _, g, _ in rows:
        histogram[g] = histogram.get(g, 0) + 1
    out_dir = Path(config.cache_dir) if config.cache_dir is not None else Path("verma_ext_cache")
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create output dir {out_dir}: {exc}") from exc
    fp = fingerprint(sys)
    result = ReportResult(
        system=fp,
        type_text=str(sys.descriptor),
        group_order=sys.group_order,
        longest_length=longest_element(sys).length,
        comparable_pairs=len(rows),
        max_dim_v=max((r[2] for r in rows), default=0),
        gj_histogram=histogram,
        paths={},
        rtable_computed=rtable.computed,
        vtable_computed=vtable.computed,
    )
    rpoly_path = out_dir / f"rpoly_{fp}.csv"
    rtable.save_csv(rpoly_path)
    dims_path = out_dir / f"dims_{fp}.csv"
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    lines = [
        "# dimension table",
        f"# system: {fp}",
        f"# generated_at: {stamp}",
        "x_word;y_word;dimV;gj_coeff;match",
    ]
    lines.extend(";".join(str(v) for v in row) for row in rows)
    try:
        dims_path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {dims_path}: {exc}") from exc
    summary_path = out_dir / f"summary_{fp}.json"
    try:
        summary_path.write_text(
            json.dumps(result.summary_json_dict(), indent=2, sort_keys=True) + "\n"
        )
    except OSError as exc:
        raise IoError(f"cannot write {summary_path}: {exc}") from exc
    result.paths = {
        "rpoly": str(rpoly_path),
        "dims": str(dims_path),
        "summary": str(summary_path),
    }
    return result
