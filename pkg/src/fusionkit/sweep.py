"""
Grid sweeps of `verify_theorem()` over algebras, levels, and all λ≫μ pairs,
with JSON and CSV output
"""

from __future__ import annotations
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
import csv
import io
import logging
from pathlib import Path
from typing import Literal, NamedTuple, Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from .prv import PRVReport, dominating_pairs, verify_theorem
from .rootsys import AlgebraData, build_algebra
from .util import Weight, parse_algebra

log = logging.getLogger(__name__)

#: Version of the JSON report layout
SCHEMA_VERSION = 1

CSV_FIELDS = [
    "algebra",
    "level",
    "lambda",
    "mu",
    "applicable",
    "prv_components",
    "prv_multiplicities",
    "witnesses",
    "passed",
    "proposition_holds",
    "explicit_formula_agrees",
    "bounded_by_tensor",
]


def default_max_level(alg: AlgebraData) -> int:
    """The largest level swept when none is given: 6 up to rank 2, else 3"""
    return 6 if alg.rank <= 2 else 3


class SweepConfig(BaseModel):
    """The grid and output settings of a ``prv-sweep`` run"""

    model_config = ConfigDict(frozen=True)

    #: Algebra names such as ``"A2"``; normalized to upper-case series + rank
    algebras: list[str] = Field(min_length=1)
    min_level: int = Field(default=1, ge=1)
    #: `None` means `default_max_level()` for each algebra
    max_level: Optional[int] = Field(default=None, ge=1)
    #: Only sweep pairs with this λ
    lam: Optional[Weight] = None
    #: Only sweep pairs with this μ
    mu: Optional[Weight] = None
    include_zero_mu: bool = False
    output: Optional[Path] = None
    format: Literal["json", "csv"] = "json"
    jobs: int = Field(default=1, ge=1)
    max_dim: Optional[int] = Field(default=None, ge=1)

    @field_validator("algebras")
    @classmethod
    def _check_algebras(cls, value: list[str]) -> list[str]:
        names = []
        for s in value:
            series, rank = parse_algebra(s)
            # raises InvalidAlgebraError (a ValueError) for unsupported types
            names.append(build_algebra(series, rank).name)
        return names

    @model_validator(mode="after")
    def _check_ranges(self) -> SweepConfig:
        if self.max_level is not None and self.max_level < self.min_level:
            raise ValueError(
                f"Empty level range: {self.min_level} > {self.max_level}"
            )
        for w in (self.lam, self.mu):
            if w is None:
                continue
            for name in self.algebras:
                if len(w) != parse_algebra(name)[1]:
                    raise ValueError(f"Weight filter {w} does not fit {name}")
        return self

    def get_algebras(self) -> list[AlgebraData]:
        return [build_algebra(*parse_algebra(name)) for name in self.algebras]

    def levels(self, alg: AlgebraData) -> range:
        top = self.max_level if self.max_level is not None else default_max_level(alg)
        return range(self.min_level, top + 1)


class SweepTask(NamedTuple):
    series: str
    rank: int
    level: int
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    max_dim: Optional[int]


def run_task(task: SweepTask) -> PRVReport:
    alg = build_algebra(task.series, task.rank)
    return verify_theorem(
        alg, Weight(task.lam), Weight(task.mu), task.level, max_dim=task.max_dim
    )


def iter_tasks(cfg: SweepConfig) -> Iterator[SweepTask]:
    """Every grid point of ``cfg``, in output order"""
    for alg in cfg.get_algebras():
        for ell in cfg.levels(alg):
            pairs = [
                (lam, mu)
                for lam, mu in dominating_pairs(alg, ell, cfg.include_zero_mu)
                if (cfg.lam is None or lam == cfg.lam)
                and (cfg.mu is None or mu == cfg.mu)
            ]
            log.info("%s at level %d: %d λ≫μ pairs", alg.name, ell, len(pairs))
            for lam, mu in pairs:
                yield SweepTask(
                    alg.series, alg.rank, ell, lam.coords, mu.coords, cfg.max_dim
                )


class SweepSummary(BaseModel):
    pairs: int
    prv_components: int
    witnesses: int
    failures: int

    @property
    def line(self) -> str:
        if self.pairs == 0:
            return "0 applicable pairs"
        elif self.failures:
            return f"{self.failures} of {self.pairs} pairs failed"
        else:
            return (
                f"all {self.pairs} pairs passed ({self.prv_components} PRV"
                f" components, {self.witnesses} witnesses)"
            )


class SweepResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    summary: SweepSummary
    reports: list[PRVReport]

    @property
    def ok(self) -> bool:
        return self.summary.failures == 0

    def failed_reports(self) -> list[PRVReport]:
        return [r for r in self.reports if not r.ok]

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=4)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for r in self.reports:
            writer.writerow(
                {
                    "algebra": r.algebra,
                    "level": r.level,
                    "lambda": str(r.lam),
                    "mu": str(r.mu),
                    "applicable": r.applicable,
                    "prv_components": len(r.prv_weights_in_p_ell),
                    "prv_multiplicities": " ".join(
                        f"{m.weight}:{m.multiplicity}" for m in r.fusion_multiplicities
                    ),
                    "witnesses": len(r.proposition_witnesses),
                    "passed": r.passed,
                    "proposition_holds": r.proposition_holds,
                    "explicit_formula_agrees": r.explicit_formula_agrees,
                    "bounded_by_tensor": r.bounded_by_tensor,
                }
            )
        return out.getvalue()

    def dump(self, fmt: Literal["json", "csv"]) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


def summarize(reports: list[PRVReport]) -> SweepSummary:
    applicable = [r for r in reports if r.applicable]
    return SweepSummary(
        pairs=len(applicable),
        prv_components=sum(len(r.prv_weights_in_p_ell) for r in applicable),
        witnesses=sum(len(r.proposition_witnesses) for r in applicable),
        failures=sum(not r.ok for r in applicable),
    )


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """
    Run `verify_theorem()` on every grid point of ``cfg``, across ``cfg.jobs``
    worker processes if more than one.  Reports come back in grid order
    regardless of the number of workers.  If ``cfg.output`` is set, the
    result is also written there in ``cfg.format``.
    """
    tasks = list(iter_tasks(cfg))
    if cfg.jobs > 1 and len(tasks) > 1:
        log.info("Verifying %d pairs across %d processes", len(tasks), cfg.jobs)
        with ProcessPoolExecutor(max_workers=cfg.jobs) as executor:
            reports = list(executor.map(run_task, tasks, chunksize=8))
    else:
        reports = [run_task(t) for t in tasks]
    result = SweepResult(summary=summarize(reports), reports=reports)
    log.info("Sweep finished: %s", result.summary.line)
    if cfg.output is not None:
        cfg.output.write_text(result.dump(cfg.format), encoding="utf-8")
    return result
