import logging
import time
from dataclasses import dataclass, field
from functools import partial
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from linmba.expr import Width, parse, render, variables
from linmba.simplify import analyze
from linmba.tools.dataset import DatasetRecord
from linmba.tools.pool import map_in_pool
from linmba.verify import equivalent_linear

REPORT_VERSION = 1

class RecordOutcome(NamedTuple):
    line: int
    output: Optional[str]
    exact: bool
    semantic: bool
    checked: Optional[bool]  # None unless the output was checked against the input
    variables: int
    seconds: Optional[float]
    error: Optional[str]

@dataclass
class RecordOptions:
    bits: int = 64
    check: bool = False
    allow_nonlinear: bool = False
    max_variables: int = 10
    repeat: int = 1

def process_record(options: RecordOptions, record: DatasetRecord) -> RecordOutcome:
    """Simplify one record and compare the result with its ground truth. Parse and linearity failures are reported
    in the outcome, never raised. Only the simplify call is timed."""
    width = Width(options.bits)
    try:
        complex_ = parse(record.complex, width)
        simple = parse(record.simple, width)
    except ValueError as e:
        return RecordOutcome(record.line, None, False, False, None, 0, None, str(e))
    t = len(variables(complex_))
    try:
        timings = []
        for _ in range(options.repeat):
            start = time.perf_counter()
            result = analyze(complex_, width, options.allow_nonlinear, options.max_variables)
            timings.append(time.perf_counter() - start)
        output = render(result.expr)
        exact = output == record.simple
        semantic = exact or equivalent_linear(result.expr, simple, width, options.max_variables).equivalent
        checked: Optional[bool] = None
        if options.check:
            checked = result.linear_checked and \
                equivalent_linear(complex_, result.expr, width, options.max_variables).equivalent
            semantic = semantic and checked
    except ValueError as e:
        return RecordOutcome(record.line, None, False, False, None, t, None, str(e))
    return RecordOutcome(record.line, output, exact, semantic, checked, t, float(np.mean(timings)), None)

def _stats(seconds: Sequence[float]) -> Dict[str, Optional[float]]:
    if len(seconds) == 0:
        return {"mean": None, "median": None, "p95": None}
    values = np.array(seconds, dtype=float)
    return {
        "mean": float(np.mean(values)),
        "median": float(np.median(values)),
        "p95": float(np.percentile(values, 95))
    }

@dataclass
class RunReport:
    """Summary of a dataset run. solved_exact counts outputs equal to the ground-truth text; solved_semantic counts
    outputs proven equivalent to it, exact ones included; failed = total - solved_semantic."""
    bits: int
    total: int
    solved_exact: int
    solved_semantic: int
    failed: int
    mean: Optional[float]
    median: Optional[float]
    p95: Optional[float]
    by_variables: Dict[int, float] = field(default_factory=dict)
    repeat: int = 1
    pass_means: List[float] = field(default_factory=list)
    outcomes: List[RecordOutcome] = field(default_factory=list)

    @classmethod
    def from_outcomes(cls, bits: int, outcomes: Sequence[RecordOutcome], repeat: int = 1,
                      pass_means: Optional[List[float]] = None) -> "RunReport":
        seconds = [o.seconds for o in outcomes if o.seconds is not None]
        grouped: Dict[int, List[float]] = {}
        for o in outcomes:
            if o.seconds is not None:
                grouped.setdefault(o.variables, []).append(o.seconds)
        solved_semantic = sum(1 for o in outcomes if o.semantic)
        stats = _stats(seconds)
        return cls(
            bits=bits,
            total=len(outcomes),
            solved_exact=sum(1 for o in outcomes if o.exact),
            solved_semantic=solved_semantic,
            failed=len(outcomes) - solved_semantic,
            mean=stats["mean"],
            median=stats["median"],
            p95=stats["p95"],
            by_variables={t: float(np.mean(v)) for t, v in sorted(grouped.items())},
            repeat=repeat,
            pass_means=list(pass_means or []),
            outcomes=list(outcomes)
        )

    @property
    def success(self) -> bool:
        return self.failed == 0

    def as_dict(self) -> Dict:
        return {
            "version": REPORT_VERSION,
            "bits": self.bits,
            "total": self.total,
            "solved_exact": self.solved_exact,
            "solved_semantic": self.solved_semantic,
            "failed": self.failed,
            "runtime": {"mean": self.mean, "median": self.median, "p95": self.p95},
            "by_variables": {str(t): mean for t, mean in self.by_variables.items()},
            "repeat": self.repeat,
            "pass_means": self.pass_means,
            "failures": [
                {"line": o.line, "output": o.output, "error": o.error}
                for o in self.outcomes if not o.semantic
            ]
        }

    def summary(self) -> str:
        lines = ["Total: %i" % self.total,
                 "Solved (exact): %i" % self.solved_exact,
                 "Solved (semantic): %i" % self.solved_semantic,
                 "Failed: %i" % self.failed]
        if self.mean is not None:
            lines.append("Runtime: mean %.6f s, median %.6f s, p95 %.6f s" % (self.mean, self.median, self.p95))
        for t, mean in self.by_variables.items():
            lines.append("  %i variables: mean %.6f s" % (t, mean))
        return "\n".join(lines)

def run_dataset(records: Sequence[DatasetRecord], options: RecordOptions, workers: Optional[int] = None,
                table_cache_dir: Optional[str] = None) -> RunReport:
    outcomes = map_in_pool(partial(process_record, options), records, workers, table_cache_dir)
    for outcome in outcomes:
        if not outcome.semantic:
            logging.warning("Line %i not solved: %s" % (outcome.line, outcome.error or outcome.output))
    return RunReport.from_outcomes(options.bits, outcomes)

def bench(records: Sequence[DatasetRecord], options: RecordOptions, repeat: int = 1) -> RunReport:
    """Time the dataset in this process. A first pass warms the lookup tables and is discarded; each record's
    runtime is the mean over the following passes."""
    if repeat < 1:
        raise ValueError("repeat must be at least 1")
    for record in records:
        process_record(options, record)
    passes: List[List[RecordOutcome]] = []
    for i in range(repeat):
        logging.info("Benchmark pass %i of %i." % (i + 1, repeat))
        passes.append([process_record(options, record) for record in records])

    outcomes: List[RecordOutcome] = []
    for per_record in zip(*passes):
        timed = [o.seconds for o in per_record if o.seconds is not None]
        last = per_record[-1]
        outcomes.append(last._replace(seconds=float(np.mean(timed)) if timed else None))
    pass_means = []
    for outcomes_of_pass in passes:
        timed = [o.seconds for o in outcomes_of_pass if o.seconds is not None]
        if timed:
            pass_means.append(float(np.mean(timed)))
    return RunReport.from_outcomes(options.bits, outcomes, repeat, pass_means)
