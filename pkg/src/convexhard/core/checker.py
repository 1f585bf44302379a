"""The check battery run by ``convexhard check`` and ``convexhard batch``.

A run takes one reduction (freshly built from an instance, or read back from
a points file) and produces a JSON-ready report with one verdict per check.
"""

import logging
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

import numpy as np

from ..data.formats import instance_hash
from ..metrics.collector import MetricsCollector
from .hull_index import HullIndex, iter_bits
from .nets import (
    ColoredPoints,
    NetSearch,
    discrepancy,
    hull_closed_witness,
    net_iff_no_independent_set,
)
from .reduction import (
    ReductionOutput,
    check_convexity_proposition,
    check_corollary,
    check_corollary_exhaustive,
    check_encoding_lemma_exhaustive,
    check_encoding_mask,
    convex_set_to_independent_set,
    reduction_index,
    verify_all_witness_planes,
)
from .solvers import (
    ConvexSubsetSearch,
    SolveResult,
    TangencyGraph,
    max_independent_set,
)

logger = logging.getLogger(__name__)

MODES = ("lemmas", "main", "nets", "all")

T = TypeVar("T")


class CheckRunner:
    """Runs the lemma, oracle and net checks on one reduction.

    Instance Attributes:
        - output: the reduction under test
        - mode: one of lemmas, main, nets, all
        - cap: largest |L| + |B| accepted for exhaustive checks
        - corollary_cap: largest |L| + |B| for the exhaustive corollary scan
        - sample: when True, oversized subset scans are sampled instead of
          refused
        - metrics: wall times and explored node counts per stage

    Representation Invariants:
        - self.mode in MODES
    """

    output: ReductionOutput
    mode: str
    cap: int
    corollary_cap: int
    sample: bool
    metrics: MetricsCollector

    def __init__(
        self,
        output: ReductionOutput,
        mode: str = "all",
        check_config: Optional[Dict[str, Any]] = None,
        sample: bool = False,
    ) -> None:
        if mode not in MODES:
            raise ValueError(f"mode must be one of {', '.join(MODES)}, got {mode!r}")
        cfg = check_config or {}
        self.output = output
        self.mode = mode
        self.cap = int(cfg.get("cap", 18))
        self.corollary_cap = int(cfg.get("corollary_cap", 14))
        self.sample = sample
        self.sample_size = int(cfg.get("sample_size", 256))
        self.sample_seed = int(cfg.get("sample_seed", 0))
        self.metrics = MetricsCollector()
        self.skipped: Dict[str, str] = {}
        self._index: Optional[HullIndex] = None
        self._mis: Optional[SolveResult] = None

        total = len(output.points)
        if total > self.cap and not sample:
            raise ValueError(
                f"instance has {total} points, above the exhaustive cap {self.cap}; "
                f"raise --cap or pass --sample"
            )

    @property
    def index(self) -> HullIndex:
        if self._index is None:
            self._index = self._stage("hull_index", lambda: reduction_index(self.output))
        return self._index

    @property
    def graph(self) -> TangencyGraph:
        return TangencyGraph(
            len(self.output.lifted), frozenset((p.i, p.j) for p in self.output.pairs)
        )

    @property
    def mis(self) -> SolveResult:
        """Maximum independent set of the stored pairs, solved once."""
        if self._mis is None:
            self._mis = self._stage("mis", lambda: max_independent_set(self.graph))
        return self._mis

    def _stage(self, name: str, fn: Callable[[], T]) -> T:
        start = self.metrics.record_stage_start()
        try:
            result = fn()
        except Exception:
            self.metrics.record_stage_failure(name)
            raise
        self.metrics.record_stage_success(start, name, getattr(result, "explored", 0))
        return result

    def _sampled_masks(self, bits: int) -> List[int]:
        rng = np.random.default_rng(self.sample_seed)
        rows = rng.integers(0, 2, size=(self.sample_size, bits))
        masks = {0, (1 << bits) - 1}
        for row in rows:
            masks.add(sum(int(b) << k for k, b in enumerate(row)))
        return sorted(masks)

    # ------------------------------------------------------------------
    # Lemma checks
    # ------------------------------------------------------------------

    def _encoding(self) -> bool:
        n = len(self.output.lifted)
        if len(self.output.points) <= self.cap or 2 ** n <= self.sample_size:
            return check_encoding_lemma_exhaustive(self.output, self.index)
        self.skipped["encoding_lemma"] = f"sampled {self.sample_size} of 2^{n} subsets"
        return all(check_encoding_mask(self.output, q, self.index) for q in self._sampled_masks(n))

    def _corollary(self) -> Optional[bool]:
        n = len(self.output.lifted)
        nb = len(self.output.blocking)
        if len(self.output.points) <= self.corollary_cap:
            return check_corollary_exhaustive(self.output, self.index)
        if not self.sample:
            self.skipped["corollary"] = (
                f"{n + nb} points exceed the corollary cap {self.corollary_cap}"
            )
            return None
        self.skipped["corollary"] = f"sampled {self.sample_size} of 2^{n + nb} subsets"
        lifted = (1 << n) - 1
        return all(
            check_corollary(self.output, iter_bits(mask & lifted), iter_bits(mask >> n), self.index)
            for mask in self._sampled_masks(n + nb)
        )

    def run_lemmas(self) -> Dict[str, Any]:
        """Run the reduction lemma checks.

        Returns:
            Verdicts keyed by check: reduction_consistent, witness_planes,
            encoding_lemma, convexity_proposition (a dict of three verdicts)
            and corollary, which is None when skipped
        """
        output = self.output
        consistent = self._stage("consistency", output.is_consistent)
        if not consistent:
            logger.warning("Stored points differ from a fresh reduction of their centers")
        checks: Dict[str, Any] = {
            "reduction_consistent": consistent,
            "witness_planes": self._stage(
                "witness_planes", lambda: verify_all_witness_planes(output)
            ),
            "encoding_lemma": self._stage("encoding_lemma", self._encoding),
            "convexity_proposition": self._stage(
                "convexity_proposition", lambda: check_convexity_proposition(output, self.index)
            ),
            "corollary": self._stage("corollary", self._corollary),
        }
        return checks

    # ------------------------------------------------------------------
    # Oracle equivalences and the swap procedure
    # ------------------------------------------------------------------

    def _swap_check(self, witness: Iterable, m: int) -> bool:
        try:
            result = convex_set_to_independent_set(self.output, witness, m, self.index)
        except (RuntimeError, ValueError) as e:
            logger.error(f"Swap procedure aborted: {e}")
            return False
        position = {p: k for k, p in enumerate(self.output.points)}
        steps_convex = all(
            self.index.is_convex(sum(1 << position[p] for p in step))
            for step in result.swap_trace
        )
        return (
            steps_convex
            and len(result.independent) == m
            and self.graph.is_independent(result.independent)
        )

    def run_main(self) -> Dict[str, Any]:
        """Solve MIS, ES and LECS exactly and compare them.

        ES and LECS must both equal the MIS size plus |B|, and each optimum
        witness must survive the swap procedure.

        Returns:
            Dictionary with "sizes", "checks" and "swap_checks" entries
        """
        points = self.output.points
        nb = len(self.output.blocking)
        es = self._stage("es", lambda: ConvexSubsetSearch(points).run())
        lecs = self._stage("lecs", lambda: ConvexSubsetSearch(points, empty=True).run())
        mis = self.mis
        target = mis.size + nb
        checks: Dict[str, Any] = {
            "convex_lemma": es.size == target,
            "main_lemma": lecs.size == target,
            "mis_witness": len(mis.witness) == mis.size and self.graph.is_independent(mis.witness),
        }
        swaps: Dict[str, bool] = {}
        m = es.size - nb
        if m >= 1:
            swaps["es_witness"] = self._stage("swap", lambda: self._swap_check(es.witness, m))
        m = lecs.size - nb
        if m >= 1:
            swaps["lecs_witness"] = self._stage("swap", lambda: self._swap_check(lecs.witness, m))
        if not checks["convex_lemma"] or not checks["main_lemma"]:
            logger.warning(
                f"Oracle mismatch: es={es.size}, lecs={lecs.size}, mis={mis.size}, |B|={nb}"
            )
        return {
            "sizes": {"mis_size": mis.size, "es_size": es.size, "lecs_size": lecs.size},
            "checks": checks,
            "swap_checks": swaps,
        }

    # ------------------------------------------------------------------
    # Nets and discrepancy
    # ------------------------------------------------------------------

    def run_nets(self) -> Dict[str, Any]:
        """Check the net equivalence for every m and compute the discrepancy.

        Returns:
            Dictionary with "net_checks" keyed "m/n", the "discrepancy" of
            L against B and its "checks"
        """
        output = self.output
        n = len(output.lifted)
        search = self._stage(
            "net_index", lambda: NetSearch(output.lifted, output.blocking_points)
        )
        mis_size = self.mis.size
        net_checks: Dict[str, bool] = {}
        for m in range(1, n + 1):
            try:
                ok = self._stage(
                    "nets",
                    lambda: net_iff_no_independent_set(output.instance, m, search, mis_size),
                )
            except ValueError as e:
                logger.warning(f"Net check for m={m} could not run: {e}")
                ok = False
            net_checks[f"{m}/{n}"] = ok

        colored = ColoredPoints(output.lifted, output.blocking_points)
        disc = self._stage("discrepancy", lambda: discrepancy(colored))
        return {
            "net_checks": net_checks,
            "discrepancy": disc.size,
            "checks": {
                "discrepancy_bounds_mis": disc.size >= mis_size,
                "discrepancy_witness_closed": hull_closed_witness(colored, disc.witness),
            },
        }

    # ------------------------------------------------------------------

    def run(self, timings: bool = True) -> Dict[str, Any]:
        """Run the checks of the selected mode and assemble the report.

        Args:
            timings: Include per-stage wall times; leave them out for
                byte-identical reports across runs

        Returns:
            The report document, with "passed" summarizing every verdict
        """
        output = self.output
        logger.info(
            f"Checking |L|={len(output.lifted)}, |B|={len(output.blocking)} in mode {self.mode}"
        )
        report: Dict[str, Any] = {
            "instance_hash": instance_hash(output.instance),
            "mode": self.mode,
            "L_size": len(output.lifted),
            "B_size": len(output.blocking),
            "mis_size": None,
            "es_size": None,
            "lecs_size": None,
            "lemma_checks": {},
            "swap_checks": {},
            "net_checks": {},
            "discrepancy": None,
        }
        if self.mode in ("lemmas", "all"):
            report["lemma_checks"].update(self.run_lemmas())
        if self.mode in ("main", "all"):
            main = self.run_main()
            report.update(main["sizes"])
            report["lemma_checks"].update(main["checks"])
            report["swap_checks"] = main["swap_checks"]
        if self.mode in ("nets", "all"):
            nets = self.run_nets()
            report["mis_size"] = self.mis.size
            report["net_checks"] = nets["net_checks"]
            report["discrepancy"] = nets["discrepancy"]
            report["lemma_checks"].update(nets["checks"])

        metrics = self.metrics.get_metrics()
        report["explored"] = metrics["explored"]
        if timings:
            report["wall_times"] = metrics["wall_times"]
        report["skipped"] = dict(self.skipped)
        report["passed"] = report_passed(report)
        if not report["passed"]:
            logger.warning(f"Check battery failed: {failed_checks(report)}")
        return report


def _flatten(prefix: str, value: Any) -> Iterable:
    if isinstance(value, dict):
        for key, inner in value.items():
            yield from _flatten(f"{prefix}.{key}" if prefix else key, inner)
    else:
        yield prefix, value


def failed_checks(report: Dict[str, Any]) -> List[str]:
    """List the checks a report failed.

    Args:
        report: A document built by CheckRunner.run

    Returns:
        Dotted names of checks whose verdict is False; skipped checks (None)
        count as passed
    """
    failed = []
    for section in ("lemma_checks", "swap_checks", "net_checks"):
        for name, verdict in _flatten(section, report.get(section, {})):
            if verdict is False:
                failed.append(name)
    return failed


def report_passed(report: Dict[str, Any]) -> bool:
    """True when failed_checks finds nothing."""
    return not failed_checks(report)
