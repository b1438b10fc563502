"""
Verification campaigns.

A theorem check builds instances (digraph + cover spec) that satisfy the
configured degree hypothesis, either every such instance up to a small order
or seeded random ones, and records whether each receives an accepted cover.
Instances meeting the real hypothesis go to the constructive solver; those
admitted only through a negative threshold_offset go to the exact oracle.

A sharpness check builds an extremal witness, confirms its claimed degree,
lets the oracle refute it, then raises the digraph to the theorem's bound and
solves the same spec there.

Every instance carries its own seed, so the report does not depend on
execution order or worker count.
"""

import logging
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

from joblib import Parallel, delayed
from tqdm import tqdm

sys.path.append(str(Path(__file__).parent.parent))

from app.config import EXHAUSTIVE_MAX_ORDER, ORACLE_MAX_ORDER
from app.constructive import (
    balanced_bipartite_cover,
    one_to_many_threshold,
    one_to_one_threshold,
    paired_two_ore_threshold,
    solve_constructive,
    tight_threshold,
    unpaired_threshold,
)
from app.digraph import Digraph, complete_bipartite_digraph, min_semi_degree, ore_minimum
from app.errors import ConstructionDefect, DigraphError, PreconditionError
from app.exact import OracleBudget, admissible_specs, find_cover_exact, is_k_coverable, sample_spec
from app.extremal import (
    DEFAULT_PARAMS,
    ExtremalWitness,
    Family,
    gen_one_to_many_sharp,
    gen_one_to_one_sharp,
    gen_paired2_figure1,
    gen_tight_sharp,
    gen_unpaired_sharp,
    generate,
)
from app.schemas import CoverKind, CoverSpec, CoverTag, VerdictStatus, unpaired_spec
from harness.brute_force import brute_force_cover
from harness.models import (
    CampaignConfig,
    CampaignMode,
    InstanceRecord,
    Outcome,
    Reproducer,
    TheoremId,
    VerificationReport,
)
from harness.sampling import (
    all_digraphs,
    raise_min_semi_degree,
    raise_ore_min,
    random_digraph,
    sample_min_degree_digraph,
    sample_ore_digraph,
)

logger = logging.getLogger(__name__)

DELTA0 = "delta0"
ORE = "ore"


@dataclass(frozen=True)
class TheoremCheck:
    tag: CoverTag
    measure: str
    threshold: Callable[[int, int], int]
    admits: Callable[[int, int], bool]
    witness: Optional[Callable[[int, int], ExtremalWitness]] = None
    fixed_k: Optional[int] = None


THEOREMS: Dict[TheoremId, TheoremCheck] = {
    TheoremId.MAIN1: TheoremCheck(
        tag=CoverTag.UNPAIRED_MTM,
        measure=DELTA0,
        threshold=unpaired_threshold,
        admits=lambda n, k: n >= 3 * k,
        witness=gen_unpaired_sharp
    ),
    TheoremId.MAIN2_TIGHT: TheoremCheck(
        tag=CoverTag.UNPAIRED_MTM,
        measure=DELTA0,
        threshold=lambda n, k: tight_threshold(k),
        admits=lambda n, k: n == 2 * k,
        witness=lambda n, k: gen_tight_sharp(k)
    ),
    TheoremId.PAIRED_TWO: TheoremCheck(
        tag=CoverTag.PAIRED_MTM,
        measure=ORE,
        threshold=lambda n, k: paired_two_ore_threshold(n),
        admits=lambda n, k: n >= 4,
        witness=lambda n, k: gen_paired2_figure1(n, 3),
        fixed_k=2
    ),
    TheoremId.MAIN3: TheoremCheck(
        tag=CoverTag.ONE_TO_MANY,
        measure=DELTA0,
        threshold=one_to_many_threshold,
        admits=lambda n, k: k >= 2 and n >= 3 * k,
        witness=gen_one_to_many_sharp
    ),
    TheoremId.MAIN4: TheoremCheck(
        tag=CoverTag.ONE_TO_ONE,
        measure=DELTA0,
        threshold=one_to_one_threshold,
        admits=lambda n, k: k >= 2 and n >= k + 1,
        witness=gen_one_to_one_sharp
    ),
}

FAMILY_THEOREM: Dict[Family, TheoremId] = {
    Family.UNPAIRED_SHARP_EVEN: TheoremId.MAIN1,
    Family.UNPAIRED_SHARP_ODD: TheoremId.MAIN1,
    Family.TIGHT_SHARP_ODD_K: TheoremId.MAIN2_TIGHT,
    Family.TIGHT_SHARP_EVEN_K: TheoremId.MAIN2_TIGHT,
    Family.PAIRED2_FIGURE1: TheoremId.PAIRED_TWO,
    Family.ONE_TO_MANY_SHARP_ODD: TheoremId.MAIN3,
    Family.ONE_TO_MANY_SHARP_EVEN: TheoremId.MAIN3,
    Family.ONE_TO_ONE_SHARP_ODD: TheoremId.MAIN4,
    Family.ONE_TO_ONE_SHARP_EVEN: TheoremId.MAIN4,
}

ORACLE_TAGS = (CoverTag.UNPAIRED_MTM, CoverTag.PAIRED_MTM, CoverTag.ONE_TO_MANY, CoverTag.ONE_TO_ONE)


@dataclass
class Instance:
    key: str
    params: Dict[str, int]
    digraph: Digraph
    spec: CoverSpec
    method: str


def measure_of(digraph: Digraph, measure: str) -> Union[int, float]:
    return min_semi_degree(digraph) if measure == DELTA0 else ore_minimum(digraph)


def _min_order(tag: CoverTag, k: int) -> int:
    return 2 * k if tag.is_many_to_many else k + 1


def _reproducer(instance: Instance, detail: str) -> Reproducer:
    return Reproducer(graph=instance.digraph.to_dict(), spec=instance.spec.to_dict(), detail=detail)


def _failure(instance: Instance, detail: str) -> Tuple[Outcome, Optional[Reproducer]]:
    return Outcome.FAILURE, _reproducer(instance, detail)


def _run_method(instance: Instance) -> Tuple[Outcome, Optional[Reproducer]]:
    digraph, spec = instance.digraph, instance.spec

    if instance.method == "constructive":
        try:
            solve_constructive(digraph, spec)
        except (ConstructionDefect, PreconditionError) as e:
            return _failure(instance, f"{type(e).__name__}: {e}")
        return Outcome.ACCEPTED, None

    if instance.method == "bipartite":
        try:
            balanced_bipartite_cover(instance.params["m"], spec.sources, spec.sinks)
        except (ConstructionDefect, PreconditionError) as e:
            return _failure(instance, f"{type(e).__name__}: {e}")
        return Outcome.ACCEPTED, None

    if instance.method == "exact":
        if digraph.n > ORACLE_MAX_ORDER:
            return Outcome.SKIPPED, None
        if find_cover_exact(digraph, spec) is None:
            return _failure(instance, "admitted by the configured hypothesis but the oracle finds no cover")
        return Outcome.ACCEPTED, None

    if instance.method == "coverability":
        verdict = is_k_coverable(digraph, spec.kind, OracleBudget(cap=instance.params["cap"]))
        if verdict.status == VerdictStatus.PROVEN_FALSE:
            return Outcome.REFUTED, None
        return _failure(instance, f"expected an uncoverable choice, got {verdict.status.value} "
                                  f"after {verdict.checked} of {verdict.total}")

    # brute-force agreement
    exact = find_cover_exact(digraph, spec)
    brute = brute_force_cover(digraph, spec)
    if (exact is None) != (brute is None):
        return _failure(instance, f"oracle says {exact is not None}, brute force says {brute is not None}")
    return (Outcome.REFUTED if exact is None else Outcome.ACCEPTED), None


def evaluate_instance(instance: Instance, record_timings: bool = False) -> InstanceRecord:
    start = time.perf_counter()
    outcome, counterexample = _run_method(instance)
    elapsed = (time.perf_counter() - start) * 1000

    if outcome == Outcome.FAILURE:
        logger.warning("instance %s failed: %s", instance.key, counterexample.detail)

    return InstanceRecord(
        key=instance.key,
        params=instance.params,
        method=instance.method,
        outcome=outcome,
        elapsed_ms=round(elapsed, 3) if record_timings else None,
        counterexample=counterexample
    )


def _instance_rng(config: CampaignConfig, *parts) -> random.Random:
    return random.Random("/".join(str(part) for part in (config.seed, config.theorem.value) + parts))


def _grid(config: CampaignConfig, check: TheoremCheck) -> Iterator[Tuple[int, int]]:
    k_values = [check.fixed_k] if check.fixed_k else range(config.k_min, config.k_max + 1)
    for n in range(config.n_min, config.n_max + 1):
        for k in k_values:
            if check.admits(n, k):
                yield n, k


def _exhaustive_digraphs(n: int, measure: str, floor: int) -> Iterator[Digraph]:
    if measure == DELTA0:
        yield from all_digraphs(n, max(floor, 0))
    else:
        for digraph in all_digraphs(n):
            if ore_minimum(digraph) >= floor:
                yield digraph


def _theorem_instances(config: CampaignConfig, check: TheoremCheck) -> Iterator[Instance]:
    offset = config.threshold_offset

    for n, k in _grid(config, check):
        threshold = check.threshold(n, k)
        floor = threshold + offset
        kind = CoverKind(check.tag, k)
        params = {"n": n, "k": k}

        def method_for(digraph: Digraph) -> str:
            return "constructive" if measure_of(digraph, check.measure) >= threshold else "exact"

        if config.mode == CampaignMode.EXHAUSTIVE:
            index = 0
            for digraph in _exhaustive_digraphs(n, check.measure, floor):
                method = method_for(digraph)
                for spec in admissible_specs(n, kind):
                    yield Instance(f"{n:02d}/{k:02d}/{index:07d}", params, digraph, spec, method)
                    index += 1
        else:
            for index in range(config.samples):
                rng = _instance_rng(config, n, k, index)
                if check.measure == DELTA0:
                    digraph = sample_min_degree_digraph(n, min(max(floor, 0), n - 1), rng)
                else:
                    digraph = sample_ore_digraph(n, floor, rng)
                spec = sample_spec(n, kind, rng)
                yield Instance(f"{n:02d}/{k:02d}/{index:07d}", params, digraph, spec, method_for(digraph))

        if offset < 0 and check.witness is not None and n <= ORACLE_MAX_ORDER:
            try:
                witness = check.witness(n, k)
            except DigraphError:
                continue
            if witness.digraph.n == n and measure_of(witness.digraph, check.measure) >= floor:
                yield Instance(f"{n:02d}/{k:02d}/extremal", params, witness.digraph, witness.spec, "exact")


def _bipartite_instances(config: CampaignConfig) -> Iterator[Instance]:
    for m in range(max(config.k_min, 2), config.k_max + 1):
        digraph = complete_bipartite_digraph(m, m)
        kind = CoverKind(CoverTag.UNPAIRED_MTM, m)
        params = {"n": 2 * m, "k": m, "m": m}

        if config.mode == CampaignMode.EXHAUSTIVE:
            specs = admissible_specs(2 * m, kind)
        else:
            rng = _instance_rng(config, m)
            specs = (sample_spec(2 * m, kind, rng) for _ in range(config.samples))
        for index, spec in enumerate(specs):
            yield Instance(f"{2 * m:02d}/{m:02d}/{index:07d}", params, digraph, spec, "bipartite")

        # below k = m some choice must be uncoverable
        for k in range(1, m):
            placeholder = unpaired_spec(range(k), range(k, 2 * k))
            yield Instance(
                f"{2 * m:02d}/{k:02d}/coverability",
                {"n": 2 * m, "k": k, "m": m, "cap": config.oracle_cap},
                digraph, placeholder, "coverability"
            )


def _oracle_instances(config: CampaignConfig) -> Iterator[Instance]:
    for n in range(config.n_min, config.n_max + 1):
        if config.mode == CampaignMode.EXHAUSTIVE:
            digraphs = enumerate(all_digraphs(n))
        else:
            digraphs = ((index, random_digraph(n, _instance_rng(config, n, index))) for index in range(config.samples))

        for index, digraph in digraphs:
            for tag in ORACLE_TAGS:
                for k in range(config.k_min, config.k_max + 1):
                    if n < _min_order(tag, k):
                        continue
                    kind = CoverKind(tag, k)
                    if config.mode == CampaignMode.EXHAUSTIVE:
                        specs = admissible_specs(n, kind)
                    else:
                        specs = [sample_spec(n, kind, _instance_rng(config, n, index, tag.value, k))]
                    for position, spec in enumerate(specs):
                        key = f"{n:02d}/{k:02d}/{index:07d}/{tag.value}/{position:05d}"
                        yield Instance(key, {"n": n, "k": k}, digraph, spec, "brute-force")


def campaign_instances(config: CampaignConfig) -> Iterator[Instance]:
    if config.mode == CampaignMode.EXHAUSTIVE and config.n_max > EXHAUSTIVE_MAX_ORDER \
            and config.theorem != TheoremId.MAIN2_BIPARTITE:
        raise ValueError(f"exhaustive campaigns stop at order {EXHAUSTIVE_MAX_ORDER}, got n_max = {config.n_max}")

    if config.theorem == TheoremId.MAIN2_BIPARTITE:
        return _bipartite_instances(config)
    if config.theorem == TheoremId.ORACLE:
        return _oracle_instances(config)
    return _theorem_instances(config, THEOREMS[config.theorem])


def run_theorem_check(config: CampaignConfig, progress: bool = False) -> VerificationReport:
    instances = []
    truncated = False
    for instance in campaign_instances(config):
        if config.max_instances is not None and len(instances) >= config.max_instances:
            truncated = True
            break
        instances.append(instance)

    logger.info("%s: %d instances (%s)", config.theorem.value, len(instances), config.mode.value)
    records = Parallel(n_jobs=config.n_jobs)(
        delayed(evaluate_instance)(instance, config.record_timings)
        for instance in tqdm(instances, disable=not progress, desc=config.theorem.value)
    )

    report = VerificationReport.assemble(config.theorem.value, records, truncated=truncated, config=config)
    logger.info("%s: %d failures", config.theorem.value, report.summary.failures)
    return report


def run_sharpness_check(family: Family, n: Optional[int] = None, k: Optional[int] = None,
                        m: Optional[int] = None, record_timings: bool = False) -> VerificationReport:
    witness = generate(family, n=n, k=k, m=m)
    family = witness.family
    check = THEOREMS[FAMILY_THEOREM[family]]
    digraph, spec = witness.digraph, witness.spec
    order, paths = digraph.n, spec.k
    params = {"n": order, "k": paths}
    if family == Family.PAIRED2_FIGURE1:
        params["m"] = m if m is not None else DEFAULT_PARAMS[family]["m"]
    records = []

    def record(key: str, method: str, outcome: Outcome, target: Digraph, detail: Optional[str] = None,
               elapsed: Optional[float] = None) -> None:
        counterexample = None
        if outcome == Outcome.FAILURE:
            counterexample = Reproducer(graph=target.to_dict(), spec=spec.to_dict(), detail=detail or "")
        records.append(InstanceRecord(
            key=key, params=params, method=method, outcome=outcome,
            elapsed_ms=round(elapsed, 3) if record_timings and elapsed is not None else None,
            counterexample=counterexample
        ))

    claimed = witness.claimed_ore_min if check.measure == ORE else witness.claimed_delta0
    measured = measure_of(digraph, check.measure)
    claim_holds = measured == claimed and min_semi_degree(digraph) == witness.claimed_delta0
    record("1-claim", "claim", Outcome.ACCEPTED if claim_holds else Outcome.FAILURE, digraph,
           f"claimed {check.measure} {claimed}, measured {measured}")

    if order <= ORACLE_MAX_ORDER:
        start = time.perf_counter()
        found = find_cover_exact(digraph, spec)
        outcome = Outcome.REFUTED if found is None else Outcome.FAILURE
        record("2-refutation", "exact", outcome, digraph, f"oracle found a cover: {found.to_dict() if found else None}",
               (time.perf_counter() - start) * 1000)
    else:
        record("2-refutation", "exact", Outcome.SKIPPED, digraph)

    threshold = check.threshold(order, paths)
    if check.measure == DELTA0:
        raised = raise_min_semi_degree(digraph, threshold)
    else:
        raised = raise_ore_min(digraph, threshold)
    side = Instance("3-hypothesis-side", params, raised, spec,
                    "constructive" if check.admits(order, paths) else "exact")
    side_record = evaluate_instance(side, record_timings)
    records.append(side_record)

    report = VerificationReport.assemble(family.value, records, params=params)
    logger.info("%s: %d failures", family.value, report.summary.failures)
    return report


def run_all_sharpness(record_timings: bool = False) -> List[VerificationReport]:
    return [run_sharpness_check(family, record_timings=record_timings) for family in Family]
