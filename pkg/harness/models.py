import enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from app.config import DEFAULT_SAMPLE_COUNT, N_JOBS, ORACLE_CAP, REPORT_FORMAT_VERSION


class TheoremId(str, enum.Enum):
    MAIN1 = "main1"
    MAIN2_TIGHT = "main2-tight"
    MAIN2_BIPARTITE = "main2-bipartite"
    PAIRED_TWO = "2t2"
    MAIN3 = "main3"
    MAIN4 = "main4"
    ORACLE = "oracle"


class CampaignMode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    RANDOM = "random"


class Outcome(str, enum.Enum):
    ACCEPTED = "accepted"
    REFUTED = "refuted"
    FAILURE = "failure"
    SKIPPED = "skipped"


class CampaignConfig(BaseModel):
    theorem: TheoremId = Field(description="Which theorem (or the oracle cross-check) to exercise")
    n_min: int = Field(ge=1, le=64, description="Smallest digraph order")
    n_max: int = Field(ge=1, le=64, description="Largest digraph order")
    k_min: int = Field(default=1, ge=1, description="Smallest path count")
    k_max: int = Field(default=1, ge=1, description="Largest path count")
    mode: CampaignMode = Field(default=CampaignMode.RANDOM)
    samples: int = Field(
        default=DEFAULT_SAMPLE_COUNT,
        ge=1,
        description="Random instances per (n, k) pair"
    )
    seed: Optional[int] = Field(default=None, description="Required in random mode")
    oracle_cap: int = Field(
        default=ORACLE_CAP,
        ge=1,
        description="Admissible (S,T) choices enumerated before is_k_coverable samples"
    )
    max_instances: Optional[int] = Field(
        default=None,
        ge=1,
        description="Stop an exhaustive campaign after this many instances and mark it truncated"
    )
    threshold_offset: int = Field(
        default=0,
        le=0,
        description="Shift applied to the degree hypothesis; negative values admit instances below the bound"
    )
    record_timings: bool = Field(default=False, description="Write per-instance elapsed_ms")
    n_jobs: int = Field(default=N_JOBS, exclude=True, description="joblib worker count; not written to reports")
    output: Optional[str] = Field(default=None, exclude=True, description="Report path; not written to reports")

    @model_validator(mode="after")
    def check_ranges(self) -> "CampaignConfig":
        if self.n_min > self.n_max:
            raise ValueError(f"empty order range {self.n_min}..{self.n_max}")
        if self.k_min > self.k_max:
            raise ValueError(f"empty path-count range {self.k_min}..{self.k_max}")
        if self.mode == CampaignMode.RANDOM and self.seed is None:
            raise ValueError("random mode needs a seed")
        return self


class Reproducer(BaseModel):
    graph: Dict = Field(description="Digraph JSON, as accepted by the CLI --graph option")
    spec: Dict = Field(description="Cover spec JSON")
    detail: str = Field(description="Why the instance failed")


class InstanceRecord(BaseModel):
    key: str = Field(description="Sort key; unique within a report")
    params: Dict[str, int] = Field(default_factory=dict)
    method: str = Field(description="constructive, exact, brute-force or claim")
    outcome: Outcome
    elapsed_ms: Optional[float] = Field(default=None)
    counterexample: Optional[Reproducer] = Field(default=None)


class ReportSummary(BaseModel):
    instances: int = 0
    accepted: int = 0
    refuted: int = 0
    skipped: int = 0
    failures: int = 0
    truncated: bool = False


class VerificationReport(BaseModel):
    format_version: str = Field(default=REPORT_FORMAT_VERSION)
    campaign: str = Field(description="theorem id or extremal family")
    config: Optional[CampaignConfig] = Field(default=None)
    params: Dict[str, int] = Field(default_factory=dict)
    summary: ReportSummary = Field(default_factory=ReportSummary)
    failures: List[str] = Field(default_factory=list, description="Keys of failed records")
    records: List[InstanceRecord] = Field(default_factory=list)

    @classmethod
    def assemble(cls, campaign: str, records: List[InstanceRecord], truncated: bool = False,
                 config: Optional[CampaignConfig] = None, params: Optional[Dict[str, int]] = None) -> "VerificationReport":
        records = sorted(records, key=lambda record: record.key)
        counts = {outcome: 0 for outcome in Outcome}
        for record in records:
            counts[record.outcome] += 1

        return cls(
            campaign=campaign,
            config=config,
            params=params or {},
            summary=ReportSummary(
                instances=len(records),
                accepted=counts[Outcome.ACCEPTED],
                refuted=counts[Outcome.REFUTED],
                skipped=counts[Outcome.SKIPPED],
                failures=counts[Outcome.FAILURE],
                truncated=truncated
            ),
            failures=[record.key for record in records if record.outcome == Outcome.FAILURE],
            records=records
        )

    @property
    def passed(self) -> bool:
        return self.summary.failures == 0
