import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

DiPath = Tuple[int, ...]


class CoverTag(str, enum.Enum):
    UNPAIRED_MTM = "unpaired-mtm"
    PAIRED_MTM = "paired-mtm"
    ONE_TO_MANY = "one-to-many"
    ONE_TO_ONE = "one-to-one"

    @property
    def is_many_to_many(self) -> bool:
        return self in (CoverTag.UNPAIRED_MTM, CoverTag.PAIRED_MTM)


class RejectReason(str, enum.Enum):
    BAD_ARC = "BadArc"
    BAD_ENDPOINT = "BadEndpoint"
    OVERLAP = "Overlap"
    UNCOVERED = "Uncovered"
    WRONG_COUNT = "WrongCount"


class VerdictStatus(str, enum.Enum):
    PROVEN_TRUE = "proven-true"
    PROVEN_FALSE = "proven-false"
    SAMPLED_TRUE = "sampled-true"


@dataclass(frozen=True)
class CoverKind:
    tag: CoverTag
    k: int

    def __post_init__(self):
        object.__setattr__(self, "tag", CoverTag(self.tag))
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"path count k must be a positive integer, got {self.k!r}")

    def to_dict(self) -> Dict:
        return {"kind": self.tag.value, "k": self.k}


@dataclass(frozen=True)
class CoverSpec:
    kind: CoverKind
    sources: Tuple[int, ...]
    sinks: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "sinks", tuple(self.sinks))

    @property
    def tag(self) -> CoverTag:
        return self.kind.tag

    @property
    def k(self) -> int:
        return self.kind.k

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind.tag.value,
            "k": self.kind.k,
            "S": list(self.sources),
            "T": list(self.sinks)
        }


def unpaired_spec(sources: Sequence[int], sinks: Sequence[int]) -> CoverSpec:
    return CoverSpec(CoverKind(CoverTag.UNPAIRED_MTM, len(sources)), tuple(sources), tuple(sinks))


def paired_spec(sources: Sequence[int], sinks: Sequence[int]) -> CoverSpec:
    return CoverSpec(CoverKind(CoverTag.PAIRED_MTM, len(sources)), tuple(sources), tuple(sinks))


def one_to_many_spec(source: int, sinks: Sequence[int]) -> CoverSpec:
    return CoverSpec(CoverKind(CoverTag.ONE_TO_MANY, len(sinks)), (source,), tuple(sinks))


def one_to_one_spec(source: int, sink: int, k: int) -> CoverSpec:
    return CoverSpec(CoverKind(CoverTag.ONE_TO_ONE, k), (source,), (sink,))


@dataclass
class PathCover:
    paths: List[DiPath] = field(default_factory=list)

    def __post_init__(self):
        self.paths = [tuple(path) for path in self.paths]

    def __len__(self) -> int:
        return len(self.paths)

    def to_dict(self) -> Dict:
        return {"paths": [list(path) for path in self.paths]}


@dataclass
class CoverCheck:
    accepted: bool
    reason: Optional[RejectReason] = None
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        return self.accepted

    def to_dict(self) -> Dict:
        result = {"accepted": self.accepted}

        if self.reason is not None:
            result["reason"] = self.reason.value

        if self.detail:
            result["detail"] = self.detail

        return result


@dataclass
class CoverabilityVerdict:
    status: VerdictStatus
    checked: int
    total: int
    witness: Optional[CoverSpec] = None

    def to_dict(self) -> Dict:
        result = {
            "status": self.status.value,
            "checked": self.checked,
            "total": self.total
        }

        if self.witness is not None:
            result["witness"] = self.witness.to_dict()

        return result
