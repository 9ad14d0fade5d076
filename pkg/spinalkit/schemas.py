from pydantic import BaseModel, Field, model_validator

from spinalkit.config import Settings
from spinalkit.models import CheckStatus, SuiteName
from spinalkit.services.zmodp import DefiningTuple


# Groups
class GroupConfig(BaseModel):
    p: int
    rows: list[list[int]] = Field(min_length=1)
    label: str | None = None

    @model_validator(mode="after")
    def _valid_tuple(self) -> "GroupConfig":
        # InvalidTuple is not a ValueError, so it escapes pydantic unchanged
        self.defining_tuple()
        return self

    def defining_tuple(self) -> DefiningTuple:
        return DefiningTuple.build(self.p, self.rows)

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        rows = ";".join(",".join(str(e % self.p) for e in row) for row in self.rows)
        return f"p{self.p}[{rows}]"


# Run limits
class Caps(BaseModel):
    degree_cap: int = Field(gt=0)
    order_work_cap: int = Field(gt=0)
    bfs_step_cap: int = Field(gt=0)
    theta_samples: int = Field(gt=0)
    theta_max_length: int = Field(ge=2)
    section_samples: int = Field(gt=0)
    section_max_length: int = Field(gt=0)
    oracle_samples: int = Field(gt=0)
    oracle_max_depth: int = Field(gt=0)
    word_samples: int = Field(gt=0)
    normalize_samples: int = Field(gt=0)
    quotient_depth: int = Field(ge=2)
    torsion_depth: int = Field(gt=0)
    retry_cap: int = Field(gt=0)

    @classmethod
    def from_settings(cls, settings: Settings, **overrides) -> "Caps":
        values = {
            "degree_cap": settings.DEGREE_CAP,
            "order_work_cap": settings.ORDER_WORK_CAP,
            "bfs_step_cap": settings.BFS_STEP_CAP,
            "theta_samples": settings.THETA_SAMPLES,
            "theta_max_length": settings.THETA_MAX_LENGTH,
            "section_samples": settings.SECTION_SAMPLES,
            "section_max_length": settings.SECTION_MAX_LENGTH,
            "oracle_samples": settings.ORACLE_SAMPLES,
            "oracle_max_depth": settings.ORACLE_MAX_DEPTH,
            "word_samples": settings.WORD_SAMPLES,
            "normalize_samples": settings.NORMALIZE_SAMPLES,
            "quotient_depth": settings.QUOTIENT_DEPTH,
            "torsion_depth": settings.TORSION_DEPTH,
            "retry_cap": settings.RETRY_CAP,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


# Reports
class CheckResult(BaseModel):
    name: str
    status: CheckStatus
    observed: str
    expected: str
    counterexample: str | None = None


class SuiteReport(BaseModel):
    suite: SuiteName
    group: str
    seed: int
    claim: str
    checks: list[CheckResult]
    wall_time_s: float | None = None

    @property
    def failed(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == CheckStatus.failed]

    @property
    def passed(self) -> bool:
        return not self.failed
