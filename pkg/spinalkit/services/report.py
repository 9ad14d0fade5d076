import json

from spinalkit.models import CheckStatus
from spinalkit.schemas import SuiteReport

STATUS_MARK = {CheckStatus.passed: "pass", CheckStatus.failed: "FAIL", CheckStatus.skipped: "skip"}


def render_machine(reports: list[SuiteReport], timings: bool = False) -> str:
    exclude = None if timings else {"wall_time_s"}
    payload = [report.model_dump(mode="json", exclude=exclude) for report in reports]
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_text(reports: list[SuiteReport], timings: bool = False) -> str:
    lines: list[str] = []
    for report in reports:
        counts = {status: 0 for status in CheckStatus}
        for check in report.checks:
            counts[check.status] += 1
        header = (
            f"{report.suite.value} on {report.group} (seed {report.seed}): "
            f"{counts[CheckStatus.passed]} passed, {counts[CheckStatus.failed]} failed, "
            f"{counts[CheckStatus.skipped]} skipped"
        )
        if timings and report.wall_time_s is not None:
            header += f" in {report.wall_time_s:.2f}s"
        lines.append(header)
        lines.append(f"  claim: {report.claim}")
        for check in report.checks:
            line = f"  [{STATUS_MARK[check.status]}] {check.name}: {check.observed}"
            if check.status != CheckStatus.passed:
                line += f" (expected {check.expected})"
            lines.append(line)
            if check.counterexample:
                lines.append(f"         counterexample: {check.counterexample}")
    return "\n".join(lines) + "\n"


def render(reports: list[SuiteReport], machine: bool, timings: bool = False) -> str:
    return render_machine(reports, timings) if machine else render_text(reports, timings)
