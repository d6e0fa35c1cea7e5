import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple

from typing_extensions import TypedDict

SCOPE_NOTE = (
    "Not verified here: non-generation of the Ext algebra in degrees 0 and 1 "
    "(no finite computation is attached to it) and the Ext^{l(w)-l(v)-1} isomorphism, "
    "which is checked only through palindromic R-polynomials."
)


class FailureRecord(TypedDict):
    v: str
    w: str
    expected: str
    actual: str
    rule: str


@dataclass
class VerificationReport:
    """
    Outcome of one verification suite on one group.

    Attributes:
        suite: Suite name.
        group: Group label.
        checks: Number of checks performed; several checks may concern one pair.
        pairs: Distinct (v, w) pairs touched by a check. Aggregate checks over
            all pairs, written with "*", are not counted.
        failures: One record per failed check.
        elapsed_ms: Wall time of the suite.
        sign_calibration: Offset c with dim Ext^1 = (-1)^(l(w)-l(v)+c) [q]R, when measured.
        notes: Free-form observations, e.g. the sign pattern.
    """
    suite: str
    group: str
    checks: int = 0
    pairs: Set[Tuple[str, str]] = field(default_factory=set, repr=False)
    failures: List[FailureRecord] = field(default_factory=list)
    elapsed_ms: float = 0.0
    sign_calibration: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    @property
    def pairs_checked(self) -> int:
        return len(self.pairs)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, v: str, w: str, expected: Any, actual: Any, rule: str) -> bool:
        """Counts one check and records a failure when ok is False."""
        self.checks += 1
        if "*" not in (v, w):
            self.pairs.add((v, w))
        if not ok:
            self.failures.append(
                FailureRecord(v=v, w=w, expected=str(expected), actual=str(actual), rule=rule)
            )
        return ok

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        """
        Serializable view with a fixed key set.

        Args:
            include_timing: Whether to carry elapsed_ms, the only run-dependent field.
        """
        data: Dict[str, Any] = {
            "suite": self.suite,
            "group": self.group,
            "passed": self.passed,
            "checks": self.checks,
            "pairs_checked": self.pairs_checked,
            "failures": [dict(f) for f in self.failures],
            "sign_calibration": self.sign_calibration,
            "notes": list(self.notes),
        }
        if include_timing:
            data["elapsed_ms"] = round(self.elapsed_ms, 3)
        return data

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True)

    def to_text(self, include_timing: bool = False) -> List[str]:
        """Header line followed by one line per failure."""
        status = "PASS" if self.passed else "FAIL"
        header = f"{status} {self.suite} {self.group}: {self.pairs_checked} pairs, {self.checks} checks, {len(self.failures)} failures"
        if self.sign_calibration is not None:
            header += f", sign_calibration={self.sign_calibration}"
        if include_timing:
            header += f", {self.elapsed_ms:.1f} ms"
        lines = [header]
        lines.extend(f"  note: {note}" for note in self.notes)
        lines.extend(
            f"  failure [{f['rule']}] v={f['v']} w={f['w']} expected={f['expected']} actual={f['actual']}"
            for f in self.failures
        )
        return lines
