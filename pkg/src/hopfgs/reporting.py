"""Pass/fail reports shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int = 0
    witnesses: list[str] = field(default_factory=list)
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.witnesses:
            out["witnesses"] = list(self.witnesses)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    title: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name: str, failures: list, checked: int, detail: str = "", limit: int = 5) -> CheckResult:
        """Record a check from its list of failure witnesses."""
        res = CheckResult(name, not failures, checked, [str(f) for f in failures[:limit]], detail)
        self.results.append(res)
        return res

    def extend(self, other: "Report", prefix: str = "") -> None:
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.passed, r.checked, r.witnesses, r.detail))

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [r.to_json() for r in self.results],
        }

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            mark = "PASS" if r.passed else "FAIL"
            line = f"[{mark}] {r.name} ({r.checked} checked)"
            if r.detail:
                line += f": {r.detail}"
            out.append(line)
            for w in r.witnesses:
                out.append(f"       witness: {w}")
        return out
