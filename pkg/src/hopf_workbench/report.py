"""Check reports: named pass/fail entries with failure witnesses.

Every verifier in the package returns a Report so that callers (tests, the
command line driver) can render results uniformly and deterministically.
"""

from __future__ import annotations


class CheckResult:
    __slots__ = ("name", "passed", "witness")

    def __init__(self, name, passed, witness=None):
        self.name = name
        self.passed = bool(passed)
        self.witness = witness

    def to_dict(self):
        d = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            d["witness"] = self.witness
        return d

    def __repr__(self):
        tag = "ok" if self.passed else "FAIL"
        w = f" [{self.witness}]" if self.witness is not None else ""
        return f"<{self.name}: {tag}{w}>"


class Report:
    """Ordered list of named checks.  Insertion order is the render order."""

    def __init__(self, title):
        self.title = title
        self.checks = []

    def add(self, name, passed, witness=None):
        self.checks.append(CheckResult(name, passed, witness))
        return passed

    def merge(self, other, prefix=None):
        for c in other.checks:
            name = f"{prefix}.{c.name}" if prefix else c.name
            self.checks.append(CheckResult(name, c.passed, c.witness))

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def require(self, context=""):
        if not self.ok:
            bad = ", ".join(repr(c) for c in self.failures())
            raise AssertionError(f"{self.title}{' ' + context if context else ''} failed: {bad}")
        return self

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.ok,
            "checks": [c.to_dict() for c in self.checks],
        }

    def __repr__(self):
        n_bad = len(self.failures())
        state = "ok" if n_bad == 0 else f"{n_bad} failing"
        return f"<Report {self.title!r}: {len(self.checks)} checks, {state}>"
