"""Validation reports: named checks with pass/fail status and witnesses."""


class Violation:
    def __init__(self, check, witness=None, detail=""):
        self.check = check
        self.witness = witness
        self.detail = detail

    def __repr__(self):
        return "Violation({!r}, witness={!r})".format(self.check, self.witness)

    def to_dict(self):
        return {"check": self.check, "witness": self.witness, "detail": self.detail}


class ValidationReport:
    """A collection of violations; empty means everything passed.

    Validation is total: all violations are collected, never just the first.
    """

    def __init__(self):
        self.violations = []
        self.checks_run = 0

    def record(self, check, ok, witness=None, detail=""):
        self.checks_run += 1
        if not ok:
            self.violations.append(Violation(check, witness, detail))

    def add(self, check, witness=None, detail=""):
        self.checks_run += 1
        self.violations.append(Violation(check, witness, detail))

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "ValidationReport(ok={}, violations={})".format(self.ok, self.violations)

    def to_dict(self):
        return {
            "ok": self.ok,
            "checks_run": self.checks_run,
            "violations": [v.to_dict() for v in self.violations],
        }


class StructuralError(ValueError):
    """Malformed input tables (ids out of range, missing entries)."""


class CompositionError(ValueError):
    """Attempted multiplication of a non-composable pair."""


class EnumerationBound(RuntimeError):
    """A brute-force enumeration would exceed the requested cap."""
