from __future__ import annotations

import functools
import time
from dataclasses import asdict, dataclass, field

from .algebra import MultiPoly

PASS = "pass"
FAIL = "fail"
CORRECTED = "corrected"


@dataclass
class Verdict:
    check: str
    status: str
    residual_terms: int = 0
    notes: str = ""
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def as_json(self) -> dict:
        d = asdict(self)
        if not d["details"]:
            del d["details"]
        return d


def residual_verdict(check: str, residual: MultiPoly, notes: str = "",
                     corrected: bool = False, **details) -> Verdict:
    """Verdict for an identity ``residual == 0``."""
    n = len(residual)
    if n:
        status = FAIL
    else:
        status = CORRECTED if corrected else PASS
    return Verdict(check, status, n, notes, details=details)


def stamped(fn):
    """Decorator filling ``elapsed_ms`` of the returned Verdict."""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        v = fn(*args, **kwargs)
        v.elapsed_ms = int((time.perf_counter() - t0) * 1000)
        return v
    return wrapper
