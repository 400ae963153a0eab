"""Outcome records for identity checks."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

PASS = "PASS"
FAIL = "FAIL"


@dataclass
class CheckReport:
    id: str
    status: str
    witness: dict | None = None
    elapsed_ms: float = 0.0
    note: str | None = None
    details: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in (PASS, FAIL):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError(f"FAIL report {self.id} needs a witness")

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.ok

    def to_json_obj(self, stable: bool = False) -> dict:
        obj: dict[str, Any] = {"id": self.id, "status": self.status}
        if not stable:
            obj["elapsed_ms"] = round(self.elapsed_ms, 3)
        if self.witness is not None:
            obj["witness"] = jsonable(self.witness)
        if self.note:
            obj["note"] = self.note
        return obj

    def line(self, stable: bool = False) -> str:
        s = f"{self.status} {self.id}"
        if not stable:
            s += f" ({self.elapsed_ms:.1f} ms)"
        if self.note:
            s += f"  [{self.note}]"
        if self.witness is not None and self.status == FAIL:
            s += "  witness: " + ", ".join(f"{k}={_short(v)}" for k, v in jsonable(self.witness).items())
        return s


@dataclass
class Verdict:
    """What a check body returns: a witness on failure, optionally a note."""

    witness: dict | None = None
    note: str | None = None


def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x if x == x and abs(x) != float("inf") else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "render"):
        return x.render()
    return str(x)


def _short(v, limit: int = 160) -> str:
    s = v if isinstance(v, str) else str(v)
    return s if len(s) <= limit else s[: limit - 3] + "..."


def run_check(check_id: str, body: Callable[[], "dict | Verdict | None"]) -> CheckReport:
    """Time ``body``; a returned witness (or raised exception) means FAIL."""
    t0 = time.perf_counter()
    try:
        out = body()
    except Exception as exc:  # a crash inside a check is a failed check, not a crash of the run
        out = {"exception": f"{type(exc).__name__}: {exc}"}
    elapsed = (time.perf_counter() - t0) * 1000.0
    if isinstance(out, Verdict):
        witness, note = out.witness, out.note
    else:
        witness, note = out, None
    status = FAIL if witness else PASS
    return CheckReport(check_id, status, witness, elapsed, note)


def first_difference(lhs, rhs) -> dict | None:
    """Witness for two unequal polynomials (or series): the first differing term."""
    from .poly import MultiPoly, TruncatedSeries

    def body(x):
        return x.body if isinstance(x, TruncatedSeries) else x

    if lhs == rhs:
        return None
    bl, br = body(lhs), body(rhs)
    if isinstance(bl, MultiPoly) and isinstance(br, MultiPoly):
        cap = None
        if isinstance(lhs, TruncatedSeries) or isinstance(rhs, TruncatedSeries):
            cap = min(x.cap for x in (lhs, rhs) if isinstance(x, TruncatedSeries))
        diff = bl - br
        if cap is not None:
            diff = diff.truncate(cap)
        m, c = diff.sorted_terms()[0]
        mono = MultiPoly._raw(diff.vt, {m: 1})
        return {"monomial": mono.render(), "lhs": bl.terms.get(m, 0), "rhs": br.terms.get(m, 0)}
    return {"lhs": lhs, "rhs": rhs}


def rel_err(x: float, y: float) -> float:
    scale = max(abs(x), abs(y), 1e-300)
    return abs(x - y) / scale
