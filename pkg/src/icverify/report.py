"""Check reports and their CSV/JSON serialization."""
from dataclasses import dataclass, field
from fractions import Fraction
import csv
import io
import json
import math

MAX_WITNESSES = 50
RNG_NAME = "MT19937"
CSV_COLUMNS = ("check", "n", "x", "value", "margin", "passed")


@dataclass
class Witness:
    """A violating point: the check asserted lhs <= rhs (or its equivalent)."""

    n: object
    x: object
    lhs: object
    rhs: object
    note: str = ""


@dataclass
class Margin:
    margin: object
    n: object
    x: object
    value: object = None


@dataclass
class CheckReport:
    name: str
    passed: bool
    points_checked: int
    witnesses: list = field(default_factory=list)
    extremal_margin: Margin | None = None
    sampler: str = ""
    violations: int = 0
    links: list = field(default_factory=list)
    note: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "points_checked": self.points_checked,
            "violations": self.violations,
            "witnesses": [
                {"n": enc(w.n), "x": enc(w.x), "lhs": enc(w.lhs), "rhs": enc(w.rhs), "note": w.note}
                for w in self.witnesses
            ],
            "extremal_margin": None if self.extremal_margin is None else {
                "margin": enc(self.extremal_margin.margin),
                "n": enc(self.extremal_margin.n),
                "x": enc(self.extremal_margin.x),
                "value": enc(self.extremal_margin.value),
            },
            "sampler": self.sampler,
            "note": self.note,
            "links": [r.to_dict() for r in self.links],
        }

    @classmethod
    def from_dict(cls, d):
        em = d["extremal_margin"]
        return cls(
            name=d["name"],
            passed=d["passed"],
            points_checked=d["points_checked"],
            violations=d["violations"],
            witnesses=[Witness(dec(w["n"]), dec(w["x"]), dec(w["lhs"]), dec(w["rhs"]), w["note"])
                       for w in d["witnesses"]],
            extremal_margin=None if em is None else Margin(
                dec(em["margin"]), dec(em["n"]), dec(em["x"]), dec(em["value"])),
            sampler=d["sampler"],
            note=d["note"],
            links=[cls.from_dict(r) for r in d["links"]],
        )


def _sort_key(v):
    if v is None:
        return (0, 0)
    if isinstance(v, (int, Fraction)):
        return (1, v)
    if isinstance(v, float):
        return (1, v) if not math.isnan(v) else (2, 0)
    return (3, str(v))


class Tally:
    """Accumulates point verdicts into a deterministic CheckReport.

    Witnesses are sorted by (x, n) and the extremal margin ties are broken
    the same way, so the result is independent of evaluation order.
    """

    def __init__(self, name, sampler="", note=""):
        self.name = name
        self.sampler = sampler
        self.note = note
        self.points = 0
        self.bad = []
        self.best = None
        self.links = []

    def record(self, ok, n, x, lhs, rhs, margin=None, note="", value=None):
        self.points += 1
        if margin is None:
            try:
                margin = rhs - lhs
            except TypeError:
                margin = None
        if not ok:
            self.bad.append(Witness(n, x, lhs, rhs, note))
        if margin is not None:
            key = (_sort_key(margin), _sort_key(x), _sort_key(n))
            if self.best is None or key < self.best[0]:
                self.best = (key, Margin(margin, n, x, lhs if value is None else value))

    def report(self):
        self.bad.sort(key=lambda w: (_sort_key(w.x), _sort_key(w.n)))
        passed = not self.bad
        return CheckReport(
            name=self.name,
            passed=passed,
            points_checked=self.points,
            witnesses=self.bad[:MAX_WITNESSES],
            extremal_margin=None if self.best is None else self.best[1],
            sampler=self.sampler,
            violations=len(self.bad),
            links=list(self.links),
            note=self.note,
        )


def merge_reports(name, reports, note=""):
    """Concatenate several reports of the same kind into one."""
    t = Tally(name, sampler=" | ".join(sorted({r.sampler for r in reports})),
              note=note or (reports[0].note if reports else ""))
    for r in reports:
        t.points += r.points_checked
        t.bad.extend(r.witnesses)
        em = r.extremal_margin
        if em is not None:
            key = (_sort_key(em.margin), _sort_key(em.x), _sort_key(em.n))
            if t.best is None or key < t.best[0]:
                t.best = (key, em)
    rep = t.report()
    rep.violations = sum(r.violations for r in reports)
    return rep


def enc(v):
    """Serialize a value: rationals as 'p/q', floats as shortest decimals."""
    if v is None or isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        if math.isfinite(v):
            return v
        return repr(v)
    return str(v)


def dec(v):
    if isinstance(v, str):
        if v in ("inf", "-inf", "nan"):
            return float(v)
        try:
            return Fraction(v)
        except ValueError:
            return v
    return v


def fmt_value(v):
    v = enc(v)
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv_rows(report, prefix=""):
    name = prefix + report.name
    em = report.extremal_margin
    if em is None:
        yield (name, "", "", "", "", str(report.passed).lower())
    else:
        yield (name, fmt_value(em.n), fmt_value(em.x), fmt_value(em.value),
               fmt_value(em.margin), str(report.passed).lower())
    for w in report.witnesses:
        try:
            margin = w.rhs - w.lhs
        except TypeError:
            margin = None
        yield (name, fmt_value(w.n), fmt_value(w.x), fmt_value(w.lhs), fmt_value(margin), "false")
    for link in report.links:
        yield from _csv_rows(link, name + "/")


def emit_report(results, fmt="json", suite="check", seed=None, precision=None):
    """Serialize reports to bytes; identical inputs give identical bytes."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in results:
            w.writerows(_csv_rows(r))
        return buf.getvalue().encode()
    if fmt == "json":
        doc = {
            "suite": suite,
            "seed": seed,
            "rng": RNG_NAME,
            "precision": precision,
            "passed": all(r.passed for r in results),
            "checks": [r.to_dict() for r in results],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data):
    """Inverse of the JSON branch of ``emit_report``."""
    doc = json.loads(data)
    return doc, [CheckReport.from_dict(c) for c in doc["checks"]]
