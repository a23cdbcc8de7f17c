"""Deterministic evaluation grids of exact rationals."""
from dataclasses import dataclass
from fractions import Fraction
import math
import random

from .report import RNG_NAME

DEFAULT_SEED = 20140101
DEN_CAP = 10**6


@dataclass(frozen=True)
class GridSpec:
    """One grid component.

    kind is ``uniform`` (count points, both ends included), ``random``
    (seeded rationals a/b with 1 <= b <= den_cap mapped into [lo, hi]),
    ``logt`` (count log-spaced rationals in (lo, hi]) or ``explicit``.
    """

    kind: str
    lo: Fraction = Fraction(0)
    hi: Fraction = Fraction(1)
    count: int = 0
    seed: int | None = None
    den_cap: int = DEN_CAP
    values: tuple = ()

    def __post_init__(self):
        if self.kind not in ("uniform", "random", "logt", "explicit"):
            raise ValueError(f"unknown grid kind {self.kind!r}")
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.kind != "explicit" and self.lo > self.hi:
            raise ValueError("grid bounds reversed")
        if self.kind == "uniform" and self.count < 2:
            raise ValueError("uniform grid needs at least 2 points")
        if self.kind == "logt" and not self.lo > 0:
            raise ValueError("log-spaced grid needs lo > 0")

    def points(self):
        lo, hi, m = self.lo, self.hi, self.count
        if self.kind == "uniform":
            return [lo + (hi - lo) * Fraction(i, m - 1) for i in range(m)]
        if self.kind == "random":
            rng = random.Random(self.seed if self.seed is not None else DEFAULT_SEED)
            out = []
            for _ in range(m):
                b = rng.randint(1, self.den_cap)
                a = rng.randint(0, b)
                out.append(lo + (hi - lo) * Fraction(a, b))
            return out
        if self.kind == "logt":
            out = []
            ratio = math.log(hi / lo)
            for i in range(1, m + 1):
                v = Fraction(float(lo) * math.exp(ratio * i / m)).limit_denominator(10**4)
                v = min(max(v, lo + Fraction(1, 10**4)), hi) if i < m else hi
                out.append(v)
            return out
        return [Fraction(v) for v in self.values]

    def describe(self):
        if self.kind == "explicit":
            return "explicit:" + ",".join(str(Fraction(v)) for v in self.values)
        s = f"{self.kind}:{self.lo}:{self.hi}:{self.count}"
        if self.kind == "random":
            seed = self.seed if self.seed is not None else DEFAULT_SEED
            s += f":seed={seed}:rng={RNG_NAME}:den<={self.den_cap}"
        return s


def as_specs(grid):
    if isinstance(grid, GridSpec):
        return (grid,)
    return tuple(grid)


def sample(grid):
    """Sorted distinct points of a GridSpec or a sequence of them."""
    pts = set()
    for g in as_specs(grid):
        pts.update(g.points())
    return sorted(pts)


def describe(grid):
    return " + ".join(g.describe() for g in as_specs(grid))


def parse_grid(text, seed=None):
    """Parse ``kind:lo:hi:count[+...]``; random parts accept an optional seed field."""
    parts = []
    for chunk in text.split("+"):
        fields = chunk.strip().split(":")
        kind = fields[0]
        if kind == "explicit":
            if len(fields) != 2:
                raise ValueError(f"bad explicit grid {chunk!r}")
            parts.append(GridSpec("explicit", values=tuple(Fraction(v) for v in fields[1].split(","))))
            continue
        if kind not in ("uniform", "random", "logt") or len(fields) not in (4, 5):
            raise ValueError(f"bad grid spec {chunk!r}")
        lo, hi, count = Fraction(fields[1]), Fraction(fields[2]), int(fields[3])
        s = int(fields[4]) if len(fields) == 5 else seed
        if len(fields) == 5 and kind != "random":
            raise ValueError("only random grids take a seed")
        parts.append(GridSpec(kind, lo, hi, count, seed=s if kind == "random" else None))
    return tuple(parts)


def default_x_grid(seed=None, uniform=257, randoms=100):
    return (GridSpec("uniform", 0, 1, uniform),
            GridSpec("random", 0, 1, randoms, seed=DEFAULT_SEED if seed is None else seed))


def default_t_grid(count=100, hi=1000):
    return (GridSpec("explicit", values=(Fraction(1),)), GridSpec("logt", 1, hi, count))


def induction_t_grid(count=200, hi=100):
    return GridSpec("logt", 1, hi, count)


def fold_half(points):
    """Map points of [0,1] into [0,1/2) via x -> 1-x; drops 1/2 itself."""
    half = Fraction(1, 2)
    out = {x if x < half else 1 - x for x in points if x != half}
    return sorted(out)
