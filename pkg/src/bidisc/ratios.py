"""The named critical radii at which the packing landscape changes.

Each entry pairs a small-to-large radius ratio with its integer minimal
polynomial (ascending coefficients) and a 10-digit decimal reference used to
pick the right root when the polynomial has several in (0, 1).  The certified
value itself always comes from Sturm isolation plus exact bisection, never
from the reference literal.
"""

from functools import lru_cache

from .intervals import Interval
from .polynomials import Polynomial, isolate_roots, refine_root

# name -> (ascending integer coefficients, 10-digit reference)
RATIO_TABLE: dict[str, tuple[tuple[int, ...], float]] = {
    "r1": ((9, -8, -10, 0, 1), 0.6375559772),
    "ra": ((1, 4, -2, -12, 1), 0.6199144044),
    "r2": ((9, -120, 388, -24, -482, -232, -44, -8, 1), 0.5451510421),
    "r3": ((-1, -2, 3, 8), 0.5332964167),
    "r4": ((-1, 2, 1), 0.4142135624),
    "r5": ((9, -12, -26, -12, 9), 0.3861061049),
    "rb": ((1, -1, -5, 1), 0.3691023862),
    "r6": ((1, 4, -10, -28, 1), 0.3491981862),
    "r7": ((-1, 3, 2), 0.2807764064),
    "rc": ((1, -4, -2, -4, 1), 0.2168453354),
    "r8": ((-1, 6, 3), 0.1547005384),
    "r9": ((1, -10, 1), 0.1010205144),
}


def ratio_polynomial(name: str) -> Polynomial:
    coeffs, _ = RATIO_TABLE[name]
    return Polynomial(coeffs)


@lru_cache(maxsize=None)
def ratio_interval(name: str, tol: float = 1e-12) -> Interval:
    """Certified enclosure of the named ratio, width <= tol.

    The table entry's decimal reference only disambiguates between multiple
    roots in (0, 1); the returned interval is certified by the bracket.
    """
    coeffs, ref = RATIO_TABLE[name]
    p = Polynomial(coeffs)
    brackets = isolate_roots(p, Interval(0.0, 1.0))
    if not brackets:
        raise ValueError(f"no root of {name} polynomial in (0, 1)")
    best = min(brackets, key=lambda b: abs(b.interval.mid - ref))
    out = refine_root(best, tol)
    if abs(out.mid - ref) > 1e-8:
        raise ValueError(f"certified root for {name} disagrees with its reference digits")
    return out


def ratio(name: str) -> float:
    return ratio_interval(name).mid
