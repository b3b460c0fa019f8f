"""Moore-bound arithmetic and the defect-2 feasibility engine.

Everything here is exact integer / rational arithmetic.  The feasibility
engine collects every non-existence result whose hypotheses hold for a
``(d, D)`` pair and reports which results fired, so a verdict can always be
traced back to the theorem that produced it.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


class DomainError(ValueError):
    pass


class DomainWarning(UserWarning):
    pass


def _check_params(delta: int, diam: int) -> None:
    if delta < 2 or diam < 1:
        raise DomainError(f"need delta >= 2 and diam >= 1, got ({delta}, {diam})")


def _geometric(base: int, terms: int) -> int:
    """1 + base + ... + base**(terms-1)."""
    return sum(base**i for i in range(terms))


def moore_bound(delta: int, diam: int) -> int:
    _check_params(delta, diam)
    return 1 + delta * _geometric(delta - 1, diam)


def order(delta: int, diam: int, defect: int) -> int:
    """Order ``M(delta, diam) - defect`` of a (delta, diam, -defect)-graph."""
    if defect < 0:
        raise DomainError("defect must be non-negative")
    n = moore_bound(delta, diam) - defect
    if n < 1:
        raise DomainError(f"defect {defect} leaves no vertices (M={n + defect})")
    return n


def regularity_threshold(delta: int, diam: int) -> int:
    """Every (delta, diam, -eps)-graph with eps below this value is regular."""
    if delta < 3 or diam < 2:
        raise DomainError(f"regularity threshold needs delta >= 3, diam >= 2, got ({delta}, {diam})")
    return _geometric(delta - 1, diam)


def forces_regular(delta: int, diam: int, defect: int) -> bool:
    return delta >= 3 and diam >= 2 and defect < regularity_threshold(delta, diam)


def reduced_order(d: int, diam: int) -> int:
    """``d(1 + (d-1) + ... + (d-1)^(D-1)) - 1``, i.e. the order of a defect-2 graph plus one."""
    return d * _geometric(d - 1, diam) - 1


def n2d_count(d: int, diam: int) -> Fraction:
    """Number of 2D-cycles forced in a (d, D, -2)-graph with d, D >= 4."""
    _check_params(d, diam)
    if d < 4 or diam < 4:
        warnings.warn(
            f"2D-cycle count formula is stated for d >= 4, D >= 4; got ({d}, {diam})",
            DomainWarning,
            stacklevel=2,
        )
    return Fraction(reduced_order(d, diam), diam)


def n2d1_count_deg4(diam: int) -> Fraction:
    """Number of (2D+1)-cycles forced in a (4, D, -2)-graph with D >= 3."""
    if diam < 3:
        raise DomainError(f"(2D+1)-cycle count needs D >= 3, got {diam}")
    t = 2 * 3**diam
    return Fraction(t * (t - 3), 2 * diam + 1)


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- feasibility ------------------------------------------------------------


class Reason(enum.Enum):
    """Non-existence results for defect 2, each tagged with what it states."""

    DIAMETER_ONE = "no graph of defect 2 has diameter 1"
    DEGREE_TWO = "no graph of maximum degree 2 has defect 2 beyond the path of length 2"
    CUBIC_CATALOGUE = "the cubic graphs of defect 2 are exactly two (3,2,-2)-graphs and one (3,3,-2)-graph"
    EVEN_DEGREE = "no (d,D,-2)-graphs with even d >= 4 and D >= 4"
    EVEN_DIAMETER_ODD_DEGREE = "when D >= 4 is even, d must be odd"
    ODD_PRIME_POWER = "when D >= 4 is a power of an odd prime, D divides d-1"
    POWER_OF_TWO = "when D >= 4 is a power of 2, D/2 divides d-1"
    ORDER_RESIDUE = "odd d >= 5, D >= 4 needs d(1+(d-1)+...+(d-1)^(D-1))-1 = 0 (mod D)"
    RESIDUE_ZERO_TWO = "no (d,D,-2)-graphs with odd d >= 5, D >= 5 and d = 0,2 (mod D)"
    FOUR_THREE = "there is no (4,3,-2)-graph"

    @property
    def code(self) -> str:
        return self.name.lower()

    @property
    def anchor(self) -> str:
        return self.value


class Status(enum.Enum):
    RULED_OUT = "RuledOut"
    OPEN = "Open"
    KNOWN_EXISTS = "KnownExists"


# (d, D) -> number of non-isomorphic (d, D, -2)-graphs known to exist.
KNOWN_DEFECT2 = {
    (2, 2): 1,
    (3, 2): 2,
    (3, 3): 1,
    (4, 2): 1,
    (5, 2): 1,
}

# D = 2 degrees for which a Moore graph exists or is still possible.
_MOORE_D2 = {3, 7, 57}


@dataclass
class FeasibilityVerdict:
    delta: int
    diam: int
    status: Status
    reasons: list[Reason] = field(default_factory=list)
    upper_bound_defect: int = 0
    conjectures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status is Status.RULED_OUT and not self.reasons:
            raise ValueError("a RuledOut verdict needs at least one reason")

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "diam": self.diam,
            "status": self.status.value,
            "reasons": [{"code": r.code, "anchor": r.anchor} for r in self.reasons],
            "upper_bound_defect": self.upper_bound_defect,
            "conjectures": list(self.conjectures),
            "notes": list(self.notes),
        }


def is_power_of_two(m: int) -> bool:
    return m >= 1 and m & (m - 1) == 0


def odd_prime_power_base(m: int) -> int | None:
    """The odd prime p with m = p^k (k >= 1), or None."""
    if m < 3 or m % 2 == 0:
        return None
    p = 3
    while p * p <= m:
        if m % p == 0:
            break
        p += 2
    else:
        p = m
    while m % p == 0:
        m //= p
    return p if m == 1 else None


def _ruling_reasons(d: int, diam: int) -> list[Reason]:
    reasons = []
    if diam == 1:
        reasons.append(Reason.DIAMETER_ONE)
    if d == 2 and diam != 2:
        reasons.append(Reason.DEGREE_TWO)
    if d == 3 and diam >= 4:
        reasons.append(Reason.CUBIC_CATALOGUE)
    if d == 4 and diam == 3:
        reasons.append(Reason.FOUR_THREE)
    if d >= 4 and diam >= 4:
        if d % 2 == 0:
            reasons.append(Reason.EVEN_DEGREE)
            if diam % 2 == 0:
                reasons.append(Reason.EVEN_DIAMETER_ODD_DEGREE)
        if odd_prime_power_base(diam) is not None and (d - 1) % diam:
            reasons.append(Reason.ODD_PRIME_POWER)
        if is_power_of_two(diam) and (d - 1) % (diam // 2):
            reasons.append(Reason.POWER_OF_TWO)
        if d % 2 == 1 and d >= 5:
            if reduced_order(d, diam) % diam:
                reasons.append(Reason.ORDER_RESIDUE)
            if diam >= 5 and d % diam in (0, 2):
                reasons.append(Reason.RESIDUE_ZERO_TWO)
    return reasons


def _moore_graph_possible(delta: int, diam: int) -> bool:
    return delta == 2 or diam == 1 or (diam == 2 and delta in _MOORE_D2)


def feasibility(d: int, diam: int) -> FeasibilityVerdict:
    """Existence verdict for (d, diam, -2)-graphs."""
    _check_params(d, diam)
    reasons = _ruling_reasons(d, diam)
    notes: list[str] = []
    conjectures: list[str] = []

    if (d, diam) in KNOWN_DEFECT2:
        if reasons:
            raise AssertionError(f"catalogue pair {(d, diam)} ruled out by {reasons}")
        status = Status.KNOWN_EXISTS
        if d == 2:
            notes.append(
                "degree 2 is otherwise excluded from defect 2, but the path of length 2 "
                "has maximum degree 2, diameter 2 and order M-2 = 3; it is listed as known"
            )
    elif reasons:
        status = Status.RULED_OUT
    else:
        status = Status.OPEN

    if _moore_graph_possible(d, diam):
        bound = 0
    else:
        # Moore graphs and defect-1 graphs are excluded here.
        bound = 2
        if status is Status.RULED_OUT:
            bound = 3
            # defect 3 forces regularity, impossible at odd degree and odd order
            if d % 2 == 1 and d >= 5 and diam >= 4:
                bound = 4

    if diam == 2 and d >= 6 and status is Status.OPEN:
        conjectures.append("no (d,2,-2)-graphs exist for d >= 6 (conjectured)")
    if d >= 4 and diam >= 4 and status is Status.OPEN:
        conjectures.append("no (d,D,-2)-graphs exist for d >= 4 and D >= 4 (conjectured)")
        if d % 2 == 1:
            conjectures.append("N(d,D) <= M(d,D) - 4 for odd d >= 5 and D >= 4 (conjectured)")
    if diam == 2 and d == 57:
        notes.append("existence of a Moore graph of degree 57 is undecided")

    return FeasibilityVerdict(
        delta=d,
        diam=diam,
        status=status,
        reasons=reasons,
        upper_bound_defect=bound,
        conjectures=conjectures,
        notes=notes,
    )


# -- residue table ----------------------------------------------------------


def residue_modulus(diam: int) -> int:
    return diam * 2 // gcd(diam, 2)


def _order_residue_ok(r: int, diam: int) -> bool:
    """Whether d = r (mod D) keeps the order congruence satisfiable."""
    s = sum(pow(r - 1, i, diam) for i in range(diam)) % diam
    return (r * s - 1) % diam == 0


def residue_table(diam: int) -> list[int]:
    """Odd residues r mod lcm(2, D) for which some odd d >= 5, d = r survives."""
    if diam < 4:
        raise DomainError(f"residue table needs D >= 4, got {diam}")
    mod = residue_modulus(diam)
    p = odd_prime_power_base(diam)
    out = []
    for r in range(1, mod, 2):
        if not _order_residue_ok(r % diam, diam):
            continue
        if diam >= 5 and r % diam in (0, 2):
            continue
        if p is not None and (r - 1) % diam:
            continue
        if is_power_of_two(diam) and (r - 1) % (diam // 2):
            continue
        out.append(r)
    return out


def residue_rows(diam_min: int, diam_max: int) -> list[dict]:
    """Rows ``{"diam", "modulus", "residues"}`` for the printed table."""
    return [
        {"diam": D, "modulus": residue_modulus(D), "residues": residue_table(D)}
        for D in range(diam_min, diam_max + 1)
    ]


def format_row(row: dict) -> str:
    res = ",".join(str(r) for r in row["residues"]) or "none"
    return f"d≡{res} (mod {row['modulus']})"
