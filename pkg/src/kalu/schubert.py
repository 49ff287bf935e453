"""
Schubert data in a Grassmannian G_k(C^l): validation, essential pairs,
partitions (Ferrer's diagrams) and dimensions.

A datum (k, l, I, J) names the variety of k-planes V with
dim(V n F_{j_a}) >= i_a against a symbolic flag F_{j_1} c ... c F_{j_w}.
Only the dimensions j_a matter, no coordinates are ever built.

Offset vectors p strengthen the incidence conditions to I + p. Positions in
an EssentialPair are 0-based indices into the datum's conditions.

>>> s = SchubertDatum(5, 15, (1, 2, 3, 4), (5, 7, 9, 11))
>>> lambda_of(s, (0, 0, 0, 0))
(6, 5, 4, 3, 0)
>>> essentialize(s, (1, 2, 1, 1)).positions
(1, 3)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

__all__ = [
    "SchubertDatum", "EssentialPair", "Partition", "InvalidDatum",
    "weak_violations", "validate", "check", "check_offset",
    "essentialize", "essential_from_partition", "lambda_of",
    "partition_from_conditions", "generic_incidence", "represent_on_flag",
    "area", "dim_variety", "contains", "render_ferrers", "essential_data",
]

# weakly decreasing k-tuple
Partition = tuple[int, ...]


class InvalidDatum(ValueError):
    """A datum or offset vector fails the weak conditions."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class SchubertDatum:
    k: int
    l: int
    I: tuple[int, ...]
    J: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(int(x) for x in self.I))
        object.__setattr__(self, "J", tuple(int(x) for x in self.J))

    @property
    def omega(self) -> int:
        return len(self.I)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.I)

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "I": list(self.I), "J": list(self.J)}

    @classmethod
    def from_json(cls, d: dict) -> SchubertDatum:
        return cls(int(d["k"]), int(d["l"]), tuple(d["I"]), tuple(d["J"]))

    def key(self) -> str:
        """Canonical serialization, used for cache file names."""
        return (f"k{self.k}_l{self.l}_I{'-'.join(map(str, self.I))}"
                f"_J{'-'.join(map(str, self.J))}")


@dataclass(frozen=True)
class EssentialPair:
    positions: tuple[int, ...]
    I_bar: tuple[int, ...]
    J_bar: tuple[int, ...]
    p_bar: tuple[int, ...]

    @property
    def nu(self) -> int:
        return len(self.positions)

    @property
    def incidence(self) -> tuple[int, ...]:
        """The strengthened conditions I_bar + p_bar."""
        return tuple(i + p for i, p in zip(self.I_bar, self.p_bar))

    @property
    def is_full_grassmannian(self) -> bool:
        return not self.positions


def weak_violations(k: int, l: int, inc: Sequence[int], J: Sequence[int]) -> list[str]:
    """Names of the weak conditions violated by incidences `inc` on flag `J`."""
    out = []
    w = len(inc)
    if len(J) != w:
        return [f"len(I) = {w} != len(J) = {len(J)}"]
    if w == 0:
        return out
    if inc[0] < 0:
        out.append(f"0 <= i_1 fails ({inc[0]})")
    for a in range(w - 1):
        if inc[a] > inc[a + 1]:
            out.append(f"i_{a + 1} <= i_{a + 2} fails ({inc[a]} > {inc[a + 1]})")
        if inc[a + 1] - inc[a] > J[a + 1] - J[a]:
            out.append(f"i_{a + 2} - i_{a + 1} <= j_{a + 2} - j_{a + 1} fails")
    for a in range(w):
        if inc[a] > min(k, J[a]):
            which = "k" if inc[a] > k else f"j_{a + 1}"
            out.append(f"i_{a + 1} <= {which} fails (empty variety)")
    if k > l + inc[-1] - J[-1]:
        out.append(f"k <= l + i_{w} - j_{w} fails")
    return out


def validate(datum: SchubertDatum) -> list[str]:
    """Every violated datum invariant, by name; empty means valid."""
    k, l, I, J = datum.k, datum.l, datum.I, datum.J
    if len(I) != len(J):
        return [f"len(I) = {len(I)} != len(J) = {len(J)}"]
    out = []
    if not I:
        out.append("at least one condition is required")
        return out
    if not 0 <= k <= l:
        out.append(f"0 <= k <= l fails (k={k}, l={l})")
    for a in range(len(J) - 1):
        if J[a] >= J[a + 1]:
            out.append(f"j_{a + 1} < j_{a + 2} fails")
    if J[-1] >= l:
        out.append(f"j_{len(J)} < l fails")
    if J[0] < k:
        out.append(
            f"k <= j_1 fails ({k} > {J[0]}); enlarge the ambient space "
            f"(shift every j by the same amount) to present the same diagram")
    out.extend(weak_violations(k, l, I, J))
    return out


def check(datum: SchubertDatum) -> None:
    v = validate(datum)
    if v:
        raise InvalidDatum(v)


def check_offset(datum: SchubertDatum, p: Sequence[int]) -> None:
    """Raise InvalidDatum unless I + p is a valid (non-empty) presentation."""
    if len(p) != datum.omega:
        raise InvalidDatum([f"vector has length {len(p)}, expected {datum.omega}"])
    bad = [f"p_{a + 1} >= 0 fails" for a, x in enumerate(p) if x < 0]
    bad += weak_violations(datum.k, datum.l, _add(datum.I, p), datum.J)
    if bad:
        raise InvalidDatum(bad)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def essentialize(datum: SchubertDatum, p: Sequence[int]) -> EssentialPair:
    """
    Drop redundant conditions of (J, I + p) until the pair is essential.

    Deletion rules, applied until nothing changes:
      - a condition asking for a 0-dimensional intersection is vacuous;
      - i_a >= i_b with a < b: the later one is implied;
      - i_b - i_a >= j_b - j_a with a < b: the earlier one is implied;
      - j - i >= l - k on the last condition: implied by dim V = k.
    An empty result means the variety is the whole Grassmannian.
    """
    k, l = datum.k, datum.l
    inc = _add(datum.I, p)
    keep = list(range(datum.omega))
    changed = True
    while changed:
        changed = False
        for a in keep:
            if inc[a] <= 0:
                keep.remove(a)
                changed = True
                break
        if changed:
            continue
        for x in range(len(keep)):
            for y in range(x + 1, len(keep)):
                a, b = keep[x], keep[y]
                if inc[a] >= inc[b]:
                    keep.remove(b)
                    changed = True
                elif inc[b] - inc[a] >= datum.J[b] - datum.J[a]:
                    keep.remove(a)
                    changed = True
                if changed:
                    break
            if changed:
                break
        if changed:
            continue
        if keep and datum.J[keep[-1]] - inc[keep[-1]] >= l - k:
            keep.pop()
            changed = True
    pos = tuple(keep)
    return EssentialPair(
        positions=pos,
        I_bar=tuple(datum.I[a] for a in pos),
        J_bar=tuple(datum.J[a] for a in pos),
        p_bar=tuple(p[a] for a in pos),
    )


def partition_from_conditions(k: int, l: int, inc: Sequence[int], J: Sequence[int]) -> Partition:
    """
    Row lengths l - k - j_a + i_a on the row block (i_{a-1}, i_a], zero
    below the last block. Valid for any presentation satisfying the weak
    conditions, essential or not.
    """
    lam = [0] * k
    prev = 0
    for i, j in zip(inc, J):
        for r in range(prev, i):
            lam[r] = l - k - j + i
        prev = max(prev, i)
    return tuple(lam)


def lambda_of(datum: SchubertDatum, p: Sequence[int]) -> Partition:
    """The partition of the variety (J, I + p), read off its essential pair."""
    e = essentialize(datum, p)
    return partition_from_conditions(datum.k, datum.l, e.incidence, e.J_bar)


def essential_from_partition(lam: Partition, k: int, l: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    (incidences, flag dimensions) of the essential pair of the variety with
    partition `lam`: one condition per corner of the diagram.
    """
    inc, J = [], []
    for r in range(k):
        v = lam[r]
        if v == 0:
            break
        if r == k - 1 or lam[r + 1] != v:
            i = r + 1
            inc.append(i)
            J.append(l - k + i - v)
    return tuple(inc), tuple(J)


def generic_incidence(lam: Partition, k: int, l: int, j: int) -> int:
    """dim(V n F_j) for a generic V of the variety with partition `lam`."""
    return sum(1 for r in range(k) if l - k + (r + 1) - lam[r] <= j)


def represent_on_flag(lam: Partition, k: int, l: int, J: Sequence[int]) -> tuple[int, ...]:
    """The unique weak-condition incidences on flag J describing `lam`."""
    return tuple(generic_incidence(lam, k, l, j) for j in J)


def contains(lam_big: Partition, lam_small: Partition) -> bool:
    """Ferrer containment: the diagram `lam_small` sits inside `lam_big`."""
    return all(a >= b for a, b in zip(lam_big, lam_small))


def area(lam: Partition) -> int:
    return sum(lam)


def dim_variety(datum: SchubertDatum, p: Sequence[int]) -> int:
    return datum.k * (datum.l - datum.k) - area(lambda_of(datum, p))


def render_ferrers(lam: Partition, frame: tuple[int, int]) -> str:
    """ASCII drawing of `lam` inside the k x (l - k) rectangle."""
    k, l = frame
    width = l - k
    assert len(lam) == k and all(0 <= x <= width for x in lam), "diagram exceeds frame"
    rule = "+" + "-" * width + "+"
    rows = ["|" + "#" * x + "." * (width - x) + "|" for x in lam]
    return "\n".join([rule, *rows, rule])


def essential_data(max_omega: int, max_l: int, min_l: int = 2) -> Iterator[SchubertDatum]:
    """
    Every datum whose conditions are already essential, with 1 <= omega <=
    max_omega and min_l <= l <= max_l, respecting k <= j_1. Deterministic order.
    """
    for l in range(min_l, max_l + 1):
        for k in range(1, l):
            for w in range(1, max_omega + 1):
                for I in combinations(range(1, k + 1), w):
                    for J in combinations(range(k, l), w):
                        if _is_essential(k, l, I, J):
                            yield SchubertDatum(k, l, I, J)


def _is_essential(k: int, l: int, I: Sequence[int], J: Sequence[int]) -> bool:
    if any(i > j for i, j in zip(I, J)):
        return False
    if any(I[a + 1] - I[a] >= J[a + 1] - J[a] for a in range(len(I) - 1)):
        return False
    return k < l + I[-1] - J[-1]
