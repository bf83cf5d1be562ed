"""Singularity classes of branch curves and the profiles built from them.

A branch curve of an almost generic cover has only ``A_m`` singularities,
split into three families by local monodromy:

* ``S2(k)``      -- an ``A_{k,2}`` point, curve type ``A_{2k-1}``, ``k >= 1``
* ``S3_ODD(k)``  -- an ``A_{2k+1,3}`` point, curve type ``A_{6k+2}``, ``k >= 0``
* ``S3_EVEN(k)`` -- an ``A_{2k,3}`` point, curve type ``A_{6k-1}``, ``k >= 1``

A :class:`SingularProfile` records the degree data ``(d, N)`` together with
the number of points of each class.
"""
from __future__ import annotations

import enum
import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType


class IndexOutOfRange(ValueError):
    """Raised when a class index lies outside its family's range."""


class ProfileFormatError(ValueError):
    """Raised when a profile JSON document is malformed."""


class Family(str, enum.Enum):
    S2 = "s2"
    S3_ODD = "s3_odd"
    S3_EVEN = "s3_even"

    @property
    def min_k(self) -> int:
        return 0 if self is Family.S3_ODD else 1


# canonical slot order for all sorted output
FAMILY_ORDER = (Family.S3_ODD, Family.S3_EVEN, Family.S2)


@dataclass(frozen=True, order=True)
class SingularityClass:
    family: Family
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or isinstance(self.k, bool):
            raise IndexOutOfRange(f"class index must be an integer, got {self.k!r}")
        if self.k < self.family.min_k:
            raise IndexOutOfRange(
                f"{self.family.value}(k) requires k >= {self.family.min_k}, got k={self.k}"
            )

    @property
    def curve_index(self) -> int:
        """Index ``m`` of the underlying plane curve singularity ``A_m``."""
        k = self.k
        if self.family is Family.S2:
            return 2 * k - 1
        if self.family is Family.S3_ODD:
            return 6 * k + 2
        return 6 * k - 1

    @property
    def monodromy_index(self) -> int:
        """The ``n`` of the ``A_{n,2}`` / ``A_{n,3}`` label."""
        if self.family is Family.S2:
            return self.k
        if self.family is Family.S3_ODD:
            return 2 * self.k + 1
        return 2 * self.k

    def __str__(self) -> str:
        return f"{self.family.value}({self.k})"


def make_class(family: Family | str, k: int) -> SingularityClass:
    return SingularityClass(Family(family), k)


def delta_invariant(c: SingularityClass) -> int:
    if c.family is Family.S2:
        return c.k
    if c.family is Family.S3_ODD:
        return 3 * c.k + 1
    return 3 * c.k


def virtual_counts(c: SingularityClass) -> tuple[int, int]:
    """Return ``(virtual_cusps, virtual_nodes)`` used by the Plücker class formula."""
    if c.family is Family.S2:
        return 0, c.k
    if c.family is Family.S3_ODD:
        return 1, 3 * c.k
    return 0, 3 * c.k


def _freeze_counts(family: Family, counts: Mapping[int, int] | None) -> Mapping[int, int]:
    clean: dict[int, int] = {}
    for k, cnt in (counts or {}).items():
        k = int(k)
        SingularityClass(family, k)  # range check
        if not isinstance(cnt, int) or isinstance(cnt, bool) or cnt < 0:
            raise ValueError(f"count for {family.value}({k}) must be a nonnegative integer")
        if cnt:
            clean[k] = cnt
    return MappingProxyType(dict(sorted(clean.items())))


@dataclass(frozen=True)
class SingularProfile:
    """Degree data plus class counts of a branch curve of degree ``2d``.

    ``n``, ``m`` and ``t`` are the counts of ``S3_ODD``, ``S3_EVEN`` and
    ``S2`` points keyed by ``k``.  Zero counts are dropped.
    """

    d: int
    N: int
    n: Mapping[int, int] = field(default_factory=dict)
    m: Mapping[int, int] = field(default_factory=dict)
    t: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "n", _freeze_counts(Family.S3_ODD, self.n))
        object.__setattr__(self, "m", _freeze_counts(Family.S3_EVEN, self.m))
        object.__setattr__(self, "t", _freeze_counts(Family.S2, self.t))

    def __hash__(self) -> int:
        return hash((self.d, self.N, self.count_vector()))

    def counts(self, family: Family) -> Mapping[int, int]:
        return {Family.S3_ODD: self.n, Family.S3_EVEN: self.m, Family.S2: self.t}[family]

    def items(self) -> Iterable[tuple[SingularityClass, int]]:
        """Nonzero ``(class, count)`` pairs in canonical order."""
        for fam in FAMILY_ORDER:
            for k, cnt in self.counts(fam).items():
                yield SingularityClass(fam, k), cnt

    @classmethod
    def from_counts(cls, d: int, N: int, counts: Mapping[SingularityClass, int]) -> SingularProfile:
        maps: dict[Family, dict[int, int]] = {f: {} for f in Family}
        for c, cnt in counts.items():
            maps[c.family][c.k] = maps[c.family].get(c.k, 0) + cnt
        return cls(d, N, maps[Family.S3_ODD], maps[Family.S3_EVEN], maps[Family.S2])

    def merge(self, other: SingularProfile) -> SingularProfile:
        """Disjoint union of the singular points of two profiles with equal ``(d, N)``."""
        if (self.d, self.N) != (other.d, other.N):
            raise ValueError("profiles must share (d, N) to be merged")
        counts: dict[SingularityClass, int] = dict(self.items())
        for c, cnt in other.items():
            counts[c] = counts.get(c, 0) + cnt
        return SingularProfile.from_counts(self.d, self.N, counts)

    def total_delta(self) -> int:
        return sum(delta_invariant(c) * cnt for c, cnt in self.items())

    def count_vector(self) -> tuple[tuple[str, int, int], ...]:
        return tuple((c.family.value, c.k, cnt) for c, cnt in self.items())

    @property
    def has_s3(self) -> bool:
        return bool(self.n or self.m)

    @property
    def has_s2(self) -> bool:
        return bool(self.t)

    def to_json(self) -> dict:
        def enc(mp: Mapping[int, int]) -> dict[str, int]:
            return {str(k): v for k, v in mp.items()}

        return {"d": self.d, "N": self.N, "s3_odd": enc(self.n), "s3_even": enc(self.m), "s2": enc(self.t)}

    @classmethod
    def from_json(cls, doc: Mapping) -> SingularProfile:
        if not isinstance(doc, Mapping):
            raise ProfileFormatError("profile must be a JSON object")
        unknown = set(doc) - {"d", "N", "s3_odd", "s3_even", "s2"}
        if unknown:
            raise ProfileFormatError(f"unknown profile keys: {sorted(unknown)}")
        for key in ("d", "N"):
            if not isinstance(doc.get(key), int) or isinstance(doc.get(key), bool):
                raise ProfileFormatError(f"profile field {key!r} must be an integer")

        def dec(key: str) -> dict[int, int]:
            raw = doc.get(key, {})
            if not isinstance(raw, Mapping):
                raise ProfileFormatError(f"{key!r} must be an object")
            try:
                return {int(k): v for k, v in raw.items()}
            except ValueError as exc:
                raise ProfileFormatError(f"{key!r} keys must be integer strings") from exc

        try:
            return cls(doc["d"], doc["N"], dec("s3_odd"), dec("s3_even"), dec("s2"))
        except ValueError as exc:
            if isinstance(exc, ProfileFormatError):
                raise
            raise ProfileFormatError(str(exc)) from exc

    @classmethod
    def load(cls, path: str | Path) -> SingularProfile:
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ProfileFormatError(f"{path}: {exc}") from exc
        return cls.from_json(doc)

    def __str__(self) -> str:
        parts = [f"{c}x{cnt}" for c, cnt in self.items()]
        return f"Profile(d={self.d}, N={self.N}; {', '.join(parts) or 'smooth'})"


@dataclass(frozen=True)
class Aggregates:
    C_pseudo: int
    N_pseudo: int
    S_super: int

    def __add__(self, other: Aggregates) -> Aggregates:
        return Aggregates(
            self.C_pseudo + other.C_pseudo,
            self.N_pseudo + other.N_pseudo,
            self.S_super + other.S_super,
        )


def aggregates(p: SingularProfile) -> Aggregates:
    """Aggregate counts ``(c, n, s)``: pseudo-cusps and pseudo-nodes, plus the superabundance."""
    c = sum((2 * k + 1) * v for k, v in p.n.items()) + sum(2 * k * v for k, v in p.m.items())
    nn = sum(k * v for k, v in p.t.items())
    s = sum(k * v for k, v in p.n.items()) + sum(k * v for k, v in p.m.items())
    return Aggregates(c, nn, s)


S3_NEEDS_N3 = "S3-requires-N>=3"
S2_NEEDS_N4 = "S2-requires-N>=4"
D_POSITIVE = "d-positive"
N_AT_LEAST_2 = "N>=2"


def validate_profile(p: SingularProfile) -> list[str]:
    """Names of the structural invariants ``p`` violates (empty when valid)."""
    out = []
    if p.d < 1:
        out.append(D_POSITIVE)
    if p.N < 2:
        out.append(N_AT_LEAST_2)
    if p.has_s3 and p.N < 3:
        out.append(S3_NEEDS_N3)
    if p.has_s2 and p.N < 4:
        out.append(S2_NEEDS_N4)
    return out
