"""The two-branch descent recursion for the subspaces V(x, y).

For y <= x in Bruhat order, V(x, y) is a subspace of the reflection
representation, defined by V(x, x) = 0 and, for a right descent s of x with
x' = xs:

    V(x, y) = s . V(x', ys)                 if ys < y
    V(x, y) = K v_s  +  s . V(x', y)        if ys > y

where v_s is the simple-root vector of s.  The lifting property of the
Bruhat order guarantees ys <= x' in the first branch and y <= x' in the
second; both are checked at runtime and a failure raises LiftingViolation
because it means the recursion itself is broken.

The recursion is policy-bound: which descent s gets stripped is a free
choice, and the computed subspace must not depend on it.  The default picks
the smallest index; tables built with "largest" exist to check exactly that
independence.

``singular_v`` passes to the quotient by the span of a chosen set of simple
root vectors, and ``membership_report`` tabulates whether v_s lies in
V(x, y) against the order relation x >= ys that predicts membership for
pairs inside a rank-two parabolic pattern.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .coxeter import (
    CoxeterSystem,
    GroupElement,
    bruhat_leq,
    enumerate_elements,
    format_word,
    longest_element,
    multiply,
    reduced_word,
    right_multiply,
)
from .errors import (
    IndexOutOfRange,
    InvalidType,
    LiftingViolation,
    NotComparable,
    ParseError,
)
from .reflection import (
    RationalSubspace,
    act,
    add_line,
    basis_vector,
    sum_subspaces,
    vector,
    zero_subspace,
)


@dataclass(frozen=True)
class SingularSpec:
    """A set of simple-reflection indices whose root vectors get quotiented out."""

    indices: frozenset[int]

    @classmethod
    def parse(cls, text: str) -> "SingularSpec":
        text = text.strip()
        if not text:
            return cls(frozenset())
        try:
            return cls(frozenset(int(p) for p in text.split(",") if p.strip() != ""))
        except ValueError as exc:
            raise ParseError(f"bad singular subset {text!r}: {exc}") from exc

    def validate(self, sys: CoxeterSystem) -> None:
        for i in self.indices:
            if not 0 <= i < sys.rank:
                raise IndexOutOfRange(f"singular index {i} outside 0..{sys.rank - 1}")

    def __str__(self) -> str:
        return ",".join(str(i) for i in sorted(self.indices))


class VTable:
    """Memoized V(x, y) values for one system under one descent policy.

    ``vs_scale`` rescales the vector added in the ascent branch; any nonzero
    scale spans the same line, so the stored subspaces are scale-independent.
    That knob exists so tests can prove it.
    """

    def __init__(self, sys: CoxeterSystem, policy: str = "smallest", vs_scale: int = 1):
        if policy not in ("smallest", "largest"):
            raise InvalidType(f"unknown descent policy {policy!r}")
        if vs_scale == 0:
            raise InvalidType("vs_scale must be nonzero")
        self.sys = sys
        self.policy = policy
        self.vs_scale = vs_scale
        self.entries: dict[tuple[GroupElement, GroupElement], RationalSubspace] = {}
        self.computed = 0
        self._lock = threading.Lock()
        self._zero = zero_subspace(sys)

    def v(self, x: GroupElement, y: GroupElement) -> RationalSubspace:
        if not bruhat_leq(self.sys, y, x):
            raise NotComparable(
                f"{format_word(reduced_word(self.sys, y))} is not below "
                f"{format_word(reduced_word(self.sys, x))}"
            )
        return self._v(x, y)

    def _v(self, x: GroupElement, y: GroupElement) -> RationalSubspace:
        key = (x, y)
        hit = self.entries.get(key)
        if hit is not None:
            return hit
        sys = self.sys
        if x == y:
            value = self._zero
            with self._lock:
                if key not in self.entries:
                    self.entries[key] = value
                    self.computed += 1
            return value
        descents = [i for i in range(sys.rank) if any(row[i] < 0 for row in x.matrix)]
        s = descents[0] if self.policy == "smallest" else descents[-1]
        xp = right_multiply(sys, x, s)
        ys = right_multiply(sys, y, s)
        if ys.length < y.length:
            if not bruhat_leq(sys, ys, xp):
                raise LiftingViolation(
                    f"descent branch produced ys > x' at x={format_word(reduced_word(sys, x))}"
                )
            value = act(sys, sys._simples[s], self._v(xp, ys))
        else:
            if not bruhat_leq(sys, y, xp):
                raise LiftingViolation(
                    f"ascent branch produced y > x' at x={format_word(reduced_word(sys, x))}"
                )
            moved = act(sys, sys._simples[s], self._v(xp, y))
            line = vector(
                self.vs_scale if j == s else 0 for j in range(sys.rank)
            )
            value = add_line(moved, line)
        with self._lock:
            if key not in self.entries:
                self.entries[key] = value
                self.computed += 1
        return value

    def pairs(self) -> list[tuple[GroupElement, GroupElement]]:
        """Stored pairs in (length x, matrix x, length y, matrix y) order."""
        return sorted(
            self.entries,
            key=lambda k: (k[0].length, k[0].matrix, k[1].length, k[1].matrix),
        )


def compute_v(
    sys: CoxeterSystem,
    x: GroupElement,
    y: GroupElement,
    policy: str = "smallest",
    vs_scale: int = 1,
) -> RationalSubspace:
    """One subspace V(x, y) with a throwaway table."""
    return VTable(sys, policy=policy, vs_scale=vs_scale).v(x, y)


def compute_all(
    sys: CoxeterSystem, policy: str = "smallest", jobs: int = 1, vs_scale: int = 1
) -> VTable:
    """Fill a table with V(x, y) for every comparable pair y <= x.

    Work is stratified by length(x): every recursion step lands in a strictly
    lower stratum, so strata can be dispatched to worker threads in order
    with all dependencies already cached.  jobs <= 1 runs sequentially.
    """
    table = VTable(sys, policy=policy, vs_scale=vs_scale)
    elements = enumerate_elements(sys)
    by_length: dict[int, list[GroupElement]] = {}
    for g in elements:
        by_length.setdefault(g.length, []).append(g)
    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for ell in sorted(by_length):
            stratum = [
                (x, y)
                for x in by_length[ell]
                for y in elements
                if y.length <= ell and bruhat_leq(sys, y, x)
            ]
            if pool is None:
                for x, y in stratum:
                    table._v(x, y)
            else:
                list(pool.map(lambda pair: table._v(*pair), stratum))
    finally:
        if pool is not None:
            pool.shutdown()
    return table


def singular_v(
    sys: CoxeterSystem,
    table: VTable,
    spec: SingularSpec,
    x: GroupElement,
    y: GroupElement,
) -> RationalSubspace:
    """Image of V(x, y) in the quotient by span{v_s : s in spec}.

    Computed as the echelon form of V(x, y) + span{v_s}; the rows pivoting
    at quotiented columns are exactly the v_s themselves, so dropping them
    and deleting those columns leaves an echelon basis of the image.  The
    ambient dimension of the result is rank - |spec|.
    """
    spec.validate(sys)
    space = table.v(x, y)
    if not spec.indices:
        return space
    killed = sorted(spec.indices)
    combined = space
    for i in killed:
        combined = add_line(combined, basis_vector(sys, i))
    keep_cols = [j for j in range(sys.rank) if j not in spec.indices]
    projected = []
    for row in combined.rows:
        pivot = next(j for j in range(sys.rank) if row[j] != 0)
        if pivot in spec.indices:
            continue
        projected.append(tuple(row[j] for j in keep_cols))
    return RationalSubspace(len(keep_cols), projected)


@dataclass(frozen=True)
class MembershipRow:
    """One line of the membership report: does v_s land in V(x, y)?

    ``x_ge_ys`` is the order-theoretic prediction x >= ys.  ``flagged`` marks
    the rows where the prediction is asserted to be exact: s is an ascent of
    both x and y, and both elements lie in a common coset w0 W' for a
    rank-two (or smaller) parabolic W' containing s.
    """

    x: GroupElement
    y: GroupElement
    s: int
    in_v: bool
    x_ge_ys: bool
    flagged: bool


def membership_report(sys: CoxeterSystem, table: VTable) -> list[MembershipRow]:
    """Membership rows for every stored pair and every simple reflection."""
    w0 = longest_element(sys)
    support: dict[GroupElement, frozenset[int]] = {}

    def coset_letters(g: GroupElement) -> frozenset[int]:
        got = support.get(g)
        if got is None:
            got = frozenset(reduced_word(sys, multiply(sys, w0, g)))
            support[g] = got
        return got

    rows = []
    for x, y in table.pairs():
        space = table.entries[(x, y)]
        for s in range(sys.rank):
            ys = right_multiply(sys, y, s)
            xs = right_multiply(sys, x, s)
            in_v = space.contains(basis_vector(sys, s))
            x_ge_ys = bruhat_leq(sys, ys, x)
            flagged = False
            if xs.length > x.length and ys.length > y.length and sys.rank >= 2:
                extra = (coset_letters(x) | coset_letters(y)) - {s}
                flagged = len(extra) <= 1
            rows.append(MembershipRow(x, y, s, in_v, x_ge_ys, flagged))
    return rows
