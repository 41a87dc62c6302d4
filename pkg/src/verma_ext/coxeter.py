"""Finite Weyl groups in simple-root coordinates.

A group is described by a type string such as ``"B3"`` or ``"A1xA2"``.  Each
factor contributes a block to an integral Cartan matrix ``a`` with the
convention ``a[i][j] = <alpha_j, alpha_i^vee>``, so the simple reflection
``s_i`` acts on simple roots by ``s_i(alpha_j) = alpha_j - a[i][j] alpha_i``.
Group elements are stored as integer matrices whose columns are the images of
the simple roots; equality of matrices is equality in the group because the
reflection representation is faithful.

Lengths are cached on elements: counted as the number of positive roots sent
to negative roots on construction, and updated by +-1 when multiplying by a
simple reflection on the right.

Two Bruhat order routines are provided.  ``bruhat_leq`` is the workhorse, a
memoized recursion on the lifting property.  ``bruhat_leq_oracle`` decides
order by brute subword enumeration of one reduced word and exists to
cross-check the recursion; its cost is ``2**length(y)`` and it refuses to run
past an explicit budget.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    IndexOutOfRange,
    InvalidType,
    ParseError,
    RankOverflow,
)

DEFAULT_BUDGET = 2_000_000
ORACLE_BUDGET = 4096

IntMatrix = tuple[tuple[int, ...], ...]

_FACTOR_RE = re.compile(r"^([A-G])([0-9]+)$")

# Admissible ranks per family; None means unbounded above.  The B/C split at
# rank 2/3 keeps every descriptor a distinct isomorphism class.
_RANK_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

_E_ORDERS = {6: 51_840, 7: 2_903_040, 8: 696_729_600}


@dataclass(frozen=True)
class TypeDescriptor:
    """Parsed form of a type string: an ordered tuple of (family, rank) factors."""

    factors: tuple[tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str) -> "TypeDescriptor":
        """Parse ``"A3"``, ``"b2"``, ``"A1xA2"`` (case-insensitive, 'x' separates factors).

        >>> str(TypeDescriptor.parse("a1Xg2"))
        'A1xG2'
        """
        if not isinstance(text, str) or not text.strip():
            raise InvalidType(f"empty type descriptor: {text!r}")
        factors = []
        for token in text.strip().upper().split("X"):
            m = _FACTOR_RE.match(token)
            if m is None:
                raise InvalidType(f"bad factor {token!r} in type descriptor {text!r}")
            family, rank = m.group(1), int(m.group(2))
            lo, hi = _RANK_BOUNDS[family]
            if rank < lo or (hi is not None and rank > hi):
                raise InvalidType(f"rank {rank} out of range for family {family}")
            factors.append((family, rank))
        return cls(tuple(factors))

    def __str__(self) -> str:
        return "x".join(f"{fam}{rank}" for fam, rank in self.factors)

    @property
    def rank(self) -> int:
        return sum(rank for _, rank in self.factors)

    def group_order(self) -> int:
        order = 1
        for fam, rank in self.factors:
            order *= _factor_order(fam, rank)
        return order


def _factor_order(family: str, rank: int) -> int:
    if family == "A":
        return math.factorial(rank + 1)
    if family in ("B", "C"):
        return 2**rank * math.factorial(rank)
    if family == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if family == "E":
        return _E_ORDERS[rank]
    if family == "F":
        return 1152
    return 12  # G2


def _factor_cartan(family: str, rank: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j] = aij
        a[j][i] = aji

    if family == "A":
        for i in range(rank - 1):
            bond(i, i + 1)
    elif family == "B":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 2, rank - 1, -1, -2)  # last root short
    elif family == "C":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 2, rank - 1, -2, -1)  # last root long
    elif family == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)  # fork at the third-to-last node
    elif family == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, rank - 1):
            bond(i, i + 1)
    elif family == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    else:  # G2
        bond(0, 1, -3, -1)
    return a


def build_cartan(descriptor: TypeDescriptor) -> IntMatrix:
    """Block-diagonal integral Cartan matrix for a (possibly reducible) type."""
    n = descriptor.rank
    a = [[0] * n for _ in range(n)]
    offset = 0
    for family, rank in descriptor.factors:
        block = _factor_cartan(family, rank)
        for i in range(rank):
            for j in range(rank):
                a[offset + i][offset + j] = block[i][j]
        offset += rank
    return tuple(tuple(row) for row in a)


def _positive_roots(cartan: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """All positive roots, as integer coordinate vectors in the simple-root basis.

    Closure of the simple roots under the simple reflections, keeping only
    vectors with nonnegative coordinates.  Sorted by height then
    lexicographically, so the order is reproducible.
    """
    n = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            pairing = sum(cartan[i][j] * beta[j] for j in range(n) if beta[j])
            gamma = tuple(
                beta[j] - pairing if j == i else beta[j] for j in range(n)
            )
            if min(gamma) >= 0 and gamma not in roots:
                roots.add(gamma)
                frontier.append(gamma)
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


class GroupElement:
    """A Weyl group element: an integer matrix plus its cached length.

    Instances are immutable and hashable; equality is matrix equality.
    Construct via the module functions, not directly.
    """

    __slots__ = ("matrix", "length", "_hash")

    def __init__(self, matrix: IntMatrix, length: int):
        self.matrix = matrix
        self.length = length
        self._hash = hash(matrix)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        rows = ";".join(",".join(str(v) for v in row) for row in self.matrix)
        return f"GroupElement(len={self.length}, [{rows}])"


class CoxeterSystem:
    """A finite Weyl group with its Cartan data and per-group caches.

    The caches (Bruhat memo, subword down-sets, element list) are keyed by
    GroupElement and grow monotonically; all derived tables hold a reference
    to their system, so sharing one system between tables shares the caches.
    """

    def __init__(self, descriptor: TypeDescriptor, budget: int = DEFAULT_BUDGET):
        order = descriptor.group_order()
        if order > budget:
            raise RankOverflow(
                f"group of type {descriptor} has order {order}, over budget {budget}"
            )
        self.descriptor = descriptor
        self.budget = budget
        self.cartan = build_cartan(descriptor)
        self.rank = descriptor.rank
        self.group_order = order
        self.positive_roots = _positive_roots(self.cartan)
        n = self.rank
        eye = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        self._identity = GroupElement(eye, 0)
        self._simples = tuple(
            GroupElement(_col_reflect(self.cartan, eye, i), 1) for i in range(n)
        )
        self._bruhat: dict[tuple[GroupElement, GroupElement], bool] = {}
        self._downsets: dict[GroupElement, frozenset[IntMatrix]] = {}
        self._elements: tuple[GroupElement, ...] | None = None
        self._longest: GroupElement | None = None

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.descriptor}, order={self.group_order})"


def build_system(type_text: str | TypeDescriptor, budget: int = DEFAULT_BUDGET) -> CoxeterSystem:
    """Build a CoxeterSystem from a type string, refusing groups over the order budget."""
    descriptor = (
        type_text
        if isinstance(type_text, TypeDescriptor)
        else TypeDescriptor.parse(type_text)
    )
    return CoxeterSystem(descriptor, budget=budget)


def fingerprint(sys: CoxeterSystem) -> str:
    """Stable id for cache files: descriptor plus a digest of the Cartan matrix."""
    blob = json.dumps(sys.cartan).encode()
    return f"{sys.descriptor}-{hashlib.sha256(blob).hexdigest()[:12]}"


# ---------------------------------------------------------------------------
# element arithmetic


def _col_reflect(cartan: IntMatrix, matrix: IntMatrix, i: int) -> IntMatrix:
    # Right multiplication by s_i only rewrites column i:
    # (M s_i)[r][c] = M[r][c] - a[i][c] * M[r][i]
    a_i = cartan[i]
    return tuple(
        tuple(
            row[c] - a_i[c] * row[i] if a_i[c] else row[c]
            for c in range(len(row))
        )
        for row in matrix
    )


def identity(sys: CoxeterSystem) -> GroupElement:
    return sys._identity


def simple_reflection(sys: CoxeterSystem, i: int) -> GroupElement:
    if not 0 <= i < sys.rank:
        raise IndexOutOfRange(f"simple reflection index {i} outside 0..{sys.rank - 1}")
    return sys._simples[i]


def _maps_negative(matrix: IntMatrix, root: tuple[int, ...]) -> bool:
    # Roots map to roots, so the image is all-nonneg or all-nonpos; one
    # negative coordinate decides.
    for r in range(len(matrix)):
        val = sum(matrix[r][c] * root[c] for c in range(len(root)) if root[c])
        if val < 0:
            return True
        if val > 0:
            return False
    return False


def recount_length(sys: CoxeterSystem, matrix: IntMatrix) -> int:
    """Length from scratch: positive roots sent to negative roots."""
    return sum(1 for beta in sys.positive_roots if _maps_negative(matrix, beta))


def length(sys: CoxeterSystem, g: GroupElement) -> int:
    return g.length


def multiply(sys: CoxeterSystem, a: GroupElement, b: GroupElement) -> GroupElement:
    if b.length == 1:
        # fast path: b is a simple reflection exactly when some column differs
        # from the identity in one reflection pattern; cheaper to detect via
        # the simples tuple
        for i, s in enumerate(sys._simples):
            if b is s or b.matrix == s.matrix:
                return right_multiply(sys, a, i)
    n = sys.rank
    am, bm = a.matrix, b.matrix
    prod = tuple(
        tuple(sum(am[r][k] * bm[k][c] for k in range(n)) for c in range(n))
        for r in range(n)
    )
    return GroupElement(prod, recount_length(sys, prod))


def right_multiply(sys: CoxeterSystem, g: GroupElement, i: int) -> GroupElement:
    """g * s_i with the length updated by the descent test, no root recount."""
    if not 0 <= i < sys.rank:
        raise IndexOutOfRange(f"simple reflection index {i} outside 0..{sys.rank - 1}")
    matrix = _col_reflect(sys.cartan, g.matrix, i)
    descent = any(row[i] < 0 for row in g.matrix)
    return GroupElement(matrix, g.length - 1 if descent else g.length + 1)


def right_descents(sys: CoxeterSystem, g: GroupElement) -> frozenset[int]:
    """Indices i with length(g s_i) < length(g), read off the sign of column i."""
    m = g.matrix
    return frozenset(
        i for i in range(sys.rank) if any(m[r][i] < 0 for r in range(sys.rank))
    )


def reduced_word(sys: CoxeterSystem, g: GroupElement) -> tuple[int, ...]:
    """Canonical reduced word: repeatedly strip the smallest right descent."""
    tail: list[int] = []
    h = g
    while h.length > 0:
        i = min(i for i in range(sys.rank) if any(row[i] < 0 for row in h.matrix))
        tail.append(i)
        h = right_multiply(sys, h, i)
    tail.reverse()
    return tuple(tail)


def inverse(sys: CoxeterSystem, g: GroupElement) -> GroupElement:
    # g^{-1} is the product of g's reduced word reversed; stays in integers.
    h = sys._identity
    for i in reversed(reduced_word(sys, g)):
        h = right_multiply(sys, h, i)
    return h


def element_from_word(sys: CoxeterSystem, word: tuple[int, ...]) -> GroupElement:
    """Product of simple reflections; the word need not be reduced."""
    g = sys._identity
    for i in word:
        if not isinstance(i, int) or not 0 <= i < sys.rank:
            raise ParseError(f"word letter {i!r} outside 0..{sys.rank - 1}")
        g = right_multiply(sys, g, i)
    return g


def parse_word(text: str) -> tuple[int, ...]:
    """Parse a comma-separated word like ``"0,1,0"``; ``""`` and ``"e"`` mean identity.

    >>> parse_word("0,1,0")
    (0, 1, 0)
    >>> parse_word("e")
    ()
    """
    text = text.strip()
    if text in ("", "e"):
        return ()
    letters = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece.isdigit():
            raise ParseError(f"bad word letter {piece!r} in {text!r}")
        letters.append(int(piece))
    return tuple(letters)


def format_word(word: tuple[int, ...]) -> str:
    return ",".join(str(i) for i in word) if word else "e"


# ---------------------------------------------------------------------------
# Bruhat order


def bruhat_leq(sys: CoxeterSystem, x: GroupElement, y: GroupElement) -> bool:
    """Decide x <= y in Bruhat order by the lifting recursion, memoized per system.

    For s a right descent of y: if s is also a descent of x then
    x <= y iff xs <= ys, otherwise x <= y iff x <= ys.  Each step strictly
    shortens y, so the memo is keyed on (x, y) pairs with length(x) < length(y).
    """
    if x.length > y.length:
        return False
    if x.length == y.length:
        return x == y
    if x.length == 0:
        return True
    memo = sys._bruhat
    key = (x, y)
    cached = memo.get(key)
    if cached is not None:
        return cached
    ym = y.matrix
    s = min(i for i in range(sys.rank) if any(row[i] < 0 for row in ym))
    ys = right_multiply(sys, y, s)
    if any(row[s] < 0 for row in x.matrix):
        result = bruhat_leq(sys, right_multiply(sys, x, s), ys)
    else:
        result = bruhat_leq(sys, x, ys)
    memo[key] = result
    return result


def bruhat_leq_oracle(
    sys: CoxeterSystem, x: GroupElement, y: GroupElement, budget: int = ORACLE_BUDGET
) -> bool:
    """Decide x <= y by enumerating all subwords of one reduced word of y.

    x <= y iff some subword of any fixed reduced word of y multiplies to x.
    Exponential in length(y); the per-y down-set is cached, and the call
    refuses budgets below 2**length(y).
    """
    k = y.length
    if 2**k > budget:
        raise BudgetExceeded(f"subword oracle needs 2**{k} products, budget is {budget}")
    downset = sys._downsets.get(y)
    if downset is None:
        word = reduced_word(sys, y)
        eye = sys._identity.matrix
        prods: list[IntMatrix] = [eye] * (1 << k)
        for mask in range(1, 1 << k):
            high = mask.bit_length() - 1
            prods[mask] = _col_reflect(
                sys.cartan, prods[mask ^ (1 << high)], word[high]
            )
        downset = frozenset(prods)
        sys._downsets[y] = downset
    return x.matrix in downset


# ---------------------------------------------------------------------------
# whole-group views


def enumerate_elements(sys: CoxeterSystem) -> tuple[GroupElement, ...]:
    """All group elements, sorted by (length, matrix).  Cached on the system."""
    if sys._elements is None:
        seen = {sys._identity.matrix}
        frontier = [sys._identity]
        collected = [sys._identity]
        while frontier:
            nxt = []
            for g in frontier:
                for i in range(sys.rank):
                    h = right_multiply(sys, g, i)
                    if h.length > g.length and h.matrix not in seen:
                        seen.add(h.matrix)
                        nxt.append(h)
            collected.extend(nxt)
            frontier = nxt
        if len(collected) != sys.group_order:
            raise RankOverflow(
                f"enumerated {len(collected)} elements, expected {sys.group_order}"
            )
        sys._elements = tuple(sorted(collected, key=lambda g: (g.length, g.matrix)))
    return sys._elements


def longest_element(sys: CoxeterSystem) -> GroupElement:
    """The longest element, found by greedy ascent from the identity."""
    if sys._longest is None:
        h = sys._identity
        while True:
            descents = right_descents(sys, h)
            ascent = next((i for i in range(sys.rank) if i not in descents), None)
            if ascent is None:
                break
            h = right_multiply(sys, h, ascent)
        if h.length != len(sys.positive_roots):
            raise RankOverflow(
                f"longest element has length {h.length}, expected {len(sys.positive_roots)}"
            )
        sys._longest = h
    return sys._longest


def min_coset_reps(sys: CoxeterSystem, subset: frozenset[int] | set[int]) -> tuple[GroupElement, ...]:
    """Minimal-length representatives of the cosets w W_J, J the given index subset.

    These are exactly the elements with no right descent inside J, in the
    (length, matrix) order of enumerate_elements.
    """
    j = frozenset(subset)
    for i in j:
        if not 0 <= i < sys.rank:
            raise IndexOutOfRange(f"subset index {i} outside 0..{sys.rank - 1}")
    return tuple(
        g for g in enumerate_elements(sys) if not (right_descents(sys, g) & j)
    )


def braid_order(sys: CoxeterSystem, i: int, j: int) -> int:
    """Order of s_i s_j, read from the Cartan matrix product a_ij * a_ji."""
    if i == j:
        return 1
    prod = sys.cartan[i][j] * sys.cartan[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}[prod]
