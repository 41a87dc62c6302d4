"""R-polynomials and the first-order coefficient they carry.

``r_polynomial(sys, y, x)`` computes the classical recursion on the upper
element: for a right descent s of x,

    R(y, x) = R(ys, xs)                       if ys < y
    R(y, x) = (q-1) R(y, xs) + q R(ys, xs)    if ys > y

with R(x, x) = 1 and R(y, x) = 0 unless y <= x.  For comparable pairs the
polynomial has degree length(x) - length(y), leading coefficient 1, constant
term (-1)**(length(x) - length(y)), and vanishes at q = 1 when y < x.

``gj_coefficient`` extracts the q^1 coefficient with the sign that makes it
a dimension count, and ``r_coeff_direct`` recomputes that number by an
independent first-order recursion that never builds polynomials.  The two
must agree; the verification suites check that they do.
"""

from __future__ import annotations

import threading
from pathlib import Path

from .coxeter import (
    CoxeterSystem,
    GroupElement,
    bruhat_leq,
    element_from_word,
    fingerprint,
    format_word,
    parse_word,
    reduced_word,
    right_descents,
    right_multiply,
)
from .errors import InvalidType, InvariantViolation, IoError, LiftingViolation, NotComparable, ParseError


class IntPolynomial:
    """Integer polynomial in q, coefficients stored ascending and trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = tuple(int(c) for c in coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        self.coeffs = coeffs

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def eval_at(self, value: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * value + c
        return total

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(
            tuple(a[i] + b[i] for i in range(len(b))) + a[len(b):]
        )

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        """Render like ``q^3-2q^2+2q-1``; the zero polynomial prints as ``0``."""
        if not self.coeffs:
            return "0"
        pieces = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if pieces else "")
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "q" if k == 1 else f"q^{k}"
                body = power if mag == 1 else f"{mag}{power}"
            pieces.append(sign + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"IntPolynomial({self.coeffs})"


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))
Q = IntPolynomial((0, 1))
Q_MINUS_ONE = IntPolynomial((-1, 1))


def _pick_descent(sys: CoxeterSystem, g: GroupElement, policy: str) -> int:
    descents = right_descents(sys, g)
    if policy == "smallest":
        return min(descents)
    if policy == "largest":
        return max(descents)
    raise InvalidType(f"unknown descent policy {policy!r}")


class RTable:
    """Memo table of R-polynomials for one system, bound to a descent policy.

    ``computed`` counts entries produced by the recursion (cache loads do not
    count), which is how tests observe that a warm cache recomputes nothing.
    Only comparable pairs are stored; incomparable lookups return the zero
    polynomial without touching the table.
    """

    def __init__(self, sys: CoxeterSystem, policy: str = "smallest"):
        if policy not in ("smallest", "largest"):
            raise InvalidType(f"unknown descent policy {policy!r}")
        self.sys = sys
        self.policy = policy
        self.entries: dict[tuple[GroupElement, GroupElement], IntPolynomial] = {}
        self.computed = 0
        self._lock = threading.Lock()

    def r(self, y: GroupElement, x: GroupElement) -> IntPolynomial:
        if y == x:
            return ONE
        if not bruhat_leq(self.sys, y, x):
            return ZERO
        key = (y, x)
        hit = self.entries.get(key)
        if hit is not None:
            return hit
        sys = self.sys
        s = _pick_descent(sys, x, self.policy)
        xs = right_multiply(sys, x, s)
        ys = right_multiply(sys, y, s)
        if ys.length < y.length:
            if not bruhat_leq(sys, ys, xs):
                raise LiftingViolation(
                    f"descent branch left the order: ys > xs at {format_word(reduced_word(sys, x))}"
                )
            value = self.r(ys, xs)
        else:
            if not bruhat_leq(sys, y, xs):
                raise LiftingViolation(
                    f"ascent branch left the order: y > xs at {format_word(reduced_word(sys, x))}"
                )
            value = Q_MINUS_ONE * self.r(y, xs) + Q * self.r(ys, xs)
        with self._lock:
            if key not in self.entries:
                self.entries[key] = value
                self.computed += 1
        return value

    # -- persistence -------------------------------------------------------

    def save_csv(self, path: Path | str) -> None:
        """Write all stored entries as ``y_word;x_word;c0,c1,...,cd`` rows."""
        sys = self.sys
        lines = [
            "# r-polynomial cache",
            f"# system: {fingerprint(sys)}",
            f"# policy: {self.policy}",
        ]
        items = sorted(
            self.entries.items(),
            key=lambda kv: (
                kv[0][1].length,
                kv[0][1].matrix,
                kv[0][0].length,
                kv[0][0].matrix,
            ),
        )
        for (y, x), poly in items:
            yw = format_word(reduced_word(sys, y))
            xw = format_word(reduced_word(sys, x))
            cs = ",".join(str(c) for c in poly.coeffs)
            lines.append(f"{yw};{xw};{cs}")
        try:
            Path(path).write_text("\n".join(lines) + "\n")
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc}") from exc

    def load_csv(self, path: Path | str) -> int:
        """Merge entries from a cache file, validating each row's invariants.

        Returns the number of rows loaded.  Rows must carry the degree,
        leading coefficient, and constant term forced by the lengths; a row
        that does not is a ParseError, as is a system fingerprint mismatch.
        """
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise IoError(f"cannot read {path}: {exc}") from exc
        sys = self.sys
        expected_fp = fingerprint(sys)
        loaded = 0
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line.startswith("# system:") and line.split(":", 1)[1].strip() != expected_fp:
                    raise ParseError(
                        f"{path}:{lineno}: cache was built for {line.split(':', 1)[1].strip()}, "
                        f"this system is {expected_fp}"
                    )
                continue
            parts = line.split(";")
            if len(parts) != 3:
                raise ParseError(f"{path}:{lineno}: expected 3 fields, got {len(parts)}")
            y = element_from_word(sys, parse_word(parts[0]))
            x = element_from_word(sys, parse_word(parts[1]))
            try:
                coeffs = tuple(int(c) for c in parts[2].split(","))
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: bad coefficient list") from exc
            poly = IntPolynomial(coeffs)
            gap = x.length - y.length
            if poly.degree != gap or poly.coeff(gap) != 1 or poly.coeff(0) != (-1) ** gap:
                raise ParseError(
                    f"{path}:{lineno}: row violates degree or term invariants for gap {gap}"
                )
            key = (y, x)
            if key not in self.entries:
                self.entries[key] = poly
            loaded += 1
        return loaded


def r_polynomial(
    sys: CoxeterSystem, y: GroupElement, x: GroupElement, table: RTable | None = None
) -> IntPolynomial:
    """R-polynomial of the pair, zero when y is not below x."""
    if table is None:
        table = RTable(sys)
    return table.r(y, x)


def gj_coefficient(
    sys: CoxeterSystem, x: GroupElement, y: GroupElement, table: RTable | None = None
) -> int:
    """q^1 coefficient of the signed R-polynomial of y <= x; always nonnegative.

    The sign (-1)**(length(x) - length(y) + 1) cancels the alternation of the
    raw coefficients, so the result counts something.  A negative value here
    is not a data error but a broken structural guarantee, hence InvariantViolation.
    """
    if not bruhat_leq(sys, y, x):
        raise NotComparable(
            f"{format_word(reduced_word(sys, y))} is not below {format_word(reduced_word(sys, x))}"
        )
    poly = r_polynomial(sys, y, x, table)
    sign = -1 if (x.length - y.length + 1) % 2 else 1
    value = sign * poly.coeff(1)
    if value < 0:
        raise InvariantViolation(
            f"signed q-coefficient {value} < 0 at pair "
            f"({format_word(reduced_word(sys, x))}, {format_word(reduced_word(sys, y))})"
        )
    return value


def r_coeff_direct(
    sys: CoxeterSystem, x: GroupElement, y: GroupElement, policy: str = "smallest"
) -> int:
    """The same first-order coefficient by a direct descent recursion.

    Strips one descent s from x per step (never building a polynomial):
    with x' = xs, the count for (x, y) is the count for (x', ys) when
    ys < y; the count for (x', y) when ys > y and x' >= ys; and one more
    than the count for (x', y) otherwise.  Each step shortens x, so the
    recursion is a single chain of length(x) - length(y) steps.
    """
    if not bruhat_leq(sys, y, x):
        raise NotComparable(
            f"{format_word(reduced_word(sys, y))} is not below {format_word(reduced_word(sys, x))}"
        )
    total = 0
    while x != y:
        s = _pick_descent(sys, x, policy)
        xp = right_multiply(sys, x, s)
        ys = right_multiply(sys, y, s)
        if ys.length < y.length:
            if not bruhat_leq(sys, ys, xp):
                raise LiftingViolation("descent branch left the order in the direct recursion")
            x, y = xp, ys
        else:
            if not bruhat_leq(sys, y, xp):
                raise LiftingViolation("ascent branch left the order in the direct recursion")
            if not bruhat_leq(sys, ys, xp):
                total += 1
            x = xp
    return total
