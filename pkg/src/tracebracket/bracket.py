"""Biquandle brackets: verification, state sums, the multiset invariant,
adequacy classification and the monochromatic skein coefficients.

A bracket over a ring R assigns units A[x][y], B[x][y] to each color pair
subject to three conditions:

  (i)   -A[x][x]^2 * B[x][x]^(-1) has a common value w for all x;
  (ii)  -A[x][y]^(-1)*B[x][y] - A[x][y]*B[x][y]^(-1) has a common value
        delta for all pairs;
  (iii) five product equations over all triples (x, y, z), spelled out in
        ``_triple_equations`` below.

The state sum of a colored diagram smooths every crossing both ways,
weights each state by its coefficients and by delta per resulting circle,
and corrects by w^(negative crossings - positive crossings).
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .biquandle import Biquandle
from .coloring import enumerate_colorings, validate_coloring
from .diagram import Crossing, OrientedDiagram, count_state_loops, oriented_smoothing, switch_crossing, writhe_counts
from .rings import LaurentRing, ModRing, NotAUnitError


@dataclass(frozen=True)
class BracketViolation:
    condition: str            # "unit", "delta", "w", "triple1".."triple5"
    witness: Tuple[int, ...]  # 0-indexed elements involved
    lhs: object = None
    rhs: object = None

    def describe(self) -> str:
        w = ",".join(str(v + 1) for v in self.witness)
        if self.lhs is None:
            return f"{self.condition} fails at ({w})"
        return f"{self.condition} fails at ({w}): {self.lhs} != {self.rhs}"


class BiquandleBracket:
    """A verified bracket; construct through :func:`verify_bracket`."""

    def __init__(self, bq: Biquandle, ring, A, B, delta, w):
        self.bq = bq
        self.ring = ring
        self.A = tuple(tuple(row) for row in A)
        self.B = tuple(tuple(row) for row in B)
        self.delta = delta
        self.w = w

    def a(self, x: int, y: int):
        return self.A[x][y]

    def b(self, x: int, y: int):
        return self.B[x][y]

    def __repr__(self) -> str:
        return f"BiquandleBracket(n={self.bq.n}, ring={self.ring!r})"


@dataclass
class BracketVerification:
    bracket: Optional[BiquandleBracket]
    violations: Tuple[BracketViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return self.bracket is not None


def _triple_equations(A, B, bq: Biquandle, delta, x: int, y: int, z: int):
    """The five equations at one triple; yields (tag, lhs, rhs)."""
    U, O = bq.under, bq.over
    xy, zy = U(x, y), O(z, y)       # x^y, z_y
    yx, zx = O(y, x), O(z, x)       # y_x, z_x
    xz, yz = U(x, z), U(y, z)       # x^z, y^z
    yield ("triple1",
           A[x][y] * A[y][z] * A[xy][zy],
           A[x][z] * A[yx][zx] * A[xz][yz])
    yield ("triple2",
           A[x][y] * B[y][z] * B[xy][zy],
           B[x][z] * B[yx][zx] * A[xz][yz])
    yield ("triple3",
           B[x][y] * A[y][z] * B[xy][zy],
           B[x][z] * A[yx][zx] * B[xz][yz])
    yield ("triple4",
           A[x][y] * A[y][z] * B[xy][zy],
           A[x][z] * B[yx][zx] * A[xz][yz]
           + A[x][z] * A[yx][zx] * B[xz][yz]
           + delta * A[x][z] * B[yx][zx] * B[xz][yz]
           + B[x][z] * B[yx][zx] * B[xz][yz])
    yield ("triple5",
           B[x][y] * A[y][z] * A[xy][zy]
           + A[x][y] * B[y][z] * A[xy][zy]
           + delta * B[x][y] * B[y][z] * A[xy][zy]
           + B[x][y] * B[y][z] * B[xy][zy],
           B[x][z] * A[yx][zx] * A[xz][yz])


def verify_bracket(bq: Biquandle, ring, A_table, B_table) -> BracketVerification:
    """Check bracket conditions; on success return the bracket with cached
    delta and w, otherwise collect violations with witnesses."""
    n = bq.n
    A = [list(row) for row in A_table]
    B = [list(row) for row in B_table]
    if len(A) != n or len(B) != n or any(len(r) != n for r in A + B):
        raise ValueError(f"coefficient tables must be {n}x{n}")

    bad: List[BracketViolation] = []
    for x in range(n):
        for y in range(n):
            for name, tab in (("A", A), ("B", B)):
                if not tab[x][y].is_unit():
                    bad.append(BracketViolation("unit", (x, y), f"{name}={tab[x][y]}"))
    if bad:
        return BracketVerification(None, tuple(bad))

    delta = None
    for x in range(n):
        for y in range(n):
            d = -(A[x][y].inverse() * B[x][y]) - (A[x][y] * B[x][y].inverse())
            if delta is None:
                delta = d
            elif d != delta:
                bad.append(BracketViolation("delta", (x, y), d, delta))

    w = None
    for x in range(n):
        wx = -(A[x][x] * A[x][x] * B[x][x].inverse())
        if w is None:
            w = wx
        elif wx != w:
            bad.append(BracketViolation("w", (x,), wx, w))

    if delta is not None and w is not None:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    for tag, lhs, rhs in _triple_equations(A, B, bq, delta, x, y, z):
                        if lhs != rhs:
                            bad.append(BracketViolation(tag, (x, y, z), lhs, rhs))

    if bad:
        return BracketVerification(None, tuple(bad))
    return BracketVerification(BiquandleBracket(bq, ring, A, B, delta, w))


def make_bracket(bq: Biquandle, ring, A_table, B_table) -> BiquandleBracket:
    """verify_bracket, raising on failure."""
    v = verify_bracket(bq, ring, A_table, B_table)
    if not v.ok:
        raise ValueError("not a biquandle bracket: "
                         + "; ".join(viol.describe() for viol in v.violations[:5]))
    assert v.bracket is not None
    return v.bracket


def constant_bracket(ring, a, b) -> BiquandleBracket:
    """The bracket with constant coefficients on the one-element biquandle."""
    from .biquandle import trivial_biquandle
    return make_bracket(trivial_biquandle(1), ring, [[a]], [[b]])


def generic_laurent_bracket() -> BiquandleBracket:
    """Symbolic constant bracket: A and B free unit variables."""
    ring = LaurentRing()
    return constant_bracket(ring, ring.gen_a(), ring.gen_b())


def crossing_coefficient_pair(c: Crossing, coloring: Sequence[int]) -> Tuple[int, int]:
    """The color pair indexing this crossing's coefficients.

    Positive crossings use their input colors.  Negative crossings use their
    output colors (the pair at which the corresponding positive crossing
    would read its inputs); this choice is what makes opposite-sign crossing
    pairs cancel in a poke, and hence the state sum stable under that move.
    """
    if c.sign > 0:
        return coloring[c.u_in - 1], coloring[c.o_in - 1]
    return coloring[c.u_out - 1], coloring[c.o_out - 1]


def crossing_coefficient(beta: BiquandleBracket, c: Crossing,
                         coloring: Sequence[int], choice: str):
    x, y = crossing_coefficient_pair(c, coloring)
    coeff = beta.a(x, y) if choice == "A" else beta.b(x, y)
    return coeff if c.sign > 0 else coeff.inverse()


def state_sum(d: OrientedDiagram, coloring: Sequence[int], beta: BiquandleBracket):
    """Full 2^(crossing count) state enumeration of one colored diagram."""
    if not validate_coloring(d, beta.bq, coloring):
        raise ValueError("coloring is not valid for this diagram and biquandle")
    ring = beta.ring
    total = ring.zero()
    crossings = d.crossings
    for bits in range(1 << len(crossings)):
        state = ["B" if bits & (1 << i) else "A" for i in range(len(crossings))]
        term = ring.one()
        for c, choice in zip(crossings, state):
            term = term * crossing_coefficient(beta, c, coloring, choice)
        term = term * beta.delta ** count_state_loops(d, state)
        total = total + term
    p, neg = writhe_counts(d)
    return beta.w ** (neg - p) * total


@dataclass
class InvariantResult:
    """Multiset of per-coloring state sums plus its u-polynomial form."""
    multiset: Counter
    ring: object

    def sorted_items(self):
        return sorted(self.multiset.items(), key=lambda kv: _element_sort_key(kv[0]))

    def multiset_str(self) -> str:
        inner = ", ".join(f"{value}:{mult}" for value, mult in self.sorted_items())
        return "{" + inner + "}"

    def polynomial_str(self) -> str:
        terms = []
        for value, mult in self.sorted_items():
            coeff = "" if mult == 1 else str(mult)
            if isinstance(self.ring, ModRing):
                e = value.value
                if e == 0:
                    terms.append(str(mult))
                elif e == 1:
                    terms.append(f"{coeff}u")
                else:
                    terms.append(f"{coeff}u^{e}")
            else:
                terms.append(f"{coeff}u^({value})")
        return " + ".join(terms) if terms else "0"

    def total_multiplicity(self) -> int:
        return sum(self.multiset.values())


def _element_sort_key(value):
    if hasattr(value, "value"):
        return (0, value.value)
    return (1, str(value))


def bracket_invariant(d: OrientedDiagram, bq: Biquandle, beta: BiquandleBracket) -> InvariantResult:
    """State sums over every coloring, as a multiset."""
    if beta.bq != bq:
        raise ValueError("bracket is defined over a different biquandle")
    counts: Counter = Counter()
    for coloring in enumerate_colorings(d, bq):
        counts[state_sum(d, coloring, beta)] += 1
    return InvariantResult(counts, beta.ring)


@dataclass(frozen=True)
class AdequacyClass:
    over_adequate: bool
    under_adequate: bool
    passthrough: bool
    over_witness: Optional[Tuple[int, ...]] = None
    under_witness: Optional[Tuple[int, ...]] = None
    passthrough_witness: Optional[Tuple[int, ...]] = None

    @property
    def adequate(self) -> bool:
        return self.over_adequate and self.under_adequate

    def label(self) -> str:
        if self.adequate:
            return "adequate"
        if self.over_adequate:
            return "over"
        if self.under_adequate:
            return "under"
        return "neither"


def classify_adequacy(beta: BiquandleBracket) -> AdequacyClass:
    """Check the over-, under- and pass-through conditions for all triples."""
    bq, A, B = beta.bq, beta.A, beta.B
    U, O = bq.under, bq.over
    n = bq.n

    over_witness = under_witness = pass_witness = None
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, zy = U(x, y), O(z, y)
        yx, zx = O(y, x), O(z, x)
        xz, yz = U(x, z), U(y, z)
        yx_, zx_ = O(y, x), O(z, x)

        if over_witness is None:
            chain = (A[y][z] * B[xy][zy], B[x][z] * A[yx_][zx_],
                     A[x][z] * B[yx_][zx_], B[y][z] * A[xy][zy])
            if A[y][z] != A[U(y, x)][U(z, x)] or any(t != chain[0] for t in chain[1:]):
                over_witness = (x, y, z)

        if under_witness is None:
            chain = (A[x][y] * B[xy][zy], B[x][z] * A[xz][yz],
                     A[x][z] * B[xz][yz], B[x][y] * A[xy][zy])
            if A[y][z] != A[yx][zx] or any(t != chain[0] for t in chain[1:]):
                under_witness = (x, y, z)

    one = beta.ring.one()
    for x in range(n):
        y = bq.diag(x)
        if (A[x][x] ** 2 * B[y][y] ** 2 != one
                or A[y][y] ** 2 * B[x][x] ** 2 != one):
            pass_witness = (x, y)
            break

    return AdequacyClass(over_adequate=over_witness is None,
                         under_adequate=under_witness is None,
                         passthrough=pass_witness is None,
                         over_witness=over_witness,
                         under_witness=under_witness,
                         passthrough_witness=pass_witness)


def homflypt_coefficients(beta: BiquandleBracket, x: int):
    """Skein coefficients (c_switch, c_smooth) at a crossing colored (x, x).

    Derived by eliminating the two smoothing terms between the expansions of
    the positive and negative crossing, using w = -A[x][x]^2 B[x][x]^(-1):

        [L+] = c_switch*[L-] + c_smooth*[L0]
        c_switch = A^(-4) B^4,   c_smooth = A^(-3) B^3 - A^(-1) B.
    """
    a, b = beta.a(x, x), beta.b(x, x)
    c_switch = a ** (-4) * b ** 4
    c_smooth = a ** (-3) * b ** 3 - a.inverse() * b
    return c_switch, c_smooth


def skein_identity_check(d: OrientedDiagram, bq: Biquandle, beta: BiquandleBracket,
                         coloring: Sequence[int], index: int) -> bool:
    """Verify [L+] = c_switch [L-] + c_smooth [L0] at one crossing.

    Requires the crossing to be monochromatic (equal input colors x) with x
    a fixed point (under(x, x) == x), so the oriented smoothing inherits the
    coloring without any trace bookkeeping.
    """
    c = d.crossings[index]
    x, y = coloring[c.u_in - 1], coloring[c.o_in - 1]
    if x != y:
        raise ValueError(f"crossing {index} is not monochromatic: colors {x + 1}, {y + 1}")
    if bq.under(x, x) != x:
        raise ValueError(
            f"color {x + 1} is not a fixed point (under(x,x) != x); "
            "the smoothed diagram would not inherit this coloring")

    c_switch, c_smooth = homflypt_coefficients(beta, x)
    if c.sign < 0:
        # rearrange for a negative target crossing: [L-] = (..)[L+] + (..)[L0]
        plus = switch_crossing(d, index)
        lhs = state_sum(plus, coloring, beta)
        rhs = (c_switch * state_sum(d, coloring, beta)
               + c_smooth * state_sum(oriented_smoothing(d, index),
                                      _smoothed_coloring(d, index, coloring), beta))
        return lhs == rhs

    minus = switch_crossing(d, index)
    smooth = oriented_smoothing(d, index)
    lhs = state_sum(d, coloring, beta)
    rhs = (c_switch * state_sum(minus, coloring, beta)
           + c_smooth * state_sum(smooth, _smoothed_coloring(d, index, coloring), beta))
    return lhs == rhs


def _smoothed_coloring(d: OrientedDiagram, index: int, coloring: Sequence[int]) -> Tuple[int, ...]:
    """Push a coloring through oriented_smoothing's semiarc renumbering.

    Valid when the smoothed crossing is monochromatic at a fixed point, so
    merged semiarcs all carry one color.
    """
    target = d.crossings[index]
    succ = {target.u_in: target.o_out, target.o_in: target.u_out}

    def resolve(s: int) -> int:
        seen = set()
        while s in succ:
            if s in seen:
                return -1
            seen.add(s)
            s = succ[s]
        return s

    new_loop_colors: List[int] = []
    rename: Dict[int, int] = {}
    for s in range(1, d.n_semiarcs + 1):
        r = resolve(s)
        if r != -1:
            rename[s] = r
    for start in sorted(succ):
        s, seen = start, set()
        while s in succ:
            if s in seen:
                break
            seen.add(s)
            s = succ[s]
        else:
            continue
        if start == min(seen):
            new_loop_colors.append(coloring[start - 1])

    survivors = sorted({rename[s] for s in rename})
    out = [coloring[s - 1] for s in survivors]
    out.extend(coloring[d.n_semiarcs:])      # original free-loop colors
    out.extend(new_loop_colors)
    return tuple(out)


# ---------------------------------------------------------------------------
# bracket file format
# ---------------------------------------------------------------------------

def parse_bracket(text: str, bq: Biquandle) -> BiquandleBracket:
    """Parse ``ring mod <n>`` or ``ring laurent`` followed by the [A|B] rows."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty bracket file")
    head = lines[0].split()
    if head[0] != "ring":
        raise ValueError("bracket file must start with a 'ring ...' line")
    if head[1] == "mod":
        ring = ModRing(int(head[2]))
    elif head[1] == "laurent":
        ring = LaurentRing()
    else:
        raise ValueError(f"unknown ring kind {head[1]!r}")
    n = bq.n
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} coefficient rows, found {len(lines) - 1}")
    A, B = [], []
    for i, ln in enumerate(lines[1:], start=2):
        entries = ln.split()
        if len(entries) != 2 * n:
            raise ValueError(f"line {i}: expected {2 * n} entries, found {len(entries)}")
        A.append([ring.parse(e) for e in entries[:n]])
        B.append([ring.parse(e) for e in entries[n:]])
    return make_bracket(bq, ring, A, B)


def serialize_bracket(beta: BiquandleBracket) -> str:
    ring = beta.ring
    head = f"ring mod {ring.modulus}" if isinstance(ring, ModRing) else "ring laurent"
    lines = [head]
    for x in range(beta.bq.n):
        row = [str(beta.A[x][y]) for y in range(beta.bq.n)]
        row += [str(beta.B[x][y]) for y in range(beta.bq.n)]
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"
