"""Biquandle colorings of oriented diagrams and the counting invariant.

Crossing conventions
--------------------
At a positive crossing with under-input colored x and over-input colored y:

    o_out = over(y, x)                 (the over strand acted on by x)
    u_out = under(x, o_out)            (the under strand acted on by the
                                        over strand's outgoing color)

A negative crossing imposes the inverse relation: its inputs are determined
from its outputs by the same two equations.  Both directions are computable
from the operation tables via the column-inverse maps, so colorings can be
propagated forwards and backwards through crossings of either sign.

These rules are pinned by the worked invariants they must reproduce: nine
colorings of the trefoil under the linear biquandle on Z_3 with t=1, s=2,
four colorings of the Hopf link under the two-element biquandle, and
stability of the counting invariant across kink and poke fixture pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .biquandle import Biquandle
from .diagram import Crossing, OrientedDiagram, validate_diagram

Coloring = Tuple[int, ...]  # colors[s - 1] is the color of semiarc s


def total_semiarcs(d: OrientedDiagram) -> int:
    """Crossing semiarcs plus one semiarc per crossing-free circle."""
    return d.n_semiarcs + d.free_loops


def positive_outputs(bq: Biquandle, u_in: int, o_in: int) -> Tuple[int, int]:
    """(u_out, o_out) colors at a positive crossing."""
    o_out = bq.over(o_in, u_in)
    u_out = bq.under(u_in, o_out)
    return u_out, o_out


def positive_inputs(bq: Biquandle, u_out: int, o_out: int) -> Tuple[int, int]:
    """(u_in, o_in) colors at a positive crossing, from its outputs."""
    u_in = bq.beta_inv(o_out, u_out)
    o_in = bq.alpha_inv(u_in, o_out)
    return u_in, o_in


def crossing_outputs(bq: Biquandle, sign: int, u_in: int, o_in: int) -> Tuple[int, int]:
    """(u_out, o_out) colors for a crossing of either sign, from its inputs."""
    if sign > 0:
        return positive_outputs(bq, u_in, o_in)
    # negative: inputs = positive rule applied to outputs; invert it
    u_out = bq.beta_inv(o_in, u_in)       # u_in == under(u_out, o_in)
    o_out = bq.alpha_inv(u_out, o_in)     # o_in == over(o_out, u_out)
    return u_out, o_out


def crossing_inputs(bq: Biquandle, sign: int, u_out: int, o_out: int) -> Tuple[int, int]:
    """(u_in, o_in) colors for a crossing of either sign, from its outputs."""
    if sign > 0:
        return positive_inputs(bq, u_out, o_out)
    o_in = bq.over(o_out, u_out)
    u_in = bq.under(u_out, o_in)
    return u_in, o_in


def crossing_ok(bq: Biquandle, c: Crossing, colors: Sequence[int]) -> bool:
    u_in, o_in = colors[c.u_in - 1], colors[c.o_in - 1]
    u_out, o_out = colors[c.u_out - 1], colors[c.o_out - 1]
    return crossing_outputs(bq, c.sign, u_in, o_in) == (u_out, o_out)


def validate_coloring(d: OrientedDiagram, bq: Biquandle, coloring: Sequence[int]) -> bool:
    """True iff the coloring satisfies both conditions at every crossing.

    The coloring covers crossing semiarcs 1..2c followed by one entry per
    free loop; free-loop colors are unconstrained.
    """
    if len(coloring) != total_semiarcs(d):
        raise ValueError(
            f"coloring has {len(coloring)} entries for {total_semiarcs(d)} semiarcs")
    for v in coloring:
        if not 0 <= v < bq.n:
            raise ValueError(f"color {v} out of range 0..{bq.n - 1}")
    return all(crossing_ok(bq, c, coloring) for c in d.crossings)


def _propagate(d: OrientedDiagram, bq: Biquandle, colors: List[Optional[int]]) -> bool:
    """Fill in forced colors; False on contradiction."""
    changed = True
    while changed:
        changed = False
        for c in d.crossings:
            known = {}
            for role, s in (("u_in", c.u_in), ("o_in", c.o_in),
                            ("o_out", c.o_out), ("u_out", c.u_out)):
                known[role] = colors[s - 1]

            derived: Dict[str, int] = {}
            if known["u_in"] is not None and known["o_in"] is not None:
                uo, oo = crossing_outputs(bq, c.sign, known["u_in"], known["o_in"])
                derived = {"u_out": uo, "o_out": oo}
            elif known["u_out"] is not None and known["o_out"] is not None:
                ui, oi = crossing_inputs(bq, c.sign, known["u_out"], known["o_out"])
                derived = {"u_in": ui, "o_in": oi}
            elif c.sign > 0 and known["u_in"] is not None and known["o_out"] is not None:
                derived = {"o_in": bq.alpha_inv(known["u_in"], known["o_out"]),
                           "u_out": bq.under(known["u_in"], known["o_out"])}
            elif c.sign < 0 and known["o_in"] is not None and known["u_out"] is not None:
                derived = {"u_in": bq.under(known["u_out"], known["o_in"]),
                           "o_out": bq.alpha_inv(known["u_out"], known["o_in"])}

            for role, value in derived.items():
                s = getattr(c, role)
                cur = colors[s - 1]
                if cur is None:
                    colors[s - 1] = value
                    changed = True
                elif cur != value:
                    return False
    return True


def enumerate_colorings(d: OrientedDiagram, bq: Biquandle) -> List[Coloring]:
    """All valid colorings, in lexicographic order of the color tuple.

    Depth-first search with constraint propagation: repeatedly propagate
    forced colors through crossings, then branch on the lowest-numbered
    uncolored semiarc.
    """
    report = validate_diagram(d)
    if not report.ok:
        raise ValueError("invalid diagram: " + "; ".join(report.problems))

    m = d.n_semiarcs
    results: List[Coloring] = []

    def search(colors: List[Optional[int]]) -> None:
        if not _propagate(d, bq, colors):
            return
        try:
            s = next(i for i in range(m) if colors[i] is None)
        except StopIteration:
            final = tuple(colors)  # type: ignore[arg-type]
            if validate_coloring(d, bq, final + (0,) * d.free_loops):
                results.append(final)
            return
        for v in range(bq.n):
            branch = list(colors)
            branch[s] = v
            search(branch)

    search([None] * m)
    results.sort()

    if not d.free_loops:
        return results

    # free-loop semiarcs are unconstrained; extend each base coloring
    extended: List[Coloring] = []
    for base in results:
        stack: List[Tuple[int, ...]] = [base]
        for _ in range(d.free_loops):
            stack = [t + (v,) for t in stack for v in range(bq.n)]
        extended.extend(stack)
    extended.sort()
    return extended


def counting_invariant(d: OrientedDiagram, bq: Biquandle) -> int:
    """The number of colorings of the diagram."""
    return len(enumerate_colorings(d, bq))


@dataclass(frozen=True)
class RiiiFailure:
    color: int               # the monochromatic input color (0-indexed)
    pattern: Tuple[int, ...]  # the three crossing signs
    strand: str              # which strand's colors went wrong
    expected: Tuple[int, ...]
    got: Tuple[int, ...]


@dataclass(frozen=True)
class RiiiReport:
    ok: bool
    failures: Tuple[RiiiFailure, ...] = ()


def monochromatic_riii_check(bq: Biquandle) -> RiiiReport:
    """Check the monochromatic three-strand tangle for all 8 sign patterns.

    With all three strands entering colored x, set y = under(x, x) and
    z = under(y, y).  Each strand should cross twice, carrying colors
    (x, y, z) along its journey, independent of how the three crossing
    signs are chosen.  Failures are collected with full witnesses.
    """
    failures: List[RiiiFailure] = []
    for x in bq.elements():
        y = bq.under(x, x)
        z = bq.under(y, y)
        for bits in range(8):
            # +1: the strand from the lower position passes under (positive
            # crossing); -1: the switched crossing (roles swapped, negative).
            pattern = tuple(1 if bits & (1 << i) else -1 for i in range(3))
            strands = {"A": [x], "B": [x], "C": [x]}
            pos = {0: "A", 1: "B", 2: "C"}
            for k, lower in enumerate((0, 1, 0)):
                upper = lower + 1
                s_lo, s_hi = pos[lower], pos[upper]
                lo_col, hi_col = strands[s_lo][-1], strands[s_hi][-1]
                if pattern[k] > 0:
                    u_out, o_out = crossing_outputs(bq, +1, lo_col, hi_col)
                    lo_out, hi_out = u_out, o_out
                else:
                    u_out, o_out = crossing_outputs(bq, -1, hi_col, lo_col)
                    lo_out, hi_out = o_out, u_out
                strands[s_lo].append(lo_out)
                strands[s_hi].append(hi_out)
                pos[lower], pos[upper] = s_hi, s_lo
            for name in "ABC":
                expected = (x, y, z)
                got = tuple(strands[name])
                if got != expected:
                    failures.append(RiiiFailure(x, pattern, name, expected, got))
    return RiiiReport(ok=not failures, failures=tuple(failures))
