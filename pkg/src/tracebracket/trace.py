"""Colored trace diagrams: recursive skein expansion, crossingless
evaluation, magnetic parity, the parity fast evaluator, and diagrammatic
verification of the trace moves on fixed three-strand tangles.

A trace diagram is stored as a port graph.  Nodes are crossings (kind
``x``), pass-through traces (kind ``a``) and sink/source traces (kind
``b``); ``succ`` maps each out-port to the in-port its edge feeds.  Each
node carries the sign and the color pair indexing its coefficients (for
negative crossings this is the output pair, matching the state sum).

Smoothing a crossing is pure port renaming:

  kind a:  u_in -> p_in,  o_out -> p_out,  o_in -> q_in,  u_out -> q_out
  kind b:  u_in -> s1,    o_in  -> s2,     u_out -> r1,   o_out -> r2

so the strand through u_in continues through o_out (and o_in through
u_out) for an ``a`` trace, while a ``b`` trace absorbs both inputs into a
sink and emits both outputs from a source.  Deleting a ``b`` trace leaves
a cap and a cup, so its endpoints reverse orientation along the curve;
these are the vertices magnetic parity counts.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .biquandle import Biquandle
from .bracket import BiquandleBracket, crossing_coefficient_pair
from .coloring import crossing_inputs, crossing_outputs
from .diagram import OrientedDiagram, validate_diagram

Port = Tuple[int, str]


class MultiComponentCrossingError(ValueError):
    """A crossing whose over- and under-passes lie on different components."""


class NotRIReducibleError(ValueError):
    """The trace-deleted diagram cannot be unknotted by kink removal alone."""


@dataclass(frozen=True)
class Node:
    kind: str                 # "x", "a", "b"
    sign: int                 # +1 / -1
    pair: Tuple[int, int]     # coefficient color pair (0-indexed)


_IN_PORTS = {"x": ("u_in", "o_in"), "a": ("p_in", "q_in"), "b": ("s1", "s2")}
_OUT_PORTS = {"x": ("u_out", "o_out"), "a": ("p_out", "q_out"), "b": ("r1", "r2")}
# pass-through pairing of the node, after traces are deleted
_PASS = {
    "x": (("u_in", "u_out"), ("o_in", "o_out")),
    "a": (("p_in", "p_out"), ("q_in", "q_out")),
    "b": (("s1", "s2"), ("r1", "r2")),
}


@dataclass(frozen=True)
class TraceDiagram:
    nodes: Dict[int, Node]
    succ: Dict[Port, Port]
    free_circles: int = 0

    def crossings(self) -> List[int]:
        return sorted(i for i, n in self.nodes.items() if n.kind == "x")

    def traces(self) -> List[int]:
        return sorted(i for i, n in self.nodes.items() if n.kind != "x")

    def pred(self) -> Dict[Port, Port]:
        return {v: k for k, v in self.succ.items()}


def from_colored_diagram(d: OrientedDiagram, bq: Biquandle,
                         coloring: Sequence[int]) -> TraceDiagram:
    """Build the port graph of a colored oriented diagram (no traces yet)."""
    report = validate_diagram(d)
    if not report.ok:
        raise ValueError("invalid diagram: " + "; ".join(report.problems))
    nodes: Dict[int, Node] = {}
    born: Dict[int, Port] = {}
    dies: Dict[int, Port] = {}
    for i, c in enumerate(d.crossings):
        nodes[i] = Node("x", c.sign, crossing_coefficient_pair(c, coloring))
        born[c.u_out] = (i, "u_out")
        born[c.o_out] = (i, "o_out")
        dies[c.u_in] = (i, "u_in")
        dies[c.o_in] = (i, "o_in")
    succ = {born[s]: dies[s] for s in born}
    return TraceDiagram(nodes, succ, d.free_loops)


def replace_with_trace(td: TraceDiagram, cid: int, kind: str) -> TraceDiagram:
    """Smooth one crossing, leaving a trace of the given kind in its place."""
    node = td.nodes[cid]
    if node.kind != "x":
        raise ValueError(f"node {cid} is not a crossing")
    if kind not in ("A", "B"):
        raise ValueError("kind must be 'A' or 'B'")
    tid = max(td.nodes) + 1
    if kind == "A":
        port_map = {(cid, "u_in"): (tid, "p_in"), (cid, "o_out"): (tid, "p_out"),
                    (cid, "o_in"): (tid, "q_in"), (cid, "u_out"): (tid, "q_out")}
        new_node = Node("a", node.sign, node.pair)
    else:
        port_map = {(cid, "u_in"): (tid, "s1"), (cid, "o_in"): (tid, "s2"),
                    (cid, "u_out"): (tid, "r1"), (cid, "o_out"): (tid, "r2")}
        new_node = Node("b", node.sign, node.pair)

    def m(p: Port) -> Port:
        return port_map.get(p, p)

    nodes = {i: n for i, n in td.nodes.items() if i != cid}
    nodes[tid] = new_node
    succ = {m(a): m(b) for a, b in td.succ.items()}
    return TraceDiagram(nodes, succ, td.free_circles)


def smooth_crossing(td: TraceDiagram, cid: int, kind: str, beta: BiquandleBracket):
    """Return (coefficient, smoothed diagram) for one crossing."""
    node = td.nodes[cid]
    x, y = node.pair
    coeff = beta.a(x, y) if kind == "A" else beta.b(x, y)
    if node.sign < 0:
        coeff = coeff.inverse()
    return coeff, replace_with_trace(td, cid, kind)


class _UF:
    def __init__(self, items: Iterable):
        self.parent = {i: i for i in items}

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def class_count(self) -> int:
        return sum(1 for i in self.parent if self.find(i) == i)


def circles_trace_deleted(td: TraceDiagram) -> int:
    """Components of the curve system after deleting all traces.

    Crossings are walked through; trace nodes contribute their cap/cup or
    pass-through pairings, which is exactly what deletion leaves behind.
    """
    ports = [(i, p) for i, n in td.nodes.items()
             for p in _IN_PORTS[n.kind] + _OUT_PORTS[n.kind]]
    if not ports:
        return td.free_circles
    uf = _UF(ports)
    for a, b in td.succ.items():
        uf.union(a, b)
    for i, n in td.nodes.items():
        for pa, pb in _PASS[n.kind]:
            uf.union((i, pa), (i, pb))
    return uf.class_count() + td.free_circles


def evaluate_crossingless(td: TraceDiagram, beta: BiquandleBracket):
    """w^(n-p) * delta^k for a diagram with no crossings left."""
    if td.crossings():
        raise ValueError("diagram still has crossings")
    p = sum(1 for i in td.traces() if td.nodes[i].sign > 0)
    n = len(td.traces()) - p
    k = circles_trace_deleted(td)
    return beta.w ** (n - p) * beta.delta ** k


def evaluate_recursive(td: TraceDiagram, beta: BiquandleBracket,
                       pick: Optional[Callable[[TraceDiagram], int]] = None):
    """Expand crossings depth-first until crossingless, summing both kinds."""
    xs = td.crossings()
    if not xs:
        return evaluate_crossingless(td, beta)
    cid = pick(td) if pick is not None else xs[0]
    coeff_a, td_a = smooth_crossing(td, cid, "A", beta)
    coeff_b, td_b = smooth_crossing(td, cid, "B", beta)
    return (coeff_a * evaluate_recursive(td_a, beta, pick)
            + coeff_b * evaluate_recursive(td_b, beta, pick))


# ---------------------------------------------------------------------------
# magnetic parity and the parity evaluator
# ---------------------------------------------------------------------------

def magnetic_parity(td: TraceDiagram, cid: int) -> str:
    """'odd', 'even', or 'multi' for one crossing.

    Walks the trace-deleted curve out of the under-pass exit, counting
    sink/source vertices (each reverses the direction of travel), until the
    walk returns to the crossing at its over-pass or its under-pass.
    """
    if td.nodes[cid].kind != "x":
        raise ValueError(f"node {cid} is not a crossing")
    pred = td.pred()
    count = 0
    state = ("fwd", (cid, "u_out"))
    limit = 4 * len(td.succ) + 4
    for _ in range(limit):
        direction, port = state
        if direction == "fwd":
            arrive = td.succ[port]
            nid, pname = arrive
            if nid == cid:
                if pname == "o_in":
                    return "odd" if count % 2 else "even"
                return "multi"          # back at the under-pass
            kind = td.nodes[nid].kind
            if kind == "x":
                state = ("fwd", (nid, "u_out" if pname == "u_in" else "o_out"))
            elif kind == "a":
                state = ("fwd", (nid, "p_out" if pname == "p_in" else "q_out"))
            else:                       # sink: reverse along the other inflow
                count += 1
                other = "s2" if pname == "s1" else "s1"
                state = ("bwd", (nid, other))
        else:
            arrive = pred[port]
            nid, pname = arrive
            if nid == cid:
                if pname == "o_out":
                    return "odd" if count % 2 else "even"
                return "multi"
            kind = td.nodes[nid].kind
            if kind == "x":
                state = ("bwd", (nid, "u_in" if pname == "u_out" else "o_in"))
            elif kind == "a":
                state = ("bwd", (nid, "p_in" if pname == "p_out" else "q_in"))
            else:                       # source: reverse along the other outflow
                count += 1
                other = "r2" if pname == "r1" else "r1"
                state = ("fwd", (nid, other))
    raise RuntimeError("parity walk did not terminate")


def _slot_arcs(td: TraceDiagram) -> _UF:
    """Union-find connecting ports through edges and trace nodes only."""
    ports = [(i, p) for i, n in td.nodes.items()
             for p in _IN_PORTS[n.kind] + _OUT_PORTS[n.kind]]
    uf = _UF(ports)
    for a, b in td.succ.items():
        uf.union(a, b)
    for i, n in td.nodes.items():
        if n.kind != "x":
            for pa, pb in _PASS[n.kind]:
                uf.union((i, pa), (i, pb))
    return uf


def ri_reducible(td: TraceDiagram) -> bool:
    """Can the trace-deleted diagram be unknotted by kink removal alone?

    A kink is a crossing two of whose under/over slots are joined by an arc
    meeting no other crossing; removing it joins the two remaining slots.
    """
    uf = _slot_arcs(td)
    remaining = set(td.crossings())
    u_slots = ("u_in", "u_out")
    o_slots = ("o_in", "o_out")
    while remaining:
        kink = None
        for cid in sorted(remaining):
            for us, os_ in itertools.product(u_slots, o_slots):
                if uf.find((cid, us)) == uf.find((cid, os_)):
                    kink = (cid, us, os_)
                    break
            if kink:
                break
        if kink is None:
            return False
        cid, us, os_ = kink
        other_u = "u_out" if us == "u_in" else "u_in"
        other_o = "o_out" if os_ == "o_in" else "o_in"
        uf.union((cid, other_u), (cid, other_o))
        uf.union((cid, us), (cid, os_))   # already equal; keep classes tidy
        remaining.discard(cid)
    return True


_PHI_TABLE = {
    # (sign > 0, parity) -> coefficient builder
    (True, "odd"): lambda a, b, d: a + d * b,
    (True, "even"): lambda a, b, d: d * a + b,
    (False, "odd"): lambda a, b, d: a.inverse() + d * b.inverse(),
    (False, "even"): lambda a, b, d: d * a.inverse() + b.inverse(),
}


def evaluate_by_parity(td: TraceDiagram, beta: BiquandleBracket):
    """delta^k * w^(n-p) * product of per-crossing parity weights.

    Requires every crossing to be single-component and the trace-deleted
    diagram to reduce to zero crossings by kink removal alone.
    """
    parities = {}
    for cid in td.crossings():
        par = magnetic_parity(td, cid)
        if par == "multi":
            raise MultiComponentCrossingError(f"crossing {cid} is multi-component")
        parities[cid] = par
    if not ri_reducible(td):
        raise NotRIReducibleError("trace-deleted diagram is not kink-reducible")

    k = circles_trace_deleted(td)
    neg = sum(1 for i, n in td.nodes.items() if n.sign < 0)
    pos = len(td.nodes) - neg
    value = beta.delta ** k * beta.w ** (neg - pos)
    for cid, par in parities.items():
        node = td.nodes[cid]
        x, y = node.pair
        phi = _PHI_TABLE[(node.sign > 0, par)](beta.a(x, y), beta.b(x, y), beta.delta)
        value = value * phi
    return value


def parity_applicable(td: TraceDiagram) -> bool:
    return (all(magnetic_parity(td, cid) != "multi" for cid in td.crossings())
            and ri_reducible(td))


def evaluate_recursive_parity(td: TraceDiagram, beta: BiquandleBracket):
    """Recursive expansion that stops early on parity-evaluable diagrams."""
    if parity_applicable(td):
        return evaluate_by_parity(td, beta)
    cid = td.crossings()[0]
    coeff_a, td_a = smooth_crossing(td, cid, "A", beta)
    coeff_b, td_b = smooth_crossing(td, cid, "B", beta)
    return (coeff_a * evaluate_recursive_parity(td_a, beta)
            + coeff_b * evaluate_recursive_parity(td_b, beta))


# ---------------------------------------------------------------------------
# open tangles and the trace moves
#
# The sixteen strand-past-a-trace moves and the eight monochromatic
# pass-through moves are verified on a fixed three-strand tangle: a crossing
# c0 between strands U and V (smoothed into the trace under test) and a
# strand S crossing two of the edges at c0.  Both sides of a move are
# expanded as OPEN tangles and compared boundary-resolved: for each state,
# its coefficient, internal-circle delta factor and trace w-factor are
# accumulated against the induced pairing of the six endpoints.  The two
# sides agree for every seeding of the three strand colors exactly when the
# bracket admits the move.  (Closing the tangle first would be useless for
# discrimination: any bracket with delta = 0 evaluates every closed diagram
# to zero.)
# ---------------------------------------------------------------------------

_ENDPOINTS = ("Uin", "Uout", "Vin", "Vout", "Sin", "Sout")


@dataclass(frozen=True)
class MoveTangle:
    """One side of a trace move, as crossings over named wires."""
    rows: Tuple[Tuple[int, str, str, str, str], ...]   # (sign, u_in, o_in, o_out, u_out)
    target: int = 0                                    # row index of c0


def _slide_tangles(s_over: bool, c0_sign: int, s_west: bool) -> Tuple[MoveTangle, MoveTangle]:
    s_sign = 1 if (s_over == s_west) else -1

    def sc(s_in, s_out, e_in, e_out):
        if s_over:
            return (s_sign, e_in, s_in, s_out, e_out)
        return (s_sign, s_in, e_in, e_out, s_out)

    if not s_west:
        before = ((c0_sign, "Uin", "Vin", "v1", "u1"),
                  sc("Sin", "s1", "v1", "Vout"),
                  sc("s1", "Sout", "u1", "Uout"))
        after = ((c0_sign, "u1", "v1", "Vout", "Uout"),
                 sc("Sin", "s1", "Uin", "u1"),
                 sc("s1", "Sout", "Vin", "v1"))
    else:
        before = ((c0_sign, "Uin", "Vin", "v1", "u1"),
                  sc("Sin", "s1", "u1", "Uout"),
                  sc("s1", "Sout", "v1", "Vout"))
        after = ((c0_sign, "u1", "v1", "Vout", "Uout"),
                 sc("Sin", "s1", "Vin", "v1"),
                 sc("s1", "Sout", "Uin", "u1"))
    return MoveTangle(before), MoveTangle(after)


def _through_tangles(s_over: bool, c0_sign: int,
                     s_reversed: bool) -> Tuple[MoveTangle, MoveTangle]:
    """Threading the sink/source neck of a B-trace.

    The strand crosses one sink edge and one source edge; pushing it through
    the neck to the other diagonal reverses both of its crossing signs (the
    neck edges flow in opposite directions on the two sides).
    """
    s_sign = -1 if s_reversed else 1

    def sc(sign, s_in, s_out, e_in, e_out):
        if s_over:
            return (sign, e_in, s_in, s_out, e_out)
        return (sign, s_in, e_in, e_out, s_out)

    before = ((c0_sign, "u1", "Vin", "v1", "Uout"),
              sc(s_sign, "Sin", "s1", "Uin", "u1"),
              sc(s_sign, "s1", "Sout", "v1", "Vout"))
    after = ((c0_sign, "Uin", "v2", "Vout", "u2"),
             sc(-s_sign, "Sin", "s1", "Vin", "v2"),
             sc(-s_sign, "s1", "Sout", "u2", "Uout"))
    return MoveTangle(before), MoveTangle(after)


@dataclass(frozen=True)
class TraceMove:
    move_id: str
    kind: str
    before: MoveTangle
    after: MoveTangle
    monochromatic_only: bool = False


def slide_moves() -> List[TraceMove]:
    """The 16 oriented over/under trace moves."""
    out = []
    for kind in ("A", "B"):
        for s_over in (True, False):
            for c0_sign in (1, -1):
                for s_west in (False, True):
                    b, a = _slide_tangles(s_over, c0_sign, s_west)
                    move_id = (f"{'over' if s_over else 'under'}_{kind}"
                               f"_{'pos' if c0_sign > 0 else 'neg'}"
                               f"_{'W' if s_west else 'E'}")
                    out.append(TraceMove(move_id, kind, b, a))
    return out


def passthrough_moves() -> List[TraceMove]:
    """The 8 oriented monochromatic pass-through moves."""
    out = []
    for s_over in (True, False):
        for c0_sign in (1, -1):
            for s_reversed in (False, True):
                b, a = _through_tangles(s_over, c0_sign, s_reversed)
                move_id = (f"through_B_{'pos' if c0_sign > 0 else 'neg'}"
                           f"_{'over' if s_over else 'under'}"
                           f"_{'R' if s_reversed else 'F'}")
                out.append(TraceMove(move_id, "B", b, a, monochromatic_only=True))
    return out


def all_moves() -> List[TraceMove]:
    return slide_moves() + passthrough_moves()


def move_by_id(move_id: str) -> TraceMove:
    for m in all_moves():
        if m.move_id == move_id:
            return m
    raise KeyError(f"unknown move {move_id!r}")


def _tangle_trace_diagram(tangle: MoveTangle, bq: Biquandle,
                          seeds: Dict[str, int], kind: str) -> TraceDiagram:
    """Color the tangle from its entry seeds and replace c0 by a trace.

    Boundary wires become endpoint nodes (kind ``in``/``out``), so the
    result is an open trace diagram.
    """
    wire_colors: Dict[str, int] = dict(seeds)
    info: Dict[int, Tuple[int, Tuple[int, int]]] = {}
    pending = set(range(len(tangle.rows)))
    while pending:
        progressed = False
        for i in sorted(pending):
            sign, ui, oi, oo, uo = tangle.rows[i]
            if ui in wire_colors and oi in wire_colors:
                u_out, o_out = crossing_outputs(bq, sign, wire_colors[ui], wire_colors[oi])
                wire_colors[uo], wire_colors[oo] = u_out, o_out
                pair = ((wire_colors[ui], wire_colors[oi]) if sign > 0
                        else (u_out, o_out))
                info[i] = (sign, pair)
                pending.discard(i)
                progressed = True
        if not progressed:
            raise ValueError("tangle wiring is not forward-colorable")

    nodes: Dict[int, Node] = {}
    born: Dict[str, Port] = {}
    dies: Dict[str, Port] = {}
    for i, (sign, ui, oi, oo, uo) in enumerate(tangle.rows):
        nodes[i] = Node("x", *info[i])
        born[uo] = (i, "u_out")
        born[oo] = (i, "o_out")
        dies[ui] = (i, "u_in")
        dies[oi] = (i, "o_in")
    nid = len(tangle.rows)
    for name in _ENDPOINTS:
        if name.endswith("in"):
            if name not in born:
                nodes[nid] = Node("in", +1, (-1, -1))
                born[name] = (nid, "out")
                nid += 1
        else:
            if name not in dies:
                nodes[nid] = Node("out", +1, (-1, -1))
                dies[name] = (nid, "in")
                nid += 1
    succ = {born[w]: dies[w] for w in born}
    td = TraceDiagram(nodes, succ, 0)
    return replace_with_trace(td, tangle.target, kind)


def _boundary_resolution(td: TraceDiagram, beta: BiquandleBracket):
    """(endpoint pairing, value) of a crossingless open trace diagram."""
    ports = [(i, p) for i, n in td.nodes.items()
             for p in _ports_of(n.kind)]
    uf = _UF(ports)
    for a, b in td.succ.items():
        uf.union(a, b)
    for i, n in td.nodes.items():
        if n.kind in _PASS:
            for pa, pb in _PASS[n.kind]:
                uf.union((i, pa), (i, pb))
    groups: Dict[object, List[int]] = {}
    boundary = [i for i, n in td.nodes.items() if n.kind in ("in", "out")]
    for i in boundary:
        port = (i, "out") if td.nodes[i].kind == "in" else (i, "in")
        groups.setdefault(uf.find(port), []).append(i)
    paired = frozenset(frozenset(g) for g in groups.values())
    circle_roots = {uf.find(p) for p in ports} - set(groups)
    k = len(circle_roots) + td.free_circles
    traces = [td.nodes[i] for i in td.traces()]
    p = sum(1 for n in traces if n.sign > 0)
    n_neg = len(traces) - p
    return paired, beta.w ** (n_neg - p) * beta.delta ** k


def _ports_of(kind: str) -> Tuple[str, ...]:
    if kind == "in":
        return ("out",)
    if kind == "out":
        return ("in",)
    return _IN_PORTS[kind] + _OUT_PORTS[kind]


def evaluate_open(td: TraceDiagram, beta: BiquandleBracket) -> Dict[object, object]:
    """Boundary-resolved value of an open trace diagram.

    Maps each induced pairing of the endpoint nodes to the accumulated ring
    value of the states producing it.  Pairings whose value is zero are
    dropped, so dicts compare structurally.
    """
    xs = td.crossings()
    if not xs:
        pairing, value = _boundary_resolution(td, beta)
        return {pairing: value}
    cid = xs[0]
    out: Dict[object, object] = {}
    for kind in ("A", "B"):
        coeff, child = smooth_crossing(td, cid, kind, beta)
        for pairing, value in evaluate_open(child, beta).items():
            contribution = coeff * value
            if pairing in out:
                out[pairing] = out[pairing] + contribution
            else:
                out[pairing] = contribution
    zero = beta.ring.zero()
    return {p: v for p, v in out.items() if v != zero}


def _endpoint_labels(td: TraceDiagram) -> Dict[int, str]:
    # endpoint nodes were created in _ENDPOINTS order after the crossings
    labels = {}
    names = iter(_ENDPOINTS)
    for i in sorted(n for n, node in td.nodes.items() if node.kind in ("in", "out")):
        labels[i] = next(names)
    return labels


def trace_move_fixture_check(bq: Biquandle, beta: BiquandleBracket, move_id: str) -> bool:
    """True iff [before] == [after] boundary-resolved, for all color seeds."""
    move = move_by_id(move_id)
    for seeds in itertools.product(range(bq.n), repeat=3):
        seed_map = {"Sin": seeds[0], "Uin": seeds[1], "Vin": seeds[2]}
        td_b = _tangle_trace_diagram(move.before, bq, seed_map, move.kind)
        td_a = _tangle_trace_diagram(move.after, bq, seed_map, move.kind)
        if move.monochromatic_only:
            trace_node = next(td_b.nodes[i] for i in td_b.traces())
            if trace_node.pair[0] != trace_node.pair[1]:
                continue
        vb = _relabel(evaluate_open(td_b, beta), _endpoint_labels(td_b))
        va = _relabel(evaluate_open(td_a, beta), _endpoint_labels(td_a))
        if vb != va:
            return False
    return True


def _relabel(resolution: Dict[object, object], labels: Dict[int, str]):
    return {frozenset(frozenset(labels[i] for i in pair) for pair in pairing): v
            for pairing, v in resolution.items()}


def diagrammatic_adequacy(bq: Biquandle, beta: BiquandleBracket) -> Tuple[bool, bool]:
    """(over, under) verdicts aggregated over the eight moves of each kind."""
    over = all(trace_move_fixture_check(bq, beta, m.move_id)
               for m in slide_moves() if m.move_id.startswith("over"))
    under = all(trace_move_fixture_check(bq, beta, m.move_id)
                for m in slide_moves() if m.move_id.startswith("under"))
    return over, under


def diagrammatic_passthrough(bq: Biquandle, beta: BiquandleBracket) -> bool:
    return all(trace_move_fixture_check(bq, beta, m.move_id)
               for m in passthrough_moves())


# ---------------------------------------------------------------------------
# trace diagram files
# ---------------------------------------------------------------------------

def parse_trace_diagram(text: str, bq: Biquandle) -> Tuple[TraceDiagram, Dict[int, int]]:
    """Parse the trace-diagram file format.

    Crossing lines are as in diagram files.  Trace lines:

        traceA <sign> <in1>><out1> <in2>><out2> <x> <y>
        traceB <sign> sink(<e1>,<e2>) source(<e3>,<e4>) <x> <y>

    Edges are semiarc ids; ``in>out`` names the segments entering and
    leaving a pass-through point, the first pair on the (u_in -> o_out)
    strand.  For traceB, e1/e3 are the under-side edges.  (x, y) is the
    trace's recorded color pair, 1-indexed.  Every edge must be colored by
    a ``color <edge> <value>`` line.  Returns the diagram and the
    edge -> color map (0-indexed values).
    """
    crossing_rows: List[Tuple[int, int, int, int, int]] = []
    trace_rows: List[Tuple] = []
    colors: Dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if parts[0] in ("+", "-"):
            if len(parts) != 5:
                raise ValueError(f"line {lineno}: bad crossing line")
            sign = 1 if parts[0] == "+" else -1
            crossing_rows.append((sign, *(int(p) for p in parts[1:])))
        elif parts[0] == "color":
            colors[int(parts[1])] = int(parts[2]) - 1
        elif parts[0] == "traceA":
            sign = 1 if parts[1] == "+" else -1
            (i1, o1), (i2, o2) = (p.split(">") for p in parts[2:4])
            trace_rows.append(("a", sign, int(i1), int(o1), int(i2), int(o2),
                               int(parts[4]) - 1, int(parts[5]) - 1))
        elif parts[0] == "traceB":
            sign = 1 if parts[1] == "+" else -1
            sink = parts[2][len("sink("):-1].split(",")
            source = parts[3][len("source("):-1].split(",")
            trace_rows.append(("b", sign, int(sink[0]), int(sink[1]),
                               int(source[0]), int(source[1]),
                               int(parts[4]) - 1, int(parts[5]) - 1))
        else:
            raise ValueError(f"line {lineno}: unrecognized line {ln!r}")

    nodes: Dict[int, Node] = {}
    born: Dict[int, Port] = {}
    dies: Dict[int, Port] = {}
    nid = 0
    for sign, u_in, o_in, o_out, u_out in crossing_rows:
        nodes[nid] = Node("x", sign, (-1, -1))
        born[u_out] = (nid, "u_out")
        born[o_out] = (nid, "o_out")
        dies[u_in] = (nid, "u_in")
        dies[o_in] = (nid, "o_in")
        nid += 1
    for row in trace_rows:
        kind = row[0]
        if kind == "a":
            _, sign, i1, o1, i2, o2, x, y = row
            dies[i1] = (nid, "p_in")
            born[o1] = (nid, "p_out")
            dies[i2] = (nid, "q_in")
            born[o2] = (nid, "q_out")
        else:
            _, sign, e1, e2, e3, e4, x, y = row
            dies[e1] = (nid, "s1")
            dies[e2] = (nid, "s2")
            born[e3] = (nid, "r1")
            born[e4] = (nid, "r2")
        nodes[nid] = Node(kind, sign, (x, y))
        nid += 1

    edges = set(born) | set(dies)
    loose = [e for e in edges if e not in born or e not in dies]
    if loose:
        raise ValueError(f"edges with a loose end: {sorted(loose)}")
    uncolored = [e for e in edges if e not in colors]
    if uncolored:
        raise ValueError(f"edges without a color: {sorted(uncolored)}")

    succ = {born[e]: dies[e] for e in edges}
    for i, (sign, u_in, o_in, o_out, u_out) in enumerate(crossing_rows):
        pair = ((colors[u_in], colors[o_in]) if sign > 0
                else (colors[u_out], colors[o_out]))
        nodes[i] = Node("x", sign, pair)

    td = TraceDiagram(nodes, succ, 0)
    _validate_trace_colors(bq, crossing_rows, trace_rows, colors)
    return td, colors


def _validate_trace_colors(bq: Biquandle, crossing_rows, trace_rows,
                           colors: Dict[int, int]) -> None:
    for sign, u_in, o_in, o_out, u_out in crossing_rows:
        got = crossing_outputs(bq, sign, colors[u_in], colors[o_in])
        if got != (colors[u_out], colors[o_out]):
            raise ValueError(
                f"crossing colors inconsistent at inputs ({u_in}, {o_in})")
    for row in trace_rows:
        kind, sign = row[0], row[1]
        x, y = row[6], row[7]
        if kind == "a":
            ins = (colors[row[2]], colors[row[4]])
            outs = (colors[row[5]], colors[row[3]])   # (u-side out, o-side out)
        else:
            ins = (colors[row[2]], colors[row[3]])
            outs = (colors[row[4]], colors[row[5]])
        if sign > 0:
            if ins != (x, y):
                raise ValueError(f"trace input colors {ins} do not match its pair {(x, y)}")
            if outs != crossing_outputs(bq, sign, x, y):
                raise ValueError("trace output colors inconsistent with its pair")
        else:
            if outs != (x, y):
                raise ValueError(f"trace output colors {outs} do not match its pair {(x, y)}")
            if ins != crossing_inputs(bq, sign, x, y):
                raise ValueError("trace input colors inconsistent with its pair")
