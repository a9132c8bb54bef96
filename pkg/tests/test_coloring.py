import itertools

from tracebracket.biquandle import alexander_biquandle, trivial_biquandle
from tracebracket.coloring import (counting_invariant, enumerate_colorings,
                                   monochromatic_riii_check, total_semiarcs,
                                   validate_coloring)
from tracebracket.diagram import (hopf_pos, trefoil_pos, trefoil_rii, unknot0,
                                  unknot_kink)


def brute_force_colorings(d, bq):
    out = []
    m = total_semiarcs(d)
    for colors in itertools.product(range(bq.n), repeat=m):
        if validate_coloring(d, bq, colors):
            out.append(colors)
    return out


def test_trefoil_count_is_nine(a312):
    assert counting_invariant(trefoil_pos(), a312) == 9


def test_trefoil_kernel_dimension_oracle(a312):
    # independent oracle: row-reduce the coloring equations over Z3 and
    # compare 3^nullity with the enumerated count
    rows = []
    for c in trefoil_pos().crossings:
        # o_out = 2*o_in  and  u_out = u_in + o_out
        r1 = [0] * 6
        r1[c.o_in - 1] = 2
        r1[c.o_out - 1] = -1
        r2 = [0] * 6
        r2[c.u_in - 1] = 1
        r2[c.o_out - 1] = 1
        r2[c.u_out - 1] = -1
        rows.append([v % 3 for v in r1])
        rows.append([v % 3 for v in r2])
    rank = 0
    mat = [row[:] for row in rows]
    for col in range(6):
        piv = next((r for r in range(rank, len(mat)) if mat[r][col] % 3), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], -1, 3)
        mat[rank] = [(v * inv) % 3 for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] % 3:
                f = mat[r][col]
                mat[r] = [(a - f * b) % 3 for a, b in zip(mat[r], mat[rank])]
        rank += 1
    nullity = 6 - rank
    assert 3 ** nullity == 9
    assert counting_invariant(trefoil_pos(), alexander_biquandle(3, 1, 2)) == 3 ** nullity


def test_hopf_has_four_colorings(bq2):
    assert counting_invariant(hopf_pos(), bq2) == 4


def test_unknot_colorings(bq2, bq3, a312):
    for bq in (bq2, bq3, a312):
        assert counting_invariant(unknot0(), bq) == bq.n


def test_trivial_biquandle_all_zero():
    bq = trivial_biquandle(1)
    for d in (hopf_pos(), trefoil_pos()):
        cols = enumerate_colorings(d, bq)
        assert cols == [tuple([0] * d.n_semiarcs)]


def test_invalid_coloring_rejected(a312):
    assert not validate_coloring(trefoil_pos(), a312, (1,) * 6)


def test_enumeration_matches_brute_force(bq2, bq3, a312):
    cases = [(unknot0(), bq3), (unknot_kink(1), bq2), (unknot_kink(-1), bq3),
             (hopf_pos(), bq2), (hopf_pos(), bq3), (trefoil_pos(), a312),
             (trefoil_pos(), bq3), (hopf_pos(), a312)]
    for d, bq in cases:
        fast = enumerate_colorings(d, bq)
        slow = brute_force_colorings(d, bq)
        assert fast == sorted(slow)
        assert len(set(fast)) == len(fast)


def test_every_enumerated_coloring_validates(bq2, bq3, a312):
    for d in (hopf_pos(), trefoil_pos(), trefoil_rii()):
        for bq in (bq2, bq3, a312):
            for col in enumerate_colorings(d, bq):
                assert validate_coloring(d, bq, col)


def test_counting_invariant_reidemeister_stability(bq1, bq2, bq3, a312):
    for bq in (bq1, bq2, bq3, a312):
        base = counting_invariant(unknot0(), bq)
        assert counting_invariant(unknot_kink(1), bq) == base
        assert counting_invariant(unknot_kink(-1), bq) == base
        assert (counting_invariant(trefoil_pos(), bq)
                == counting_invariant(trefoil_rii(), bq))


def test_riii_check_fixture_biquandles(bq1, bq2, bq3):
    for bq in (bq1, bq2, bq3):
        report = monochromatic_riii_check(bq)
        assert report.ok, report.failures[:3]


def test_riii_check_trivial():
    for n in (1, 3, 4):
        assert monochromatic_riii_check(trivial_biquandle(n)).ok


def test_riii_color_values(bq2, bq3):
    # the middle color is the common diagonal value
    assert bq2.under(0, 0) == bq2.over(0, 0) == 1
    assert bq3.under(0, 0) == 2 and bq3.under(2, 2) == 0
