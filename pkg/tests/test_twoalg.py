import random
from fractions import Fraction

import pytest

from rbprelie import rba_differential, regular_bimodule
from rbprelie.algebras import (
    Bimodule,
    InvalidStructureError,
    PreLieAlgebra,
    RBBimodule,
    RBPreLieAlgebra,
    zero_table,
)
from rbprelie.cochains import Cochain, RBACochain
from rbprelie.generators import (
    random_crossed_module,
    random_rba_cocycle,
    random_valid_pair,
)
from rbprelie.linalg import RationalMatrix, is_zero_vector
from rbprelie.twoalg import (
    CrossedModule,
    TwoAlgebra,
    check_crossed_module,
    check_prelie_2alg,
    check_rb_2alg,
    cocycle_to_skeletal,
    condition_f_value,
    condition_v_value,
    crossed_to_strict,
    skeletal_to_cocycle,
    strict_to_crossed,
)

from conftest import make_a1n
from oracles import second_condition_f, second_condition_v


def _twoalg_from_algebra(r, dim1=0):
    """A valid structure with trivial level 1."""
    return TwoAlgebra(
        dim0=r.dim,
        dim1=dim1,
        d_map=RationalMatrix.zeros(r.dim, dim1),
        l2_00=r.algebra.c,
        l2_01=tuple(tuple() for _ in range(r.dim)),
        l2_10=tuple(),
        l3=Cochain.zero(3, r.dim, dim1),
        t0=r.operator,
        t1=RationalMatrix.zeros(dim1, dim1),
        t2=tuple(tuple(tuple() for _ in range(r.dim)) for _ in range(r.dim)),
    )


def test_trivial_level1_passes():
    r = make_a1n(1)
    t = _twoalg_from_algebra(r)
    assert check_prelie_2alg(t).ok
    assert check_rb_2alg(t, 1).ok


def test_skeletal_with_zero_l3_t2_passes():
    rng = random.Random(0)
    for _ in range(8):
        r, m = random_valid_pair(rng, rng.randint(1, 3))
        zero = RBACochain(
            Cochain.zero(3, r.dim, m.mod_dim), Cochain.zero(2, r.dim, m.mod_dim)
        )
        t = cocycle_to_skeletal(r, m, zero)
        assert check_prelie_2alg(t).ok
        assert check_rb_2alg(t, r.weight).ok


def test_skeletal_noncocycle_l3_violates_top_coherence():
    rng = random.Random(1)
    found = False
    for _ in range(20):
        r, m = random_valid_pair(rng, rng.randint(2, 3))
        zero = RBACochain(
            Cochain.zero(3, r.dim, m.mod_dim), Cochain.zero(2, r.dim, m.mod_dim)
        )
        t = cocycle_to_skeletal(r, m, zero)
        from rbprelie.generators import random_cochain

        l3 = random_cochain(rng, 3, r.dim, m.mod_dim)
        cand = TwoAlgebra(
            dim0=t.dim0, dim1=t.dim1, d_map=t.d_map, l2_00=t.l2_00, l2_01=t.l2_01,
            l2_10=t.l2_10, l3=l3, t0=t.t0, t1=t.t1, t2=t.t2,
        )
        verdict = check_prelie_2alg(cand)
        if not verdict.ok:
            assert any(v.law == "f" for v in verdict.violations)
            found = True
            break
    assert found


def test_skeletal_cocycle_round_trips():
    rng = random.Random(2)
    for _ in range(15):
        r, m = random_valid_pair(rng, rng.randint(1, 3))
        c = random_rba_cocycle(rng, r, m, 3)
        t = cocycle_to_skeletal(r, m, c)
        assert check_prelie_2alg(t).ok and check_rb_2alg(t, r.weight).ok
        r2, m2, c2 = skeletal_to_cocycle(t, r.weight)
        assert (r2, m2) == (r, m)
        assert c2.pla_part.sub(c.pla_part).is_zero()
        assert c2.rbo_part.sub(c.rbo_part).is_zero()


def test_cocycle_to_skeletal_rejects_noncocycles():
    rng = random.Random(3)
    for _ in range(10):
        r, m = random_valid_pair(rng, 2)
        from rbprelie.generators import random_cochain

        c = RBACochain(
            random_cochain(rng, 3, r.dim, m.mod_dim),
            random_cochain(rng, 2, r.dim, m.mod_dim),
        )
        if not rba_differential(r, m, c, trusted=True).is_zero():
            with pytest.raises(InvalidStructureError):
                cocycle_to_skeletal(r, m, c)
            return
    pytest.skip("all random candidates were cocycles")


def test_skeletal_equivalence_both_directions():
    # for skeletal data: both checkers pass  <=>  level-0 and level-1 are a
    # valid pair and (l3, t2) is a degree-3 cocycle
    rng = random.Random(4)
    for _ in range(10):
        r, m = random_valid_pair(rng, rng.randint(1, 2))
        from rbprelie.generators import random_cochain

        c = RBACochain(
            random_cochain(rng, 3, r.dim, m.mod_dim),
            random_cochain(rng, 2, r.dim, m.mod_dim),
        )
        t = TwoAlgebra(
            dim0=r.dim,
            dim1=m.mod_dim,
            d_map=RationalMatrix.zeros(r.dim, m.mod_dim),
            l2_00=r.algebra.c,
            l2_01=tuple(
                tuple(m.bimodule.S[x].col(a) for a in range(m.mod_dim))
                for x in range(r.dim)
            ),
            l2_10=tuple(
                tuple(m.bimodule.P[x].col(a) for x in range(r.dim))
                for a in range(m.mod_dim)
            ),
            l3=c.pla_part,
            t0=r.operator,
            t1=m.t_m,
            t2=tuple(
                tuple(c.rbo_part.value((i, j)) for j in range(r.dim)) for i in range(r.dim)
            ),
        )
        closed = rba_differential(r, m, c, trusted=True).is_zero()
        passes = check_prelie_2alg(t).ok and check_rb_2alg(t, r.weight).ok
        assert passes == closed


def test_literal_printed_coherence_differs_from_cocycle_form():
    # regression for the resolved transcription conflict: with the identity
    # operator on level 1 and everything else zero, every (l3, t2) is a
    # degree-3 cocycle, yet the printed ten-term form demands l3 = 0
    r = RBPreLieAlgebra(
        PreLieAlgebra(2, zero_table(2, 2, 2)), Fraction(0), RationalMatrix.zeros(2, 2)
    )
    m = RBBimodule(
        Bimodule(
            2, 1, (RationalMatrix.zeros(1, 1),) * 2, (RationalMatrix.zeros(1, 1),) * 2
        ),
        RationalMatrix.identity(1),
    )
    c = RBACochain(
        Cochain(3, 2, 1, {(0, 1, 0): (Fraction(1),)}), Cochain.zero(2, 2, 1)
    )
    assert rba_differential(r, m, c, trusted=True).is_zero()
    t = cocycle_to_skeletal(r, m, c)
    assert check_rb_2alg(t, Fraction(0)).ok
    # the literal form would end in −T1(l3(x1,x2,x3)) with coefficient one;
    # on this instance that term is the whole expression and is nonzero
    literal_tail = t.t1.apply(t.l3.eval([0, 1, 0]))
    assert not is_zero_vector(literal_tail)


def test_dual_transcriptions_agree_on_random_tuples():
    rng = random.Random(5)
    checked = 0
    while checked < 200:
        r, m = random_valid_pair(rng, rng.randint(1, 3))
        from rbprelie.generators import random_cochain

        t = TwoAlgebra(
            dim0=r.dim,
            dim1=m.mod_dim,
            d_map=RationalMatrix.zeros(r.dim, m.mod_dim),
            l2_00=r.algebra.c,
            l2_01=tuple(
                tuple(m.bimodule.S[x].col(a) for a in range(m.mod_dim))
                for x in range(r.dim)
            ),
            l2_10=tuple(
                tuple(m.bimodule.P[x].col(a) for x in range(r.dim))
                for a in range(m.mod_dim)
            ),
            l3=random_cochain(rng, 3, r.dim, m.mod_dim),
            t0=r.operator,
            t1=m.t_m,
            t2=tuple(
                tuple(
                    tuple(Fraction(rng.randint(-2, 2)) for _ in range(m.mod_dim))
                    for _ in range(r.dim)
                )
                for _ in range(r.dim)
            ),
        )
        for _ in range(10):
            w, x, y, z = (rng.randrange(r.dim) for _ in range(4))
            assert list(condition_f_value(t, w, x, y, z)) == list(
                second_condition_f(t, w, x, y, z)
            )
            assert list(condition_v_value(t, r.weight, x, y, z)) == list(
                second_condition_v(t, r.weight, x, y, z)
            )
            checked += 1


def test_crossed_module_families_valid():
    rng = random.Random(6)
    for _ in range(10):
        cm = random_crossed_module(rng, rng.randint(1, 3))
        assert check_crossed_module(cm).ok


def test_strict_crossed_round_trips():
    rng = random.Random(7)
    for _ in range(12):
        cm = random_crossed_module(rng, rng.randint(1, 3))
        t = crossed_to_strict(cm)
        assert t.is_strict()
        assert check_prelie_2alg(t).ok and check_rb_2alg(t, cm.g0.weight).ok
        assert strict_to_crossed(t, cm.g0.weight) == cm
        assert crossed_to_strict(strict_to_crossed(t, cm.g0.weight)) == t


def test_identity_connecting_map_fixture():
    r = make_a1n(1)
    reg = regular_bimodule(r)
    cm = CrossedModule(
        r, r.algebra.c, RationalMatrix.identity(2), reg.bimodule.S, reg.bimodule.P, r.operator
    )
    assert check_crossed_module(cm).ok
    t = crossed_to_strict(cm)
    assert check_prelie_2alg(t).ok and check_rb_2alg(t, Fraction(1)).ok


def test_crossed_module_operator_mismatch_reported():
    r = make_a1n(1)
    reg = regular_bimodule(r)
    cm = CrossedModule(
        r,
        r.algebra.c,
        RationalMatrix.identity(2),
        reg.bimodule.S,
        reg.bimodule.P,
        RationalMatrix.zeros(2, 2),  # no longer intertwines with T0 through d
    )
    verdict = check_crossed_module(cm)
    assert not verdict.ok
    assert any(v.law == "c1_operator" for v in verdict.violations)


def test_strict_skeletal_degenerate_case():
    # d = 0 and strict: level-1 product collapses to zero
    rng = random.Random(8)
    r, m = random_valid_pair(rng, 2)
    zero = RBACochain(Cochain.zero(3, r.dim, m.mod_dim), Cochain.zero(2, r.dim, m.mod_dim))
    t = cocycle_to_skeletal(r, m, zero)
    cm = strict_to_crossed(t, r.weight)
    assert all(is_zero_vector(v) for row in cm.g1_product for v in row)
    assert check_crossed_module(cm).ok


def test_non_strict_rejected():
    rng = random.Random(9)
    r, m = random_valid_pair(rng, 2)
    c = random_rba_cocycle(rng, r, m, 3)
    t = cocycle_to_skeletal(r, m, c)
    if not t.is_strict():
        with pytest.raises(InvalidStructureError):
            strict_to_crossed(t, r.weight)


def test_non_skeletal_rejected():
    rng = random.Random(10)
    cm = random_crossed_module(rng, 2)
    t = crossed_to_strict(cm)
    if not t.is_skeletal():
        with pytest.raises(InvalidStructureError):
            skeletal_to_cocycle(t, cm.g0.weight)
        return
    pytest.skip("sampled crossed module had zero connecting map")
