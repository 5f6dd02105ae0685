import random

import pytest

from slopestab import (
    GF,
    DomainError,
    K0Class,
    Ordering,
    Verdict,
    classify_stability,
    compare_slopes,
    dimension_vector,
    direct_sum,
    enumerate_subrep_classes,
    hn_filtration,
    hom_space,
    k0_verdict,
    max_destabilizer,
    s_equivalent,
    slope_value,
    stable_factor_filtration,
    zero_representation,
)
from slopestab.stability import (
    all_subspaces,
    quotient_by_subrep,
    restrict_to_subrep,
    subrep_families,
)

from conftest import x2_slope
from helpers import brute_force_subrep_classes


def classes_of(rep):
    return [c.multiplicities for c in enumerate_subrep_classes(rep)]


def test_all_subspaces_counts():
    assert len(all_subspaces(GF(2), 2)) == 5  # 1 + 3 + 1
    assert len(all_subspaces(GF(3), 2)) == 6  # 1 + 4 + 1
    assert len(all_subspaces(GF(2), 3)) == 16


def test_subrep_classes_catalog(sl2_f2):
    reps = sl2_f2.representations
    assert classes_of(reps["M(0)"]) == [(0, 0), (1, 0), (1, 1)]
    assert classes_of(reps["M*(0)"]) == [(0, 0), (0, 1), (1, 1)]
    assert classes_of(reps["P(-2)"]) == [(0, 0), (1, 0), (1, 1), (2, 1)]


def test_p2_witness_of_class_11_is_m0(sl2_f2):
    from slopestab import is_isomorphic

    witness = enumerate_subrep_classes(sl2_f2.representations["P(-2)"])[K0Class.of((1, 1))]
    sub = restrict_to_subrep(sl2_f2.representations["P(-2)"], witness)
    assert is_isomorphic(sub, sl2_f2.representations["M(0)"])


def test_subrep_classes_match_brute_force(f2_universe):
    rng = random.Random(999)
    sample = rng.sample(f2_universe, 20)
    for rep in sample:
        expected = brute_force_subrep_classes(rep)
        got = {c.multiplicities for c in enumerate_subrep_classes(rep)}
        assert got == expected


def test_subrep_witnesses_are_invariant(f2_universe):
    rng = random.Random(131)
    for rep in rng.sample(f2_universe, 10):
        for fam in subrep_families(rep):
            from slopestab.stability import _is_invariant

            assert _is_invariant(rep, fam.vertex_bases)


def test_enumeration_order_does_not_change_classes(sl2_f2):
    rep = sl2_f2.representations["P(-2)"]
    canonical = enumerate_subrep_classes(rep)
    for seed in range(5):
        shuffled = enumerate_subrep_classes(rep, rng=random.Random(seed))
        assert list(shuffled) == list(canonical)
        assert [f.encoding() for f in shuffled.values()] == [
            f.encoding() for f in canonical.values()
        ]


def test_classify_catalog_phase_points(sl2_f2):
    reps = sl2_f2.representations
    assert classify_stability(reps["M(0)"], x2_slope(1)) is Verdict.STABLE
    assert classify_stability(reps["P(-2)"], x2_slope(1)) is Verdict.UNSTABLE
    assert classify_stability(reps["P(-2)"], x2_slope(0)) is Verdict.STRICTLY_SEMISTABLE
    for name in reps:
        assert classify_stability(reps[name], x2_slope(1)) is not None


def test_simples_always_stable(sl2_f2):
    rng = random.Random(246)
    for name in ("L(0)", "L(-2)"):
        for _ in range(5):
            x = (rng.randint(-5, 5), rng.randint(-5, 5))
            from slopestab import sl2_slope

            assert classify_stability(sl2_f2.representations[name], sl2_slope(x)) is Verdict.STABLE


def test_classify_requires_finite_field(sl2_q):
    with pytest.raises(DomainError):
        classify_stability(sl2_q.representations["M(0)"], x2_slope(1))


def test_classify_zero_rep_rejected(sl2_f2):
    with pytest.raises(DomainError):
        classify_stability(zero_representation(sl2_f2.algebra, GF(2)), x2_slope(1))


def test_classify_agrees_with_k0_verdict(f2_universe_classes):
    s = x2_slope(1)
    for rep, classes in f2_universe_classes:
        gamma = dimension_vector(rep)
        proper = [c for c in classes if not c.is_zero() and c != gamma]
        assert classify_stability(rep, s) is k0_verdict(gamma, proper, s)


def test_max_destabilizer_catalog(sl2_f2):
    reps = sl2_f2.representations
    s = x2_slope(1)
    witness = max_destabilizer(reps["P(-2)"], s)
    assert witness.k0_class() == K0Class.of((1, 1))
    assert slope_value(witness.k0_class(), s) == slope_value(K0Class.of((1, 1)), s)

    split = direct_sum(reps["L(0)"], reps["L(-2)"])
    assert max_destabilizer(split, s).k0_class() == K0Class.of((0, 1))

    semistable = max_destabilizer(reps["M(0)"], s)
    assert semistable.k0_class() == K0Class.of((1, 1))


def test_hn_semistable_is_one_step(sl2_f2):
    hn = hn_filtration(sl2_f2.representations["M(0)"], x2_slope(1))
    assert hn.factor_classes == (K0Class.of((1, 1)),)
    assert len(hn.chain) == 2


def test_hn_p2(sl2_f2):
    hn = hn_filtration(sl2_f2.representations["P(-2)"], x2_slope(1))
    assert hn.factor_classes == (K0Class.of((1, 1)), K0Class.of((1, 0)))
    assert hn.factor_slopes[0].compare(hn.factor_slopes[1]) is Ordering.GREATER


def test_hn_split_sum(sl2_f2):
    split = direct_sum(
        sl2_f2.representations["L(0)"], sl2_f2.representations["L(-2)"]
    )
    hn = hn_filtration(split, x2_slope(1))
    assert hn.factor_classes == (K0Class.of((0, 1)), K0Class.of((1, 0)))


def test_hn_factors_are_semistable_representations(sl2_f2):
    # Rebuild each factor as a representation and classify it.
    rep = sl2_f2.representations["P(-2)"]
    s = x2_slope(1)
    hn = hn_filtration(rep, s)
    current = rep
    for k in range(1, len(hn.chain)):
        step_rep = restrict_to_subrep(rep, hn.chain[k])
        prev = hn.chain[k - 1]
        # Express the previous step inside the current one and take the quotient.
        inner_rows = []
        for v in range(len(rep.dims)):
            from slopestab.linalg import coords_in_basis, row_space

            rows = [
                coords_in_basis(
                    rep.field, hn.chain[k].vertex_bases[v], u, rep.dims[v]
                )
                for u in prev.vertex_bases[v]
            ]
            inner_rows.append(row_space(rep.field, rows))
        from slopestab.stability import SubrepFamily

        factor, _ = quotient_by_subrep(step_rep, SubrepFamily(tuple(inner_rows)))
        assert classify_stability(factor, s).is_semistable
        assert dimension_vector(factor) == hn.factor_classes[k - 1]


def test_stable_factors_catalog(sl2_f2):
    reps = sl2_f2.representations
    data = stable_factor_filtration(reps["M(0)"], x2_slope(1))
    assert data.factors == (K0Class.of((1, 1)),)

    trivial = x2_slope(0)
    data = stable_factor_filtration(reps["M(0)"], trivial)
    assert data.factors == (K0Class.of((0, 1)), K0Class.of((1, 0)))

    split = direct_sum(reps["L(0)"], reps["L(-2)"])
    data = stable_factor_filtration(split, trivial)
    assert data.factors == (K0Class.of((0, 1)), K0Class.of((1, 0)))


def test_stable_factors_reject_unstable(sl2_f2):
    with pytest.raises(DomainError):
        stable_factor_filtration(sl2_f2.representations["P(-2)"], x2_slope(1))


def test_s_equivalence(sl2_f2):
    reps = sl2_f2.representations
    trivial = x2_slope(0)
    assert s_equivalent(reps["M(0)"], reps["M(0)"], trivial)
    split = direct_sum(reps["L(0)"], reps["L(-2)"])
    assert s_equivalent(reps["M(0)"], split, trivial)
    assert s_equivalent(reps["M(0)"], reps["M*(0)"], trivial)
    assert s_equivalent(reps["L(0)"], reps["L(0)"], trivial)
    with pytest.raises(DomainError):
        s_equivalent(reps["M(0)"], reps["L(0)"], trivial)


def test_stable_s_classes_are_iso_classes(sl2_f2):
    # M(0) and M*(0) are both stable for no common x2, so use the class-level
    # fact at the trivial structure instead: two distinct stables of the same
    # class must differ in stable factors.  At x2=1 the only stable of class
    # (1,1) is M(0) itself; check S-equivalence distinguishes M(0) from the
    # (unstable) M*(0) indirectly by verdict.
    s = x2_slope(1)
    assert classify_stability(sl2_f2.representations["M(0)"], s) is Verdict.STABLE
    assert classify_stability(sl2_f2.representations["M*(0)"], s) is Verdict.UNSTABLE


def test_decomposable_semistability_criterion(sl2_f2):
    # A sum is semistable iff the summands are semistable of equal slope.
    reps = sl2_f2.representations
    names = list(reps)
    for x2 in (-1, 0, 1):
        s = x2_slope(x2)
        for i in range(len(names)):
            for j in range(i, len(names)):
                v, w = reps[names[i]], reps[names[j]]
                both = direct_sum(v, w)
                expected = (
                    classify_stability(v, s).is_semistable
                    and classify_stability(w, s).is_semistable
                    and compare_slopes(
                        dimension_vector(v), dimension_vector(w), s
                    )
                    is Ordering.EQUAL
                )
                assert classify_stability(both, s).is_semistable == expected


def test_schur_stable_implies_end_dimension_one(f2_universe):
    s = x2_slope(1)
    for rep in f2_universe:
        if classify_stability(rep, s) is Verdict.STABLE:
            assert len(hom_space(rep, rep)) == 1
