from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import rand_fraction, rand_scalar
from wittthreads import witt
from wittthreads.exactnum import ONE, ZERO, Scalar
from wittthreads.families import FamilyLabel, make_family, vlm_b
from wittthreads.modulecore import (
    BadWindowError,
    DefiningSet,
    decompose,
    dualize,
    generate,
    graded_isomorphic,
    make_set,
    normalize,
    subquotient,
    zero_pattern,
)

f = Fraction


def density_raw(lam, mu, n_plus_1):
    alpha = [Scalar.of(f(i) + mu - 2 * lam) for i in range(1, n_plus_1)]
    beta = [Scalar.of(f(j) + mu - 3 * lam) for j in range(1, n_plus_1 - 1)]
    return make_set(alpha, beta, witt.STANDARD)


# -- normalize ----------------------------------------------------------------


def test_normalize_density_module_gives_uv_coordinates():
    # raw constants (i + mu - 2 lam, j + mu - 3 lam) normalize to
    # b_i = 6(u+i)/((v+i)(v+i+1)) with u = mu - 3 lam, v = mu - 2 lam
    lam, mu = f(-2), f(-3)
    nds, gamma = normalize(density_raw(lam, mu, 12))
    assert list(nds.beta_or_b) == vlm_b(mu - 3 * lam, mu - 2 * lam, 12)
    assert gamma[0] == ONE


def test_normalize_fixpoint():
    ds = make_family(FamilyLabel("C", {"x": f(5, 2)}), 10)
    nds, gamma = normalize(ds)
    assert nds == ds
    assert all(g == ONE for g in gamma)


def test_normalize_is_idempotent(rng):
    ds = density_raw(f(1, 2), f(-7, 3), 11)
    once, _ = normalize(ds)
    twice, _ = normalize(once)
    assert once == twice


def test_normalize_block_leaders_reset_at_zeros():
    # one alpha zero: the two blocks are normalized independently
    alpha = [2, 3, 0, 5, 7]
    beta = [1, 1, 1, 1]
    nds, gamma = normalize(make_set(alpha, beta, witt.STANDARD))
    assert nds.alpha == (ONE, ONE, ZERO, ONE, ONE)
    assert gamma[3] == ONE  # leading gamma of the second block


def test_normalize_witness_transforms_b_correctly(rng):
    ds = density_raw(f(3, 4), f(1, 5), 10)
    nds, gamma = normalize(ds)
    for j in range(1, ds.n_plus_1 - 1):
        expected = ds.beta_or_b[j - 1] * 6 * gamma[j - 1] / gamma[j + 1]
        assert nds.beta_or_b[j - 1] == expected


# -- zero patterns ------------------------------------------------------------


def test_zero_pattern_kinds():
    assert zero_pattern(make_set([1, 1, 1], [1, 1])).kind == "A"
    p = zero_pattern(make_set([1, 0, 1, 1], [1, 1, 1]))
    assert (p.kind, p.k) == ("B", 2)
    p = zero_pattern(make_set([1, 0, 0, 1], [1, 1, 1]))
    assert (p.kind, p.k) == ("C", 2)
    p = zero_pattern(make_set([0, 1, 1, 0], [1, 1, 1]))
    assert p.kind == "degenerate" and p.zeros == (1, 4)


# -- dualize ------------------------------------------------------------------


def test_dualize_constant_family():
    x = f(5, 3)
    assert dualize(make_family(FamilyLabel("C", {"x": x}), 12)) == make_family(
        FamilyLabel("C", {"x": -x}), 12
    )


def test_dualize_standard_convention_reverses_and_negates():
    ds = density_raw(f(1), f(2), 8)
    dd = dualize(ds)
    assert dd.alpha == tuple(-a for a in reversed(ds.alpha))
    assert dd.beta_or_b == tuple(-b for b in reversed(ds.beta_or_b))


@given(st.integers(5, 12), st.integers(0, 10**6))
@settings(max_examples=30)
def test_dualize_is_involution(n_plus_1, seed):
    import random

    r = random.Random(seed)
    alpha = [rand_scalar(r) for _ in range(n_plus_1 - 1)]
    beta = [rand_scalar(r) for _ in range(n_plus_1 - 2)]
    ds = make_set(alpha, beta, witt.STANDARD)
    assert dualize(dualize(ds)) == ds
    nds, _ = normalize(ds)
    assert dualize(dualize(nds)) == nds


def test_dual_of_deformed_family_is_stated_partner():
    t = f(9, 7)
    lhs = dualize(make_family(FamilyLabel("Vt23", {"t": t}), 12))
    rhs = make_family(FamilyLabel("Vt13n", {"t": t}), 12)
    assert graded_isomorphic(lhs, rhs) is not None


# -- subquotient ---------------------------------------------------------------


def test_subquotient_full_window_is_identity():
    ds = make_family(FamilyLabel("Vlm", {"u": 3, "v": 1}), 10)
    assert subquotient(ds, 1, 10) == ds


def test_subquotient_single_vector():
    ds = make_family(FamilyLabel("Vlm", {"u": 3, "v": 1}), 10)
    w = subquotient(ds, 4, 4)
    assert w.n_plus_1 == 1 and w.alpha == () and w.beta_or_b == ()


def test_subquotient_nine_dim_window():
    # the window f_k .. f_{k+8} of a one-zero module is the nine-dimensional
    # subquotient used to anchor the classification
    ds = make_family(FamilyLabel("Vq", {"lambda": f(5, 3), "k": 6}), 18)
    w = subquotient(ds, 6, 14)
    assert w.n_plus_1 == 9
    assert w.zero_positions() == (1,)
    assert w.beta_or_b == ds.beta_or_b[5:12]


def test_subquotient_bad_window():
    ds = make_family(FamilyLabel("C", {"x": 1}), 8)
    with pytest.raises(BadWindowError):
        subquotient(ds, 0, 3)
    with pytest.raises(BadWindowError):
        subquotient(ds, 5, 9)


# -- decompose -----------------------------------------------------------------


def test_decompose_one_zero_criterion():
    # split exactly when both neighbors of the zero vanish
    k, n1 = 5, 14
    b = [rand_fraction(__import__("random").Random(3))] * (n1 - 2)
    alpha = [0 if i == k else 1 for i in range(1, n1)]
    b = [f(1)] * (n1 - 2)
    b[k - 2] = f(0)
    b[k - 1] = f(0)
    ds = make_set(alpha, b)
    out = decompose(ds)
    assert out is not None
    left, right, m = out
    assert m == k and left.n_plus_1 == k and right.n_plus_1 == n1 - k
    b[k - 2] = f(2)
    assert decompose(make_set(alpha, b)) is None


def test_decompose_generic_density_module_has_no_split():
    ds = make_family(FamilyLabel("Vlm", {"u": f(1, 2), "v": f(3, 7)}), 12)
    assert decompose(ds) is None


def test_decompose_single_leading_vector():
    # a zero at the first position with vanishing first b splits off <f_1>
    ds = make_set([0, 1, 1, 1, 1, 1, 1, 1], [0, 3, 2, f(3, 2), f(6, 5), 1, f(6, 7)])
    out = decompose(ds)
    assert out is not None and out[2] == 1
    assert out[0].n_plus_1 == 1


def test_decompose_parts_regenerate_block_diagonal_action():
    k, n1 = 5, 12
    alpha = [0 if i == k else 1 for i in range(1, n1)]
    b = [f(j + 1, j + 2) for j in range(1, n1 - 1)]
    b[k - 2] = f(0)
    b[k - 1] = f(0)
    ds = make_set(alpha, b)
    left, right, m = decompose(ds)
    whole = generate(ds)
    tl, tr = generate(left), generate(right)
    for i in range(1, n1):
        for pos in range(1, n1 - i + 1):
            c = whole.coeff(i, pos)
            if pos + i <= m:
                assert c == tl.coeff(i, pos)
            elif pos > m:
                assert c == tr.coeff(i, pos - m)
            else:
                assert c.is_zero()  # nothing crosses the split


# -- graded isomorphism --------------------------------------------------------


def test_isomorphic_to_own_rescaling(rng):
    ds = make_family(FamilyLabel("D1", {"k": 4, "t": f(7, 5)}), 14)
    # rescale by random block constants: same module, witness must exist
    b = list(ds.beta_or_b)
    c = Scalar.of(f(3, 7))
    k = 4
    for j in (k - 1, k):  # cross-boundary entries scale together
        b[j - 1] = b[j - 1] * c
    other = DefiningSet(ds.n_plus_1, witt.TILDE, ds.alpha, tuple(b))
    w = graded_isomorphic(ds, other)
    assert w is not None


def test_isomorphism_applies_witness_correctly(rng):
    a = density_raw(f(1, 3), f(2, 5), 10)
    nb, _ = normalize(a)
    w = graded_isomorphic(a, nb)
    assert w is not None
    # conjugating a's constants by the witness yields exactly nb's constants
    for i in range(1, a.n_plus_1 - 1):
        assert a.alpha[i - 1] * w[i - 1] / w[i] == nb.alpha[i - 1]
    for j in range(1, a.n_plus_1 - 2):
        assert a.beta_or_b[j - 1] * 6 * w[j - 1] / w[j + 1] == nb.beta_or_b[j - 1]


def test_deformation_degeneration_identity():
    # the first-slot deformation at its special value is the density module
    lhs = make_family(FamilyLabel("Vt01", {"t": 6}), 12)
    rhs = make_family(FamilyLabel("Vlm", {"u": 1, "v": 0}), 12)
    assert graded_isomorphic(lhs, rhs) is not None


def test_non_isomorphic_pair():
    # the decomposable one-zero quotient vs the rigid module with the same
    # b-values: different alpha patterns, no witness
    n1 = 12
    v01 = density_raw(f(0), f(-1), n1)  # alpha_1 = 0
    tv01 = make_family(FamilyLabel("TV01", {}), n1)
    assert zero_pattern(normalize(v01)[0]).k == zero_pattern(tv01).k == 1
    assert graded_isomorphic(v01, tv01) is None
    # and the no-zero module with b = 6/i is not isomorphic to either
    vm12 = make_family(FamilyLabel("Vlm", {"u": 1, "v": 0}), n1)
    assert graded_isomorphic(vm12, tv01) is None


def test_quotient_pair_non_isomorphic_but_submodules_agree():
    # the raw (0,-1) and (-1,-2) density quotients differ (one splits, the
    # other has no zero), yet their windows above the first vector agree
    n1 = 12
    v01 = density_raw(f(0), f(-1), n1)
    vm12 = density_raw(f(-1), f(-2), n1)
    assert graded_isomorphic(v01, vm12) is None
    assert decompose(normalize(v01)[0]) is not None
    assert decompose(normalize(vm12)[0]) is None
    sub_a = subquotient(v01, 2, n1)
    sub_b = subquotient(vm12, 2, n1)
    assert graded_isomorphic(sub_a, sub_b) is not None


def test_isomorphism_is_equivalence(rng):
    base = make_family(FamilyLabel("D0", {"k": 5, "t": f(2, 3)}), 13)
    def rescaled(c1, c2):
        b = list(base.beta_or_b)
        k = 5
        b[k - 2] = b[k - 2] * c1   # b_{k-1}: block1/block2 gauge
        b[k - 1] = b[k - 1] * c2   # b_k: same gauge pair
        return DefiningSet(base.n_plus_1, witt.TILDE, base.alpha, tuple(b))
    x = rescaled(Scalar.of(f(2, 5)), Scalar.of(f(2, 5)))
    y = rescaled(Scalar.of(f(-3)), Scalar.of(f(-3)))
    assert graded_isomorphic(base, base) is not None  # reflexive
    assert (graded_isomorphic(base, x) is None) == (graded_isomorphic(x, base) is None)
    if graded_isomorphic(base, x) and graded_isomorphic(x, y):
        assert graded_isomorphic(base, y) is not None  # transitive


def test_normalize_preserves_isomorphism_class(rng):
    ds = density_raw(f(-1, 2), f(4, 3), 9)
    nds, _ = normalize(ds)
    assert graded_isomorphic(ds, nds) is not None


def test_zero_pattern_stable_under_normalize_and_rescale(rng):
    alpha = [2, 0, 3, 1, 0, 0, 4, 1]
    beta = [rand_scalar(rng) for _ in range(7)]
    ds = make_set(alpha, beta, witt.STANDARD)
    nds, _ = normalize(ds)
    assert ds.zero_positions() == nds.zero_positions()
