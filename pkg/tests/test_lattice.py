from fractions import Fraction

import pytest

from monolink.errors import DimensionMismatch, NotDivisible, SearchExhausted
from monolink.lattice import (
    CohomologyClass,
    IntersectionForm,
    blow_up,
    find_hyperbolic_pair,
    is_characteristic,
    is_good,
    lambda_candidates,
    orthogonal_complement,
    pair,
    square,
)

from conftest import hyperbolic_gram


def _rank_over_q(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    row = 0
    for col in range(cols):
        piv = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                f = m[r][col] / m[row][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        rank += 1
        row += 1
    return rank


def test_form_construction_checks():
    with pytest.raises(ValueError):
        IntersectionForm([[0, 1], [2, 0]])  # not symmetric
    with pytest.raises(ValueError):
        IntersectionForm([[0, 0], [0, 1]])  # degenerate
    with pytest.raises(ValueError):
        IntersectionForm([[0, 1], [1, 0]], b_plus=2)  # wrong inertia
    with pytest.raises(DimensionMismatch):
        IntersectionForm([[0, 1, 0], [1, 0, 0]])


def test_signature_and_determinant(form_h, k3):
    assert form_h.b_plus == 1 and form_h.b_minus == 1
    assert form_h.determinant() == -1
    assert k3.manifold.form.b_plus == 3
    assert k3.manifold.form.b_minus == 19
    assert abs(k3.manifold.form.determinant()) == 1


def test_pair_examples(form_h, k3):
    a = CohomologyClass((1, 0))
    b = CohomologyClass((0, 1))
    assert pair(form_h, a, b) == 1
    assert pair(form_h, a, a) == 0
    zero = CohomologyClass.zero(22)
    assert pair(k3.manifold.form, zero, zero) == 0
    with pytest.raises(DimensionMismatch):
        pair(form_h, a, CohomologyClass((1, 0, 0)))


def test_square_parity_follows_diagonal(k3, e3):
    # x.x = sum_i gram_ii x_i^2 (mod 2): even forms have even squares only.
    for fx in (k3, e3):
        form = fx.manifold.form
        for probe in range(5):
            coords = tuple((probe * i + i * i) % 3 - 1 for i in range(form.rank))
            x = CohomologyClass(coords)
            diag = sum(form.gram[i][i] * coords[i] * coords[i] for i in range(form.rank))
            assert (square(form, x) - diag) % 2 == 0


def test_pair_symmetric_bilinear(form_h):
    u = CohomologyClass((3, -2))
    v = CohomologyClass((1, 5))
    w = CohomologyClass((-4, 7))
    assert pair(form_h, u, v) == pair(form_h, v, u)
    assert pair(form_h, u + w, v) == pair(form_h, u, v) + pair(form_h, w, v)


def test_is_characteristic(form_h, k3):
    assert is_characteristic(k3.manifold.form, CohomologyClass.zero(22))
    assert is_characteristic(form_h, CohomologyClass((0, 0)))
    odd = IntersectionForm([[1]])
    assert is_characteristic(odd, CohomologyClass((1,)))
    assert not is_characteristic(odd, CohomologyClass((0,)))


def test_is_good():
    assert is_good(CohomologyClass((1, 0, 0)))
    assert not is_good(CohomologyClass((0, 0, 0)))
    assert not is_good(CohomologyClass((2, 4, 6)))


def test_orthogonal_complement_full_and_empty(form_h):
    full = orthogonal_complement(form_h, [CohomologyClass.zero(2)])
    assert len(full) == 2
    nothing = orthogonal_complement(
        form_h, [CohomologyClass((1, 0)), CohomologyClass((0, 1))]
    )
    assert nothing == []


def test_orthogonal_complement_isotropic_line(form_h):
    basis = orthogonal_complement(form_h, [CohomologyClass((1, 0))])
    assert len(basis) == 1
    (gen,) = basis
    assert pair(form_h, gen, CohomologyClass((1, 0))) == 0
    assert gen.coords in ((1, 0), (-1, 0))


def test_orthogonal_complement_rank_and_orthogonality(e3):
    form = e3.manifold.form
    K = e3.manifold.basic_classes[0].c1
    basis = orthogonal_complement(form, [K])
    constraint = [form.apply(K)]
    assert len(basis) == form.rank - _rank_over_q(constraint)
    assert all(pair(form, v, K) == 0 for v in basis)
    # the output really is a basis: its coordinate matrix has full rank
    assert _rank_over_q([list(v.coords) for v in basis]) == len(basis)


def test_find_hyperbolic_pair_in_h_block():
    form = IntersectionForm(hyperbolic_gram(1))
    basis = orthogonal_complement(form, [CohomologyClass.zero(2)])
    e1, e2 = find_hyperbolic_pair(form, basis)
    assert square(form, e1) == 0
    assert square(form, e2) == 0
    assert pair(form, e1, e2) == 1


def test_find_hyperbolic_pair_negative_definite():
    form = IntersectionForm([[-1, 0], [0, -1]])
    with pytest.raises(SearchExhausted):
        find_hyperbolic_pair(form, orthogonal_complement(form, []))


def test_find_hyperbolic_pair_k3(k3):
    form = k3.manifold.form
    basis = orthogonal_complement(form, [CohomologyClass.zero(22)])
    e1, e2 = find_hyperbolic_pair(form, basis)
    assert square(form, e1) == 0 and square(form, e2) == 0
    assert pair(form, e1, e2) == 1


def test_find_hyperbolic_pair_in_basic_class_complement(e3):
    form = e3.manifold.form
    K = e3.manifold.basic_classes[0].c1
    basis = orthogonal_complement(form, [K])
    e1, e2 = find_hyperbolic_pair(form, basis)
    assert square(form, e1) == 0 and square(form, e2) == 0
    assert pair(form, e1, e2) == 1
    assert pair(form, e1, K) == 0 and pair(form, e2, K) == 0


def test_find_hyperbolic_pair_odd_diagonal_needs_support_three():
    # <1> + 2<-1> contains a hyperbolic pair but only on three coordinates.
    form = IntersectionForm([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    basis = orthogonal_complement(form, [])
    e1, e2 = find_hyperbolic_pair(form, basis)
    assert square(form, e1) == 0 and square(form, e2) == 0
    assert pair(form, e1, e2) == 1


def test_lambda_candidates_squares(form_h):
    e1 = CohomologyClass((1, 0))
    e2 = CohomologyClass((0, 1))
    lam0, lam1 = lambda_candidates(e1, e2, chi=24, sigma=-16)
    assert lam0.coords == (1, -4)
    assert lam1.coords == (1, -2)
    assert square(form_h, lam0) == -8
    assert square(form_h, lam1) == -4
    assert all((a - b) % 2 == 0 for a, b in zip(lam0.coords, lam1.coords))
    with pytest.raises(NotDivisible):
        lambda_candidates(e1, e2, chi=5, sigma=0)


def test_lambda_candidates_k3_value(form_h):
    # chi + sigma = 8: lam1^2 = 4 - (chi+sigma) = -4
    _, lam1 = lambda_candidates(
        CohomologyClass((1, 0)), CohomologyClass((0, 1)), 24, -16
    )
    assert square(form_h, lam1) == 4 - (24 - 16)


def test_blow_up(form_h):
    blown, e = blow_up(form_h)
    assert blown.gram == ((0, 1, 0), (1, 0, 0), (0, 0, -1))
    assert square(blown, e) == -1
    assert pair(blown, e, CohomologyClass((1, 0, 0))) == 0
    assert abs(blown.determinant()) == abs(form_h.determinant())


def test_blow_up_preserves_unimodularity(k3):
    blown, _ = blow_up(k3.manifold.form)
    assert blown.is_unimodular()
