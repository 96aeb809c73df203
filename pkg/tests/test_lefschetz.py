from fractions import Fraction

import pytest

from purity import linalg
from purity.cohomology import (GEN_H, blowup, build_ring, gen_e, proj, product)
from purity.fields import field_spec
from purity.geometry import ambient_geometry
from purity.lefschetz import (LefschetzError, check_hard_lefschetz,
                              check_hodge_standard, hodge_sweep,
                              invariant_form, is_positive, lefschetz_pairing_gram,
                              make_context, normalize_invariant,
                              omega_form, omega_vector, primitive_decomposition,
                              primitive_gram, product_lefschetz_vector)


def b2_ring(q=2):
    return build_ring(blowup(2, q))


def omega_ctx(n, q):
    ring = build_ring(blowup(n, q))
    return make_context(ring, omega_vector(ring, q))


def test_projective_space_lefschetz():
    ring = build_ring(proj(3))
    ctx = make_context(ring, ring.divisor_vector({GEN_H: Fraction(1)}))
    ok, report = check_hard_lefschetz(ctx)
    assert ok and all(r["rank"] == 1 for r in report)
    dec = primitive_decomposition(ctx)
    assert linalg.shape(dec.primitive[0])[1] == 1
    assert linalg.shape(dec.primitive[1])[1] == 0
    assert primitive_gram(ctx, 0) == [[Fraction(1)]]
    assert primitive_gram(ctx, 1) == []     # odd degree: empty
    ok, _ = check_hodge_standard(ctx)
    assert ok


def test_b2_context_shapes():
    ring = b2_ring()
    ctx = make_context(ring, omega_vector(ring))
    assert linalg.shape(ctx.operators[0]) == (8, 1)
    assert linalg.shape(ctx.operators[1]) == (1, 8)


def test_b2_omega_hodge_and_inertia():
    ctx = omega_ctx(2, 2)
    ok, _ = check_hard_lefschetz(ctx)
    assert ok
    hodge, report = check_hodge_standard(ctx)
    assert hodge
    deg2 = report["degrees"][1]
    assert deg2["primitive_dim"] == 7
    assert (deg2["inertia"]["n_plus"], deg2["inertia"]["n_minus"]) == (7, 1)
    assert deg2["signature"] == 6
    # the signed pairing in degree 1 is minus the cup form: cup inertia (1,7)
    gram = lefschetz_pairing_gram(ctx, 1)
    cup = linalg.scale(gram, -1)
    sig = linalg.symmetric_signature(cup)
    assert (sig.n_plus, sig.n_minus, sig.n_zero) == (1, 7, 0)


@pytest.mark.parametrize("n,q", [(1, 2), (1, 3), (2, 2), (2, 3), (2, 4)])
def test_omega_passes_lefschetz_and_hodge(n, q):
    ctx = omega_ctx(n, q)
    assert check_hard_lefschetz(ctx)[0]
    assert check_hodge_standard(ctx)[0]


def test_primitive_dims_do_not_depend_on_the_class():
    ring = b2_ring()
    geom = ambient_geometry(2, field_spec(2))
    pts = geom.subvarieties(0)
    # two different positive invariant classes
    v1 = omega_vector(ring)
    form = normalize_invariant(2, 2, 9, [-1, 0])
    v2 = ring.divisor_vector(form.as_divisor(ring.spec))
    dims = []
    for v in (v1, v2):
        dec = primitive_decomposition(make_context(ring, v))
        dims.append([linalg.shape(dec.primitive[j])[1] for j in (0, 1)])
    assert dims[0] == dims[1] == [1, 7]


def test_invariant_form_roundtrip_and_omega():
    form = omega_form(2, 2)
    assert (form.alpha, form.levels[0]) == (4, -1)
    ring = b2_ring()
    cls = form.as_divisor(ring.spec)
    back = invariant_form(ring.spec, cls)
    assert back == form
    # h itself
    triv = invariant_form(ring.spec, {GEN_H: Fraction(1)})
    assert triv.alpha == 1 and all(a == 0 for a in triv.levels)


def test_invariant_form_rejects_non_invariant():
    ring = b2_ring()
    geom = ambient_geometry(2, field_spec(2))
    P = geom.subvarieties(0)[0]
    with pytest.raises(LefschetzError):
        invariant_form(ring.spec, {gen_e(P): Fraction(1)})


def test_positivity_criterion():
    assert is_positive(omega_form(2, 2))                       # margin 5/7
    assert not is_positive(normalize_invariant(2, 2, 0, [1, 0]))
    assert not is_positive(normalize_invariant(2, 2, 1, [-1, 0]))  # -1+3/7 < 0
    form = omega_form(2, 2)
    margin = form.levels[0] + form.alpha * Fraction(3, 7)
    assert margin == Fraction(5, 7)


def test_folding_the_top_level_preserves_the_class():
    # alpha h + a_(n-1) D_(n-1) rewritten through the hyperplane relation
    ring = b2_ring()
    form = normalize_invariant(2, 2, 1, [0, 1])
    assert form.levels[1] == 0
    direct = ring.divisor_vector(form.as_divisor(ring.spec))
    from purity.cohomology import hyperplane_relation
    total = {GEN_H: Fraction(1)}
    geomv = ambient_geometry(2, field_spec(2))
    for line in geomv.subvarieties(1):
        for k, c in hyperplane_relation(ring.spec, line).items():
            total[k] = total.get(k, 0) + c
    assert ring.divisor_vector(total) == direct


def test_negative_controls():
    ring = b2_ring()
    geom = ambient_geometry(2, field_spec(2))
    P = geom.subvarieties(0)[0]
    ep = ring.divisor_vector({gen_e(P): Fraction(1)})
    ctx = make_context(ring, ep)
    # e_P squares to -1, an isomorphism H^0 -> H^4: hard Lefschetz holds,
    # and the failure shows up in Hodge positivity
    assert check_hard_lefschetz(ctx)[0]
    assert not check_hodge_standard(ctx)[0]
    # h - e_P squares to zero: hard Lefschetz fails outright
    hmep = ring.divisor_vector({GEN_H: Fraction(1), gen_e(P): Fraction(-1)})
    assert not check_hard_lefschetz(make_context(ring, hmep))[0]
    with pytest.raises(LefschetzError):
        primitive_decomposition(make_context(ring, hmep))


def test_sweep_constant_omega():
    ring = b2_ring()
    v = omega_vector(ring)
    rows = hodge_sweep(ring, v, v, 2)
    assert all(r["hard_lefschetz"] and r["hodge_standard"] for r in rows)


def test_sweep_blowdown_family():
    ring = b2_ring()
    geom = ambient_geometry(2, field_spec(2))
    P = geom.subvarieties(0)[0]
    l0 = ring.divisor_vector({GEN_H: Fraction(4)})
    l1 = ring.divisor_vector({GEN_H: Fraction(4), gen_e(P): Fraction(-1)})
    rows = hodge_sweep(ring, l0, l1, 8)
    assert len(rows) == 9
    assert all(r["hard_lefschetz"] and r["hodge_standard"] for r in rows)


def test_sweep_to_exceptional_degenerates_in_the_middle():
    ring = b2_ring()
    geom = ambient_geometry(2, field_spec(2))
    P = geom.subvarieties(0)[0]
    rows = hodge_sweep(ring, ring.divisor_vector({GEN_H: Fraction(1)}),
                       ring.divisor_vector({gen_e(P): Fraction(1)}), 4)
    by_t = {r["t"]: r for r in rows}
    assert by_t[Fraction(1, 2)]["hard_lefschetz"] is False
    assert by_t[Fraction(1)]["hodge_standard"] is False
    assert by_t[Fraction(0)]["hodge_standard"] is True


def test_product_contexts():
    r11 = build_ring(product(proj(1), proj(1)))
    l11 = product_lefschetz_vector(r11, [[Fraction(1)], [Fraction(1)]])
    ctx = make_context(r11, l11)
    assert check_hard_lefschetz(ctx)[0]
    assert check_hodge_standard(ctx)[0]
    b2 = build_ring(blowup(2, 2))
    r12 = build_ring(product(proj(1), blowup(2, 2)))
    l12 = product_lefschetz_vector(r12, [[Fraction(1)], omega_vector(b2)])
    ctx12 = make_context(r12, l12)
    assert check_hard_lefschetz(ctx12)[0]
    assert check_hodge_standard(ctx12)[0]


def test_operator_is_self_adjoint_for_the_pairing():
    # <L a, b> = <a, L b> between complementary degrees
    import random
    ring = build_ring(blowup(3, 2))
    ctx = make_context(ring, omega_vector(ring))
    rng = random.Random(9)
    for _ in range(10):
        a = [Fraction(rng.randint(-2, 2)) for _ in ring.basis[1]]
        b = [Fraction(rng.randint(-2, 2)) for _ in ring.basis[1]]
        la = linalg.matvec(ctx.operators[1], a)
        lb = linalg.matvec(ctx.operators[1], b)
        assert ring.pair(2, la, b) == ring.pair(1, a, lb)


def test_b3_omega_full_verification():
    ctx = omega_ctx(3, 2)
    assert check_hard_lefschetz(ctx)[0]
    ok, report = check_hodge_standard(ctx)
    assert ok
    prim_dims = [row["primitive_dim"] for row in report["degrees"]]
    assert prim_dims == [1, 50]
