from fractions import Fraction

import pytest

from trisect import hopf
from trisect.errors import MissingIrreps, NonSemisimple
from trisect.groups import cyclic, symmetric
from trisect.scalars import Cyc

ONE = Cyc.rational(1)


@pytest.mark.parametrize("g", [cyclic(2), cyclic(5), symmetric(3)])
def test_group_and_function_algebra_axioms(g):
    for h in (hopf.group_algebra(g), hopf.function_algebra(g)):
        rep = hopf.check_hopf_axioms(h)
        assert max(rep.values()) == 0.0, (h.name, rep)


def test_perturbed_tensor_reports_nonzero_residual():
    h = hopf.group_algebra(cyclic(3))
    h.mult[(1, 1)] = {2: Cyc.rational(2)}  # break associativity/antipode
    rep = hopf.check_hopf_axioms(h)
    assert max(rep.values()) > 0


def test_dual_of_group_algebra_is_function_algebra():
    g = cyclic(4)
    d = hopf.dual(hopf.group_algebra(g))
    f = hopf.function_algebra(g)
    assert d.mult == f.mult and d.comult == f.comult
    assert d.unit == f.unit and d.counit == f.counit and d.antipode == f.antipode


def test_dual_dual_and_op_op_identity():
    h = hopf.group_algebra(symmetric(3))
    dd = hopf.dual(hopf.dual(h))
    assert dd.mult == h.mult and dd.comult == h.comult
    oo = hopf.op(hopf.op(h))
    assert oo.mult == h.mult
    cc = hopf.cop(hopf.cop(h))
    assert cc.comult == h.comult


def test_integrals_match_the_trace_formula():
    g = cyclic(4)
    ell = hopf.compute_integral(hopf.group_algebra(g))
    assert ell == {i: ONE for i in range(4)}  # sum of all group elements
    ellf = hopf.compute_integral(hopf.function_algebra(g))
    assert ellf == {0: Cyc.rational(4)}  # |G| * delta_e
    for h in (hopf.group_algebra(g), hopf.function_algebra(symmetric(3))):
        ell = hopf.compute_integral(h)
        assert h.counit_of(ell) == Cyc.rational(h.dim)
        assert max(hopf.check_integral(h, ell).values()) == 0.0


def test_nonsemisimple_rejreported_via_antipode():
    h = hopf.group_algebra(cyclic(3))
    h.antipode[1] = {1: ONE}  # no longer an involution
    with pytest.raises(NonSemisimple):
        hopf.compute_integral(h)


def test_canonical_dual_integral():
    g = cyclic(3)
    h = hopf.group_algebra(g)
    chars = g.character_values()
    irreps = [hopf.Rep(f"chi{r}", 1, [{(0, 0): chars[r][i]} for i in range(3)]) for r in range(3)]
    lam = hopf.canonical_dual_integral(h, irreps)
    # lambda = |G| delta_e as a functional on C[G]
    assert lam == {0: Cyc.rational(3)}
    ell_norm = {k: v * Fraction(1, 3) for k, v in hopf.compute_integral(h).items()}
    assert hopf.apply_functional(lam, ell_norm) == 1
    with pytest.raises(MissingIrreps):
        hopf.canonical_dual_integral(h, irreps[:2])


def test_kashaev_pairing_values():
    t = hopf.kashaev_triplet(4)
    assert t.tau_CA[(1, 1)] == Cyc.rational(Fraction(1, 4)) * Cyc.zeta(4)
    # counit rows: sum over the second slot equals the counit
    rowsum = sum((t.tau_CA[(0, j)] for j in range(4)), ONE * 0)
    assert rowsum == 1  # eps of delta_0 in the function algebra


def test_convolution_inverse_of_kashaev_pairing():
    n = 5
    t = hopf.kashaev_triplet(n)
    inv = hopf.convolution_inverse(t.tau_CA, t.C)
    for a in range(n):
        for b in range(n):
            assert inv[(a, b)] == Cyc.rational(Fraction(1, n)) * Cyc.zeta(n, (-a * b) % n)


def test_trivial_pairing_inverse_is_itself():
    a, b = hopf.group_algebra(cyclic(2)), hopf.group_algebra(cyclic(3))
    tau = hopf.trivial_pairing(a, b)
    assert hopf.convolution_inverse(tau, a) == tau


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_kashaev_triplet_identities(n):
    rep = hopf.check_triplet(hopf.kashaev_triplet(n))
    assert max(rep.values()) == 0.0


@pytest.mark.parametrize("c,b", [(cyclic(2), cyclic(3)), (symmetric(3), cyclic(4)), (symmetric(3), symmetric(3))])
def test_group_triplet_identities(c, b):
    t = hopf.group_triplet(c, b)
    assert t.A.dim == c.order * b.order
    rep = hopf.check_triplet(t)
    assert max(rep.values()) == 0.0


def test_group_triplet_bc_pairing_trivial():
    t = hopf.group_triplet(cyclic(2), cyclic(3))
    assert all(v == 1 for v in t.tau_BC.values())
    assert len(t.tau_BC) == 6


def test_perturbed_pairing_fails_checks():
    t = hopf.kashaev_triplet(3)
    bad = dict(t.tau_CA)
    bad[(1, 2)] = bad[(1, 2)] + 1
    rep = hopf.check_skew_pairing(bad, t.C, t.A)
    assert max(rep.values()) > 0


def test_trivial_double_is_tensor_product():
    g2, g3 = cyclic(2), cyclic(3)
    a, b = hopf.group_algebra(g2), hopf.group_algebra(g3)
    d = hopf.generalized_double(a, b, hopf.trivial_pairing(a, b))
    for i in range(2):
        for j in range(3):
            for i2 in range(2):
                for j2 in range(3):
                    got = d.product_basis(i * 3 + j, i2 * 3 + j2)
                    assert got == {g2.mul(i, i2) * 3 + g3.mul(j, j2): ONE}


def test_double_contains_factors_as_subalgebras():
    t = hopf.kashaev_triplet(3)
    a, b = t.C, t.A
    d = hopf.generalized_double(a, b, t.tau_CA)
    nb = b.dim

    def embed_a(v):
        return {i * nb + j: c * cu for i, c in v.items() for j, cu in b.unit.items()}

    def embed_b(v):
        return {i * nb + j: cu * c for i, cu in a.unit.items() for j, c in v.items()}

    for i in range(a.dim):
        for i2 in range(a.dim):
            prod = d.product(embed_a({i: ONE}), embed_a({i2: ONE}))
            assert prod == embed_a(a.product_basis(i, i2))
    for j in range(b.dim):
        for j2 in range(b.dim):
            prod = d.product(embed_b({j: ONE}), embed_b({j2: ONE}))
            assert prod == embed_b(b.product_basis(j, j2))


def test_double_axioms_and_integral():
    t = hopf.kashaev_triplet(3)
    d = hopf.generalized_double(t.C, t.A, t.tau_CA)
    assert max(hopf.check_hopf_axioms(d).values()) == 0.0
    la, lb = hopf.compute_integral(t.C), hopf.compute_integral(t.A)
    ell = {i * t.A.dim + j: x * y for i, x in la.items() for j, y in lb.items()}
    assert max(hopf.check_integral(d, ell).values()) == 0.0


def test_drinfeld_double_of_s3():
    a = hopf.group_algebra(symmetric(3))
    asc = hopf.cop(hopf.dual(a))
    d = hopf.generalized_double(asc, a, hopf.canonical_pairing(asc, a), name="D(S3)")
    assert d.dim == 36
    assert max(hopf.check_hopf_axioms(d).values()) == 0.0


def test_reps_from_json():
    data = {
        "algebra": "C[Z/2]",
        "reps": [
            {"name": "triv", "dim": 1, "matrices": [[[1]], [[1]]]},
            {"name": "sign", "dim": 1, "matrices": [[[1]], [[-1]]]},
        ],
    }
    reps = hopf.reps_from_json(data)
    assert [r.name for r in reps] == ["triv", "sign"]
    lam = hopf.canonical_dual_integral(hopf.group_algebra(cyclic(2)), reps)
    assert lam == {0: Cyc.rational(2)}


def test_algebra_json_roundtrip():
    g = cyclic(2)
    h = hopf.group_algebra(g)
    data = {
        "dim": 2,
        "mult": [[[1 if k == g.mul(i, j) else 0 for k in range(2)] for j in range(2)] for i in range(2)],
        "unit": [1, 0],
        "comult": [[[1 if (j, k) == (i, i) else 0 for k in range(2)] for j in range(2)] for i in range(2)],
        "counit": [1, 1],
        "antipode": [[1, 0], [0, 1]],
    }
    h2 = hopf.algebra_from_json(data)
    assert h2.mult == h.mult
    assert max(hopf.check_hopf_axioms(h2).values()) == 0.0
