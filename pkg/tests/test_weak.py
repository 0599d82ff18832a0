import pytest

from trisect import hopf
from trisect.errors import MissingIrreps, TrisectError
from trisect.groups import coset_gset, cyclic, opposite, point_gset, product, regular_gset
from trisect.scalars import Cyc

ONE = Cyc.rational(1)


def _diag_action():
    k = product(cyclic(2), opposite(cyclic(2)))
    return coset_gset(k, [3])  # |M| = 2


def test_point_action_gives_ordinary_hopf_algebras():
    k = product(cyclic(2), opposite(cyclic(3)))
    cross, vec = hopf.weak_hopf_from_action(point_gset(k))
    assert not cross.weak and not vec.weak
    assert cross.dim == k.order and vec.dim == k.order
    for h in (cross, vec):
        assert max(hopf.check_hopf_axioms(h).values()) == 0.0


def test_weak_dimensions_and_axioms():
    m = _diag_action()
    cross, vec = hopf.weak_hopf_from_action(m)
    assert cross.weak and vec.weak
    assert cross.dim == m.size**2 * m.group.order == 16
    assert max(hopf.check_hopf_axioms(cross).values()) == 0.0
    assert max(hopf.check_hopf_axioms(vec).values()) == 0.0


def test_weak_structure_tensors_are_mutual_transposes():
    m = _diag_action()
    cross, vec = hopf.weak_hopf_from_action(m)
    d = hopf.dual(cross)
    assert d.mult == vec.mult
    assert d.comult == vec.comult
    assert d.unit == vec.unit and d.counit == vec.counit
    assert d.antipode == vec.antipode


def test_weak_integrals():
    m = _diag_action()
    cross, vec = hopf.weak_hopf_from_action(m)
    lam, ell = hopf.weak_integrals_from_action(m)
    assert max(hopf.check_integral(cross, lam).values()) == 0.0
    assert max(hopf.check_integral(vec, ell).values()) == 0.0


def test_nontransitive_action_rejected():
    k = cyclic(2)
    trivial = __import__("trisect.groups", fromlist=["GSet"]).GSet(
        k, ("x", "y"), ((0, 1), (0, 1))
    )
    with pytest.raises(TrisectError):
        hopf.weak_hopf_from_action(trivial)


def test_simple_reps_point_are_group_irreps():
    k = product(cyclic(2), opposite(cyclic(2)))
    reps = hopf.weak_simple_reps(point_gset(k))
    assert len(reps) == 4 and all(r.dim == 1 for r in reps)
    assert sum(r.dim**2 for r in reps) == k.order


def test_simple_reps_dimension_bookkeeping():
    for m in (_diag_action(), regular_gset(cyclic(3))):
        reps = hopf.weak_simple_reps(m)
        assert sum(r.dim**2 for r in reps) == m.size**2 * m.group.order


def test_simple_reps_are_algebra_maps():
    m = _diag_action()
    cross, _ = hopf.weak_hopf_from_action(m)
    reps = hopf.weak_simple_reps(m)
    import itertools

    for rep in reps:
        for i, j in itertools.product(range(cross.dim), repeat=2):
            prod = cross.product_basis(i, j)
            lhs = {}
            for (r, s), v in rep.mats[i].items():
                for (s2, t), w in rep.mats[j].items():
                    if s == s2:
                        key = (r, t)
                        lhs[key] = lhs.get(key, ONE * 0) + v * w
            rhs = {}
            for k, c in prod.items():
                for key, v in rep.mats[k].items():
                    rhs[key] = rhs.get(key, ONE * 0) + c * v
            keys = set(lhs) | set(rhs)
            assert all((lhs.get(k, ONE * 0) - rhs.get(k, ONE * 0)).is_zero() for k in keys)


def test_nonabelian_stabilizer_requires_explicit_reps():
    from trisect.groups import symmetric

    k = product(symmetric(3), opposite(cyclic(2)))
    with pytest.raises(MissingIrreps):
        hopf.weak_simple_reps(point_gset(k))


def test_weak_triplet_checks_and_pairing_values():
    m = _diag_action()
    t = hopf.weak_triplet(cyclic(2), cyclic(2), m)
    rep = hopf.check_triplet(t)
    assert max(rep.values()) == 0.0
    assert all(v == 1 for v in t.tau_BC.values())  # 0/1-valued delta formula
    assert all(v == 1 for v in t.tau_AB.values())
    assert all(v == 1 for v in t.tau_CA.values())


def test_weak_triplet_point_reduces_to_group_triplet():
    t1 = hopf.weak_triplet(cyclic(2), cyclic(3))
    tg = hopf.group_triplet(cyclic(2), cyclic(3))
    assert t1.tau_AB == tg.tau_AB
    assert t1.tau_BC == tg.tau_BC
    assert t1.tau_CA == tg.tau_CA
    assert t1.A.mult == tg.A.mult and t1.A.comult == tg.A.comult
