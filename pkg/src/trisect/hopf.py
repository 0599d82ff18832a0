"""Finite-dimensional (weak) Hopf algebras as sparse structure tensors.

All structure maps are stored sparsely over an explicit basis: ``mult[(i,j)]``
is the expansion of e_i e_j, ``comult[i]`` the expansion of the coproduct of
e_i, and so on.  Scalars are exact cyclotomics (or complex for the float
backend).  Group algebras use group elements as basis, function algebras
delta functions, weak crossed products the triples from the group action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingIrreps, NonSemisimple, TrisectError
from .groups import GSet, Group, opposite, product
from .scalars import Cyc, is_zero

Vec = dict[int, object]          # sparse vector: basis index -> scalar
Mat = dict[tuple[int, int], object]


def _acc(dst: dict, key, val) -> None:
    cur = dst.get(key)
    new = val if cur is None else cur + val
    if is_zero(new, tol=0.0 if isinstance(new, Cyc) else 1e-15):
        dst.pop(key, None)
    else:
        dst[key] = new


def _scale(v: dict, s) -> dict:
    if is_zero(s, tol=0.0 if isinstance(s, Cyc) else 1e-15):
        return {}
    return {k: s * x for k, x in v.items()}


ONE = Cyc.rational(1)


def _mul2(a, b):
    # structure constants are usually exactly 1; skip the field arithmetic then
    if a is ONE:
        return b
    if b is ONE:
        return a
    return a * b


@dataclass
class Rep:
    """A matrix representation: mats[i] is the (sparse) matrix of basis element i."""

    name: str
    dim: int
    mats: list[Mat]

    def matrix(self, i: int) -> Mat:
        return self.mats[i]


@dataclass
class HopfAlgebra:
    name: str
    basis: tuple[str, ...]
    mult: dict[tuple[int, int], Vec]
    unit: Vec
    comult: dict[int, dict[tuple[int, int], object]]
    counit: Vec
    antipode: dict[int, Vec]
    weak: bool = False
    # representations of the *dual* algebra, indexed by this algebra's basis
    # (entry i is the image of the dual basis element of e_i); used by the
    # representation-theoretic bracket backend
    dual_irreps: list[Rep] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    # -- elementwise structure maps -------------------------------------
    def product_basis(self, i: int, j: int) -> Vec:
        return self.mult.get((i, j), {})

    def product(self, v: Vec, w: Vec) -> Vec:
        out: Vec = {}
        for i, a in v.items():
            for j, b in w.items():
                ab = _mul2(a, b)
                for k, c in self.product_basis(i, j).items():
                    _acc(out, k, _mul2(ab, c))
        return out

    def coproduct(self, v: Vec) -> dict[tuple[int, int], object]:
        out: dict[tuple[int, int], object] = {}
        for i, a in v.items():
            for jk, c in self.comult.get(i, {}).items():
                _acc(out, jk, a * c)
        return out

    def iterated_coproduct(self, v: Vec, slots: int) -> dict[tuple[int, ...], object]:
        """Sweedler expansion of v into the given number of tensor slots."""
        if slots < 1:
            raise ValueError("slots must be >= 1")
        cur = {(i,): a for i, a in v.items()}
        while len(next(iter(cur), ())) < slots:
            nxt: dict[tuple[int, ...], object] = {}
            for key, a in cur.items():
                head = key[-1]
                for (j, k), c in self.comult.get(head, {}).items():
                    _acc(nxt, key[:-1] + (j, k), _mul2(a, c))
            cur = nxt
        return cur

    def counit_of(self, v: Vec):
        out = None
        for i, a in v.items():
            c = self.counit.get(i)
            if c is not None:
                term = a * c
                out = term if out is None else out + term
        return ONE * 0 if out is None else out

    def antipode_vec(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in v.items():
            for j, c in self.antipode.get(i, {}).items():
                _acc(out, j, a * c)
        return out

    def antipode_involutive(self) -> bool:
        for i in range(self.dim):
            ss = self.antipode_vec(self.antipode.get(i, {}))
            if set(ss) != {i} or not is_zero(ss[i] - ONE):
                return False
        return True

    # -- weak source/target maps ----------------------------------------
    def source_map(self, v: Vec) -> Vec:
        """eps_s(h) = eps(h 1_(2)) 1_(1)."""
        out: Vec = {}
        unit_cop = self.coproduct(self.unit)
        for (u1, u2), cu in unit_cop.items():
            for i, a in v.items():
                for k, c in self.product_basis(i, u2).items():
                    e = self.counit.get(k)
                    if e is not None:
                        _acc(out, u1, a * cu * c * e)
        return out

    def target_map(self, v: Vec) -> Vec:
        """eps_t(h) = eps(1_(1) h) 1_(2)."""
        out: Vec = {}
        unit_cop = self.coproduct(self.unit)
        for (u1, u2), cu in unit_cop.items():
            for i, a in v.items():
                for k, c in self.product_basis(u1, i).items():
                    e = self.counit.get(k)
                    if e is not None:
                        _acc(out, u2, a * cu * c * e)
        return out

    def __str__(self) -> str:
        return f"{self.name} (dim {self.dim}{', weak' if self.weak else ''})"


def _residual(diff_terms) -> float:
    worst = 0.0
    for x in diff_terms:
        if isinstance(x, Cyc):
            if not x.is_zero():
                worst = max(worst, abs(x.to_complex()))
        else:
            worst = max(worst, abs(x))
    return worst


def _vec_residual(a: Vec, b: Vec) -> float:
    keys = set(a) | set(b)
    zero = ONE * 0
    return _residual(a.get(k, zero) - b.get(k, zero) for k in keys)


# ---------------------------------------------------------------------------
# axiom checking


def check_hopf_axioms(h: HopfAlgebra) -> dict[str, float]:
    return check_weak_axioms(h) if h.weak else check_strong_axioms(h)


def check_strong_axioms(h: HopfAlgebra) -> dict[str, float]:
    n = h.dim
    rep = check_strong_axioms_core(h)

    worst = 0.0
    for i in range(n):
        for j in range(n):
            lhs: dict = {}
            for k, c in h.product_basis(i, j).items():
                for (a, b), c2 in h.comult.get(k, {}).items():
                    _acc(lhs, (a, b), _mul2(c, c2))
            rhs: dict = {}
            for (a1, a2), c1 in h.comult.get(i, {}).items():
                for (b1, b2), c2 in h.comult.get(j, {}).items():
                    c12 = _mul2(c1, c2)
                    for x, cx in h.product_basis(a1, b1).items():
                        for y, cy in h.product_basis(a2, b2).items():
                            _acc(rhs, (x, y), _mul2(c12, _mul2(cx, cy)))
            worst = max(worst, _vec_residual(lhs, rhs))
    rep["comultiplicativity"] = worst

    worst = 0.0
    for i in range(n):
        for j in range(n):
            lhs = h.counit_of(h.product_basis(i, j))
            rhs = (h.counit.get(i, ONE * 0)) * (h.counit.get(j, ONE * 0))
            worst = max(worst, _residual([lhs - rhs]))
    unit_cop = h.coproduct(h.unit)
    target = {}
    for i, a in h.unit.items():
        for j, b in h.unit.items():
            _acc(target, (i, j), a * b)
    worst = max(worst, _vec_residual(unit_cop, target))
    worst = max(worst, _residual([h.counit_of(h.unit) - ONE]))
    rep["unit_counit_compat"] = worst

    worst = 0.0
    for i in range(n):
        lhs: Vec = {}
        rhs: Vec = {}
        for (a, b), c in h.comult.get(i, {}).items():
            sa = h.antipode.get(a, {})
            sb = h.antipode.get(b, {})
            for x, cx in sa.items():
                for k, ck in h.product_basis(x, b).items():
                    _acc(lhs, k, c * cx * ck)
            for y, cy in sb.items():
                for k, ck in h.product_basis(a, y).items():
                    _acc(rhs, k, c * cy * ck)
        eta_eps = _scale(h.unit, h.counit.get(i, ONE * 0))
        worst = max(worst, _vec_residual(lhs, eta_eps))
        worst = max(worst, _vec_residual(rhs, eta_eps))
    rep["antipode"] = worst

    rep["antipode_involutive"] = 0.0 if h.antipode_involutive() else 1.0
    return rep


def check_weak_axioms(h: HopfAlgebra) -> dict[str, float]:
    n = h.dim
    rep: dict[str, float] = {}
    strong = check_strong_axioms_core(h)
    rep.update(strong)

    # Delta(hk) = Delta(h) Delta(k), with no unit compatibility required
    worst = 0.0
    for i in range(n):
        for j in range(n):
            lhs: dict = {}
            for k, c in h.product_basis(i, j).items():
                for ab, c2 in h.comult.get(k, {}).items():
                    _acc(lhs, ab, _mul2(c, c2))
            rhs: dict = {}
            for (a1, a2), c1 in h.comult.get(i, {}).items():
                for (b1, b2), c2 in h.comult.get(j, {}).items():
                    c12 = _mul2(c1, c2)
                    for x, cx in h.product_basis(a1, b1).items():
                        for y, cy in h.product_basis(a2, b2).items():
                            _acc(rhs, (x, y), _mul2(c12, _mul2(cx, cy)))
            worst = max(worst, _vec_residual(lhs, rhs))
    rep["comultiplicativity"] = worst

    # (Delta x id) Delta(1) = (Delta(1) x 1)(1 x Delta(1)) = (1 x Delta(1))(Delta(1) x 1)
    unit_cop = h.coproduct(h.unit)
    lhs3: dict = {}
    for (a, b), c in unit_cop.items():
        for (x, y), c2 in h.comult.get(a, {}).items():
            _acc(lhs3, (x, y, b), c * c2)
    perm1: dict = {}
    perm2: dict = {}
    for (a, b), c in unit_cop.items():
        for (x, y), c2 in unit_cop.items():
            cc = c * c2
            # (a x b x 1)(1 x x x y) and (1 x a x b)(x x y x 1)
            for m, cm in h.product_basis(b, x).items():
                _acc(perm1, (a, m, y), cc * cm)
            for m, cm in h.product_basis(a, y).items():
                _acc(perm2, (x, m, b), cc * cm)
    rep["weak_unit_coproduct"] = max(_vec_residual(lhs3, perm1), _vec_residual(lhs3, perm2))

    # eps(ghk) = eps(g h1) eps(h2 k) = eps(g h2) eps(h1 k)
    worst = 0.0
    zero = ONE * 0
    for g in range(n):
        for i in range(n):
            ghs = {k: c for k, c in h.product_basis(g, i).items()}
            for k in range(n):
                lhs = zero
                for m, c in ghs.items():
                    for t, c2 in h.product_basis(m, k).items():
                        e = h.counit.get(t)
                        if e is not None:
                            lhs = lhs + _mul2(c, _mul2(c2, e))
                r1 = zero
                r2 = zero
                for (h1, h2), c in h.comult.get(i, {}).items():
                    e1 = h.counit_of(h.product_basis(g, h1))
                    e2 = h.counit_of(h.product_basis(h2, k))
                    r1 = r1 + _mul2(c, _mul2(e1, e2))
                    e1b = h.counit_of(h.product_basis(g, h2))
                    e2b = h.counit_of(h.product_basis(h1, k))
                    r2 = r2 + _mul2(c, _mul2(e1b, e2b))
                worst = max(worst, _residual([lhs - r1, lhs - r2]))
    rep["weak_counit_product"] = worst

    # antipode conditions
    worst = 0.0
    unit_cop = h.coproduct(h.unit)
    for i in range(n):
        m_id_s: Vec = {}
        m_s_id: Vec = {}
        s_three: Vec = {}
        for (a, b), c in h.comult.get(i, {}).items():
            for y, cy in h.antipode.get(b, {}).items():
                for k, ck in h.product_basis(a, y).items():
                    _acc(m_id_s, k, c * cy * ck)
            for x, cx in h.antipode.get(a, {}).items():
                for k, ck in h.product_basis(x, b).items():
                    _acc(m_s_id, k, c * cx * ck)
        rhs1: Vec = {}  # (eps x id)(Delta(1)(h x 1))
        rhs2: Vec = {}  # (id x eps)((1 x h) Delta(1))
        for (u1, u2), cu in unit_cop.items():
            for k, ck in h.product_basis(u1, i).items():
                e = h.counit.get(k)
                if e is not None:
                    _acc(rhs1, u2, cu * ck * e)
            for k, ck in h.product_basis(i, u2).items():
                e = h.counit.get(k)
                if e is not None:
                    _acc(rhs2, u1, cu * ck * e)
        worst = max(worst, _vec_residual(m_id_s, rhs1))
        worst = max(worst, _vec_residual(m_s_id, rhs2))
        for key, c in h.iterated_coproduct({i: ONE}, 3).items():
            h1, h2, h3 = key
            for x, cx in h.antipode.get(h1, {}).items():
                for y, cy in h.antipode.get(h3, {}).items():
                    for m, cm in h.product_basis(x, h2).items():
                        for t, ct in h.product_basis(m, y).items():
                            _acc(s_three, t, c * cx * cy * cm * ct)
        worst = max(worst, _vec_residual(s_three, h.antipode.get(i, {})))
    rep["weak_antipode"] = worst
    return rep


def check_strong_axioms_core(h: HopfAlgebra) -> dict[str, float]:
    """Associativity, unitality, coassociativity, counitality only."""
    full = {}
    n = h.dim
    worst = 0.0
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs: Vec = {}
                for l, c in h.product_basis(i, j).items():
                    for m, c2 in h.product_basis(l, k).items():
                        _acc(lhs, m, _mul2(c, c2))
                rhs: Vec = {}
                for l, c in h.product_basis(j, k).items():
                    for m, c2 in h.product_basis(i, l).items():
                        _acc(rhs, m, _mul2(c, c2))
                worst = max(worst, _vec_residual(lhs, rhs))
    full["associativity"] = worst
    worst = 0.0
    for i in range(n):
        worst = max(worst, _vec_residual(h.product(h.unit, {i: ONE}), {i: ONE}))
        worst = max(worst, _vec_residual(h.product({i: ONE}, h.unit), {i: ONE}))
    full["unitality"] = worst
    worst = 0.0
    for i in range(n):
        lhs: dict = {}
        rhs: dict = {}
        for (a, b), c in h.comult.get(i, {}).items():
            for (x, y), c2 in h.comult.get(a, {}).items():
                _acc(lhs, (x, y, b), c * c2)
            for (x, y), c2 in h.comult.get(b, {}).items():
                _acc(rhs, (a, x, y), c * c2)
        worst = max(worst, _vec_residual(lhs, rhs))
    full["coassociativity"] = worst
    worst = 0.0
    for i in range(n):
        left: Vec = {}
        right: Vec = {}
        for (a, b), c in h.comult.get(i, {}).items():
            eb, ea = h.counit.get(b), h.counit.get(a)
            if eb is not None:
                _acc(left, a, c * eb)
            if ea is not None:
                _acc(right, b, c * ea)
        worst = max(worst, _vec_residual(left, {i: ONE}))
        worst = max(worst, _vec_residual(right, {i: ONE}))
    full["counitality"] = worst
    return full


# ---------------------------------------------------------------------------
# constructors


def group_algebra(g: Group) -> HopfAlgebra:
    n = g.order
    mult = {(i, j): {g.mul(i, j): ONE} for i in range(n) for j in range(n)}
    comult = {i: {(i, i): ONE} for i in range(n)}
    counit = {i: ONE for i in range(n)}
    antipode = {i: {g.inverse(i): ONE} for i in range(n)}
    irreps = None
    if g.is_abelian():
        # the dual of C[G] is the function algebra; its irreducibles are the
        # evaluation characters at group elements
        irreps = [
            Rep(f"ev_{g.labels[h]}", 1, [({(0, 0): ONE} if i == h else {}) for i in range(n)])
            for h in range(n)
        ]
    return HopfAlgebra(f"C[{g.name}]", g.labels, mult, {0: ONE}, comult, counit, antipode, False, irreps)


def function_algebra(g: Group) -> HopfAlgebra:
    n = g.order
    basis = tuple(f"d{lab}" for lab in g.labels)
    mult = {(i, i): {i: ONE} for i in range(n)}
    unit = {i: ONE for i in range(n)}
    comult: dict[int, dict] = {i: {} for i in range(n)}
    for j in range(n):
        for k in range(n):
            comult[g.mul(j, k)][(j, k)] = ONE
    counit = {0: ONE}
    antipode = {i: {g.inverse(i): ONE} for i in range(n)}
    irreps = None
    if g.is_abelian():
        vals = g.character_values()
        irreps = [
            Rep(f"chi{r}", 1, [{(0, 0): vals[r][i]} for i in range(n)])
            for r in range(n)
        ]
    return HopfAlgebra(f"C^{g.name}", basis, mult, unit, comult, counit, antipode, False, irreps)


def dual(h: HopfAlgebra) -> HopfAlgebra:
    n = h.dim
    mult: dict[tuple[int, int], Vec] = {}
    for k in range(n):
        for (i, j), c in h.comult.get(k, {}).items():
            mult.setdefault((i, j), {})[k] = c
    comult: dict[int, dict] = {}
    for (i, j), v in h.mult.items():
        for k, c in v.items():
            comult.setdefault(k, {})[(i, j)] = c
    unit = dict(h.counit)
    counit = dict(h.unit)
    antipode: dict[int, Vec] = {}
    for j, row in h.antipode.items():
        for i, c in row.items():
            antipode.setdefault(i, {})[j] = c
    basis = tuple(f"{b}*" for b in h.basis)
    return HopfAlgebra(f"{h.name}*", basis, mult, unit, comult, counit, antipode, h.weak, None)


def _inverse_antipode(h: HopfAlgebra) -> dict[int, Vec]:
    if h.antipode_involutive():
        return {i: dict(v) for i, v in h.antipode.items()}
    raise NonSemisimple(f"{h.name}: antipode is not involutive; opposite structures unsupported")


def op(h: HopfAlgebra) -> HopfAlgebra:
    mult = {(i, j): dict(v) for (j, i), v in h.mult.items()}
    return HopfAlgebra(
        f"{h.name}^op", h.basis, mult, dict(h.unit),
        {i: dict(v) for i, v in h.comult.items()}, dict(h.counit),
        _inverse_antipode(h), h.weak, h.dual_irreps,
    )


def cop(h: HopfAlgebra) -> HopfAlgebra:
    comult = {i: {(k, j): c for (j, k), c in v.items()} for i, v in h.comult.items()}
    return HopfAlgebra(
        f"{h.name}^cop", h.basis, {k: dict(v) for k, v in h.mult.items()}, dict(h.unit),
        comult, dict(h.counit), _inverse_antipode(h), h.weak, h.dual_irreps,
    )


# ---------------------------------------------------------------------------
# pairings, doubles, triplets


def trivial_pairing(a: HopfAlgebra, b: HopfAlgebra) -> Mat:
    out: Mat = {}
    for i, ca in a.counit.items():
        for j, cb in b.counit.items():
            out[(i, j)] = ca * cb
    return out


def canonical_pairing(a_dual_cop: HopfAlgebra, a: HopfAlgebra) -> Mat:
    """Evaluation pairing, assuming the first algebra uses the dual basis order."""
    if a_dual_cop.dim != a.dim:
        raise TrisectError("canonical pairing needs matching dimensions")
    return {(i, i): ONE for i in range(a.dim)}


def convolution_inverse(tau: Mat, a: HopfAlgebra) -> Mat:
    """tau^{-1}(x, y) = tau(S(x), y)."""
    by_row: dict[int, list[tuple[int, object]]] = {}
    for (k, j), c in tau.items():
        by_row.setdefault(k, []).append((j, c))
    out: Mat = {}
    for i in range(a.dim):
        for k, cs in a.antipode.get(i, {}).items():
            for j, c in by_row.get(k, ()):
                _acc(out, (i, j), cs * c)
    return out


def check_skew_pairing(tau: Mat, a: HopfAlgebra, b: HopfAlgebra, with_convolution: bool = True) -> dict[str, float]:
    """The four defining identities plus (for strong pairs) the convolution identity.

    The strong convolution identity fails for genuinely weak pairings, where
    inverses are relative to the source and target counits, so it is skipped
    when either algebra is weak.
    """
    zero = ONE * 0
    rep: dict[str, float] = {}

    def t(i, j):
        return tau.get((i, j), zero)

    worst = 0.0
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.product_basis(i, j)
            for k in range(b.dim):
                lhs = zero
                for l, c in prod.items():
                    lhs = lhs + c * t(l, k)
                rhs = zero
                for (p, q), c in b.comult.get(k, {}).items():
                    rhs = rhs + c * t(i, p) * t(j, q)
                worst = max(worst, _residual([lhs - rhs]))
    rep["mult_left"] = worst

    worst = 0.0
    for j in range(b.dim):
        for k in range(b.dim):
            prod = b.product_basis(j, k)
            for i in range(a.dim):
                lhs = zero
                for l, c in prod.items():
                    lhs = lhs + c * t(i, l)
                rhs = zero
                for (p, q), c in a.comult.get(i, {}).items():
                    rhs = rhs + c * t(q, j) * t(p, k)
                worst = max(worst, _residual([lhs - rhs]))
    rep["mult_right"] = worst

    worst = 0.0
    for i in range(a.dim):
        lhs = zero
        for j, cu in b.unit.items():
            lhs = lhs + cu * t(i, j)
        worst = max(worst, _residual([lhs - a.counit.get(i, zero)]))
    rep["counit_left"] = worst
    worst = 0.0
    for j in range(b.dim):
        lhs = zero
        for i, cu in a.unit.items():
            lhs = lhs + cu * t(i, j)
        worst = max(worst, _residual([lhs - b.counit.get(j, zero)]))
    rep["counit_right"] = worst

    if with_convolution and not (a.weak or b.weak):
        tinv = convolution_inverse(tau, a)
        worst = 0.0
        for i in range(a.dim):
            for j in range(b.dim):
                s1 = zero
                s2 = zero
                for (a1, a2), ca in a.comult.get(i, {}).items():
                    for (b1, b2), cb in b.comult.get(j, {}).items():
                        cc = ca * cb
                        s1 = s1 + cc * t(a1, b1) * tinv.get((a2, b2), zero)
                        s2 = s2 + cc * tinv.get((a1, b1), zero) * t(a2, b2)
                target = a.counit.get(i, zero) * b.counit.get(j, zero)
                worst = max(worst, _residual([s1 - target, s2 - target]))
        rep["convolution_inverse"] = worst
    return rep


def generalized_double(a: HopfAlgebra, b: HopfAlgebra, tau: Mat, name: str | None = None) -> HopfAlgebra:
    """Twist the tensor product A x B by the 2-cocycle built from tau."""
    na, nb = a.dim, b.dim
    tinv = convolution_inverse(tau, a)
    zero = ONE * 0

    def idx(i: int, j: int) -> int:
        return i * nb + j

    basis = tuple(f"{x}(x){y}" for x in a.basis for y in b.basis)
    aco_all = [a.iterated_coproduct({i: ONE}, 3) for i in range(na)]
    bco_all = [b.iterated_coproduct({j: ONE}, 3) for j in range(nb)]
    # sparse access to products by the twisted factor
    lmul_a: dict[int, list] = {}
    for (i, a2), prod in a.mult.items():
        lmul_a.setdefault(a2, []).append((i, prod))
    rmul_b: dict[int, list] = {}
    for (b2, j2), prod in b.mult.items():
        rmul_b.setdefault(b2, []).append((j2, prod))
    mult: dict[tuple[int, int], Vec] = {}
    for j in range(nb):
        bco = bco_all[j]
        for i2 in range(na):
            aco = aco_all[i2]
            # the twist weights do not involve i or j2; group them by (a2, b2)
            pieces: dict[tuple[int, int], object] = {}
            for (a1, a2, a3), ca in aco.items():
                for (b1, b2, b3), cb in bco.items():
                    w = tau.get((a1, b1))
                    if w is None:
                        continue
                    w2 = tinv.get((a3, b3))
                    if w2 is None:
                        continue
                    _acc(pieces, (a2, b2), _mul2(_mul2(ca, cb), _mul2(w, w2)))
            for (a2, b2), coeff in pieces.items():
                for i, pa in lmul_a.get(a2, ()):
                    for j2, pb in rmul_b.get(b2, ()):
                        out = mult.setdefault((idx(i, j), idx(i2, j2)), {})
                        for x, cx in pa.items():
                            for y, cy in pb.items():
                                _acc(out, idx(x, y), _mul2(coeff, _mul2(cx, cy)))
    mult = {k: v for k, v in mult.items() if v}
    unit: Vec = {}
    for i, cu in a.unit.items():
        for j, cv in b.unit.items():
            unit[idx(i, j)] = cu * cv
    comult: dict[int, dict] = {}
    for i in range(na):
        for j in range(nb):
            d: dict = {}
            for (a1, a2), ca in a.comult.get(i, {}).items():
                for (b1, b2), cb in b.comult.get(j, {}).items():
                    d[(idx(a1, b1), idx(a2, b2))] = ca * cb
            comult[idx(i, j)] = d
    counit: Vec = {}
    for i, ca in a.counit.items():
        for j, cb in b.counit.items():
            counit[idx(i, j)] = ca * cb
    dd = HopfAlgebra(name or f"D({a.name},{b.name})", basis, mult, unit, comult, counit, {}, False, None)
    antipode: dict[int, Vec] = {}
    for i in range(na):
        sa = a.antipode.get(i, {})
        for j in range(nb):
            sb = b.antipode.get(j, {})
            # (1 x S(b)) and (S(a) x 1) as elements of the double
            left: Vec = {}
            right: Vec = {}
            for y, cy in sb.items():
                for iu, cu in a.unit.items():
                    _acc(left, idx(iu, y), cy * cu)
            for x, cx in sa.items():
                for ju, cu in b.unit.items():
                    _acc(right, idx(x, ju), cx * cu)
            antipode[idx(i, j)] = dd.product(left, right)
    dd.antipode = antipode
    return dd


@dataclass
class HopfTriplet:
    name: str
    A: HopfAlgebra
    B: HopfAlgebra
    C: HopfAlgebra
    tau_AB: Mat
    tau_BC: Mat
    tau_CA: Mat
    allow_weak: bool = False
    default_integrals: dict[str, Vec] | None = None

    def algebra(self, slot: str) -> HopfAlgebra:
        return {"A": self.A, "B": self.B, "C": self.C}[slot]

    def pairing(self, slots: tuple[str, str]) -> Mat:
        return {("A", "B"): self.tau_AB, ("B", "C"): self.tau_BC, ("C", "A"): self.tau_CA}[slots]


def check_triplet(t: HopfTriplet) -> dict[str, float]:
    """Residuals of the three skew pairings and the cyclic compatibility identity."""
    rep: dict[str, float] = {}
    for tag, tau, x, y in (
        ("AB", t.tau_AB, t.A, t.B),
        ("BC", t.tau_BC, t.B, t.C),
        ("CA", t.tau_CA, t.C, t.A),
    ):
        sub = check_skew_pairing(tau, x, y)
        for k, v in sub.items():
            rep[f"{tag}.{k}"] = v
    zero = ONE * 0
    worst = 0.0
    for i in range(t.A.dim):
        aco = t.A.comult.get(i, {})
        for j in range(t.B.dim):
            bco = t.B.comult.get(j, {})
            for k in range(t.C.dim):
                cco = t.C.comult.get(k, {})
                lhs = zero
                rhs = zero
                for (a1, a2), ca in aco.items():
                    for (b1, b2), cb in bco.items():
                        w1 = t.tau_AB.get((a1, b2))
                        w1r = t.tau_AB.get((a2, b1))
                        if w1 is None and w1r is None:
                            continue
                        for (c1, c2), cc in cco.items():
                            f = ca * cb * cc
                            if w1 is not None:
                                w2 = t.tau_BC.get((b1, c2))
                                w3 = t.tau_CA.get((c1, a2))
                                if w2 is not None and w3 is not None:
                                    lhs = lhs + f * w1 * w2 * w3
                            if w1r is not None:
                                w2r = t.tau_BC.get((b2, c1))
                                w3r = t.tau_CA.get((c2, a1))
                                if w2r is not None and w3r is not None:
                                    rhs = rhs + f * w1r * w2r * w3r
                worst = max(worst, _residual([lhs - rhs]))
    rep["cyclic"] = worst
    return rep


def kashaev_triplet(n: int) -> HopfTriplet:
    """Function and group algebras of Z/n with the quadratic root-of-unity pairing."""
    if n < 2:
        raise TrisectError("kashaev triplet needs n >= 2")
    from .groups import cyclic

    g = cyclic(n)
    a = function_algebra(g)
    b = group_algebra(g)
    c = function_algebra(g)
    tau_ab: Mat = {(i, i): ONE for i in range(n)}
    tau_bc: Mat = {(i, i): ONE for i in range(n)}
    inv_n = Cyc.rational(Fraction(1, n))
    tau_ca: Mat = {
        (i, j): inv_n * Cyc.zeta(n, (i * j) % n) for i in range(n) for j in range(n)
    }
    return HopfTriplet(f"kashaev:n={n}", a, b, c, tau_ab, tau_bc, tau_ca)


def group_triplet(c_group: Group, b_group: Group) -> HopfTriplet:
    """Function algebra of C x B^op paired against the two group algebras."""
    b_op = opposite(b_group)
    k = product(c_group, b_op, name=f"{c_group.name}x{b_group.name}^op")
    a = cop(function_algebra(k))
    a.name = f"C^({k.name})"
    bt = group_algebra(b_op)
    ct = op(cop(group_algebra(c_group)))
    nb = b_group.order
    # K = C x B^op indexes (c,b) as c*|B| + b, so (e,b) sits at index b
    tau_ab: Mat = {(b_idx, b_idx): ONE for b_idx in range(nb)}
    tau_ca: Mat = {(c_idx, c_idx * nb): ONE for c_idx in range(c_group.order)}
    tau_bc: Mat = {
        (i, j): ONE for i in range(nb) for j in range(c_group.order)
    }
    return HopfTriplet(
        f"group:C={c_group.name},B={b_group.name}", a, bt, ct, tau_ab, tau_bc, tau_ca
    )


# ---------------------------------------------------------------------------
# integrals


def compute_integral(h: HopfAlgebra) -> Vec:
    """The integral with eps(l) = dim, built from the dual-basis trace formula."""
    if h.weak:
        raise TrisectError("use action integrals for weak Hopf algebras")
    if not h.antipode_involutive():
        raise NonSemisimple(f"{h.name}: S^2 != id")
    ell: Vec = {}
    for i in range(h.dim):
        for (p, q), c in h.comult.get(i, {}).items():
            if p == i:
                _acc(ell, q, c)
    eps = h.counit_of(ell)
    if is_zero(eps):
        raise NonSemisimple(f"{h.name}: candidate integral has eps = 0")
    return ell


def check_integral(h: HopfAlgebra, ell: Vec) -> dict[str, float]:
    worst_l = 0.0
    worst_r = 0.0
    for i in range(h.dim):
        left = h.product({i: ONE}, ell)
        right = h.product(ell, {i: ONE})
        if h.weak:
            target_l = h.product(h.target_map({i: ONE}), ell)
            target_r = h.product(ell, h.source_map({i: ONE}))
        else:
            e = h.counit.get(i, ONE * 0)
            target_l = _scale(ell, e)
            target_r = target_l
        worst_l = max(worst_l, _vec_residual(left, target_l))
        worst_r = max(worst_r, _vec_residual(right, target_r))
    rep = {"left_integral": worst_l, "right_integral": worst_r}
    rep["antipode_fixes"] = _vec_residual(h.antipode_vec(ell), ell)
    return rep


def canonical_dual_integral(h: HopfAlgebra, irreps: list[Rep]) -> Vec:
    """The functional sum of dim(V) tr(rho(-)) over a full set of irreducibles."""
    total = sum(r.dim * r.dim for r in irreps)
    if total != h.dim:
        raise MissingIrreps(f"{h.name}: sum of dim^2 is {total}, expected {h.dim}")
    lam: Vec = {}
    for i in range(h.dim):
        val = None
        for r in irreps:
            m = r.matrix(i)
            tr = None
            for d in range(r.dim):
                c = m.get((d, d))
                if c is not None:
                    tr = c if tr is None else tr + c
            if tr is not None:
                term = r.dim * tr
                val = term if val is None else val + term
        if val is not None and not is_zero(val):
            lam[i] = val
    return lam


def apply_functional(lam: Vec, v: Vec):
    out = ONE * 0
    for i, c in v.items():
        l = lam.get(i)
        if l is not None:
            out = out + l * c
    return out


# ---------------------------------------------------------------------------
# weak Hopf algebras from group actions


def _weak_index(m: int, n: int, k: int, msize: int, ksize: int) -> int:
    return (m * msize + n) * ksize + k


def weak_hopf_from_action(mset: GSet, strict: bool = True) -> tuple[HopfAlgebra, HopfAlgebra]:
    """The crossed product C^{MxM} x| C[K] and its dual, from a transitive K-set."""
    if strict and not mset.is_transitive():
        raise TrisectError("the action must be transitive")
    k = mset.group
    msz, ksz = mset.size, k.order
    dim = msz * msz * ksz

    def ix(m, n, kk):
        return _weak_index(m, n, kk, msz, ksz)

    lab = mset.labels
    basis = tuple(
        f"d{lab[m]}d{lab[n]}(x){k.labels[kk]}" for m in range(msz) for n in range(msz) for kk in range(ksz)
    )
    mult: dict[tuple[int, int], Vec] = {}
    for m in range(msz):
        for n in range(msz):
            for g in range(ksz):
                for p in range(msz):
                    for q in range(msz):
                        if mset.apply(g, p) == m and mset.apply(g, q) == n:
                            for h in range(ksz):
                                mult[(ix(m, n, g), ix(p, q, h))] = {ix(m, n, k.mul(g, h)): ONE}
    unit = {ix(m, n, 0): ONE for m in range(msz) for n in range(msz)}
    comult = {
        ix(m, n, g): {(ix(m, p, g), ix(p, n, g)): ONE for p in range(msz)}
        for m in range(msz)
        for n in range(msz)
        for g in range(ksz)
    }
    counit = {ix(m, m, g): ONE for m in range(msz) for g in range(ksz)}
    antipode = {}
    for m in range(msz):
        for n in range(msz):
            for g in range(ksz):
                gi = k.inverse(g)
                antipode[ix(m, n, g)] = {ix(mset.apply(gi, n), mset.apply(gi, m), gi): ONE}
    cross = HopfAlgebra(
        f"C^(MxM)x|C[{k.name}]", basis, mult, unit, comult, counit, antipode, weak=msz > 1
    )

    basis_d = tuple(
        f"{lab[m]}{lab[n]}(x)d{k.labels[kk]}" for m in range(msz) for n in range(msz) for kk in range(ksz)
    )
    mult_d: dict[tuple[int, int], Vec] = {}
    for m in range(msz):
        for n in range(msz):
            for h in range(ksz):
                for q in range(msz):
                    mult_d[(ix(m, n, h), ix(n, q, h))] = {ix(m, q, h): ONE}
    unit_d = {ix(m, m, h): ONE for m in range(msz) for h in range(ksz)}
    comult_d: dict[int, dict] = {}
    for m in range(msz):
        for n in range(msz):
            for g in range(ksz):
                d: dict = {}
                for x in range(ksz):
                    y = k.mul(k.inverse(x), g)
                    xi = k.inverse(x)
                    d[(ix(m, n, x), ix(mset.apply(xi, m), mset.apply(xi, n), y))] = ONE
                comult_d[ix(m, n, g)] = d
    counit_d = {ix(m, n, 0): ONE for m in range(msz) for n in range(msz)}
    antipode_d = {}
    for m in range(msz):
        for n in range(msz):
            for g in range(ksz):
                gi = k.inverse(g)
                antipode_d[ix(m, n, g)] = {ix(mset.apply(gi, n), mset.apply(gi, m), gi): ONE}
    vec = HopfAlgebra(
        f"<MxM>(x)C^{k.name}", basis_d, mult_d, unit_d, comult_d, counit_d, antipode_d, weak=msz > 1
    )
    return cross, vec


def weak_integrals_from_action(mset: GSet) -> tuple[Vec, Vec]:
    """Integrals of the crossed product and of its dual (in that order)."""
    k = mset.group
    msz, ksz = mset.size, k.order

    def ix(m, n, kk):
        return _weak_index(m, n, kk, msz, ksz)

    lam = {ix(m, m, g): ONE for m in range(msz) for g in range(ksz)}
    ell = {ix(m, n, 0): ONE for m in range(msz) for n in range(msz)}
    return lam, ell


def weak_triplet(c_group: Group, b_group: Group, mset: GSet | None = None) -> HopfTriplet:
    """The weak Hopf triplet from a transitive C x B^op action on a finite set."""
    from .groups import point_gset

    b_op = opposite(b_group)
    k = product(c_group, b_op, name=f"{c_group.name}x{b_group.name}^op")
    if mset is None:
        mset = point_gset(k)
    if mset.group.table != k.table:
        raise TrisectError("the G-set must be an action of C x B^op")
    if not mset.is_transitive():
        raise TrisectError("the action must be transitive")
    msz = mset.size
    nb, nc = b_group.order, c_group.order

    def kidx(c_idx: int, b_idx: int) -> int:
        return c_idx * nb + b_idx

    def act_c(c_idx: int, m: int) -> int:
        return mset.apply(kidx(c_idx, 0), m)

    def act_b(b_idx: int, m: int) -> int:
        return mset.apply(kidx(0, b_idx), m)

    _, h_a = weak_hopf_from_action(mset)
    a_t = cop(h_a)

    def restricted(group: Group, emb) -> GSet:
        act = tuple(tuple(mset.apply(emb(g), m) for m in range(msz)) for g in range(group.order))
        return GSet(group, mset.labels, act)

    h_b, _ = weak_hopf_from_action(restricted(b_op, lambda b: kidx(0, b)), strict=False)
    h_c, _ = weak_hopf_from_action(restricted(c_group, lambda c: kidx(c, 0)), strict=False)
    b_t = h_b
    c_t = op(cop(h_c))

    def ixk(m, n, kk):
        return _weak_index(m, n, kk, msz, k.order)

    def ixb(m, n, b):
        return _weak_index(m, n, b, msz, nb)

    def ixc(m, n, c):
        return _weak_index(m, n, c, msz, nc)

    tau_ca: Mat = {}
    for p in range(msz):
        for q in range(msz):
            for c in range(nc):
                tau_ca[(ixc(p, q, c), ixk(p, q, kidx(c, 0)))] = ONE
    tau_ab: Mat = {}
    for p in range(msz):
        for q in range(msz):
            for b in range(nb):
                tau_ab[(ixk(p, q, kidx(0, b)), ixb(p, q, b))] = ONE
    tau_bc: Mat = {}
    for p in range(msz):
        for q in range(msz):
            for b in range(nb):
                for m in range(msz):
                    for n in range(msz):
                        for c in range(nc):
                            if n == p and n == act_c(c, q) and p == act_b(b, m):
                                tau_bc[(ixb(p, q, b), ixc(m, n, c))] = ONE
    name = f"weak:C={c_group.name},B={b_group.name},|M|={msz}"
    ints = {
        "A": {_weak_index(m, n, 0, msz, k.order): ONE for m in range(msz) for n in range(msz)},
        "B": {_weak_index(m, m, b, msz, nb): ONE for m in range(msz) for b in range(nb)},
        "C": {_weak_index(m, m, c, msz, nc): ONE for m in range(msz) for c in range(nc)},
    }
    return HopfTriplet(name, a_t, b_t, c_t, tau_ab, tau_bc, tau_ca, allow_weak=True, default_integrals=ints)


def weak_simple_reps(mset: GSet, stabilizer_irreps: dict | None = None) -> list[Rep]:
    """Simple representations of the crossed product, one per (orbit, character).

    Stabilizer characters are generated automatically for abelian stabilizers;
    anything else must be supplied via ``stabilizer_irreps`` keyed by orbit
    basepoint.
    """
    k = mset.group
    msz, ksz = mset.size, k.order

    def ix(m, n, kk):
        return _weak_index(m, n, kk, msz, ksz)

    reps: list[Rep] = []
    for orbit in mset.pair_orbits():
        m1, m2 = orbit["base"]
        transversal = orbit["transversal"]
        pairs = sorted(transversal)
        stab_members = mset.stabilizer_pair(m1, m2)
        sub, members = k.subgroup(stab_members, name=f"Stab{m1},{m2}")
        pos_in_sub = {g: i for i, g in enumerate(members)}
        if stabilizer_irreps and (m1, m2) in stabilizer_irreps:
            psis = stabilizer_irreps[(m1, m2)]
        elif sub.is_abelian():
            e = sub.exponent()
            psis = [
                Rep(f"chi{r}", 1, [{(0, 0): Cyc.zeta(e, x)} for x in vec])
                for r, vec in enumerate(sub.characters())
            ]
        else:
            raise MissingIrreps(
                f"stabilizer of {m1},{m2} is nonabelian; supply its representations"
            )
        for psi in psis:
            dim = len(pairs) * psi.dim
            mats: list[Mat] = [dict() for _ in range(msz * msz * ksz)]
            pair_pos = {pq: t for t, pq in enumerate(pairs)}
            for g in range(ksz):
                for (p, q), h_pq in transversal.items():
                    tp, tq = mset.apply(g, p), mset.apply(g, q)
                    h_t = transversal[(tp, tq)]
                    inner = k.mul(k.inverse(h_t), k.mul(g, h_pq))
                    pm = psi.matrix(pos_in_sub[inner])
                    row0 = pair_pos[(tp, tq)] * psi.dim
                    col0 = pair_pos[(p, q)] * psi.dim
                    # the delta factors select the target pair: the basis
                    # element (m, n, g) maps V_{p,q} into V_{g|>p, g|>q} and
                    # is supported where (m, n) equals that target
                    target = mats[ix(tp, tq, g)]
                    for (r, s), cval in pm.items():
                        _acc(target, (row0 + r, col0 + s), cval)
            reps.append(Rep(f"O{m1},{m2};{psi.name}", dim, mats))
    return reps


# ---------------------------------------------------------------------------
# structure-constant files


def _parse_scalar(x):
    if isinstance(x, bool):
        raise TrisectError("boolean is not a scalar")
    if isinstance(x, int):
        return Cyc.rational(x)
    if isinstance(x, str):
        return Cyc.rational(Fraction(x))
    if isinstance(x, float):
        return complex(x)
    if isinstance(x, list) and len(x) == 2:
        return complex(x[0], x[1])
    raise TrisectError(f"cannot parse scalar {x!r}")


def algebra_from_json(data: dict, name: str = "H") -> HopfAlgebra:
    try:
        dim = int(data["dim"])
        weak = bool(data.get("weak", False))
        mult: dict[tuple[int, int], Vec] = {}
        for i in range(dim):
            for j in range(dim):
                row: Vec = {}
                for kk in range(dim):
                    s = _parse_scalar(data["mult"][i][j][kk])
                    if not is_zero(s):
                        row[kk] = s
                if row:
                    mult[(i, j)] = row
        unit = {k: _parse_scalar(v) for k, v in enumerate(data["unit"]) if not is_zero(_parse_scalar(v))}
        comult: dict[int, dict] = {}
        for i in range(dim):
            d = {}
            for j in range(dim):
                for kk in range(dim):
                    s = _parse_scalar(data["comult"][i][j][kk])
                    if not is_zero(s):
                        d[(j, kk)] = s
            comult[i] = d
        counit = {k: _parse_scalar(v) for k, v in enumerate(data["counit"]) if not is_zero(_parse_scalar(v))}
        antipode: dict[int, Vec] = {}
        for i in range(dim):
            row = {}
            for j in range(dim):
                s = _parse_scalar(data["antipode"][i][j])
                if not is_zero(s):
                    row[j] = s
            antipode[i] = row
    except (KeyError, IndexError, TypeError) as exc:
        raise TrisectError(f"bad structure-constant file: {exc}") from exc
    basis = tuple(data.get("basis", [f"e{i}" for i in range(dim)]))
    return HopfAlgebra(name, basis, mult, unit, comult, counit, antipode, weak)


def reps_from_json(data: dict) -> list[Rep]:
    reps = []
    for entry in data.get("reps", []):
        dim = int(entry["dim"])
        mats = []
        for m in entry["matrices"]:
            mat: Mat = {}
            for r in range(dim):
                for s in range(dim):
                    v = _parse_scalar(m[r][s])
                    if not is_zero(v):
                        mat[(r, s)] = v
            mats.append(mat)
        reps.append(Rep(str(entry.get("name", "rep")), dim, mats))
    return reps
