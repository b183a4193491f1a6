"""Deformations of braided algebras over truncated power-series rings.

A series (mu + hbar psi_1 + ... + hbar^n psi_n, R + hbar phi_1 + ...) is an
order-n deformation exactly when all four structure axioms hold over
k[hbar]/(hbar^(n+1)).  Verification always goes through the truncated ring:
one code path covers every axiom at every order and cannot drift from the
combinatorial bookkeeping of the obstruction sums.

The degree-r obstruction bundle is computed twice: by the index sums over
Gamma_r = {(i,j,k) : i+j+k = r, all indices < r} (production path), and by
reading the hbar^r coefficient of the axiom defects of the order-(r-1)
series (oracle path, used by the tests).  For r = 2 the bundle of any
2-cocycle is annihilated by the degree-3 differential, and extending to a
quadratic deformation is the exact linear problem D2 x = -bundle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braided import (BraidedAlgebra, assoc_defect, iy_defect, yb_defect,
                      yi_defect)
from .cohomology import (YBH2Cochain, YBH3Cochain, delta1, delta2, delta3,
                         differential_matrix, flatten3, unflatten2)
from .errors import InputError, InternalCheckError
from .linalg import SolveCertificate
from .scalars import TruncatedRing
from .tensor import (TensorMap, compose, decode_index, identity_map,
                     truncated_from_parts, truncated_part)


@dataclass
class DeformationSeries:
    base: BraidedAlgebra
    phi_terms: list  # phi_1 ... phi_n, (2 -> 2)
    psi_terms: list  # psi_1 ... psi_n, (2 -> 1)

    def __post_init__(self):
        if len(self.phi_terms) != len(self.psi_terms):
            raise InputError("phi_terms and psi_terms must have equal length")
        for t, (n, k) in [(p, (2, 2)) for p in self.phi_terms] + \
                         [(p, (2, 1)) for p in self.psi_terms]:
            if (t.in_arity, t.out_arity) != (n, k) or t.dim != self.base.dim:
                raise InputError(f"series term has shape ({t.in_arity}->{t.out_arity}), "
                                 f"expected ({n}->{k}) at dimension {self.base.dim}")

    @property
    def order(self) -> int:
        return len(self.phi_terms)

    def phi(self, i: int) -> TensorMap:
        return self.base.r if i == 0 else self.phi_terms[i - 1]

    def psi(self, i: int) -> TensorMap:
        return self.base.mu if i == 0 else self.psi_terms[i - 1]

    def truncated_maps(self, ring_order: int):
        """(mu_n, R_n) over k[hbar]/(hbar^ring_order), higher terms dropped."""
        ring = TruncatedRing(self.base.field, ring_order)
        mu_parts = [self.psi(i) if i <= self.order else None for i in range(ring_order)]
        r_parts = [self.phi(i) if i <= self.order else None for i in range(ring_order)]
        return truncated_from_parts(ring, mu_parts), truncated_from_parts(ring, r_parts), ring

    def truncate(self, order: int) -> "DeformationSeries":
        if order > self.order:
            raise InputError("cannot truncate upward")
        return DeformationSeries(self.base, self.phi_terms[:order], self.psi_terms[:order])


def series_from_cocycle(b: BraidedAlgebra, c: YBH2Cochain) -> DeformationSeries:
    return DeformationSeries(b, [c.phi], [c.psi])


@dataclass
class DeformationReport:
    ok: bool
    axiom: str | None = None
    hbar_degree: int | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "deformation verifies"
        return (f"{self.axiom} fails at hbar^{self.hbar_degree}, "
                f"basis input {self.witness}")


def _first_failure(name: str, defect: TensorMap) -> DeformationReport | None:
    ring = defect.field
    for j in range(ring.order):
        part = truncated_part(defect, j)
        data = part.to_sparse_data()
        if data:
            col = min(data)
            return DeformationReport(False, name, j,
                                     decode_index(col, part.dim, part.in_arity))
    return None


def verify_deformation(s: DeformationSeries) -> DeformationReport:
    """Exact check of associativity, YBE, YI and IY for (mu_n, R_n) over
    k[hbar]/(hbar^(n+1)), plus invertibility of R_n over the truncated ring
    (the hbar^0 part being invertible suffices; the inverse is constructed)."""
    mu_t, r_t, ring = s.truncated_maps(s.order + 1)
    for name, defect in [("associativity", assoc_defect(mu_t)),
                         ("yang-baxter", yb_defect(r_t)),
                         ("yi", yi_defect(mu_t, r_t)),
                         ("iy", iy_defect(mu_t, r_t))]:
        fail = _first_failure(name, defect)
        if fail is not None:
            return fail
    _truncated_inverse(r_t, s.base.yb.r_inverse, ring)
    return DeformationReport(True)


def _truncated_inverse(r_t: TensorMap, r0_inv: TensorMap, ring) -> TensorMap:
    """Neumann series inverse of R + O(hbar); verified by composition."""
    base_inv = truncated_from_parts(ring, [r0_inv])
    ident = identity_map(ring, r_t.dim, 2)
    correction = ident - base_inv.compose(r_t)  # nilpotent: multiple of hbar
    inv = base_inv
    power = correction
    for _ in range(ring.order - 1):
        inv = inv + power.compose(base_inv)
        power = power.compose(correction)
    if not (inv.compose(r_t) == ident and r_t.compose(inv) == ident):
        raise InternalCheckError("truncated inverse of R failed to verify")
    return inv


# ---------------------------------------------------------------- obstruction bundles

@dataclass
class ObstructionBundle:
    theta: TensorMap               # (3 -> 3)
    xi_minus_omega_yi: TensorMap   # (3 -> 2)
    xi_minus_omega_iy: TensorMap   # (3 -> 2)
    lam: TensorMap                 # (3 -> 1)
    degree: int

    def as_cochain3(self) -> YBH3Cochain:
        return YBH3Cochain(beta=self.theta, alpha_yi=self.xi_minus_omega_yi,
                           alpha_iy=self.xi_minus_omega_iy, gamma=self.lam)

    def is_zero(self) -> bool:
        return self.as_cochain3().is_zero()


def gamma_indices(r: int) -> list:
    """Triples (i,j,k) with i+j+k = r and no index equal to r."""
    return [(i, j, r - i - j) for i in range(r + 1) for j in range(r + 1 - i)
            if r - i - j >= 0 and i != r and j != r and (r - i - j) != r]


def obstruction_bundle(s: DeformationSeries, r: int) -> ObstructionBundle:
    """Index-sum form of the degree-r obstruction quadruple."""
    if r < 2:
        raise InputError("obstruction bundles start at degree 2")
    if s.order < r - 1:
        raise InputError(f"series of order {s.order} has no degree-{r} obstruction")
    b = s.base
    one = identity_map(b.field, b.dim, 1)
    d = b.dim
    theta = TensorMap.zero(b.field, d, 3, 3)
    xi_yi = TensorMap.zero(b.field, d, 3, 2)
    xi_iy = TensorMap.zero(b.field, d, 3, 2)
    for (i, j, k) in gamma_indices(r):
        pi, pj, pk = s.phi(i), s.phi(j), s.phi(k)
        theta = theta + compose(pi.tensor(one), one.tensor(pj), pk.tensor(one)) \
            - compose(one.tensor(pi), pj.tensor(one), one.tensor(pk))
        xi_yi = xi_yi + compose(s.psi(i).tensor(one), one.tensor(pj), pk.tensor(one))
        xi_iy = xi_iy + compose(one.tensor(s.psi(i)), pj.tensor(one), one.tensor(pk))
    omega_yi = TensorMap.zero(b.field, d, 3, 2)
    omega_iy = TensorMap.zero(b.field, d, 3, 2)
    lam = TensorMap.zero(b.field, d, 3, 1)
    for p in range(1, r):
        q = r - p
        omega_yi = omega_yi + compose(s.phi(p), one.tensor(s.psi(q)))
        omega_iy = omega_iy + compose(s.phi(p), s.psi(q).tensor(one))
        lam = lam + compose(s.psi(p), s.psi(q).tensor(one)) \
            - compose(s.psi(p), one.tensor(s.psi(q)))
    return ObstructionBundle(theta, xi_yi - omega_yi, xi_iy - omega_iy, lam, degree=r)


def obstruction_bundle_oracle(s: DeformationSeries, r: int) -> ObstructionBundle:
    """Independent route: the hbar^r coefficient of each axiom defect of the
    order-(r-1) truncation, over k[hbar]/(hbar^(r+1))."""
    if r < 2:
        raise InputError("obstruction bundles start at degree 2")
    mu_t, r_t, _ = s.truncate(min(s.order, r - 1)).truncated_maps(r + 1)
    return ObstructionBundle(
        theta=truncated_part(yb_defect(r_t), r),
        xi_minus_omega_yi=truncated_part(yi_defect(mu_t, r_t), r),
        xi_minus_omega_iy=truncated_part(iy_defect(mu_t, r_t), r),
        lam=truncated_part(assoc_defect(mu_t), r),
        degree=r)


def obstruction_is_cocycle(b: BraidedAlgebra, c: YBH2Cochain) -> bool:
    """delta^3 annihilates the degree-2 obstruction bundle of a 2-cocycle."""
    if not delta2(b, c).is_zero():
        raise InputError("obstruction_is_cocycle needs a 2-cocycle")
    bundle = obstruction_bundle(series_from_cocycle(b, c), 2)
    return delta3(b, bundle.as_cochain3()).is_zero()


def bundle_in_d3_kernel(s: DeformationSeries, r: int) -> bool:
    """The same test at any degree r >= 2, for exploration: proved for r = 2,
    reported (not asserted) beyond."""
    bundle = obstruction_bundle(s, r)
    return delta3(s.base, bundle.as_cochain3()).is_zero()


# ---------------------------------------------------------------- quadratic extension

@dataclass
class QuadraticExtension:
    success: bool
    phi2: TensorMap | None = None
    psi2: TensorMap | None = None
    certificate: SolveCertificate | None = None
    bundle: ObstructionBundle | None = None

    def __bool__(self):
        return self.success


def extend_to_quadratic(b: BraidedAlgebra, c: YBH2Cochain) -> QuadraticExtension:
    """Solve delta^2 (phi_2, psi_2) = -(degree-2 bundle) exactly.

    On success the order-2 series is re-verified over k[hbar]/(hbar^3); on
    failure the solver's inconsistency certificate shows the bundle is
    outside im(delta^2), i.e. its class in H^3 is nonzero.
    """
    if not delta2(b, c).is_zero():
        raise InputError("extend_to_quadratic needs a 2-cocycle")
    bundle = obstruction_bundle(series_from_cocycle(b, c), 2)
    d2 = differential_matrix(b, 2)
    rhs = {pos: b.field.neg(v) for pos, v in flatten3(bundle.as_cochain3()).items()}
    sol = d2.solve(rhs)
    if isinstance(sol, SolveCertificate):
        return QuadraticExtension(False, certificate=sol, bundle=bundle)
    c2 = unflatten2(sol, b.field, b.dim)
    series = DeformationSeries(b, [c.phi, c2.phi], [c.psi, c2.psi])
    report = verify_deformation(series)
    if not report.ok:
        raise InternalCheckError(f"quadratic extension failed to verify: {report.describe()}")
    return QuadraticExtension(True, phi2=c2.phi, psi2=c2.psi, bundle=bundle)


# ---------------------------------------------------------------- trivialization

@dataclass
class TrivializationReport:
    inverse_ok: bool
    algebra_ok: bool
    yb_ok: bool

    @property
    def ok(self) -> bool:
        return self.inverse_ok and self.algebra_ok and self.yb_ok


def trivializing_isomorphism(b: BraidedAlgebra, f: TensorMap) -> TrivializationReport:
    """The coboundary deformation by delta^1(f) is trivialized by 1 + hbar f.

    Over the dual numbers, ftilde = 1 + hbar f is an isomorphism from the
    deformed braided algebra (mu + hbar delta1_H f, R + hbar delta1_YB f)
    onto the undeformed one extended by scalars:

        (1 - hbar f)(1 + hbar f) = 1
        ftilde o mu_deformed     = mu o (ftilde ox ftilde)
        (ftilde ox ftilde) o R_deformed = R o (ftilde ox ftilde)

    All three identities are theorems; any failure is an internal error.
    """
    if (f.in_arity, f.out_arity) != (1, 1) or f.dim != b.dim:
        raise InputError("trivializing map must be (1->1) of matching dimension")
    c = delta1(b, f)
    ring = TruncatedRing(b.field, 2)
    one = identity_map(ring, b.dim, 1)
    f_t = truncated_from_parts(ring, [None, f])
    ftilde = one + f_t
    ftilde_inv = one - f_t
    mu_t = truncated_from_parts(ring, [b.mu, c.psi])
    r_t = truncated_from_parts(ring, [b.r, c.phi])
    mu_base = truncated_from_parts(ring, [b.mu])
    r_base = truncated_from_parts(ring, [b.r])
    ff = ftilde.tensor(ftilde)
    report = TrivializationReport(
        inverse_ok=(ftilde_inv.compose(ftilde) == one),
        algebra_ok=(ftilde.compose(mu_t) == mu_base.compose(ff)),
        yb_ok=(ff.compose(r_t) == r_base.compose(ff)))
    if not report.ok:
        raise InternalCheckError(f"trivializing isomorphism failed: {report}")
    return report


def check_cohomologous_deformations(b: BraidedAlgebra, c: YBH2Cochain,
                                    f: TensorMap) -> bool:
    """Deformations by c and by c + delta^1(f) are connected by 1 + hbar f
    (as a map from the latter onto the former)."""
    shifted = c + delta1(b, f)
    ring = TruncatedRing(b.field, 2)
    one = identity_map(ring, b.dim, 1)
    ftilde = one + truncated_from_parts(ring, [None, f])
    ff = ftilde.tensor(ftilde)
    mu1 = truncated_from_parts(ring, [b.mu, c.psi])
    r1 = truncated_from_parts(ring, [b.r, c.phi])
    mu2 = truncated_from_parts(ring, [b.mu, shifted.psi])
    r2 = truncated_from_parts(ring, [b.r, shifted.phi])
    return (ftilde.compose(mu2) == mu1.compose(ff)
            and ff.compose(r2) == r1.compose(ff))
