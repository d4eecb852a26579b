"""Decision and construction for sums of two split-quadratic matrices.

A matrix A is (a,b)-quadratic when A^2 = a A + b I.  Deciding whether
M = A + B is possible for an (a,b)-quadratic A and a (c,d)-quadratic B
reduces, by shifting with a root of each quadratic and rescaling, to the
idempotent-plus-square-zero question, which is settled by two checks:

* every invariant factor of the part of M with no eigenvalue in {0, 1}
  must be a polynomial in t^2 - t, and
* the nullity sequences at 0 and at 1 of the remaining part must be
  2-intertwined.

When the answer is yes, an explicit certificate pair (A, B) is built and
re-verified exactly before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import (InvariantFactors, NullitySequence, SpectralSplit,
                        invariant_factors_with_transform, nilpotent_jordan_with_transform,
                        nullity_sequence, split_spectral)
from .errors import (BadParams, DecisionNo, DimensionMismatch, InternalCheckFailed,
                     MalformedSequence, NotSplitError, UnsupportedCase)
from .field import Field, FieldElement, quadratic_roots
from .matrix import (Matrix, SimilarityWitness, block2x2, direct_sum, hstack,
                     inverse, jordan_block, kernel_matrix, permutation_matrix)
from .poly import (Polynomial, companion, decompose_in_t2_minus_t,
                   krylov_annihilator, minimal_polynomial)


@dataclass(frozen=True)
class QuadParams:
    """The four scalars (a, b, c, d) defining the two quadratics."""

    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    @classmethod
    def of(cls, field: Field, a=1, b=0, c=0, d=0) -> "QuadParams":
        return cls(field.element(a), field.element(b), field.element(c), field.element(d))

    @property
    def field(self) -> Field:
        return self.a.field


@dataclass(frozen=True)
class CaseClassification:
    """Outcome of the shift/scale reduction.

    case III is the idempotent + square-zero situation this tool decides
    and constructs for; cases I (two nonzero-scaled idempotents) and II
    (two square-zero matrices) are classified but not constructed.
    """

    case: str  # "I", "II" or "III"
    alpha: FieldElement
    beta: FieldElement
    shift: FieldElement
    scale: FieldElement | None  # nonzero reduced coefficient, case III only
    swapped: bool  # idempotent role landed on the (c, d) side


@dataclass(frozen=True)
class BlockPairing:
    """Matching of Jordan block sizes at eigenvalue 1 against those at 0.

    Paired sizes differ by at most 2; blocks without a partner appear as
    singletons and are necessarily of size at most 2.
    """

    pairs: tuple  # of (size_at_1, size_at_0)
    singletons: tuple  # of (eigenvalue_tag, size) with tag in {0, 1}


@dataclass(frozen=True)
class Decision:
    """Yes/no answer for the idempotent + square-zero case, with diagnostics."""

    yes: bool
    split: SpectralSplit
    invariant_factors: InvariantFactors
    g_factors: tuple
    nullity_at_0: NullitySequence
    nullity_at_1: NullitySequence
    failing: dict | None


@dataclass(frozen=True)
class Certificate:
    """An explicit decomposition M = A + B with its claimed parameters."""

    a_part: Matrix
    b_part: Matrix
    params: QuadParams
    classification: CaseClassification | None = None
    decision: Decision | None = None
    pairing: BlockPairing | None = None


@dataclass(frozen=True)
class VerificationReport:
    sum_ok: bool
    first_quadratic_ok: bool
    second_quadratic_ok: bool
    commutation_ok: bool

    @property
    def ok(self) -> bool:
        return (self.sum_ok and self.first_quadratic_ok
                and self.second_quadratic_ok and self.commutation_ok)


@dataclass(frozen=True)
class NecessaryReport:
    """Result of the necessary condition for alpha*P + beta*Q decompositions."""

    status: str  # "no", "inconclusive" or "not_applicable"
    seq_alpha: NullitySequence | None
    seq_beta: NullitySequence | None
    violation: dict | None


# ---- intertwined sequences and block pairing -------------------------

def _check_sequence(u):
    u = tuple(u)
    if any(x < 0 for x in u) or any(u[i] < u[i + 1] for i in range(len(u) - 1)):
        raise MalformedSequence(f"not a non-increasing non-negative sequence: {u}")
    return u


def _first_violation(u, v, p: int):
    """First index where the p-intertwining inequalities fail, or None."""
    def at(seq, k):
        return seq[k - 1] if 1 <= k <= len(seq) else 0

    for n in range(1, max(len(u), len(v)) + 1):
        if at(u, n + p) > at(v, n):
            return {"side": "first", "index": n}
        if at(v, n + p) > at(u, n):
            return {"side": "second", "index": n}
    return None


def is_p_intertwined(u, v, p: int) -> bool:
    """Whether u_{n+p} <= v_n and v_{n+p} <= u_n for all n >= 1."""
    if p < 1:
        raise BadParams("p must be a positive integer")
    u = _check_sequence(u)
    v = _check_sequence(v)
    return _first_violation(u, v, p) is None


def pair_blocks(sizes_at_1, sizes_at_0) -> BlockPairing | None:
    """Align the two Jordan size lists for blockwise construction.

    Sort both lists descending, pad with zeros, match index-wise; feasible
    iff each matched pair differs by at most 2.  Feasibility is equivalent
    to the 2-intertwining of the corresponding nullity sequences.  Returns
    None when infeasible (decision NO for this part).
    """
    s1 = sorted(sizes_at_1, reverse=True)
    s0 = sorted(sizes_at_0, reverse=True)
    if any(s <= 0 for s in s1 + s0):
        raise MalformedSequence("block sizes must be positive")
    length = max(len(s1), len(s0))
    s1 = s1 + [0] * (length - len(s1))
    s0 = s0 + [0] * (length - len(s0))
    pairs = []
    singletons = []
    for a, b in zip(s1, s0):
        if abs(a - b) > 2:
            return None
        if a and b:
            pairs.append((a, b))
        elif a:
            singletons.append((1, a))
        elif b:
            singletons.append((0, b))
    return BlockPairing(tuple(pairs), tuple(singletons))


# ---- classification --------------------------------------------------

def classify_and_reduce(m: Matrix, params: QuadParams):
    """Shift by (alpha + beta) and rescale so the decision runs on the
    idempotent + square-zero normal form.

    Returns ``(classification, reduced)`` where ``reduced`` is the matrix
    handed to :func:`decide` in case III (shifted and divided by the scale),
    and just the shifted matrix in cases I and II.
    """
    if not m.is_square:
        raise DimensionMismatch("classification needs a square matrix")
    f = m.field
    roots_first = quadratic_roots(f, params.a, params.b)
    if roots_first is None:
        raise NotSplitError("t^2 - a t - b does not split over the base field")
    roots_second = quadratic_roots(f, params.c, params.d)
    if roots_second is None:
        raise NotSplitError("t^2 - c t - d does not split over the base field")
    alpha = roots_first[0]
    beta = roots_second[0]
    shift = alpha + beta
    shifted = m - shift * Matrix.identity(f, m.rows)
    a_red = params.a - 2 * alpha
    c_red = params.c - 2 * beta
    if a_red and c_red:
        cls = CaseClassification("I", alpha, beta, shift, None, False)
        return cls, shifted
    if not a_red and not c_red:
        cls = CaseClassification("II", alpha, beta, shift, None, False)
        return cls, shifted
    swapped = not a_red
    scale = c_red if swapped else a_red
    cls = CaseClassification("III", alpha, beta, shift, scale, swapped)
    return cls, shifted * scale.inverse()


# ---- decision --------------------------------------------------------

def decide(m: Matrix) -> Decision:
    """Decide whether M is the sum of an idempotent and a square-zero matrix."""
    split = split_spectral(m)
    factors, _ = invariant_factors_with_transform(split.m1)
    g_factors = []
    failing = None
    for fac in factors:
        g = decompose_in_t2_minus_t(fac)
        if g is None:
            failing = {"kind": "invariant_factor",
                       "factor": [str(c) for c in fac.coeffs]}
            break
        g_factors.append(g)
    seq0 = nullity_sequence(split.m2, 0)
    seq1 = nullity_sequence(split.m2, 1)
    if failing is None:
        viol = _first_violation(seq0.values, seq1.values, 2)
        if viol is not None:
            eig = 0 if viol["side"] == "first" else 1
            failing = {"kind": "intertwining", "eigenvalue": eig,
                       "index": viol["index"]}
    return Decision(
        yes=failing is None,
        split=split,
        invariant_factors=factors,
        g_factors=tuple(g_factors),
        nullity_at_0=seq0,
        nullity_at_1=seq1,
        failing=failing,
    )


# ---- construction: part with no eigenvalue in {0, 1} -----------------

def _cyclic_basis(m: Matrix, target: Polynomial) -> Matrix:
    """Krylov basis K of a cyclic vector, so K^-1 m K = C(target)."""
    n = m.rows
    for i in range(n):
        v = [0] * n
        v[i] = 1
        ann, chain = krylov_annihilator(m, v)
        if ann == target:
            f = m.field
            return Matrix(f, n, n,
                          [f.make(f.reduce(chain[j][r])) for r in range(n) for j in range(n)])
    raise InternalCheckFailed("block matrix has no standard cyclic vector")


def construct_case_a(m1: Matrix):
    """Split a matrix with no eigenvalue in {0, 1} whose invariant factors
    are all polynomials in t^2 - t into idempotent + square-zero.

    Per invariant factor f = g(t^2 - t) the model is the 2m x 2m block
    matrix [[I, C(g)], [I, 0]] = [[I, 0], [I, 0]] + [[0, C(g)], [0, 0]],
    which is conjugated onto C(f) through a Krylov basis.
    """
    f = m1.field
    if m1.rows == 0:
        empty = Matrix.zero(f, 0, 0)
        return empty, empty
    factors, witness = invariant_factors_with_transform(m1)
    a_blocks = []
    b_blocks = []
    for fac in factors:
        g = decompose_in_t2_minus_t(fac)
        if g is None:
            raise InternalCheckFailed(
                "construct_case_a called with a factor that is not a polynomial in t^2 - t")
        c_g = companion(g)
        mdim = g.degree
        ident = Matrix.identity(f, mdim)
        zero = Matrix.zero(f, mdim)
        u_block = block2x2(ident, c_g, ident, zero)
        a_model = block2x2(ident, zero, ident, zero)
        b_model = block2x2(zero, c_g, zero, zero)
        k_basis = SimilarityWitness.from_matrix(_cyclic_basis(u_block, fac))
        if k_basis.apply_inverse(u_block) != companion(fac):
            raise InternalCheckFailed("Krylov basis did not reach the companion form")
        a_blocks.append(k_basis.apply_inverse(a_model))
        b_blocks.append(k_basis.apply_inverse(b_model))
    a_frob = direct_sum(f, a_blocks)
    b_frob = direct_sum(f, b_blocks)
    a_mat = witness.apply(a_frob)
    b_mat = witness.apply(b_frob)
    _post_check_idempotent_square_zero(m1, a_mat, b_mat)
    return a_mat, b_mat


# ---- construction: triangularizable part with spectrum in {0, 1} -----

def _shift_intertwiners(f: Field, a: int, b: int):
    """Maps X (a x b), Y (b x a) with N_a^2 = XY, N_b^2 = YX, N_a X = X N_b
    and Y N_a = N_b Y, for subdiagonal-shift nilpotents and |a - b| <= 2.

    The larger side receives a shift-by-two inclusion, the smaller a plain
    truncation; for a = b this degenerates to (N^2, I).
    """
    z, o = f.zero(), f.one()
    x_ent = [z] * (a * b)
    y_ent = [z] * (b * a)
    if a >= b:
        for i in range(min(b, a - 2)):
            x_ent[(i + 2) * b + i] = o
        for i in range(b):
            y_ent[i * a + i] = o
    else:
        for i in range(a):
            x_ent[i * b + i] = o
        for i in range(min(a, b - 2)):
            y_ent[(i + 2) * a + i] = o
    return Matrix(f, a, b, x_ent), Matrix(f, b, a, y_ent)


def _unit_decomposition(f: Field, size_at_1: int, size_at_0: int):
    """Idempotent + square-zero split of the model (I + N) (+) N' for one
    paired unit, N and N' being subdiagonal nilpotent Jordan blocks."""
    if size_at_1 == 0:
        return (Matrix.zero(f, size_at_0), jordan_block(f, size_at_0))
    if size_at_0 == 0:
        return (Matrix.identity(f, size_at_1), jordan_block(f, size_at_1))
    a, b = size_at_1, size_at_0
    n_one = jordan_block(f, a)
    n_zero = jordan_block(f, b)
    i1 = Matrix.identity(f, a)
    i0 = Matrix.identity(f, b)
    inv_plus = inverse(i1 + 2 * n_one)   # unipotent, always invertible
    inv_minus = inverse(i0 - 2 * n_zero)
    b1 = inv_plus * n_one * (i1 + n_one)
    b4 = inv_minus * n_zero * (i0 - n_zero)
    x_map, y_map = _shift_intertwiners(f, a, b)
    # absorb the sign of -N' by conjugating with the alternating diagonal
    sign = Matrix.diagonal(f, [1 if i % 2 == 0 else -1 for i in range(b)])
    x_t = x_map * sign
    y_t = sign * y_map
    b3 = -(inv_plus * inv_plus) * (i1 + n_one) * (i1 + n_one) * x_t
    b2 = y_t
    b_mat = block2x2(b1, b3, b2, b4)
    model = direct_sum(f, [i1 + n_one, n_zero])
    a_mat = model - b_mat
    return a_mat, b_mat


def construct_case_b(m2: Matrix):
    """Split a triangularizable matrix with spectrum in {0, 1} whose nullity
    sequences at 0 and 1 are 2-intertwined into idempotent + square-zero."""
    f = m2.field
    n = m2.rows
    if n == 0:
        empty = Matrix.zero(f, 0, 0)
        return empty, empty
    mu = minimal_polynomial(m2)
    t_poly = Polynomial.x(f)
    t_minus_1 = Polynomial.from_coeffs(f, [-1, 1])
    e0 = 0
    e1 = 0
    rest = mu
    while True:
        q_, r_ = rest.divrem(t_poly)
        if not r_.is_zero():
            break
        rest, e0 = q_, e0 + 1
    while True:
        q_, r_ = rest.divrem(t_minus_1)
        if not r_.is_zero():
            break
        rest, e1 = q_, e1 + 1
    if rest.degree != 0:
        raise InternalCheckFailed("construct_case_b needs spectrum inside {0, 1}")
    ident = Matrix.identity(f, n)
    ker_at_1 = kernel_matrix((m2 - ident) ** e1) if e1 else Matrix.zero(f, n, 0)
    ker_at_0 = kernel_matrix(m2 ** e0) if e0 else Matrix.zero(f, n, 0)
    basis = hstack(f, [ker_at_1, ker_at_0])
    if basis.cols != n:
        raise InternalCheckFailed("characteristic subspaces do not span")
    basis_w = SimilarityWitness.from_matrix(basis)
    form = basis_w.apply_inverse(m2)
    n1 = ker_at_1.cols
    r_one = form.submatrix(0, n1, 0, n1)
    r_zero = form.submatrix(n1, n, n1, n)
    sizes1, w_one = nilpotent_jordan_with_transform(
        r_one - Matrix.identity(f, n1))
    sizes0, w_zero = nilpotent_jordan_with_transform(r_zero)
    pairing = pair_blocks(sizes1, sizes0)
    if pairing is None:
        raise InternalCheckFailed("construct_case_b called on a non-intertwined matrix")
    # align: k-th remaining block at 1 pairs with k-th at 0 (both sorted desc)
    length = max(len(sizes1), len(sizes0))
    padded1 = list(sizes1) + [0] * (length - len(sizes1))
    padded0 = list(sizes0) + [0] * (length - len(sizes0))
    one_offsets = []
    off = 0
    for s in sizes1:
        one_offsets.append(off)
        off += s
    zero_offsets = []
    off = n1
    for s in sizes0:
        zero_offsets.append(off)
        off += s
    perm = []
    units = []
    for k in range(length):
        s1, s0 = padded1[k], padded0[k]
        if s1:
            perm.extend(range(one_offsets[k], one_offsets[k] + s1))
        if s0:
            perm.extend(range(zero_offsets[k], zero_offsets[k] + s0))
        units.append((s1, s0))
    pi = permutation_matrix(f, perm)
    unit_parts = [_unit_decomposition(f, s1, s0) for s1, s0 in units]
    a_units = direct_sum(f, [a for a, _ in unit_parts])
    b_units = direct_sum(f, [b for _, b in unit_parts])
    v_mat = basis * direct_sum(f, [w_one.t, w_zero.t]) * pi
    v_w = SimilarityWitness(v_mat, inverse(v_mat))
    a_mat = v_w.apply(a_units)
    b_mat = v_w.apply(b_units)
    _post_check_idempotent_square_zero(m2, a_mat, b_mat)
    return a_mat, b_mat


def _post_check_idempotent_square_zero(m: Matrix, a_mat: Matrix, b_mat: Matrix):
    if a_mat + b_mat != m:
        raise InternalCheckFailed("construction does not sum back to the input")
    if a_mat * a_mat != a_mat:
        raise InternalCheckFailed("constructed A is not idempotent")
    if not (b_mat * b_mat).is_zero():
        raise InternalCheckFailed("constructed B is not square-zero")


# ---- full pipeline ---------------------------------------------------

def construct(m: Matrix, params: QuadParams) -> Certificate:
    """Decide and, on yes, build a verified certificate for M = A + B with
    A being (a,b)-quadratic and B being (c,d)-quadratic.

    Raises UnsupportedCase for the two-idempotent / two-square-zero cases,
    DecisionNo when the answer is no, NotSplitError when a quadratic has no
    root in the base field.
    """
    cls, reduced = classify_and_reduce(m, params)
    if cls.case != "III":
        necessary = None
        if cls.case == "I":
            a_red = params.a - 2 * cls.alpha
            c_red = params.c - 2 * cls.beta
            try:
                necessary = check_necessary_combination(reduced, a_red, c_red)
            except BadParams:
                necessary = None
        raise UnsupportedCase(cls, necessary)
    decision = decide(reduced)
    if not decision.yes:
        raise DecisionNo(decision)
    split = decision.split
    f = m.field
    a1, b1 = construct_case_a(split.m1)
    a2, b2 = construct_case_b(split.m2)
    # split.witness conjugates M'' onto M1 (+) M2, so pull the parts back
    back = split.witness.inverted()
    a_red_mat = back.apply(direct_sum(f, [a1, a2]))
    b_red_mat = back.apply(direct_sum(f, [b1, b2]))
    ident = Matrix.identity(f, m.rows)
    scale = cls.scale
    if not cls.swapped:
        a_part = cls.alpha * ident + scale * a_red_mat
        b_part = cls.beta * ident + scale * b_red_mat
    else:
        a_part = cls.alpha * ident + scale * b_red_mat
        b_part = cls.beta * ident + scale * a_red_mat
    pairing = pair_blocks(decision.nullity_at_1.block_sizes(),
                          decision.nullity_at_0.block_sizes())
    cert = Certificate(a_part, b_part, params, cls, decision, pairing)
    report = verify_certificate(m, cert)
    if not report.ok:
        raise InternalCheckFailed(f"certificate failed verification: {report}")
    return cert


def verify_certificate(m: Matrix, cert: Certificate) -> VerificationReport:
    """Exact check of A + B = M and both quadratic identities, plus the
    redundant commutation probe with (A+B)((a+c)I - (A+B))."""
    a_mat, b_mat = cert.a_part, cert.b_part
    if a_mat.rows != m.rows or b_mat.rows != m.rows:
        raise DimensionMismatch("certificate dimensions do not match the matrix")
    params = cert.params
    ident = Matrix.identity(m.field, m.rows)
    sum_ok = a_mat + b_mat == m
    first_ok = a_mat * a_mat == params.a * a_mat + params.b * ident
    second_ok = b_mat * b_mat == params.c * b_mat + params.d * ident
    probe = (a_mat + b_mat) * ((params.a + params.c) * ident - (a_mat + b_mat))
    commutation_ok = (a_mat * probe == probe * a_mat
                      and b_mat * probe == probe * b_mat)
    return VerificationReport(sum_ok, first_ok, second_ok, commutation_ok)


def check_necessary_combination(m: Matrix, alpha, beta) -> NecessaryReport:
    """Necessary condition for M = alpha*P + beta*Q with P, Q idempotent:
    the nullity sequences at alpha and beta must be 1-intertwined.

    Only applies when (M - alpha I)^n (M - beta I)^n = 0; a NO certifies
    non-decomposability, a YES is inconclusive.
    """
    f = m.field
    alpha = f.element(alpha)
    beta = f.element(beta)
    if alpha == beta or not alpha or not beta:
        raise BadParams("needs distinct nonzero alpha, beta")
    n = m.rows
    ident = Matrix.identity(f, n)
    annihilated = (((m - alpha * ident) ** n) * ((m - beta * ident) ** n)).is_zero()
    if not annihilated:
        return NecessaryReport("not_applicable", None, None, None)
    seq_a = nullity_sequence(m, alpha)
    seq_b = nullity_sequence(m, beta)
    viol = _first_violation(seq_a.values, seq_b.values, 1)
    status = "no" if viol else "inconclusive"
    return NecessaryReport(status, seq_a, seq_b, viol)
