"""Symmetric multilinear forms stored as homogeneous-polynomial coefficients.

A degree-m form L on K^d is represented by the coefficients a_alpha of its
diagonal polynomial P(x) = sum_alpha a_alpha x^alpha.  The symmetric tensor
entry at index multiset beta is a_beta * beta!/m!, which makes the
polynomial <-> form round trip unambiguous.  All evaluation routines are
pure and operate on immutable form objects.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

REAL = "real"
COMPLEX = "complex"

# 2^m sign patterns per polarization; beyond this the exact average is off the table.
POLARIZE_DEGREE_CAP = 20
# d^m entries for the dense tensor oracle.
TENSOR_ENTRY_CAP = 10_000_000


class FormError(ValueError):
    """Invalid construction or evaluation request for a symmetric form."""


@dataclass(frozen=True)
class MultiIndex:
    """Exponent tuple alpha of a monomial x^alpha; degree is sum(alpha)."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if any(e < 0 for e in exps):
            raise FormError(f"multi-index entries must be >= 0, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)


@dataclass(frozen=True)
class Pattern:
    """Multiplicities (k_1, ..., k_n) with which base vectors enter a form."""

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        ks = tuple(int(k) for k in self.multiplicities)
        if not ks:
            raise FormError("pattern needs at least one block")
        if any(k < 1 for k in ks):
            raise FormError(f"pattern multiplicities must be >= 1, got {ks}")
        object.__setattr__(self, "multiplicities", ks)

    @property
    def n(self) -> int:
        return len(self.multiplicities)

    @property
    def m(self) -> int:
        return sum(self.multiplicities)

    def __iter__(self):
        return iter(self.multiplicities)


def as_pattern(pattern) -> Pattern:
    if isinstance(pattern, Pattern):
        return pattern
    if isinstance(pattern, int):
        return Pattern((pattern,))
    return Pattern(tuple(pattern))


@dataclass(frozen=True)
class SpaceSpec:
    """Ambient space ell_p^d over the given scalar field (p in [1, inf])."""

    p: float
    dim: int
    field: str = REAL

    def __post_init__(self):
        p = float(self.p)
        if not p >= 1.0:
            raise FormError(f"p must satisfy p >= 1, got {p}")
        if self.dim < 1:
            raise FormError(f"dim must be >= 1, got {self.dim}")
        if self.field not in (REAL, COMPLEX):
            raise FormError(f"field must be 'real' or 'complex', got {self.field!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "dim", int(self.dim))

    @property
    def conjugate(self) -> float:
        """Conjugate exponent p' with 1/p + 1/p' = 1 (extended values)."""
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)


def conjugate_exponent(p: float) -> float:
    return SpaceSpec(p, 1).conjugate


class SymmetricForm:
    """Degree-m symmetric form on K^d, keyed by monomial exponents.

    coeffs maps MultiIndex alpha (|alpha| = m, len d) to the polynomial
    coefficient a_alpha.  The instance is immutable after construction;
    cached evaluation arrays are derived lazily.
    """

    def __init__(self, degree: int, dim: int, field: str, coeffs: dict):
        if degree < 1:
            raise FormError(f"degree must be >= 1, got {degree}")
        if dim < 1:
            raise FormError(f"dim must be >= 1, got {dim}")
        if field not in (REAL, COMPLEX):
            raise FormError(f"field must be 'real' or 'complex', got {field!r}")
        clean: dict[MultiIndex, complex] = {}
        for alpha, value in coeffs.items():
            if not isinstance(alpha, MultiIndex):
                alpha = MultiIndex(tuple(alpha))
            if len(alpha) != dim:
                raise FormError(
                    f"multi-index {alpha.exponents} has length {len(alpha)}, expected dim {dim}"
                )
            if alpha.degree != degree:
                raise FormError(
                    f"multi-index {alpha.exponents} has degree {alpha.degree}, expected {degree}"
                )
            value = complex(value)
            if field == REAL and value.imag != 0.0:
                raise FormError(f"complex coefficient {value} in a real form")
            clean[alpha] = value
        self.degree = int(degree)
        self.dim = int(dim)
        self.field = field
        # canonical key order so identical forms always evaluate identically
        self.coeffs = {
            k: (clean[k].real if field == REAL else clean[k])
            for k in sorted(clean, key=lambda a: a.exponents)
        }

    # -- derived arrays ----------------------------------------------------

    @cached_property
    def _exponents(self) -> np.ndarray:
        if not self.coeffs:
            return np.zeros((0, self.dim), dtype=np.int64)
        return np.array([k.exponents for k in self.coeffs], dtype=np.int64)

    @cached_property
    def _values(self) -> np.ndarray:
        dtype = np.float64 if self.field == REAL else np.complex128
        if not self.coeffs:
            return np.zeros(0, dtype=dtype)
        return np.array(list(self.coeffs.values()), dtype=dtype)

    @cached_property
    def _grad_tables(self):
        """Stacked lowered exponents for gradient evaluation.

        Row r corresponds to one (monomial, active dim) pair: exponent row
        with that dim decremented, weight a_alpha * alpha_i, and a 0/1
        scatter matrix mapping rows back to dims.
        """
        rows, weights, dims = [], [], []
        E = self._exponents
        a = self._values
        for c in range(E.shape[0]):
            for i in range(self.dim):
                if E[c, i] > 0:
                    row = E[c].copy()
                    row[i] -= 1
                    rows.append(row)
                    weights.append(a[c] * E[c, i])
                    dims.append(i)
        if not rows:
            return (
                np.zeros((0, self.dim), dtype=np.int64),
                np.zeros(0, dtype=self._values.dtype),
                np.zeros((0, self.dim)),
            )
        scatter = np.zeros((len(rows), self.dim))
        scatter[np.arange(len(rows)), dims] = 1.0
        return np.array(rows, dtype=np.int64), np.array(weights), scatter

    # -- evaluation --------------------------------------------------------

    def eval_batch(self, points: np.ndarray) -> np.ndarray:
        """P at each row of points, shape (N, d) -> (N,)."""
        points = np.atleast_2d(points)
        if self._exponents.shape[0] == 0:
            dtype = np.complex128 if np.iscomplexobj(points) or self.field == COMPLEX else np.float64
            return np.zeros(points.shape[0], dtype=dtype)
        monomials = np.prod(points[:, None, :] ** self._exponents[None, :, :], axis=2)
        return monomials @ self._values

    def eval_grad_batch(self, points: np.ndarray):
        """(P(x), grad P(x)) per row; complex forms return holomorphic partials."""
        points = np.atleast_2d(points)
        vals = self.eval_batch(points)
        GE, GW, GS = self._grad_tables
        if GE.shape[0] == 0:
            return vals, np.zeros((points.shape[0], self.dim), dtype=vals.dtype)
        lowered = np.prod(points[:, None, :] ** GE[None, :, :], axis=2)
        grads = (lowered * GW[None, :]) @ GS
        return vals, grads

    def scaled(self, factor) -> "SymmetricForm":
        """New form with every coefficient multiplied by factor."""
        return SymmetricForm(
            self.degree,
            self.dim,
            self.field if (self.field == COMPLEX or complex(factor).imag == 0.0) else COMPLEX,
            {k: v * factor for k, v in self.coeffs.items()},
        )

    def __repr__(self):
        return (
            f"SymmetricForm(degree={self.degree}, dim={self.dim}, "
            f"field={self.field!r}, terms={len(self.coeffs)})"
        )


# ---------------------------------------------------------------------------
# construction


def make_form(degree: int, dim: int, field: str, entries: Iterable) -> SymmetricForm:
    """Build a validated form from (alpha, coefficient) pairs.

    Duplicate multi-indices are rejected rather than merged.
    """
    coeffs: dict[MultiIndex, complex] = {}
    for alpha, value in entries:
        key = alpha if isinstance(alpha, MultiIndex) else MultiIndex(tuple(alpha))
        if key in coeffs:
            raise FormError(f"duplicate multi-index {key.exponents}")
        coeffs[key] = value
    return SymmetricForm(degree, dim, field, coeffs)


def zero_form(degree: int, dim: int, field: str = REAL) -> SymmetricForm:
    return SymmetricForm(degree, dim, field, {})


def random_form(rng: np.random.Generator, degree: int, dim: int, field: str = REAL) -> SymmetricForm:
    """Dense form with iid standard-normal coefficients over all monomials."""
    entries = []
    for alpha in itertools.combinations_with_replacement(range(dim), degree):
        exps = [0] * dim
        for i in alpha:
            exps[i] += 1
        if field == REAL:
            value = rng.standard_normal()
        else:
            value = complex(rng.standard_normal(), rng.standard_normal()) / math.sqrt(2.0)
        entries.append((tuple(exps), value))
    return make_form(degree, dim, field, entries)


# ---------------------------------------------------------------------------
# evaluation operations


def _as_vector(form: SymmetricForm, x) -> np.ndarray:
    arr = np.asarray(x)
    if arr.shape != (form.dim,):
        raise FormError(f"vector has shape {arr.shape}, expected ({form.dim},)")
    if np.iscomplexobj(arr):
        return arr.astype(np.complex128)
    return arr.astype(np.float64)


def eval_poly(form: SymmetricForm, x):
    """P(x) = sum_alpha a_alpha x^alpha."""
    point = _as_vector(form, x)
    val = form.eval_batch(point[None, :])[0]
    return complex(val) if np.iscomplexobj(val) else float(val)


@lru_cache(maxsize=64)
def _sign_table(m: int):
    """All epsilon in {-1,+1}^m with the product of signs per row."""
    signs = np.array(list(itertools.product((-1.0, 1.0), repeat=m)))
    return signs, np.prod(signs, axis=1)


@lru_cache(maxsize=256)
def _block_table(multiplicities: tuple[int, ...]):
    """Collapsed sign enumeration for block arguments.

    Grouping the 2^m sign patterns by per-block sign sums turns the
    polarization average into prod(k_j + 1) evaluations: combo (t_1..t_n)
    carries weight prod_j C(k_j, t_j) * (-1)^(k_j - t_j) and block
    multiplier 2 t_j - k_j.
    """
    combos = list(itertools.product(*(range(k + 1) for k in multiplicities)))
    mult = np.array(
        [[2 * t - k for t, k in zip(combo, multiplicities)] for combo in combos],
        dtype=np.float64,
    )
    weights = np.array(
        [
            math.prod(math.comb(k, t) for t, k in zip(combo, multiplicities))
            * (-1) ** (sum(multiplicities) - sum(combo))
            for combo in combos
        ],
        dtype=np.float64,
    )
    return mult, weights


def _polar_scale(m: int) -> float:
    return 1.0 / float(2**m * math.factorial(m))


def polarize(form: SymmetricForm, vectors: Sequence, cap: int = POLARIZE_DEGREE_CAP):
    """L(x_1, ..., x_m) via the exact 2^m signed average of P.

    Equals the Rademacher-integral polarization formula because the
    integrand is constant on dyadic intervals.
    """
    m = form.degree
    if len(vectors) != m:
        raise FormError(f"polarize needs {m} vectors, got {len(vectors)}")
    if m > cap:
        raise FormError(f"degree {m} exceeds polarization cap {cap}")
    xs = np.stack([_as_vector(form, x) for x in vectors])
    signs, sign_prod = _sign_table(m)
    vals = form.eval_batch(signs @ xs)
    out = (sign_prod @ vals) * _polar_scale(m)
    return complex(out) if np.iscomplexobj(out) else float(out)


def eval_mixed(form: SymmetricForm, pattern, vectors: Sequence, cap: int = POLARIZE_DEGREE_CAP):
    """L(x_1^{k_1} ... x_n^{k_n}) by block sign enumeration."""
    pat = as_pattern(pattern)
    if pat.m != form.degree:
        raise FormError(f"pattern sums to {pat.m}, form degree is {form.degree}")
    if len(vectors) != pat.n:
        raise FormError(f"pattern has {pat.n} blocks, got {len(vectors)} vectors")
    if pat.m > cap:
        raise FormError(f"degree {pat.m} exceeds polarization cap {cap}")
    xs = np.stack([_as_vector(form, x) for x in vectors])
    mult, weights = _block_table(pat.multiplicities)
    vals = form.eval_batch(mult @ xs)
    out = (weights @ vals) * _polar_scale(pat.m)
    return complex(out) if np.iscomplexobj(out) else float(out)


def eval_mixed_grad(form: SymmetricForm, pattern, vectors: Sequence):
    """Mixed value plus its gradient with respect to every block vector.

    Returns (value, grads) with grads[j] the (holomorphic) partial of the
    mixed value in the j-th block argument; shape (n, d).
    """
    pat = as_pattern(pattern)
    if pat.m != form.degree:
        raise FormError(f"pattern sums to {pat.m}, form degree is {form.degree}")
    if len(vectors) != pat.n:
        raise FormError(f"pattern has {pat.n} blocks, got {len(vectors)} vectors")
    xs = np.stack([_as_vector(form, x) for x in vectors])
    mult, weights = _block_table(pat.multiplicities)
    vals, grads = form.eval_grad_batch(mult @ xs)
    scale = _polar_scale(pat.m)
    value = (weights @ vals) * scale
    block_grads = (weights[:, None] * mult).T @ grads * scale
    return value, block_grads


def _multiset_index_tuples(alpha):
    """Distinct orderings of the index multiset {i repeated alpha_i times}."""
    counts = list(alpha)
    total = sum(counts)
    out = [0] * total

    def rec(pos):
        if pos == total:
            yield tuple(out)
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                out[pos] = i
                yield from rec(pos + 1)
                counts[i] += 1

    yield from rec(0)


def eval_tensor_direct(form: SymmetricForm, vectors: Sequence, cap: int = TENSOR_ENTRY_CAP):
    """Brute-force oracle: contract the dense symmetric tensor with the arguments.

    The tensor entry at an index tuple with count vector beta is
    a_beta * beta!/m!; cost O(d^m) in memory and time.
    """
    m, d = form.degree, form.dim
    if len(vectors) != m:
        raise FormError(f"tensor contraction needs {m} vectors, got {len(vectors)}")
    if d**m > cap:
        raise FormError(f"d^m = {d**m} exceeds tensor cap {cap}")
    dtype = np.float64 if form.field == REAL else np.complex128
    xs = [_as_vector(form, x) for x in vectors]
    if any(np.iscomplexobj(x) for x in xs):
        dtype = np.complex128
    tensor = np.zeros((d,) * m, dtype=dtype)
    fact_m = math.factorial(m)
    for alpha, a in form.coeffs.items():
        beta_fact = math.prod(math.factorial(e) for e in alpha)
        entry = a * beta_fact / fact_m
        for idx in _multiset_index_tuples(alpha.exponents):
            tensor[idx] = entry
    out = tensor
    for x in xs:
        out = np.tensordot(out, x, axes=([0], [0]))
    out = out.item()
    return out if form.field == COMPLEX or isinstance(out, complex) else float(out)


def frechet(form: SymmetricForm, x, k: int, ys: Sequence):
    """k-th Frechet derivative D^k P(x)(y_1, ..., y_k) = k! C(m,k) L(x^{m-k}, ys)."""
    m = form.degree
    if not 1 <= k <= m:
        raise FormError(f"derivative order k={k} out of range 1..{m}")
    if len(ys) != k:
        raise FormError(f"expected {k} direction vectors, got {len(ys)}")
    factor = math.factorial(k) * math.comb(m, k)
    if k == m:
        return factor * polarize(form, list(ys))
    pattern = (m - k,) + (1,) * k
    return factor * eval_mixed(form, pattern, [x, *ys])


def multinomial_terms(form: SymmetricForm, vectors: Sequence):
    """All terms of P(x_1 + ... + x_n) = sum m!/prod(j_i!) L(x_1^{j_1} ... x_n^{j_n}).

    Returns a list of (exponents j, weight m!/prod(j!), mixed value); the
    weighted values sum to P at the sum vector.
    """
    if not vectors:
        raise FormError("need at least one vector")
    m, n = form.degree, len(vectors)
    xs = [_as_vector(form, x) for x in vectors]
    fact_m = math.factorial(m)
    terms = []
    for js in itertools.product(range(m + 1), repeat=n):
        if sum(js) != m:
            continue
        weight = fact_m / math.prod(math.factorial(j) for j in js)
        blocks = [(j, xs[i]) for i, j in enumerate(js) if j > 0]
        value = eval_mixed(form, tuple(j for j, _ in blocks), [v for _, v in blocks])
        terms.append((js, weight, value))
    return terms


def complexify_form(form: SymmetricForm) -> SymmetricForm:
    """Canonical complex extension: same coefficients read over C^d."""
    if form.field == COMPLEX:
        raise FormError("form is already complex")
    return SymmetricForm(form.degree, form.dim, COMPLEX, dict(form.coeffs))


def complexify_eval(form: SymmetricForm, x, y) -> complex:
    """Value of the canonical complex extension at x + iy, from block values.

    Real part: sum_k (-1)^k C(m,2k) L(x^{m-2k} y^{2k}); imaginary part:
    sum_k (-1)^k C(m,2k+1) L(x^{m-2k-1} y^{2k+1}).
    """
    if form.field != REAL:
        raise FormError("complexify_eval expects a real form")
    m = form.degree
    xv, yv = _as_vector(form, x), _as_vector(form, y)

    def block_value(i: int, j: int):
        if i == 0 and j == 0:
            raise FormError("degree-0 block")
        if j == 0:
            return eval_poly(form, xv)
        if i == 0:
            return eval_poly(form, yv)
        return eval_mixed(form, (i, j), [xv, yv])

    re = sum((-1) ** k * math.comb(m, 2 * k) * block_value(m - 2 * k, 2 * k) for k in range(m // 2 + 1))
    im = sum(
        (-1) ** k * math.comb(m, 2 * k + 1) * block_value(m - 2 * k - 1, 2 * k + 1)
        for k in range((m - 1) // 2 + 1)
    )
    return complex(re, im)


# ---------------------------------------------------------------------------
# file format


def form_to_dict(form: SymmetricForm) -> dict:
    coeffs = []
    for alpha, value in form.coeffs.items():
        entry = {"alpha": list(alpha.exponents), "re": float(np.real(value))}
        im = float(np.imag(value))
        if im != 0.0:
            entry["im"] = im
        coeffs.append(entry)
    return {"degree": form.degree, "dim": form.dim, "field": form.field, "coeffs": coeffs}


def form_from_dict(doc: dict) -> SymmetricForm:
    try:
        degree, dim, field = doc["degree"], doc["dim"], doc["field"]
        raw = doc["coeffs"]
    except (KeyError, TypeError) as exc:
        raise FormError(f"malformed form document: missing {exc}") from exc
    entries = []
    for item in raw:
        value = complex(item["re"], item.get("im", 0.0))
        entries.append((tuple(item["alpha"]), value))
    return make_form(degree, dim, field, entries)


def save_form(form: SymmetricForm, path) -> None:
    Path(path).write_text(json.dumps(form_to_dict(form), indent=2) + "\n")


def load_form(path) -> SymmetricForm:
    return form_from_dict(json.loads(Path(path).read_text()))
