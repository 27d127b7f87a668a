"""
Sparse Exact Polynomials

Polynomials are immutable maps from exponent tuples to `Fraction` coefficients;
zero coefficients are never stored. Variables are numbered from 0, so in a
homogeneous Tutte polynomial w_0 is variable 0 and w_i is variable i.

- Polynomial: general polynomial in a fixed number of variables.
- HomogeneousPolynomial: every term has the same declared total degree.
- TrivariatePolynomial: polynomial in (x, y, z).
- ParametricPolynomial: polynomial in w whose coefficients are Laurent monomials
  in a few parameters (p, q, ...). Used for limits, which pick the terms of
  lowest order in the parameters exactly.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DescriptorError, NotHomogeneousError
from .utils import as_fraction

Exps = Tuple[int, ...]
Scalar = Union[int, Fraction]


def _collect(nvars: int, terms) -> Dict[Exps, Fraction]:
    items = terms.items() if isinstance(terms, Mapping) else terms
    out: Dict[Exps, Fraction] = {}
    for exps, coeff in items:
        exps = tuple(int(e) for e in exps)
        if len(exps) != nvars:
            raise DescriptorError(f"exponent vector {list(exps)} does not have {nvars} entries")
        if any(e < 0 for e in exps):
            raise DescriptorError(f"negative exponent in {list(exps)}")
        out[exps] = out.get(exps, Fraction(0)) + Fraction(coeff)
    return {e: c for e, c in out.items() if c != 0}


class Polynomial:
    """
    Sparse polynomial with exact rational coefficients.

    Attributes:
        nvars (int): number of variables.
        terms (dict): exponent tuple -> nonzero Fraction.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Union[Mapping, Iterable] = ()):
        self.nvars = nvars
        self.terms = _collect(nvars, terms)

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exps, Fraction]) -> "Polynomial":
        obj = Polynomial.__new__(Polynomial)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        return Polynomial(nvars, {tuple(1 if k == i else 0 for k in range(nvars)): 1})

    @classmethod
    def linear_form(cls, coefficients: Sequence[Scalar]) -> "Polynomial":
        m = len(coefficients)
        return Polynomial(m, {tuple(1 if k == i else 0 for k in range(m)): c for i, c in enumerate(coefficients)})

    # Structure

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> List[Exps]:
        return sorted(self.terms)

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def homogeneous(self, degree: Optional[int] = None) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial(self.nvars, self.terms, degree)

    # Arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DescriptorError(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
            return other
        return Polynomial.constant(self.nvars, Fraction(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c != 0})

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if c == 0:
                return Polynomial._raw(self.nvars, {})
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # Calculus and substitution

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Polynomial._raw(self.nvars, out)

    def partial(self, multiset: Iterable[int]) -> "Polynomial":
        """Apply the derivative once for every entry of `multiset`."""
        p = self
        for i in multiset:
            p = p.derivative(i)
        return p

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point (0^0 counts as 1)."""
        if len(point) != self.nvars:
            raise DescriptorError(f"point has {len(point)} coordinates, expected {self.nvars}")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def to_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """(exponent matrix, float coefficients) for numerical probes."""
        exps = sorted(self.terms)
        E = np.array(exps, dtype=np.float64).reshape(len(exps), self.nvars)
        c = np.array([float(self.terms[e]) for e in exps], dtype=np.float64)
        return E, c

    def evaluate_float(self, points: np.ndarray) -> np.ndarray:
        """Values at each row of `points`."""
        E, c = self.to_arrays()
        points = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return np.prod(points[:, None, :] ** E[None, :, :], axis=2) @ c

    def substitute(self, polys: Sequence["Polynomial"]) -> "Polynomial":
        """Compose: variable i is replaced by polys[i] (all in a common ring)."""
        if len(polys) != self.nvars:
            raise DescriptorError(f"need {self.nvars} substitutions, got {len(polys)}")
        if not polys:
            return self
        nv = polys[0].nvars
        total = Polynomial._raw(nv, {})
        powers: Dict[Tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = polys[i] ** k
                    term = term * powers[(i, k)]
            total = total + term
        return total

    def insert_variable(self, pos: int) -> "Polynomial":
        """Same polynomial in one more variable, placed at index `pos` with exponent 0."""
        return Polynomial._raw(self.nvars + 1, {e[:pos] + (0,) + e[pos:]: c for e, c in self.terms.items()})

    def dehomogenize(self, i: int = 0) -> "Polynomial":
        """Set variable i to 1 and drop it."""
        out: Dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            d = e[:i] + e[i + 1:]
            out[d] = out.get(d, Fraction(0)) + c
        return Polynomial._raw(self.nvars - 1, {e: c for e, c in out.items() if c != 0})

    def homogenize(self, degree: Optional[int] = None) -> "HomogeneousPolynomial":
        """Prepend a variable w_0 raising every term to `degree` (default: the top degree)."""
        d = self.degree() if degree is None else degree
        if any(sum(e) > d for e in self.terms):
            raise NotHomogeneousError(f"cannot homogenize to degree {d} below the top degree {self.degree()}")
        return HomogeneousPolynomial(self.nvars + 1, {(d - sum(e),) + e: c for e, c in self.terms.items()}, d)

    # Serialization

    def to_json(self) -> List[Dict]:
        return [{"exps": list(e), "num": c.numerator, "den": c.denominator} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, terms: Iterable[Mapping], nvars: Optional[int] = None) -> "Polynomial":
        terms = list(terms)
        if nvars is None:
            if not terms:
                raise DescriptorError("cannot infer the number of variables of an empty polynomial")
            nvars = len(terms[0]["exps"])
        return Polynomial(nvars, [(t["exps"], as_fraction({"num": t["num"], "den": t.get("den", 1)}))
                                  for t in terms])

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"w{i}" if k == 1 else f"w{i}^{k}" for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class HomogeneousPolynomial(Polynomial):
    """Polynomial whose terms all have the declared total degree."""

    __slots__ = ("degree_",)

    def __init__(self, nvars: int, terms: Union[Mapping, Iterable] = (), degree: Optional[int] = None):
        super().__init__(nvars, terms)
        degrees = {sum(e) for e in self.terms}
        if len(degrees) > 1:
            raise NotHomogeneousError(f"terms have degrees {sorted(degrees)}", {"degrees": sorted(degrees)})
        if degree is None:
            degree = degrees.pop() if degrees else 0
        elif degrees and degrees != {degree}:
            raise NotHomogeneousError(f"terms have degree {degrees.pop()}, declared {degree}")
        self.degree_ = degree

    @property
    def total_degree(self) -> int:
        return self.degree_

    def derivative(self, i: int) -> "HomogeneousPolynomial":
        return HomogeneousPolynomial(self.nvars, super().derivative(i).terms, max(self.degree_ - 1, 0))

    def partial(self, multiset: Iterable[int]) -> "HomogeneousPolynomial":
        p = self
        for i in multiset:
            p = p.derivative(i)
        return p

    def quadratic_form(self) -> List[List[Fraction]]:
        """Hessian matrix of a quadratic form."""
        if self.degree_ != 2:
            raise NotHomogeneousError(f"a quadratic form has degree 2, not {self.degree_}")
        H = [[Fraction(0)] * self.nvars for _ in range(self.nvars)]
        for e, c in self.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                H[i][i] += 2 * c
            else:
                H[i][j] += c
                H[j][i] += c
        return H


def as_homogeneous(h: Polynomial) -> HomogeneousPolynomial:
    if isinstance(h, HomogeneousPolynomial):
        return h
    return h.homogeneous()


class TrivariatePolynomial(Polynomial):
    """Polynomial in x, y, z."""

    __slots__ = ()

    def __init__(self, terms: Union[Mapping, Iterable] = ()):
        super().__init__(3, terms)

    def evaluate_at(self, x: Scalar, y: Scalar, z: Scalar) -> Fraction:
        return self.evaluate((x, y, z))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = "xyz"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
            parts.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)


class ParametricPolynomial:
    """
    Polynomial in w with Laurent-monomial coefficients in a few parameters.

    Terms are keyed by (parameter exponents, w exponents); parameter exponents
    may be negative.
    """

    __slots__ = ("nparams", "nvars", "terms")

    def __init__(self, nparams: int, nvars: int, terms: Union[Mapping, Iterable] = ()):
        self.nparams = nparams
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: Dict[Tuple[Exps, Exps], Fraction] = {}
        for (pexps, wexps), c in items:
            key = (tuple(int(e) for e in pexps), tuple(int(e) for e in wexps))
            if len(key[0]) != nparams or len(key[1]) != nvars:
                raise DescriptorError("parametric term has the wrong number of exponents")
            out[key] = out.get(key, Fraction(0)) + Fraction(c)
        self.terms = {k: c for k, c in out.items() if c != 0}

    def specialize(self, params: Sequence[Scalar]) -> Polynomial:
        """Substitute exact nonzero values for the parameters."""
        if len(params) != self.nparams:
            raise DescriptorError(f"need {self.nparams} parameter values, got {len(params)}")
        params = [Fraction(x) for x in params]
        if any(x == 0 for x in params):
            raise DescriptorError("parameters must be nonzero")
        out: Dict[Exps, Fraction] = {}
        for (pexps, wexps), c in self.terms.items():
            for x, k in zip(params, pexps):
                c = c * x ** k
            out[wexps] = out.get(wexps, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    def shift(self, pexps: Sequence[int]) -> "ParametricPolynomial":
        """Multiply by the parameter monomial with exponents `pexps`."""
        return ParametricPolynomial(self.nparams, self.nvars, {
            (tuple(a + b for a, b in zip(pe, pexps)), we): c for (pe, we), c in self.terms.items()
        })

    def scale_variables(self, param: int, exponents: Sequence[int]) -> "ParametricPolynomial":
        """Substitute w_i -> t^{exponents[i]} w_i where t is parameter `param`."""
        out = {}
        for (pe, we), c in self.terms.items():
            extra = sum(k * e for k, e in zip(we, exponents))
            pe = pe[:param] + (pe[param] + extra,) + pe[param + 1:]
            out[(pe, we)] = c
        return ParametricPolynomial(self.nparams, self.nvars, out)

    def lowest_terms(self, order: Union[str, Sequence[int]] = "joint") -> Polynomial:
        """
        Leading part as the parameters go to 0, with the parameters then dropped.

        Args:
            order: a sequence of parameter indices for iterated limits, the first
                index taken to 0 first (lowest exponent of that parameter first),
                or "joint" for the limit along the diagonal where all parameters
                are equal (lowest total parameter degree).

        Returns:
            The polynomial in w formed by the selected terms.
        """
        if not self.terms:
            return Polynomial(self.nvars)
        keys = list(self.terms)
        if order == "joint":
            low = min(sum(pe) for pe, _ in keys)
            keys = [k for k in keys if sum(k[0]) == low]
        else:
            for param in order:
                low = min(pe[param] for pe, _ in keys)
                keys = [k for k in keys if k[0][param] == low]
        out: Dict[Exps, Fraction] = {}
        for k in keys:
            out[k[1]] = out.get(k[1], Fraction(0)) + self.terms[k]
        return Polynomial(self.nvars, out)
