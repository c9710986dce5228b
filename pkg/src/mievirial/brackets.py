"""A small method-of-brackets engine.

A bracket series is ``sum_{n_1..n_k} phi_{n_1..n_k} C(n) <b_1(n)> ... <b_r(n)>``
where each bracket ``<b>`` stands for ``int_0^inf x**(b-1) dx`` and
``phi_n = (-1)**n / n!``. The coefficient ``C`` is restricted to

    coefficient * (-1)**sign_exponent(n) * prod(param ** power(n)),

with every exponent an affine form in the indices. Bracket arguments are
affine forms too; all solving is done in exact rational arithmetic.

Rule 1 / Rule 2: with as many brackets as indices the series takes the value
``C(n*) prod Gamma(-n*_j) / |det A|`` at the unique zero ``n*`` of the
brackets. Rule 3: with fewer brackets than indices, every choice of free
indices yields a *basis series* in those free indices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import ConvergenceError, DomainError, NonRealSeriesError, PoleError, SingularSystemError
from .specfun import DEFAULT_TOLERANCE, TERM_BUDGET, SeriesEvaluation


def as_fraction(x) -> Fraction:
    """Exact rational for ints, Fractions, and floats (via their shortest repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(repr(float(x)))


@dataclass(frozen=True)
class AffineForm:
    """``constant + sum(coefficients[name] * name)`` with rational coefficients."""

    constant: Fraction = Fraction(0)
    coefficients: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constant", as_fraction(self.constant))
        clean = {}
        for name, c in self.coefficients.items():
            c = as_fraction(c)
            if c != 0:
                clean[name] = c
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    @classmethod
    def var(cls, name: str, coefficient=1) -> "AffineForm":
        return cls(0, {name: coefficient})

    @classmethod
    def of(cls, value) -> "AffineForm":
        """Coerce a number or AffineForm."""
        if isinstance(value, AffineForm):
            return value
        return cls(value)

    def __hash__(self):
        return hash((self.constant, tuple(self.coefficients.items())))

    def __eq__(self, other):
        if not isinstance(other, AffineForm):
            try:
                other = AffineForm.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.constant == other.constant and self.coefficients == other.coefficients

    def __add__(self, other):
        other = AffineForm.of(other)
        coeffs = dict(self.coefficients)
        for name, c in other.coefficients.items():
            coeffs[name] = coeffs.get(name, Fraction(0)) + c
        return AffineForm(self.constant + other.constant, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-AffineForm.of(other))

    def __rsub__(self, other):
        return AffineForm.of(other) - self

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return AffineForm(self.constant * s, {k: c * s for k, c in self.coefficients.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / as_fraction(scalar))

    @property
    def variables(self) -> tuple:
        return tuple(self.coefficients)

    def coefficient(self, name: str) -> Fraction:
        return self.coefficients.get(name, Fraction(0))

    def is_constant(self) -> bool:
        return not self.coefficients

    def substitute(self, mapping: Mapping[str, "AffineForm"]) -> "AffineForm":
        out = AffineForm(self.constant)
        for name, c in self.coefficients.items():
            out = out + (AffineForm.of(mapping[name]) * c if name in mapping else AffineForm.var(name, c))
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Value at the given index values; exact when the values are rational."""
        total = self.constant
        for name, c in self.coefficients.items():
            total = total + c * values[name]
        return total

    def is_integer_valued(self) -> bool:
        """True iff the form is an integer at every nonnegative integer point."""
        return self.constant.denominator == 1 and all(c.denominator == 1 for c in self.coefficients.values())

    def __str__(self):
        parts = []
        for name, c in self.coefficients.items():
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append(("-" if c < 0 else "+", body))
        if self.constant != 0 or not parts:
            parts.append(("-" if self.constant < 0 else "+", str(abs(self.constant))))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


@dataclass(frozen=True)
class BracketSeries:
    """Multi-index bracket series with the coefficient class described above."""

    indices: tuple
    brackets: tuple
    sign_exponent: AffineForm = AffineForm()
    parameter_powers: Mapping[str, AffineForm] = field(default_factory=dict)
    coefficient: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "brackets", tuple(AffineForm.of(b) for b in self.brackets))
        object.__setattr__(self, "sign_exponent", AffineForm.of(self.sign_exponent))
        object.__setattr__(self, "parameter_powers",
                           {k: AffineForm.of(v) for k, v in self.parameter_powers.items()})
        if len(set(self.indices)) != len(self.indices):
            raise DomainError("index names must be distinct")
        if len(self.brackets) > len(self.indices):
            raise DomainError("more brackets than summation indices")
        known = set(self.indices)
        forms = [*self.brackets, self.sign_exponent, *self.parameter_powers.values()]
        for form in forms:
            stray = set(form.variables) - known
            if stray:
                raise DomainError(f"forms reference unknown indices {sorted(stray)}")


@dataclass(frozen=True)
class BasisSeries:
    """Series in the free indices, produced by one choice of solved indices.

    A term at free-index values ``k`` is

        coefficient / determinant_abs * (-1)**sign_exponent(k)
            * prod(Gamma(g(k)) for g in gamma_arguments)
            * prod(param ** power(k)) / prod(k_i!)
    """

    free_indices: tuple
    solved_indices: Mapping[str, AffineForm]
    determinant_abs: Fraction
    gamma_arguments: tuple
    sign_exponent: AffineForm
    parameter_powers: Mapping[str, AffineForm]
    is_real: bool
    coefficient: float = 1.0

    def term(self, k: Mapping[str, int], params: Mapping[str, float]) -> float:
        """Evaluate one term at integer free-index values ``k``."""
        return _basis_term(self, k, params)


@dataclass(frozen=True)
class ChoiceOutcome:
    """What happened to one choice of solved indices (``basis`` is None if skipped)."""

    solved: tuple
    free: tuple
    basis: Optional[BasisSeries]
    skipped_reason: Optional[str] = None


def _solve_exact(matrix, rhs):
    """Gauss-Jordan over Fractions; rhs entries are AffineForms.

    Returns ``(solution, det)`` or raises SingularSystemError.
    """
    size = len(matrix)
    a = [list(row) for row in matrix]
    b = list(rhs)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularSystemError("bracket matrix is singular")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(size):
            if r == col or a[r][col] == 0:
                continue
            f = a[r][col] / p
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            b[r] = b[r] - b[col] * f
    return [b[i] / a[i][i] for i in range(size)], det


def solve_choices(series: BracketSeries) -> list:
    """Try every choice of solved indices; singular choices are recorded, not fatal.

    The number of solved indices equals the number of brackets; choices are
    enumerated in index order of the solved set.
    """
    outcomes = []
    r = len(series.brackets)
    for solved in itertools.combinations(series.indices, r):
        free = tuple(i for i in series.indices if i not in solved)
        matrix = [[br.coefficient(s) for s in solved] for br in series.brackets]
        # bracket = M * solved + rest = 0  =>  M * solved = -rest
        rhs = [-(br.substitute({s: AffineForm() for s in solved})) for br in series.brackets]
        try:
            values, det = _solve_exact(matrix, rhs)
        except SingularSystemError as exc:
            outcomes.append(ChoiceOutcome(solved, free, None, str(exc)))
            continue
        mapping = dict(zip(solved, values))
        # phi of each free index carries a factor (-1)**k
        sign = series.sign_exponent.substitute(mapping)
        for f in free:
            sign = sign + AffineForm.var(f)
        powers = {name: form.substitute(mapping) for name, form in series.parameter_powers.items()}
        basis = BasisSeries(
            free_indices=free,
            solved_indices=mapping,
            determinant_abs=abs(det),
            gamma_arguments=tuple(-v for v in values),
            sign_exponent=sign,
            parameter_powers=powers,
            is_real=sign.is_integer_valued(),
            coefficient=series.coefficient,
        )
        outcomes.append(ChoiceOutcome(solved, free, basis))
    return outcomes


def enumerate_basis_series(series: BracketSeries) -> list:
    """All basis series from solvable choices (Rule 3); empty if none solve."""
    return [o.basis for o in solve_choices(series) if o.basis is not None]


def _gamma_log(x: float):
    return math.lgamma(x), (1 if x > 0 else (-1 if math.floor(x) % 2 else 1))


def _basis_term(basis: BasisSeries, k: Mapping[str, object], params: Mapping[str, float],
                index_label=None) -> float:
    sign_value = basis.sign_exponent.evaluate(k)
    if Fraction(sign_value).denominator != 1:
        raise NonRealSeriesError(f"(-1)**({sign_value}) is not real")
    sign = -1 if int(sign_value) % 2 else 1
    if basis.coefficient < 0:
        sign = -sign
    log_mag = math.log(abs(basis.coefficient)) if basis.coefficient != 0 else -math.inf
    log_mag -= math.log(basis.determinant_abs)
    direct = abs(basis.coefficient) / float(basis.determinant_abs)
    use_direct = True
    for g in basis.gamma_arguments:
        arg_exact = g.evaluate(k)
        arg_frac = Fraction(arg_exact)
        if arg_frac <= 0 and arg_frac.denominator == 1:
            raise PoleError(f"Gamma({arg_frac}) at a pole", argument=float(arg_frac),
                            index=index_label if index_label is not None else dict(k))
        x = float(arg_frac)
        lg, sg = _gamma_log(x)
        sign *= sg
        log_mag += lg
        if use_direct and x < 170.0:
            direct *= abs(math.gamma(x))
        else:
            use_direct = False
    for name in basis.free_indices:
        kv = int(k[name])
        log_mag -= math.lgamma(kv + 1.0)
        if use_direct and kv < 170:
            direct /= math.gamma(kv + 1.0)
        else:
            use_direct = False
    for name, form in basis.parameter_powers.items():
        expo = float(form.evaluate(k))
        if expo == 0:
            continue
        value = float(params[name])
        if value <= 0:
            raise DomainError(f"parameter {name!r} must be positive")
        log_mag += expo * math.log(value)
        if use_direct:
            try:
                direct *= math.pow(value, expo)
            except OverflowError:
                use_direct = False
    if use_direct and math.isfinite(direct) and direct != 0.0:
        return sign * direct
    return sign * math.exp(log_mag)


def evaluate_basis_series(basis: BasisSeries, params: Mapping[str, float],
                          tolerance: float = DEFAULT_TOLERANCE,
                          term_budget: int = TERM_BUDGET,
                          fixed_terms: Optional[int] = None) -> SeriesEvaluation:
    """Sum a real basis series over its (at most one) free index.

    Stops on two consecutive terms below ``tolerance * |partial sum|``, or
    after exactly ``fixed_terms`` terms when given. A basis series with no
    free index is a single term: the Rule 2 value.

    Raises
    ------
    NonRealSeriesError
        ``basis.is_real`` is false.
    PoleError
        A gamma argument hits a pole; ``index`` names the offending k.
    ConvergenceError
        The term budget ran out.
    """
    if not basis.is_real:
        raise NonRealSeriesError("basis series carries a non-integer power of -1")
    if len(basis.free_indices) > 1:
        raise DomainError("only basis series with at most one free index can be summed")
    if not basis.free_indices:
        value = _basis_term(basis, {}, params)
        return SeriesEvaluation(value, 1, abs(value), True)
    (name,) = basis.free_indices
    limit = fixed_terms if fixed_terms is not None else term_budget
    total = 0.0
    last = 0.0
    small = 0
    for k in range(limit):
        term = _basis_term(basis, {name: k}, params, index_label=k)
        total += term
        last = abs(term)
        if fixed_terms is not None:
            continue
        if last <= tolerance * abs(total):
            small += 1
            if small >= 2:
                return SeriesEvaluation(total, k + 1, last, True)
        else:
            small = 0
    result = SeriesEvaluation(total, limit, last, fixed_terms is not None)
    if fixed_terms is None:
        raise ConvergenceError(f"basis series did not converge in {term_budget} terms",
                               evaluation=result)
    return result


def rule1_value(series: BracketSeries, params: Mapping[str, float]) -> float:
    """Value of a one-index, one-bracket series: ``C(n*) Gamma(-n*) / |alpha|``."""
    if len(series.indices) != 1 or len(series.brackets) != 1:
        raise DomainError("Rule 1 needs exactly one index and one bracket")
    (index,) = series.indices
    if series.brackets[0].coefficient(index) == 0:
        raise SingularSystemError("bracket does not depend on the summation index")
    (basis,) = enumerate_basis_series(series)
    if not basis.is_real:
        raise NonRealSeriesError("coefficient at the bracket zero is not real")
    return _basis_term(basis, {}, params)


# ---------------------------------------------------------------------------
# The second-virial bracket series
# ---------------------------------------------------------------------------

ELL = "l"
JAY = "j"


def virial_bracket_series(n, m) -> BracketSeries:
    """Bracket series for ``J = -2 pi int_0^inf exp(-(1/T*)((s/r)^n - (s/r)^m)) r^2 dr``.

    Expanding both exponentials gives
    ``-2 pi sum_{l,j} phi_l phi_j (-1)^j (1/T*)^(l+j) sigma^(l n + j m) <3 - l n - j m>``.
    Parameters are named ``inv_t`` (1/T*) and ``sigma``.
    """
    n = as_fraction(n)
    m = as_fraction(m)
    l = AffineForm.var(ELL)
    j = AffineForm.var(JAY)
    return BracketSeries(
        indices=(ELL, JAY),
        brackets=(3 - l * n - j * m,),
        sign_exponent=j,
        parameter_powers={"inv_t": l + j, "sigma": l * n + j * m},
        coefficient=-2.0 * math.pi,
    )


def real_branches(series: BracketSeries) -> list:
    return [b for b in enumerate_basis_series(series) if b.is_real]


def virial_from_brackets(n, m, t_star: float, sigma: float = 1.0,
                         tolerance: float = DEFAULT_TOLERANCE,
                         term_budget: int = TERM_BUDGET) -> SeriesEvaluation:
    """Sum the single real branch of the virial bracket series at ``T*``.

    The value is B itself (it carries ``sigma**3``). Returning the same branch
    with ``t_star`` replaced by a large regulator gives the term that is
    subtracted and vanishes in the limit; every exponent of ``1/T*`` in the
    branch is positive, so it is dropped exactly.
    """
    branches = real_branches(virial_bracket_series(n, m))
    if len(branches) != 1:
        raise DomainError(f"expected one real branch, found {len(branches)}")
    return evaluate_basis_series(branches[0], {"inv_t": 1.0 / t_star, "sigma": sigma},
                                 tolerance, term_budget)
