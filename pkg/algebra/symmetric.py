# algebra/symmetric.py

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from algebra.graded import AlgebraElement, GradedSpace, Monomial, monomial_product
from linalg.complex import ChainComplex
from linalg.sparse import SparseMatrix
from utils.exceptions import DegreeBookkeepingError, InfiniteBasisError, InputValidationError
from utils.logger import get_logger

logger = get_logger(__name__)

Basis = Dict[int, List[Monomial]]


def _sort_key(m: Monomial):
    return (m.length, tuple(-e for e in m.exponents))


def _group(space: GradedSpace, monomials, lo: Optional[int] = None, hi: Optional[int] = None) -> Basis:
    grouped: Basis = {}
    for m in monomials:
        grouped.setdefault(m.degree(space), []).append(m)
    if lo is None:
        if not grouped:
            return {}
        lo, hi = min(grouped), max(grouped)
    return {d: sorted(grouped.get(d, []), key=_sort_key) for d in range(lo, hi + 1)}


def _by_word_length(space: GradedSpace, cutoff: int) -> List[Monomial]:
    out = []

    def extend(i: int, exponents: List[int], remaining: int):
        if i == len(space):
            out.append(Monomial(tuple(exponents)))
            return
        top = min(remaining, 1) if space[i].odd else remaining
        for e in range(top + 1):
            exponents.append(e)
            extend(i + 1, exponents, remaining - e)
            exponents.pop()

    extend(0, [], cutoff)
    return out


def check_window_finiteness(space: GradedSpace):
    """Every even generator must have nonzero degree, all of one sign."""
    evens = [g for g in space.generators if not g.odd]
    for g in evens:
        if g.degree == 0:
            raise InfiniteBasisError(g.name, details="even generator of degree 0")
    signs = {g.degree > 0 for g in evens}
    if len(signs) > 1:
        positive = evens[0].degree > 0
        offender = next(g for g in evens if (g.degree > 0) != positive)
        raise InfiniteBasisError(offender.name, details="even generators of both signs")


def _by_degree_window(space: GradedSpace, lo: int, hi: int) -> List[Monomial]:
    odd = [i for i, g in enumerate(space.generators) if g.odd]
    even = [i for i, g in enumerate(space.generators) if not g.odd]

    odd_parts = []
    for size in range(len(odd) + 1):
        for chosen in combinations(odd, size):
            odd_parts.append((chosen, sum(space[i].degree for i in chosen)))
    odd_min = min(d for _, d in odd_parts)
    odd_max = max(d for _, d in odd_parts)
    # even part degree must lie in [lo - odd_max, hi - odd_min]
    e_lo, e_hi = lo - odd_max, hi - odd_min
    bound = max(abs(e_lo), abs(e_hi))

    even_parts: List[Tuple[Dict[int, int], int]] = []

    def extend(k: int, chosen: Dict[int, int], used: int):
        if k == len(even):
            even_parts.append((dict(chosen), sum(space[i].degree * e for i, e in chosen.items())))
            return
        i = even[k]
        step = abs(space[i].degree)
        e = 0
        while used + e * step <= bound:
            if e:
                chosen[i] = e
            extend(k + 1, chosen, used + e * step)
            chosen.pop(i, None)
            e += 1

    extend(0, {}, 0)

    out = []
    for chosen_odd, d_odd in odd_parts:
        for chosen_even, d_even in even_parts:
            if lo <= d_odd + d_even <= hi:
                exponents = [0] * len(space)
                for i in chosen_odd:
                    exponents[i] = 1
                for i, e in chosen_even.items():
                    exponents[i] = e
                out.append(Monomial(tuple(exponents)))
    return out


def symmetric_basis(
    space: GradedSpace,
    cutoff: Optional[int] = None,
    window: Optional[Tuple[int, int]] = None,
) -> Basis:
    """
    Monomial basis of the free graded-commutative algebra, grouped by degree.

    With a word-length cutoff every monomial of length <= cutoff is listed
    (optionally restricted to the window). With a window alone the pieces
    must be finite, see check_window_finiteness.
    """
    if cutoff is None and window is None:
        raise InputValidationError("symmetric_basis needs a word-length cutoff or a degree window")
    if window is not None and window[0] > window[1]:
        raise InputValidationError(f"Empty degree window {window}")
    if cutoff is not None:
        if cutoff < 0:
            raise InputValidationError(f"Word-length cutoff must be non-negative, got {cutoff}")
        monomials = _by_word_length(space, cutoff)
        if window is not None:
            lo, hi = window
            return _group(space, [m for m in monomials if lo <= m.degree(space) <= hi], lo, hi)
        return _group(space, monomials)
    check_window_finiteness(space)
    lo, hi = window
    return _group(space, _by_degree_window(space, lo, hi), lo, hi)


def multiplication_operator(
    omega: AlgebraElement,
    basis: Mapping[int, Sequence[Monomial]],
    *,
    truncate: bool = False,
    complete_below: bool = True,
    complete_above: bool = True,
) -> ChainComplex:
    """
    The complex x -> omega * x on the given bases.

    omega must be homogeneous of degree +1. With truncate=True products
    falling outside the target basis are dropped (the quotient by longer words).
    """
    space = omega.space
    if not omega.is_zero() and omega.degree != 1:
        raise DegreeBookkeepingError(
            "Multiplication operator needs an element of degree +1",
            details=f"got degree {omega.degree}",
        )
    degrees = sorted(basis)
    spaces = {d: [m.label(space) for m in basis[d]] for d in degrees}
    differentials = {}
    for d in degrees:
        if d + 1 not in basis:
            continue
        index = {m: i for i, m in enumerate(basis[d + 1])}
        entries: Dict[Tuple[int, int], Fraction] = {}
        for j, m in enumerate(basis[d]):
            for w, c in omega.terms.items():
                sign, product = monomial_product(space, w, m)
                if product is None:
                    continue
                row = index.get(product)
                if row is None:
                    if truncate:
                        continue
                    raise InputValidationError(
                        "Target basis does not contain a product",
                        details=f"{product.label(space)} in degree {d + 1}",
                    )
                entries[(row, j)] = entries.get((row, j), Fraction(0)) + sign * c
        differentials[d] = SparseMatrix(len(basis[d + 1]), len(basis[d]), entries)
    logger.debug(f"Multiplication operator on {sum(len(v) for v in basis.values())} monomials")
    return ChainComplex(spaces, differentials, complete_below=complete_below, complete_above=complete_above)
