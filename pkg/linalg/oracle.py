# linalg/oracle.py

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from linalg.complex import ChainComplex, HomologyDims
from linalg.sparse import SparseMatrix


def dense_rank(m: SparseMatrix) -> int:
    """Rank computed independently with sympy's dense DomainMatrix over QQ."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows = [[QQ(v.numerator, v.denominator) for v in row] for row in m.to_dense()]
    return DomainMatrix(rows, (m.rows, m.cols), QQ).rank()


def dense_homology_dims(c: ChainComplex) -> HomologyDims:
    ranks = {d: dense_rank(c.differential(d)) for d in c.degrees}
    dims = {d: c.dim(d) - ranks[d] - ranks.get(d - 1, 0) for d in c.degrees}
    return HomologyDims(dims, c.truncated_degrees)
