# services/homology_service.py

import asyncio
import functools
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Mapping, Optional

from linalg.complex import ChainComplex, HomologyDims, homology_from_ranks, verify_square_zero
from linalg.oracle import dense_rank
from linalg.sparse import SparseMatrix, rank
from utils.config import get_settings
from utils.exceptions import SquareZeroError
from utils.logger import get_logger

logger = get_logger("homology_service")


async def _run_per_degree(
    matrices: Mapping[int, SparseMatrix],
    func: Callable[[SparseMatrix], int],
    threads: Optional[int],
) -> Dict[int, int]:
    loop = asyncio.get_running_loop()
    workers = threads or get_settings().threads
    degrees = sorted(matrices)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        tasks = [loop.run_in_executor(executor, functools.partial(func, matrices[d])) for d in degrees]
        results = await asyncio.gather(*tasks, return_exceptions=True)

    ranks = {}
    for d, result in zip(degrees, results):
        if isinstance(result, Exception):
            logger.error(f"Rank computation failed in degree {d}: {result}", exc_info=False)
            raise result
        ranks[d] = result
    return ranks


async def compute_ranks(c: ChainComplex, threads: Optional[int] = None, oracle: bool = False) -> Dict[int, int]:
    """Ranks of every stored differential, computed concurrently and keyed by degree."""
    matrices = {d: c.differential(d) for d in c.degrees}
    return await _run_per_degree(matrices, dense_rank if oracle else rank, threads)


async def compute_homology(c: ChainComplex, threads: Optional[int] = None, oracle: bool = False) -> HomologyDims:
    witness = verify_square_zero(c)
    if witness is not None:
        raise SquareZeroError(witness)
    ranks = await compute_ranks(c, threads, oracle)
    return homology_from_ranks(c, ranks)

