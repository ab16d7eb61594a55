from typing import Callable, Iterable, List, Optional

from tqdm.auto import tqdm
from tqdm.contrib.concurrent import thread_map

from .. import env

__all__ = ["parallel_map"]


def parallel_map(
    fn: Callable, items: Iterable, num_workers: Optional[int] = None, verbose: bool = False
) -> List:
    """Map ``fn`` over ``items``, keeping input order.

    Args:
        fn (Callable): Function of one argument.
        items (Iterable): Inputs.
        num_workers (int, optional): Number of worker threads. Defaults to
            ``ORBILOOP_THREADS``.
        verbose (bool, optional): If ``True``, show a progress bar.

    Returns:
        list: ``[fn(x) for x in items]``.
    """
    items = list(items)
    if num_workers is None:
        num_workers = env.num_threads()

    if num_workers > 1 and len(items) > 1:
        return list(
            thread_map(fn, items, max_workers=num_workers, disable=not verbose, leave=False)
        )
    return [fn(x) for x in tqdm(items, disable=not verbose, leave=False)]
