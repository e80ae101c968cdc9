import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Callable, List, Optional, Sequence, TypeVar, Union

from linmba.tables import configure_default_registry
from linmba.util.exceptions import ExceptionWrapper

T = TypeVar("T")
R = TypeVar("R")

def _guarded(fn: Callable[[T], R], item: T) -> Union[R, ExceptionWrapper]:
    try:
        return fn(item)
    except Exception as e:
        return ExceptionWrapper(e)

def _initialize(table_cache_dir: Optional[str]) -> None:
    configure_default_registry(table_cache_dir)

def map_in_pool(fn: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None,
                table_cache_dir: Optional[str] = None) -> List[R]:
    """Apply fn to every item, in a process pool unless workers is 1, and return the results in input order.
    Exceptions escaping fn are re-raised in the caller with their original traceback."""
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logging.debug("Processing %i items with %s workers." % (len(items), workers or "default"))
    ret: List[Any] = []
    with ProcessPoolExecutor(max_workers=workers, initializer=_initialize, initargs=(table_cache_dir,)) as executor:
        results = executor.map(partial(_guarded, fn), items, chunksize=max(1, len(items) // 64))
        for result in results:
            if isinstance(result, ExceptionWrapper):
                result.re_raise()
            ret.append(result)
    return ret
