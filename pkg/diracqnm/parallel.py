from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

from tqdm.auto import tqdm

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    func: Callable[[T], R], items: Sequence[T], workers: int = 1, show_progress: bool = False, desc: str = ""
) -> List[R]:
    """
    Apply `func` to every item on a thread pool and return the results in submission order.

    The output never depends on the number of workers.
    """
    if workers < 1:
        raise ValueError(f"The number of workers must be at least 1, got {workers}")

    results: List[R] = []
    with tqdm(total=len(items), desc=desc, disable=not show_progress) as pbar:
        if workers == 1:
            for item in items:
                results.append(func(item))
                pbar.update(1)
            return results

        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(func, item) for item in items]
            for future in futures:
                results.append(future.result())
                pbar.update(1)

    return results
